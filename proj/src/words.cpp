#include "prefixm/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace prefixm {

std::string to_string(const Symbol& s) {
    std::string out(1, s.base);
    if (s.has_sub) out += "{" + std::to_string(s.sub) + "}";
    return out;
}

Alphabet::Alphabet(std::vector<Symbol> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw std::invalid_argument("alphabet must be non-empty");
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (!index_.emplace(letters_[i], i).second)
            throw std::invalid_argument("duplicate symbol in alphabet: " +
                                        to_string(letters_[i]));
        if (!std::islower(static_cast<unsigned char>(letters_[i].base)))
            throw std::invalid_argument("generator must be a lowercase letter");
    }
}

Alphabet Alphabet::from_string(const std::string& letters) {
    std::vector<Symbol> syms;
    for (char c : letters) syms.push_back(Symbol{c});
    return Alphabet(std::move(syms));
}

std::optional<std::size_t> Alphabet::index_of(const Symbol& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

AlphabetPtr make_alphabet(const std::string& letters) {
    return std::make_shared<const Alphabet>(Alphabet::from_string(letters));
}

AlphabetPtr make_alphabet(std::vector<Symbol> letters) {
    return std::make_shared<const Alphabet>(std::move(letters));
}

Word::Word(AlphabetPtr alpha, std::vector<Letter> letters)
    : alpha_(std::move(alpha)), letters_(std::move(letters)) {
    if (!alpha_) throw std::invalid_argument("word requires an alphabet");
    for (const Letter& l : letters_)
        if (l.sym >= alpha_->size())
            throw std::invalid_argument("letter outside alphabet");
}

Word Word::append(Letter l) const {
    std::vector<Letter> ls = letters_;
    ls.push_back(l);
    return Word(alpha_, std::move(ls));
}

Word Word::concat(const Word& rhs) const {
    if (rhs.empty()) return *this;
    if (empty() && alpha_ == nullptr) return rhs;
    std::vector<Letter> ls = letters_;
    ls.insert(ls.end(), rhs.letters_.begin(), rhs.letters_.end());
    return Word(alpha_, std::move(ls));
}

Word Word::subword(std::size_t begin, std::size_t end) const {
    return Word(alpha_, std::vector<Letter>(letters_.begin() + begin,
                                            letters_.begin() + end));
}

bool Word::operator==(const Word& rhs) const { return letters_ == rhs.letters_; }

std::string print_word(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (const Letter& l : w.letters()) {
        Symbol s = w.alphabet()->at(l.sym);
        if (l.sign < 0) s.base = static_cast<char>(std::toupper(s.base));
        out += to_string(s);
    }
    return out;
}

Word parse_word(const AlphabetPtr& alpha, const std::string& text) {
    std::vector<Letter> ls;
    std::size_t i = 0;
    if (text == "1") return Word(alpha);
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (!std::isalpha(static_cast<unsigned char>(c)))
            throw std::invalid_argument("bad character in word at position " +
                                        std::to_string(i));
        Symbol s;
        s.base = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        std::int8_t sign = std::isupper(static_cast<unsigned char>(c)) ? -1 : 1;
        ++i;
        if (i < text.size() && text[i] == '{') {
            std::size_t close = text.find('}', i);
            if (close == std::string::npos)
                throw std::invalid_argument("unterminated subscript");
            s.sub = std::stoi(text.substr(i + 1, close - i - 1));
            s.has_sub = true;
            i = close + 1;
        }
        auto idx = alpha->index_of(s);
        if (!idx)
            throw std::invalid_argument("letter not in alphabet: " + to_string(s));
        ls.push_back(Letter{static_cast<std::uint32_t>(*idx), sign});
    }
    return Word(alpha, std::move(ls));
}

Word free_reduce(const Word& w) {
    if (!w.alphabet()) return Word();
    std::vector<Letter> out;
    out.reserve(w.size());
    for (const Letter& l : w.letters()) {
        if (!out.empty() && out.back() == l.inverse())
            out.pop_back();
        else
            out.push_back(l);
    }
    return Word(w.alphabet(), std::move(out));
}

Word invert(const Word& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
        out.push_back(it->inverse());
    return Word(w.alphabet(), std::move(out));
}

bool is_reduced(const Word& w) { return free_reduce(w) == w; }

bool is_cyclically_reduced_word(const Word& w) {
    if (!is_reduced(w)) return false;
    if (w.size() < 2) return true;
    return w.letters().front() != w.letters().back().inverse();
}

CyclicDecomposition cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    std::size_t cut = 0;
    while (r.size() >= 2 * (cut + 1) &&
           r[cut] == r[r.size() - 1 - cut].inverse())
        ++cut;
    return CyclicDecomposition{r.subword(0, cut), r.subword(cut, r.size() - cut)};
}

Word substitute(const Word& tmpl, const std::vector<Word>& assignment) {
    if (tmpl.alphabet() && assignment.size() < tmpl.alphabet()->size())
        throw std::invalid_argument("unassigned letter in substitution");
    AlphabetPtr target;
    for (const Word& a : assignment)
        if (a.alphabet()) { target = a.alphabet(); break; }
    Word out(target);
    for (const Letter& l : tmpl.letters()) {
        const Word& img = assignment.at(l.sym);
        out = out.concat(l.sign > 0 ? img : invert(img));
    }
    return out;
}

std::vector<Word> prefixes(const Word& w) {
    std::vector<Word> out;
    std::set<std::vector<Letter>> seen;
    for (std::size_t i = 0; i <= w.size(); ++i) {
        Word p = w.subword(0, i);
        if (seen.insert(p.letters()).second) out.push_back(std::move(p));
    }
    return out;
}

int exponent_sum(const Word& w, std::uint32_t t_sym) {
    int sum = 0;
    for (const Letter& l : w.letters())
        if (l.sym == t_sym) sum += l.sign;
    return sum;
}

PrefixSign prefix_sign(const Word& w, std::uint32_t t_sym) {
    bool occurs = false, pos = false, neg = false;
    int sum = 0;
    for (const Letter& l : w.letters()) {
        if (l.sym == t_sym) { occurs = true; sum += l.sign; }
        if (sum > 0) pos = true;
        if (sum < 0) neg = true;
    }
    if (!occurs) return PrefixSign::zero_free;
    if (pos && neg) return PrefixSign::mixed;
    if (neg) return PrefixSign::negative;
    return PrefixSign::positive;
}

RhoImage rho(const Word& w, std::uint32_t t_sym) {
    if (exponent_sum(w, t_sym) != 0)
        throw std::invalid_argument("stable letter has nonzero exponent sum");
    bool occurs = false;
    for (const Letter& l : w.letters())
        if (l.sym == t_sym) occurs = true;
    if (!occurs) throw std::invalid_argument("stable letter absent from word");

    const Alphabet& src = *w.alphabet();
    // First pass: collect the occurring subscripted symbols.
    std::set<Symbol> used;
    std::map<char, std::pair<int, int>> bounds;
    int texp = 0;
    for (const Letter& l : w.letters()) {
        if (l.sym == t_sym) { texp += l.sign; continue; }
        Symbol s{src.at(l.sym).base, -texp, true};
        used.insert(s);
        auto it = bounds.find(s.base);
        if (it == bounds.end())
            bounds.emplace(s.base, std::pair{s.sub, s.sub});
        else {
            it->second.first = std::min(it->second.first, s.sub);
            it->second.second = std::max(it->second.second, s.sub);
        }
    }
    AlphabetPtr derived;
    if (!used.empty())
        derived = make_alphabet(std::vector<Symbol>(used.begin(), used.end()));
    std::vector<Letter> out;
    texp = 0;
    for (const Letter& l : w.letters()) {
        if (l.sym == t_sym) { texp += l.sign; continue; }
        Symbol s{src.at(l.sym).base, -texp, true};
        out.push_back(Letter{static_cast<std::uint32_t>(*derived->index_of(s)),
                             l.sign});
    }
    Word image = derived ? Word(derived, std::move(out)) : Word();
    return RhoImage{std::move(image), std::move(bounds), src.at(t_sym)};
}

}  // namespace prefixm
