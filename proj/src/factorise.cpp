#include "prefixm/factorise.hpp"

#include <algorithm>
#include <deque>

namespace prefixm {

std::vector<Word> Factorisation::pieces() const {
    std::vector<Word> out;
    std::size_t prev = 0;
    for (std::size_t cut : cut_points) {
        out.push_back(relator.subword(prev, cut));
        prev = cut;
    }
    out.push_back(relator.subword(prev, relator.size()));
    return out;
}

namespace {

using Str = std::vector<Letter>;

bool is_prefix(const Str& u, const Str& v) {
    return u.size() <= v.size() && std::equal(u.begin(), u.end(), v.begin());
}
bool is_suffix(const Str& u, const Str& v) {
    return u.size() <= v.size() &&
           std::equal(u.rbegin(), u.rend(), v.rbegin());
}

}  // namespace

std::vector<Word> adjan_overlap(const std::vector<Word>& relators) {
    if (relators.empty()) throw std::invalid_argument("no relators");
    AlphabetPtr alpha = relators.front().alphabet();
    std::set<Str> cur;
    for (const Word& w : relators) {
        if (w.empty()) throw std::invalid_argument("empty relator");
        cur.insert(w.letters());
    }
    for (;;) {
        std::set<Str> next;
        // (i) keep words that are not part of any other word.
        for (const Str& u : cur) {
            bool clear = true;
            for (const Str& v : cur) {
                if (v == u) continue;
                if (is_prefix(u, v) || is_suffix(u, v)) { clear = false; break; }
            }
            if (clear) next.insert(u);
        }
        for (const Str& w1 : cur)
            for (const Str& w2 : cur) {
                // (ii) u a prefix of w1 and a suffix of w2, the two
                // occurrences not both the whole word.
                for (std::size_t n = 1; n <= std::min(w1.size(), w2.size()); ++n) {
                    if (n == w1.size() && n == w2.size()) continue;
                    Str u(w1.begin(), w1.begin() + n);
                    if (is_suffix(u, w2)) next.insert(u);
                }
                // (iii) w1 = u.v with v non-empty, v a prefix of w2.
                for (std::size_t n = 1; n < w1.size(); ++n) {
                    Str v(w1.begin() + n, w1.end());
                    if (is_prefix(v, w2))
                        next.insert(Str(w1.begin(), w1.begin() + n));
                }
                // (iv) w1 = v'.u with v' non-empty, v' a suffix of w2.
                for (std::size_t n = 1; n < w1.size(); ++n) {
                    Str vp(w1.begin(), w1.begin() + n);
                    if (is_suffix(vp, w2))
                        next.insert(Str(w1.begin() + n, w1.end()));
                }
            }
        if (next == cur) break;
        cur = std::move(next);
    }
    std::vector<Word> out;
    for (const Str& u : cur) out.push_back(Word(alpha, u));
    return out;
}

Factorisation adjan_factorisation(const Word& w) {
    Factorisation f;
    f.relator = w;
    f.kind = Factorisation::kAdjan;
    std::vector<Word> gamma = adjan_overlap({w});
    std::set<Str> pieces;
    for (const Word& g : gamma) pieces.insert(g.letters());
    std::vector<std::size_t> cuts;
    std::size_t pos = 0;
    bool stuck = false;
    while (pos < w.size()) {
        std::size_t best = 0;
        for (std::size_t n = w.size() - pos; n >= 1; --n) {
            Str cand(w.letters().begin() + pos, w.letters().begin() + pos + n);
            if (pieces.count(cand)) { best = n; break; }
        }
        if (best == 0) { stuck = true; break; }
        pos += best;
        if (pos < w.size()) cuts.push_back(pos);
    }
    if (!stuck) f.cut_points = std::move(cuts);
    return f;
}

Factorisation benois_pieces(const Word& w) {
    if (w.empty()) throw std::invalid_argument("empty relator");
    AlphabetPtr alpha = w.alphabet();
    std::vector<Word> ugens;
    for (const Word& p : prefixes(w)) ugens.push_back(free_reduce(p));
    for (const Word& p : prefixes(invert(w))) ugens.push_back(free_reduce(p));
    RationalSet v = rational_monoid(alpha, ugens);

    auto find_witness = [&](const Word& target) -> std::vector<Word> {
        auto ws = express_in_monoid(alpha, ugens, target);
        if (!ws) throw std::logic_error("witness search failed for a certified member");
        return *ws;
    };

    Factorisation f;
    f.relator = w;
    f.kind = Factorisation::kBenois;
    for (std::size_t i = 1; i < w.size(); ++i) {
        Word p = w.subword(0, i);
        if (member(v, invert(p))) {
            f.cut_points.push_back(i);
            f.certificates.push_back(find_witness(invert(p)));
        }
    }
    return f;
}

bool is_cyclically_reduced(const Word& w) { return is_cyclically_reduced_word(w); }

bool refines(const Factorisation& f1, const Factorisation& f2) {
    if (!(f1.relator == f2.relator))
        throw std::invalid_argument("relator mismatch");
    for (std::size_t cut : f2.cut_points)
        if (std::find(f1.cut_points.begin(), f1.cut_points.end(), cut) ==
            f1.cut_points.end())
            return false;
    return true;
}

}  // namespace prefixm
