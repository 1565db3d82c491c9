#include "prefixm/parse.hpp"

#include <cctype>
#include <sstream>

namespace prefixm {

namespace {

struct Line {
    std::size_t no = 0;  // 1-based
    std::string key, value;
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// key: value lines, blank lines and #-comments skipped.
std::vector<Line> scan(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
        ++no;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        std::size_t c = s.find(':');
        if (c == std::string::npos)
            throw parse_error(no, "expected 'key: value', got \"" + s + "\"");
        out.push_back(Line{no, trim(s.substr(0, c)), trim(s.substr(c + 1))});
    }
    return out;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

Symbol parse_symbol(std::size_t line, const std::string& tok) {
    if (tok.empty()) throw parse_error(line, "empty generator name");
    if (!std::islower(static_cast<unsigned char>(tok[0])))
        throw parse_error(line, "generator must be a lowercase letter: \"" + tok +
                                    "\"");
    Symbol s{tok[0], 0, false};
    if (tok.size() > 1) {
        if (tok[1] != '{' || tok.back() != '}')
            throw parse_error(line, "bad generator token \"" + tok +
                                        "\" (expected x or x{n})");
        try {
            s.sub = std::stoi(tok.substr(2, tok.size() - 3));
        } catch (const std::exception&) {
            throw parse_error(line, "bad subscript in \"" + tok + "\"");
        }
        s.has_sub = true;
    }
    return s;
}

AlphabetPtr parse_gens_line(std::size_t no, const std::string& value) {
    std::vector<Symbol> syms;
    for (const std::string& tok : split_ws(value))
        syms.push_back(parse_symbol(no, tok));
    if (syms.empty()) throw parse_error(no, "empty generator list");
    try {
        return make_alphabet(std::move(syms));
    } catch (const std::invalid_argument& e) {
        throw parse_error(no, e.what());
    }
}

Word parse_word_at(std::size_t no, const AlphabetPtr& alpha,
                   const std::string& text) {
    try {
        return parse_word(alpha, text);
    } catch (const std::exception& e) {
        throw parse_error(no, e.what());
    }
}

// A factor section: either `free: a b` or `gens:`+`rel:` (one-relator).
struct FactorText {
    std::size_t start = 0;
    std::optional<std::string> free_gens;
    std::optional<Line> gens, rel, kind;
};

GroupHandle build_factor(const FactorText& f, const char* name) {
    if (f.free_gens) {
        if (f.gens || f.rel)
            throw parse_error(f.start,
                              std::string(name) + ": 'free:' excludes gens/rel");
        return free_handle(parse_gens_line(f.start, *f.free_gens));
    }
    if (!f.gens || !f.rel)
        throw parse_error(f.start, std::string(name) +
                                       ": expected 'free: ...' or 'gens:' and "
                                       "'rel:' lines");
    AlphabetPtr alpha = parse_gens_line(f.gens->no, f.gens->value);
    Word rel = parse_word_at(f.rel->no, alpha, f.rel->value);
    auto h = one_relator_handle(alpha, rel);
    if (!h)
        throw parse_error(f.rel->no,
                          std::string(name) +
                              ": no word-problem backend for this relator");
    return *h;
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
    Presentation p;
    std::optional<Line> gens, rel;
    for (const Line& l : scan(text)) {
        if (l.key == "kind") {
            if (l.value == "group")
                p.flavor = Flavor::group;
            else if (l.value == "inverse-monoid")
                p.flavor = Flavor::inverse_monoid;
            else
                throw parse_error(l.no, "kind must be group or inverse-monoid");
        } else if (l.key == "gens") {
            gens = l;
        } else if (l.key == "rel") {
            rel = l;
        } else {
            throw parse_error(l.no, "unknown key \"" + l.key + "\"");
        }
    }
    if (!gens) throw parse_error(0, "missing 'gens:' line");
    if (!rel) throw parse_error(0, "missing 'rel:' line");
    p.alphabet = parse_gens_line(gens->no, gens->value);
    p.relator = parse_word_at(rel->no, p.alphabet, rel->value);
    return p;
}

std::shared_ptr<const AmalgamSpec> parse_amalgam(const std::string& text) {
    FactorText fb, fc;
    FactorText* cur = nullptr;
    std::vector<Line> pairs;
    for (const Line& l : scan(text)) {
        if (l.key == "factorB") {
            cur = &fb;
            fb.start = l.no;
        } else if (l.key == "factorC") {
            cur = &fc;
            fc.start = l.no;
        } else if (l.key == "amalgam") {
            pairs.push_back(l);
        } else if (l.key == "free" || l.key == "gens" || l.key == "rel" ||
                   l.key == "kind") {
            if (!cur)
                throw parse_error(l.no, "'" + l.key +
                                            ":' outside a factor section");
            if (l.key == "free")
                cur->free_gens = l.value;
            else if (l.key == "gens")
                cur->gens = l;
            else if (l.key == "rel")
                cur->rel = l;
            else
                cur->kind = l;
        } else {
            throw parse_error(l.no, "unknown key \"" + l.key + "\"");
        }
    }
    if (!fb.start) throw parse_error(0, "missing 'factorB:' section");
    if (!fc.start) throw parse_error(0, "missing 'factorC:' section");
    auto spec = std::make_shared<AmalgamSpec>();
    spec->B = build_factor(fb, "factorB");
    spec->C = build_factor(fc, "factorC");
    for (const Line& l : pairs) {
        std::size_t eq = l.value.find('=');
        if (eq == std::string::npos)
            throw parse_error(l.no, "expected 'amalgam: u = v'");
        spec->A_in_B.push_back(parse_word_at(l.no, spec->B.generators,
                                             trim(l.value.substr(0, eq))));
        spec->A_in_C.push_back(parse_word_at(l.no, spec->C.generators,
                                             trim(l.value.substr(eq + 1))));
    }
    return spec;
}

std::shared_ptr<const HnnSpec> parse_hnn(const std::string& text) {
    std::optional<Line> base, stable;
    std::vector<Line> pairs;
    for (const Line& l : scan(text)) {
        if (l.key == "base")
            base = l;
        else if (l.key == "stable")
            stable = l;
        else if (l.key == "assoc")
            pairs.push_back(l);
        else
            throw parse_error(l.no, "unknown key \"" + l.key + "\"");
    }
    if (!base) throw parse_error(0, "missing 'base:' line");
    if (!stable) throw parse_error(0, "missing 'stable:' line");
    std::vector<std::string> toks = split_ws(base->value);
    if (toks.empty() || toks[0] != "free")
        throw parse_error(base->no, "base must be 'free <gens>'");
    std::vector<Symbol> syms;
    for (std::size_t i = 1; i < toks.size(); ++i)
        syms.push_back(parse_symbol(base->no, toks[i]));
    if (syms.empty()) throw parse_error(base->no, "base needs generators");
    AlphabetPtr base_alpha;
    try {
        base_alpha = make_alphabet(std::move(syms));
    } catch (const std::invalid_argument& e) {
        throw parse_error(base->no, e.what());
    }
    Symbol t = parse_symbol(stable->no, trim(stable->value));
    std::vector<Word> A, B;
    for (const Line& l : pairs) {
        std::size_t eq = l.value.find('=');
        if (eq == std::string::npos)
            throw parse_error(l.no, "expected 'assoc: u = v'");
        A.push_back(parse_word_at(l.no, base_alpha, trim(l.value.substr(0, eq))));
        B.push_back(parse_word_at(l.no, base_alpha, trim(l.value.substr(eq + 1))));
    }
    try {
        return std::make_shared<HnnSpec>(
            make_hnn(free_handle(base_alpha), t, std::move(A), std::move(B)));
    } catch (const std::invalid_argument& e) {
        throw parse_error(stable->no, e.what());
    }
}

std::vector<Word> parse_gens(const AlphabetPtr& alpha, const std::string& text) {
    std::vector<Word> out;
    std::istringstream in(text);
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
        ++no;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        out.push_back(parse_word_at(no, alpha, s));
    }
    return out;
}

}  // namespace prefixm
