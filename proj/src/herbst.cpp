#include "prefixm/herbst.hpp"

#include <algorithm>
#include <memory>

namespace prefixm {

namespace {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum Kind { kEmpty, kWord, kCup, kCat, kStar } kind;
    Word w;                     // kWord
    std::vector<ExprPtr> kids;  // kCup, kCat, kStar (single child)
};

ExprPtr make_empty() {
    static ExprPtr e = std::make_shared<Expr>(Expr{Expr::kEmpty, {}, {}});
    return e;
}
ExprPtr make_word(Word w) {
    return std::make_shared<Expr>(Expr{Expr::kWord, std::move(w), {}});
}
ExprPtr make_cup(std::vector<ExprPtr> kids) {
    std::vector<ExprPtr> keep;
    for (auto& k : kids)
        if (k->kind != Expr::kEmpty) keep.push_back(std::move(k));
    if (keep.empty()) return make_empty();
    if (keep.size() == 1) return keep[0];
    return std::make_shared<Expr>(Expr{Expr::kCup, {}, std::move(keep)});
}
ExprPtr make_cat(std::vector<ExprPtr> kids) {
    std::vector<ExprPtr> keep;
    for (auto& k : kids) {
        if (k->kind == Expr::kEmpty) return make_empty();
        if (k->kind == Expr::kWord && k->w.empty()) continue;
        if (k->kind == Expr::kCat) {
            for (auto& kk : k->kids) keep.push_back(kk);
            continue;
        }
        keep.push_back(std::move(k));
    }
    if (keep.empty()) return make_word(Word());
    if (keep.size() == 1) return keep[0];
    return std::make_shared<Expr>(Expr{Expr::kCat, {}, std::move(keep)});
}
ExprPtr make_star(ExprPtr k) {
    if (k->kind == Expr::kEmpty || (k->kind == Expr::kWord && k->w.empty()))
        return make_word(Word());
    return std::make_shared<Expr>(Expr{Expr::kStar, {}, {std::move(k)}});
}

// State elimination in ascending state order.
ExprPtr fsa_to_expr(const Fsa& a0) {
    Fsa a = trim(a0);
    if (a.final.empty()) return make_empty();
    std::size_t n = a.num_states;
    std::size_t start = n, accept = n + 1;
    std::map<std::pair<std::size_t, std::size_t>, ExprPtr> r;
    auto add = [&](std::size_t p, std::size_t q, ExprPtr e) {
        if (e->kind == Expr::kEmpty) return;
        auto it = r.find({p, q});
        if (it == r.end())
            r.emplace(std::pair{p, q}, std::move(e));
        else
            it->second = make_cup({it->second, std::move(e)});
    };
    for (const auto& [p, x, q] : a.transitions) {
        Word w(a.alphabet);
        if (x != kEps) w = w.append(letter_of(x));
        add(p, q, make_word(std::move(w)));
    }
    for (std::size_t p : a.initial) add(start, p, make_word(Word(a.alphabet)));
    for (std::size_t p : a.final) add(p, accept, make_word(Word(a.alphabet)));

    auto get = [&](std::size_t p, std::size_t q) -> ExprPtr {
        auto it = r.find({p, q});
        return it == r.end() ? make_empty() : it->second;
    };
    std::vector<std::size_t> alive{start, accept};
    for (std::size_t s = 0; s < n; ++s) alive.push_back(s);
    for (std::size_t s = 0; s < n; ++s) {
        ExprPtr loop = make_star(get(s, s));
        std::vector<std::size_t> others;
        for (std::size_t v : alive)
            if (v != s) others.push_back(v);
        for (std::size_t p : others) {
            ExprPtr in = get(p, s);
            if (in->kind == Expr::kEmpty) continue;
            for (std::size_t q : others) {
                ExprPtr out = get(s, q);
                if (out->kind == Expr::kEmpty) continue;
                add(p, q, make_cat({in, loop, out}));
            }
        }
        for (auto it = r.begin(); it != r.end();)
            if (it->first.first == s || it->first.second == s)
                it = r.erase(it);
            else
                ++it;
        alive.erase(std::find(alive.begin(), alive.end(), s));
    }
    return get(start, accept);
}

// A sequence is an alternating product w1 T1* w2 ... Tn* w(n+1).
struct Sequence {
    std::vector<Word> words;      // n+1 entries
    std::vector<ExprPtr> stars;   // n entries (the starred subexpressions)
};

Sequence word_seq(Word w) { return Sequence{{std::move(w)}, {}}; }

Sequence seq_concat(const Sequence& a, const Sequence& b) {
    Sequence out = a;
    out.words.back() = out.words.back().empty()
                           ? b.words.front()
                           : out.words.back().concat(b.words.front());
    for (std::size_t i = 0; i < b.stars.size(); ++i) {
        out.stars.push_back(b.stars[i]);
        out.words.push_back(b.words[i + 1]);
    }
    return out;
}

void flatten(const ExprPtr& e, const AlphabetPtr& alpha, std::vector<Sequence>& out) {
    switch (e->kind) {
        case Expr::kEmpty:
            return;
        case Expr::kWord:
            out.push_back(word_seq(e->w.alphabet() ? e->w : Word(alpha)));
            return;
        case Expr::kCup:
            for (const auto& k : e->kids) flatten(k, alpha, out);
            return;
        case Expr::kStar:
            out.push_back(Sequence{{Word(alpha), Word(alpha)}, {e->kids[0]}});
            return;
        case Expr::kCat: {
            std::vector<Sequence> acc{word_seq(Word(alpha))};
            for (const auto& k : e->kids) {
                std::vector<Sequence> part;
                flatten(k, alpha, part);
                std::vector<Sequence> next;
                for (const auto& s1 : acc)
                    for (const auto& s2 : part) next.push_back(seq_concat(s1, s2));
                acc = std::move(next);
                if (acc.empty()) return;
            }
            for (auto& s : acc) out.push_back(std::move(s));
            return;
        }
    }
}

ExprPtr rewrite_expr(const ExprPtr& e, const AlphabetPtr& xalpha,
                     const StallingsGraph& A, const AlphabetPtr& yalpha) {
    auto witness = [&](const Word& w) -> Word {
        auto u = A.express(w);
        if (!u)
            throw std::domain_error("word outside subgroup: " + print_word(w));
        return u->alphabet() ? *u : Word(yalpha);
    };
    std::vector<Sequence> seqs;
    flatten(e, xalpha, seqs);
    std::vector<ExprPtr> branches;
    for (const Sequence& s : seqs) {
        std::vector<ExprPtr> factors;
        Word prefix(xalpha);
        for (std::size_t i = 0; i < s.stars.size(); ++i) {
            prefix = prefix.concat(s.words[i]);
            ExprPtr conj = make_cat(
                {make_word(prefix), s.stars[i], make_word(invert(prefix))});
            factors.push_back(make_star(rewrite_expr(conj, xalpha, A, yalpha)));
        }
        Word total = prefix.concat(s.words.back());
        factors.push_back(make_word(witness(total)));
        branches.push_back(make_cat(std::move(factors)));
    }
    return make_cup(std::move(branches));
}

Fsa expr_to_fsa(const ExprPtr& e, const AlphabetPtr& alpha) {
    switch (e->kind) {
        case Expr::kEmpty: {
            Fsa a;
            a.alphabet = alpha;
            a.num_states = 1;
            a.initial = {0};
            return a;
        }
        case Expr::kWord: {
            Word w = e->w.alphabet() ? e->w : Word(alpha);
            return fsa_from_words(alpha, {w});
        }
        case Expr::kCup: {
            Fsa a = expr_to_fsa(e->kids[0], alpha);
            for (std::size_t i = 1; i < e->kids.size(); ++i)
                a = fsa_union(a, expr_to_fsa(e->kids[i], alpha));
            return a;
        }
        case Expr::kCat: {
            Fsa a = expr_to_fsa(e->kids[0], alpha);
            for (std::size_t i = 1; i < e->kids.size(); ++i)
                a = fsa_concat(a, expr_to_fsa(e->kids[i], alpha));
            return a;
        }
        case Expr::kStar:
            return fsa_star(expr_to_fsa(e->kids[0], alpha));
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Fsa herbst_rewrite(const Fsa& a, const StallingsGraph& A) {
    AlphabetPtr yalpha = A.y_alphabet();
    if (!yalpha) yalpha = make_alphabet({Symbol{'y', 1, true}});
    ExprPtr e = fsa_to_expr(a);
    ExprPtr out = rewrite_expr(e, a.alphabet, A, yalpha);
    return expr_to_fsa(out, yalpha);
}

Fsa herbst_embed(const Fsa& b, const AlphabetPtr& target,
                 const std::vector<Word>& assignment) {
    for (std::size_t i = 0; i < b.alphabet->size(); ++i)
        if (i >= assignment.size())
            throw std::invalid_argument("unassigned letter " +
                                        to_string(b.alphabet->at(i)));
    Fsa out;
    out.alphabet = target;
    out.num_states = b.num_states;
    out.initial = b.initial;
    out.final = b.final;
    for (const auto& [p, x, q] : b.transitions) {
        if (x == kEps) {
            out.transitions.insert({p, kEps, q});
            continue;
        }
        Letter l = letter_of(x);
        Word img = assignment[l.sym];
        if (l.sign < 0) img = invert(img);
        if (img.empty()) {
            out.transitions.insert({p, kEps, q});
            continue;
        }
        std::size_t prev = p;
        for (std::size_t i = 0; i + 1 < img.size(); ++i) {
            std::size_t next = out.num_states++;
            out.transitions.insert({prev, sig_of(img[i]), next});
            prev = next;
        }
        out.transitions.insert({prev, sig_of(img[img.size() - 1]), q});
    }
    return out;
}

RationalSet subgroup_intersect(const RationalSet& r, const StallingsGraph& A) {
    return intersect(r, A.rational_set());
}

RationalSet image_under_iso(const RationalSet& r, const StallingsGraph& A,
                            const AlphabetPtr& target,
                            const std::vector<Word>& z_images) {
    // State elimination is hostile to redundant states; minimize first.
    Fsa y = herbst_rewrite(trim(normalize(r.automaton)), A);
    Fsa x = herbst_embed(y, target, z_images);
    return benois_reduce(x);
}

}  // namespace prefixm
