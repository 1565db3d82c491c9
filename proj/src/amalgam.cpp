#include "prefixm/amalgam.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "prefixm/hnn.hpp"

namespace prefixm {

namespace {

long long egcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) { x = 1; y = 0; return a; }
    long long x1, y1;
    long long g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

Word word_power(const Word& w, long long e) {
    Word base = e < 0 ? invert(w) : w;
    long long n = e < 0 ? -e : e;
    Word out(w.alphabet());
    for (long long i = 0; i < n; ++i) out = out.concat(base);
    return out;
}

long long mod_pos(long long a, long long m) { return ((a % m) + m) % m; }

AlphabetPtr y_alphabet(std::size_t k) {
    if (k == 0) return nullptr;
    std::vector<Symbol> ys;
    for (std::size_t i = 0; i < k; ++i)
        ys.push_back(Symbol{'y', static_cast<int>(i + 1), true});
    return make_alphabet(std::move(ys));
}

// Exact rationals for the small eliminations below.
struct Rat {
    long long num = 0, den = 1;
    static Rat make(long long n, long long d) {
        if (d < 0) { n = -n; d = -d; }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g == 0) g = 1;
        return Rat{n / g, d / g};
    }
    bool zero() const { return num == 0; }
    friend Rat operator+(Rat a, Rat b) {
        return make(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rat operator-(Rat a, Rat b) {
        return make(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rat operator*(Rat a, Rat b) {
        return make(a.num * b.num, a.den * b.den);
    }
    friend Rat operator/(Rat a, Rat b) {
        return make(a.num * b.den, a.den * b.num);
    }
};

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

long long rat_floor(Rat r) {
    long long q = r.num / r.den;
    if (r.num % r.den != 0 && r.num < 0) --q;
    return q;
}

std::vector<long long> ab_vec(const Word& w, std::size_t n) {
    std::vector<long long> v(n, 0);
    for (const Letter& l : w.letters()) v[l.sym] += l.sign;
    return v;
}

RatVec to_rat(const std::vector<long long>& v) {
    RatVec out;
    for (long long x : v) out.push_back(Rat{x, 1});
    return out;
}

Rat dot(const RatVec& f, const std::vector<long long>& v) {
    Rat s{0, 1};
    for (std::size_t i = 0; i < f.size(); ++i)
        s = s + f[i] * Rat{v[i], 1};
    return s;
}

// Gauss-Jordan over the first ncols columns; extra columns ride along.
// Returns the pivot column of each of the leading rows.
std::vector<std::size_t> rref(RatMat& m, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col].zero()) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        Rat p = m[row][col];
        for (Rat& x : m[row]) x = x / p;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].zero()) continue;
            Rat f = m[r][col];
            for (std::size_t c = 0; c < m[r].size(); ++c)
                m[r][c] = m[r][c] - f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// Any f with rows[i] . f = rhs[i] for every i, if consistent.
std::optional<RatVec> solve_linear(RatMat rows, const RatVec& rhs,
                                   std::size_t ncols) {
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(rhs[i]);
    auto piv = rref(rows, ncols);
    for (std::size_t r = piv.size(); r < rows.size(); ++r)
        if (!rows[r][ncols].zero()) return std::nullopt;
    RatVec f(ncols, Rat{0, 1});
    for (std::size_t i = 0; i < piv.size(); ++i) f[piv[i]] = rows[i][ncols];
    return f;
}

// Basis of { x : m x = 0 } over the rationals.
RatMat rational_kernel(RatMat m, std::size_t ncols) {
    auto piv = rref(m, ncols);
    std::vector<char> is_piv(ncols, 0);
    for (std::size_t c : piv) is_piv[c] = 1;
    RatMat basis;
    for (std::size_t fr = 0; fr < ncols; ++fr) {
        if (is_piv[fr]) continue;
        RatVec v(ncols, Rat{0, 1});
        v[fr] = Rat{1, 1};
        for (std::size_t i = 0; i < piv.size(); ++i)
            v[piv[i]] = Rat{0, 1} - m[i][fr];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<long long> clear_denominators(const RatVec& v) {
    long long l = 1;
    for (const Rat& x : v) l = std::lcm(l, x.den);
    std::vector<long long> out;
    for (const Rat& x : v) out.push_back(x.num * (l / x.den));
    return out;
}

// Per-factor algorithms for one side of an amalgam, over the filtered
// A-generator pairing.
struct SideCtx {
    const GroupHandle* h = nullptr;
    std::vector<Word> agens;  // this side's A-generators, original coords
    std::optional<FreeLikeView> view;
    std::optional<StallingsGraph> graph;  // view coords
    // cyclic data: subgroup of Z_n generated by the exponents.
    long long n = 0, d = 0;
    Word dexpr;  // y-word with z^d as its value
    AlphabetPtr yalpha;
    // generic data: functional with value 1 on the single A-generator
    // and 0 on the factor's abelianised relations.
    RatVec fvec;

    bool is_trivial(const Word& w) const { return handle_is_trivial(*h, w); }

    std::optional<Word> express_A(const Word& w) const {
        if (view) return graph->express(view->map(w));
        if (h->kind == GroupHandle::kCyclic) {
            long long e = mod_pos(exponent_sum(w, 0), n);
            if (d == 0) return e == 0 ? std::optional<Word>(Word(yalpha)) : std::nullopt;
            if (e % d != 0) return std::nullopt;
            return word_power(dexpr, e / d);
        }
        if (agens.empty())
            return is_trivial(w) ? std::optional<Word>(Word(yalpha))
                                 : std::nullopt;
        // Rank-one A in a general factor: the functional names the only
        // possible exponent and the word problem certifies it.
        Rat e = dot(fvec, ab_vec(w, h->generators->size()));
        if (e.den != 1) return std::nullopt;
        if (!is_trivial(w.concat(word_power(agens[0], -e.num))))
            return std::nullopt;
        return word_power(Word(yalpha, {Letter{0, 1}}), e.num);
    }

    bool in_A(const Word& w) const { return express_A(w).has_value(); }

    // Word on this side (original coords) with the y-word's value.
    Word from_y(const Word& y) const {
        if (!y.alphabet()) return Word(h->generators);
        return free_reduce(substitute(y, agens));
    }

    // Canonical decomposition hw = a . rep with a in A: returns the
    // rep's printable key and the a-part as a y-word.
    std::pair<std::string, Word> peel(const Word& hw) const {
        if (view) {
            Word hv = view->map(hw);
            Word rep = graph->right_coset_rep(hv);
            Word a = free_reduce(hv.concat(invert(rep)));
            auto ya = graph->express(a);
            if (!ya) throw std::logic_error("coset decomposition failed");
            return {print_word(rep), *ya};
        }
        if (h->kind == GroupHandle::kCyclic) {
            long long e = mod_pos(exponent_sum(hw, 0), n);
            long long dd = d == 0 ? n : d;
            long long re = e % dd;
            Word z(h->generators, {Letter{0, 1}});
            auto ya = express_A(word_power(z, e - re));
            return {print_word(word_power(z, re)), *ya};
        }
        if (agens.empty())
            return {handle_canonical_key(*h, hw), Word(yalpha)};
        // floor(f . ab) is constant on words for the same element and
        // shifts by the exponent under left A-multiplication.
        long long lam =
            rat_floor(dot(fvec, ab_vec(hw, h->generators->size())));
        Word rep = free_reduce(word_power(agens[0], -lam).concat(hw));
        return {handle_canonical_key(*h, rep),
                word_power(Word(yalpha, {Letter{0, 1}}), lam)};
    }
};

SideCtx make_side(const GroupHandle& h, std::vector<Word> agens) {
    SideCtx s;
    s.h = &h;
    s.agens = std::move(agens);
    s.view = as_free(h);
    if (s.view) {
        s.graph.emplace(s.view->alpha, s.view->map_all(s.agens));
    } else if (h.kind == GroupHandle::kCyclic) {
        s.n = h.cyclic_order;
        s.d = s.n;  // z^n = 1 is the empty product
        s.yalpha = y_alphabet(s.agens.size());
        s.dexpr = Word(s.yalpha);
        for (std::size_t i = 0; i < s.agens.size(); ++i) {
            long long e = mod_pos(exponent_sum(s.agens[i], 0), s.n);
            long long x, y;
            long long g = egcd(s.d, e, x, y);
            Word yi(s.yalpha, {Letter{static_cast<std::uint32_t>(i), 1}});
            s.dexpr = free_reduce(
                word_power(s.dexpr, x).concat(word_power(yi, y)));
            s.d = g;
        }
    } else {
        s.yalpha = y_alphabet(s.agens.size());
        if (s.agens.size() > 1)
            throw std::logic_error("A-membership backend unavailable");
        if (s.agens.size() == 1) {
            std::size_t n = h.generators->size();
            RatMat rows;
            RatVec rhs;
            for (const auto& r : handle_ab_lattice(h)) {
                rows.push_back(to_rat(r));
                rhs.push_back(Rat{0, 1});
            }
            rows.push_back(to_rat(ab_vec(s.agens[0], n)));
            rhs.push_back(Rat{1, 1});
            auto f = solve_linear(std::move(rows), rhs, n);
            // No functional exists when the generator is torsion in the
            // rational abelianisation; no backend for that case.
            if (!f) throw std::logic_error("A-membership backend unavailable");
            s.fvec = std::move(*f);
        }
    }
    return s;
}

// Reduced generator pairs; a generator trivial on one side must be
// trivial on the other or the pairing is not an isomorphism.
std::pair<std::vector<Word>, std::vector<Word>> filtered_pairs(
    const GroupHandle& hb, const GroupHandle& hc,
    const std::vector<Word>& alphas, const std::vector<Word>& betas) {
    if (alphas.size() != betas.size())
        throw std::invalid_argument("subgroup generator lists differ in length");
    std::vector<Word> fa, fb;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        bool ta = handle_is_trivial(hb, alphas[i]);
        bool tb = handle_is_trivial(hc, betas[i]);
        if (ta != tb)
            throw std::invalid_argument("generator pairing is not injective");
        if (ta) continue;
        fa.push_back(alphas[i]);
        fb.push_back(betas[i]);
    }
    return {fa, fb};
}

constexpr int kSideB = 0;

using PartList = std::vector<std::pair<int, Word>>;

void cap_check(const RationalSet& r, std::size_t cap) {
    if (r.automaton.num_states > cap)
        throw resource_exceeded("automaton exceeds configured state cap");
}

}  // namespace

Word FreeLikeView::map(const Word& w) const {
    if (images.empty()) return free_reduce(w);
    return free_reduce(substitute(w, images));
}

std::vector<Word> FreeLikeView::map_all(const std::vector<Word>& ws) const {
    std::vector<Word> out;
    for (const Word& w : ws) out.push_back(map(w));
    return out;
}

std::optional<FreeLikeView> as_free(const GroupHandle& g) {
    if (g.kind == GroupHandle::kFree) return FreeLikeView{g.generators, {}};
    if (g.kind == GroupHandle::kOneRelatorFreeDetected)
        return FreeLikeView{g.free_basis, g.basis_images};
    return std::nullopt;
}

GroupHandle free_handle(const AlphabetPtr& alpha) {
    GroupHandle g;
    g.kind = GroupHandle::kFree;
    g.generators = alpha;
    g.capabilities = {true, true, true, true};
    return g;
}

GroupHandle cyclic_handle(const AlphabetPtr& alpha, unsigned order) {
    if (!alpha || alpha->size() != 1)
        throw std::invalid_argument("cyclic group needs exactly one generator");
    if (order == 0)
        throw std::invalid_argument("infinite cyclic is the free rank-1 case");
    GroupHandle g;
    g.kind = GroupHandle::kCyclic;
    g.generators = alpha;
    g.cyclic_order = order;
    g.capabilities = {true, true, true, false};
    return g;
}

std::optional<GroupHandle> free_detect_handle(const AlphabetPtr& alpha,
                                              const Word& relator) {
    std::vector<std::size_t> count(alpha->size(), 0);
    for (const Letter& l : relator.letters()) ++count[l.sym];
    std::optional<std::size_t> once;
    for (std::size_t s = 0; s < count.size(); ++s)
        if (count[s] == 1) { once = s; break; }
    if (!once) return std::nullopt;
    std::vector<Symbol> basis_syms;
    std::vector<std::size_t> to_basis(alpha->size(), SIZE_MAX);
    for (std::size_t s = 0; s < alpha->size(); ++s) {
        if (s == *once) continue;
        to_basis[s] = basis_syms.size();
        basis_syms.push_back(alpha->at(s));
    }
    // An empty basis (rank-1 alphabet) is a legitimate trivial group.
    AlphabetPtr basis = basis_syms.empty()
                            ? std::make_shared<const Alphabet>()
                            : make_alphabet(basis_syms);
    std::size_t pos = 0;
    while (relator[pos].sym != *once) ++pos;
    // relator = p x^s q = 1, so x^s = p^-1 q^-1.
    auto reindex = [&](const Word& w) {
        std::vector<Letter> ls;
        for (const Letter& l : w.letters())
            ls.push_back(Letter{static_cast<std::uint32_t>(to_basis[l.sym]), l.sign});
        return Word(basis, std::move(ls));
    };
    Word p = reindex(relator.subword(0, pos));
    Word q = reindex(relator.subword(pos + 1, relator.size()));
    Word xval = free_reduce(invert(p).concat(invert(q)));
    if (relator[pos].sign < 0) xval = invert(xval);

    GroupHandle g;
    g.kind = GroupHandle::kOneRelatorFreeDetected;
    g.generators = alpha;
    g.free_basis = basis;
    for (std::size_t s = 0; s < alpha->size(); ++s) {
        if (s == *once) {
            g.basis_images.push_back(xval);
        } else {
            g.basis_images.push_back(
                Word(basis, {Letter{static_cast<std::uint32_t>(to_basis[s]), 1}}));
        }
    }
    g.capabilities = {true, true, true, true};
    return g;
}

GroupHandle amalgam_handle(std::shared_ptr<const AmalgamSpec> spec) {
    GroupHandle g;
    g.kind = GroupHandle::kAmalgam;
    std::vector<Symbol> all = spec->B.generators->letters();
    for (const Symbol& s : spec->C.generators->letters()) {
        if (spec->B.generators->contains(s))
            throw std::invalid_argument("factor alphabets must be disjoint");
        all.push_back(s);
    }
    g.generators = make_alphabet(std::move(all));
    g.amalgam = std::move(spec);
    g.capabilities = {true, false, false, false};
    return g;
}

GroupHandle hnn_handle(std::shared_ptr<const HnnSpec> spec) {
    GroupHandle g;
    g.kind = GroupHandle::kHnn;
    g.generators = spec->combined;
    g.hnn = std::move(spec);
    g.capabilities = {true, false, false, false};
    return g;
}

GroupHandle rewritten_handle(const AlphabetPtr& alpha,
                             std::shared_ptr<const GroupHandle> host,
                             std::vector<Word> images) {
    if (!alpha || images.size() != alpha->size())
        throw std::invalid_argument("one image per generator required");
    GroupHandle g;
    g.kind = GroupHandle::kRewritten;
    g.generators = alpha;
    g.basis_images = std::move(images);
    g.host = std::move(host);
    g.capabilities = g.host->capabilities;
    g.capabilities.rational_intersection = false;
    return g;
}

namespace {

// Image of a word under the generator substitution of a kRewritten
// handle, kept in the host's coordinates.
Word host_image(const GroupHandle& g, const Word& w) {
    if (w.empty()) return Word(g.host->generators);
    return substitute(w, g.basis_images);
}

}  // namespace

SyllableForm split_syllables(const AmalgamSpec& spec, const AlphabetPtr& alpha,
                             const Word& w) {
    std::vector<Word> parts;
    int side = kSideB;
    std::vector<Letter> run;
    auto flush = [&](int next_side) {
        const AlphabetPtr& fa =
            side == kSideB ? spec.B.generators : spec.C.generators;
        std::vector<Letter> mapped;
        for (const Letter& l : run) {
            Symbol s = alpha->at(l.sym);
            mapped.push_back(
                Letter{static_cast<std::uint32_t>(*fa->index_of(s)), l.sign});
        }
        parts.push_back(Word(fa, std::move(mapped)));
        run.clear();
        side = next_side;
    };
    for (const Letter& l : w.letters()) {
        Symbol s = alpha->at(l.sym);
        int owner = spec.B.generators->contains(s) ? kSideB : 1 - kSideB;
        if (owner != side) flush(owner);
        run.push_back(l);
    }
    flush(1 - side);
    return make_syllables(spec, std::move(parts));
}

bool handle_is_trivial(const GroupHandle& g, const Word& w) {
    if (auto v = as_free(g)) return v->map(w).empty();
    switch (g.kind) {
        case GroupHandle::kCyclic:
            return mod_pos(exponent_sum(w, 0), g.cyclic_order) == 0;
        case GroupHandle::kAmalgam:
            return is_trivial(*g.amalgam,
                              split_syllables(*g.amalgam, g.generators, w));
        case GroupHandle::kHnn:
            return is_trivial(*g.hnn, w);
        case GroupHandle::kRewritten:
            return handle_is_trivial(*g.host, host_image(g, w));
        default:
            throw std::logic_error("word problem backend unavailable");
    }
}

bool handle_subgroup_member(const GroupHandle& g,
                            const std::vector<Word>& sub_gens, const Word& w) {
    return handle_express(g, sub_gens, w).has_value();
}

std::optional<Word> handle_express(const GroupHandle& g,
                                   const std::vector<Word>& sub_gens,
                                   const Word& w) {
    if (auto v = as_free(g)) {
        StallingsGraph sg(v->alpha, v->map_all(sub_gens));
        return sg.express(v->map(w));
    }
    if (g.kind == GroupHandle::kCyclic) {
        SideCtx s = make_side(g, sub_gens);
        return s.express_A(w);
    }
    if (g.kind == GroupHandle::kRewritten) {
        std::vector<Word> sg;
        for (const Word& u : sub_gens) sg.push_back(host_image(g, u));
        return handle_express(*g.host, sg, host_image(g, w));
    }
    throw std::logic_error("subgroup membership backend unavailable");
}

bool handle_monoid_member(const GroupHandle& g, const std::vector<Word>& gens,
                          const Word& w) {
    if (auto v = as_free(g))
        return member(rational_monoid(v->alpha, v->map_all(gens)), v->map(w));
    if (g.kind == GroupHandle::kCyclic)
        // Finite group: the generated monoid is the generated subgroup.
        return handle_subgroup_member(g, gens, w);
    if (g.kind == GroupHandle::kRewritten) {
        std::vector<Word> sg;
        for (const Word& u : gens) sg.push_back(host_image(g, u));
        return handle_monoid_member(*g.host, sg, host_image(g, w));
    }
    throw std::logic_error("submonoid membership backend unavailable");
}

std::string handle_canonical_key(const GroupHandle& g, const Word& w) {
    if (auto v = as_free(g)) return "F:" + print_word(v->map(w));
    switch (g.kind) {
        case GroupHandle::kCyclic:
            return "Z:" + std::to_string(
                              mod_pos(exponent_sum(w, 0), g.cyclic_order));
        case GroupHandle::kAmalgam:
            return canonical_key(*g.amalgam,
                                 split_syllables(*g.amalgam, g.generators, w));
        case GroupHandle::kHnn:
            return canonical_key(*g.hnn, w);
        case GroupHandle::kRewritten:
            return handle_canonical_key(*g.host, host_image(g, w));
        default:
            throw std::logic_error("canonical form backend unavailable");
    }
}

std::vector<std::vector<long long>> handle_ab_lattice(const GroupHandle& g) {
    std::size_t n = g.generators ? g.generators->size() : 0;
    auto integer_rows = [](const RatMat& m) {
        std::vector<std::vector<long long>> out;
        for (const RatVec& v : m) {
            std::vector<long long> r = clear_denominators(v);
            if (std::any_of(r.begin(), r.end(), [](long long x) { return x; }))
                out.push_back(std::move(r));
        }
        return out;
    };
    switch (g.kind) {
        case GroupHandle::kFree:
            return {};
        case GroupHandle::kCyclic:
            return {{static_cast<long long>(g.cyclic_order)}};
        case GroupHandle::kOneRelatorFreeDetected: {
            // Left kernel of the basis-image exponent matrix.
            std::size_t r = g.free_basis ? g.free_basis->size() : 0;
            RatMat m(r, RatVec(n, Rat{0, 1}));
            for (std::size_t i = 0; i < n; ++i) {
                auto v = ab_vec(g.basis_images[i], r);
                for (std::size_t j = 0; j < r; ++j) m[j][i] = Rat{v[j], 1};
            }
            return integer_rows(rational_kernel(std::move(m), n));
        }
        case GroupHandle::kAmalgam: {
            const AmalgamSpec& sp = *g.amalgam;
            std::size_t nb = sp.B.generators->size();
            std::vector<std::vector<long long>> rows;
            for (auto r : handle_ab_lattice(sp.B)) {
                r.resize(n, 0);
                rows.push_back(std::move(r));
            }
            for (const auto& r : handle_ab_lattice(sp.C)) {
                std::vector<long long> row(n, 0);
                for (std::size_t j = 0; j < r.size(); ++j) row[nb + j] = r[j];
                rows.push_back(std::move(row));
            }
            for (std::size_t i = 0; i < sp.A_in_B.size(); ++i) {
                std::vector<long long> row(n, 0);
                auto a = ab_vec(sp.A_in_B[i], nb);
                auto b = ab_vec(sp.A_in_C[i], n - nb);
                for (std::size_t j = 0; j < a.size(); ++j) row[j] = a[j];
                for (std::size_t j = 0; j < b.size(); ++j) row[nb + j] = -b[j];
                rows.push_back(std::move(row));
            }
            return rows;
        }
        case GroupHandle::kHnn: {
            const HnnSpec& sp = *g.hnn;
            std::size_t nb =
                sp.base.generators ? sp.base.generators->size() : 0;
            std::vector<std::vector<long long>> rows;
            for (auto r : handle_ab_lattice(sp.base)) {
                r.resize(n, 0);
                rows.push_back(std::move(r));
            }
            // t^-1 u t = phi(u) kills nothing in the t coordinate.
            for (std::size_t i = 0; i < sp.A_gens.size(); ++i) {
                std::vector<long long> row(n, 0);
                auto a = ab_vec(sp.A_gens[i], nb);
                auto b = ab_vec(sp.B_gens[i], nb);
                for (std::size_t j = 0; j < nb; ++j) row[j] = a[j] - b[j];
                rows.push_back(std::move(row));
            }
            return rows;
        }
        case GroupHandle::kRewritten: {
            // z is a relation iff z^T M lies in the span of the host's
            // lattice: kernel of [M^T | -L^T] projected to the z block.
            std::size_t m =
                g.host->generators ? g.host->generators->size() : 0;
            auto lh = handle_ab_lattice(*g.host);
            std::size_t k = lh.size();
            RatMat mat(m, RatVec(n + k, Rat{0, 1}));
            for (std::size_t i = 0; i < n; ++i) {
                auto v = ab_vec(g.basis_images[i], m);
                for (std::size_t j = 0; j < m; ++j) mat[j][i] = Rat{v[j], 1};
            }
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t j = 0; j < m; ++j)
                    mat[j][n + c] = Rat{-lh[c][j], 1};
            RatMat ker = rational_kernel(std::move(mat), n + k);
            for (RatVec& v : ker) v.resize(n);
            return integer_rows(ker);
        }
    }
    throw std::logic_error("abelianisation backend unavailable");
}

SyllableForm make_syllables(const AmalgamSpec& spec, std::vector<Word> parts) {
    if (parts.size() % 2) parts.push_back(Word(spec.C.generators));
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const AlphabetPtr& expect =
            i % 2 == 0 ? spec.B.generators : spec.C.generators;
        if (parts[i].alphabet() && !(*parts[i].alphabet() == *expect))
            throw std::invalid_argument("syllable on the wrong side");
        if (!parts[i].alphabet()) parts[i] = Word(expect);
    }
    SyllableForm f;
    f.parts = std::move(parts);
    if (f.parts.empty())
        f.parts = {Word(spec.B.generators), Word(spec.C.generators)};
    return f;
}

SyllableForm invert(const AmalgamSpec& spec, const SyllableForm& w) {
    std::vector<Word> parts;
    parts.push_back(Word(spec.B.generators));
    for (std::size_t i = w.parts.size(); i-- > 0;)
        parts.push_back(invert(w.parts[i]));
    parts.push_back(Word(spec.C.generators));
    return make_syllables(spec, std::move(parts));
}

SyllableForm concat(const AmalgamSpec& spec, const SyllableForm& a,
                    const SyllableForm& b) {
    std::vector<Word> parts = a.parts;
    parts.insert(parts.end(), b.parts.begin(), b.parts.end());
    return make_syllables(spec, std::move(parts));
}

namespace {

// Alternating list with trivial syllables dropped and same-side
// neighbours merged.
void normalise_parts(const SideCtx& sb, const SideCtx& sc, PartList& parts) {
    for (;;) {
        bool changed = false;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const SideCtx& s = parts[i].first == kSideB ? sb : sc;
            if (s.is_trivial(parts[i].second)) {
                parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
            if (i + 1 < parts.size() && parts[i].first == parts[i + 1].first) {
                parts[i].second = parts[i].second.concat(parts[i + 1].second);
                parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i + 1));
                changed = true;
                break;
            }
        }
        if (!changed) return;
    }
}

PartList reduced_parts(const AmalgamSpec& spec, const SyllableForm& w) {
    auto [fa, fb] = filtered_pairs(spec.B, spec.C, spec.A_in_B, spec.A_in_C);
    SideCtx sb = make_side(spec.B, fa);
    SideCtx sc = make_side(spec.C, fb);
    PartList parts;
    for (std::size_t i = 0; i < w.parts.size(); ++i)
        parts.push_back({i % 2 == 0 ? kSideB : 1 - kSideB, w.parts[i]});
    for (;;) {
        normalise_parts(sb, sc, parts);
        bool changed = false;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const SideCtx& s = parts[i].first == kSideB ? sb : sc;
            auto y = s.express_A(parts[i].second);
            if (!y) continue;
            if (parts.size() == 1 && parts[i].first == kSideB) break;
            const SideCtx& other = parts[i].first == kSideB ? sc : sb;
            parts[i] = {1 - parts[i].first, other.from_y(*y)};
            changed = true;
            break;
        }
        if (!changed) return parts;
    }
}

}  // namespace

namespace {

// Deterministic spelling of a syllable within its factor.
Word normal_syllable(const GroupHandle& h, const Word& w) {
    if (h.kind == GroupHandle::kCyclic)
        return word_power(Word(h.generators, {Letter{0, 1}}),
                          mod_pos(exponent_sum(w, 0), h.cyclic_order));
    return free_reduce(w);
}

}  // namespace

SyllableForm reduce_form(const AmalgamSpec& spec, const SyllableForm& w) {
    PartList parts = reduced_parts(spec, w);
    for (auto& [side, word] : parts)
        word = normal_syllable(side == kSideB ? spec.B : spec.C, word);
    std::vector<Word> out;
    for (const auto& [side, word] : parts) {
        int expect = out.size() % 2 == 0 ? kSideB : 1 - kSideB;
        if (side != expect)
            out.push_back(Word(expect == kSideB ? spec.B.generators
                                                : spec.C.generators));
        out.push_back(word);
    }
    SyllableForm f = make_syllables(spec, std::move(out));
    f.reduced_flag = true;
    return f;
}

bool is_trivial(const AmalgamSpec& spec, const SyllableForm& w) {
    return reduced_parts(spec, w).empty();
}

bool member_thmA(const AmalgamSpec& spec, const std::vector<Word>& MB_gens,
                 const std::vector<Word>& MC_gens, const SyllableForm& query) {
    SyllableForm r = reduce_form(spec, query);
    for (std::size_t i = 0; i < r.parts.size(); ++i) {
        const GroupHandle& h = i % 2 == 0 ? spec.B : spec.C;
        const std::vector<Word>& gens = i % 2 == 0 ? MB_gens : MC_gens;
        if (handle_is_trivial(h, r.parts[i])) continue;
        if (!handle_monoid_member(h, gens, r.parts[i])) return false;
    }
    return true;
}

bool member_thmB(const AmalgamSpec& spec, const std::vector<Word>& MB_gens,
                 const std::vector<Word>& MC_gens, const SyllableForm& query,
                 std::size_t automaton_cap) {
    auto vB = as_free(spec.B), vC = as_free(spec.C);
    if (!vB || !vC)
        throw std::logic_error("rational intersection backend unavailable");
    auto [fa, fb] = filtered_pairs(spec.B, spec.C, spec.A_in_B, spec.A_in_C);
    std::vector<Word> aB = vB->map_all(fa), aC = vC->map_all(fb);
    StallingsGraph GA_B(vB->alpha, aB), GA_C(vC->alpha, aC);

    SyllableForm r = reduce_form(spec, query);
    std::size_t n = r.parts.size() / 2;

    auto inv_all = [](std::vector<Word> ws) {
        for (Word& w : ws) w = invert(w);
        return ws;
    };
    RationalSet MBinv = rational_monoid(vB->alpha, inv_all(vB->map_all(MB_gens)));
    RationalSet MCinv = rational_monoid(vC->alpha, inv_all(vC->map_all(MC_gens)));
    RationalSet MC = rational_monoid(vC->alpha, vC->map_all(MC_gens));

    RationalSet Q =
        benois_reduce(fsa_from_words(vB->alpha, {Word(vB->alpha)}));
    for (std::size_t k = 1; k <= n; ++k) {
        Word bk = vB->map(r.parts[2 * k - 2]);
        RationalSet R = benois_reduce(fsa_concat(
            fsa_concat(MBinv.automaton, Q.automaton),
            fsa_from_words(vB->alpha, {bk})));
        cap_check(R, automaton_cap);
        RationalSet QA = subgroup_intersect(R, GA_B);
        Q = image_under_iso(QA, GA_B, vC->alpha, aC);
        cap_check(Q, automaton_cap);
        if (k < n) {
            Word ck = vC->map(r.parts[2 * k - 1]);
            R = benois_reduce(fsa_concat(fsa_concat(MCinv.automaton, Q.automaton),
                                         fsa_from_words(vC->alpha, {ck})));
            cap_check(R, automaton_cap);
            QA = subgroup_intersect(R, GA_C);
            Q = image_under_iso(QA, GA_C, vB->alpha, aB);
            cap_check(Q, automaton_cap);
        }
    }
    if (n == 0) return true;  // identity
    Word cn = vC->map(r.parts[2 * n - 1]);
    RationalSet Qinv{trim(fsa_reverse_invert(Q.automaton)), vC->alpha, true};
    RationalSet fin = benois_reduce(fsa_concat(Qinv.automaton, MC.automaton));
    cap_check(fin, automaton_cap);
    return member(fin, cn);
}

std::string canonical_key(const AmalgamSpec& spec, const SyllableForm& w) {
    auto [fa, fb] = filtered_pairs(spec.B, spec.C, spec.A_in_B, spec.A_in_C);
    SideCtx sb = make_side(spec.B, fa);
    SideCtx sc = make_side(spec.C, fb);
    PartList parts = reduced_parts(spec, w);

    // Right-to-left: peel a canonical right-coset representative off
    // each syllable and push the A-part leftwards.
    Word carry;  // y-word
    std::vector<std::pair<int, std::string>> reps;
    for (std::size_t i = parts.size(); i-- > 0;) {
        const SideCtx& s = parts[i].first == kSideB ? sb : sc;
        Word h = free_reduce(parts[i].second.concat(s.from_y(carry)));
        if (auto y = s.express_A(h)) {
            carry = *y;
            continue;
        }
        auto [key, a] = s.peel(h);
        carry = a;
        reps.push_back({parts[i].first, std::move(key)});
    }
    std::ostringstream out;
    out << "A=" << handle_canonical_key(*sb.h, sb.from_y(carry));
    for (std::size_t i = reps.size(); i-- > 0;)
        out << (reps[i].first == kSideB ? "|B:" : "|C:") << reps[i].second;
    return out.str();
}

}  // namespace prefixm
