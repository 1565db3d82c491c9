#include "prefixm/solvers.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "prefixm/oracle.hpp"

namespace prefixm {

namespace {

Word letter_word(const AlphabetPtr& a, std::uint32_t sym, int sign = 1) {
    return Word(a, {Letter{sym, static_cast<std::int8_t>(sign)}});
}

Word word_power(const Word& w, int e) {
    Word base = e < 0 ? invert(w) : w;
    Word out(w.alphabet());
    for (int i = 0; i < std::abs(e); ++i) out = out.concat(base);
    return out;
}

// Same letters re-addressed in another alphabet containing them.
Word reindex(const Word& w, const AlphabetPtr& to) {
    std::vector<Letter> ls;
    for (const Letter& l : w.letters()) {
        auto i = to->index_of(w.alphabet()->at(l.sym));
        if (!i) throw std::logic_error("letter outside target alphabet");
        ls.push_back(Letter{static_cast<std::uint32_t>(*i), l.sign});
    }
    return Word(to, std::move(ls));
}

std::set<std::uint32_t> content(const Word& w) {
    std::set<std::uint32_t> s;
    for (const Letter& l : w.letters()) s.insert(l.sym);
    return s;
}

Word rotate(const Word& w, std::size_t k) {
    return w.subword(k, w.size()).concat(w.subword(0, k));
}

std::vector<Word> dedup_nonempty(const std::vector<Word>& ws) {
    std::set<Word> seen;
    std::vector<Word> out;
    for (const Word& w : ws)
        if (!w.empty() && seen.insert(w).second) out.push_back(w);
    return out;
}

// Image of a query under a kRewritten handle's generator substitution.
Word to_host(const GroupHandle& g, const Word& q) {
    if (q.empty()) return Word(g.host->generators);
    return free_reduce(substitute(q, g.basis_images));
}

bool distinct_base_chars(const AlphabetPtr& a) {
    std::set<char> seen;
    for (const Symbol& s : a->letters())
        if (!seen.insert(s.base).second) return false;
    return true;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string out;
    for (const std::string& x : xs) {
        if (!out.empty()) out += sep;
        out += x;
    }
    return out;
}

// ---------------------------------------------------------------------------
// One-relator word-problem backend
// ---------------------------------------------------------------------------

// HNN splitting over the stable letter t (zero exponent sum): the
// relator is rewritten over the subscripted letters x_l = t^-l x t^l,
// the vertex group must come out free, and the associated subgroups
// are the adjacent-level letter spans.
std::optional<GroupHandle> try_moldavanskii(const AlphabetPtr& alpha,
                                            const Word& r, std::uint32_t t) {
    RhoImage rh = rho(r, t);
    if (rh.image.empty() || !is_cyclically_reduced_word(rh.image))
        return std::nullopt;

    std::vector<Symbol> base_syms;
    for (const auto& [c, mm] : rh.bounds)
        for (int l = mm.first; l <= mm.second; ++l)
            base_syms.push_back(Symbol{c, l, true});
    for (std::size_t i = 0; i < alpha->size(); ++i)
        if (i != t && !content(r).count(static_cast<std::uint32_t>(i)))
            base_syms.push_back(alpha->at(i));
    AlphabetPtr base_alpha = make_alphabet(std::move(base_syms));

    Word base_rel = reindex(rh.image, base_alpha);
    auto base = free_detect_handle(base_alpha, base_rel);
    if (!base) return std::nullopt;

    std::vector<Word> A, B;
    for (const auto& [c, mm] : rh.bounds)
        for (int l = mm.first; l < mm.second; ++l) {
            A.push_back(letter_word(base_alpha, static_cast<std::uint32_t>(
                                                    *base_alpha->index_of(Symbol{c, l, true}))));
            B.push_back(letter_word(base_alpha, static_cast<std::uint32_t>(
                                                    *base_alpha->index_of(Symbol{c, l + 1, true}))));
        }

    std::shared_ptr<const HnnSpec> sp;
    try {
        sp = std::make_shared<HnnSpec>(
            make_hnn(*base, alpha->at(t), std::move(A), std::move(B)));
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
    GroupHandle hh = hnn_handle(sp);
    AlphabetPtr comb = hh.generators;
    std::uint32_t tc = static_cast<std::uint32_t>(*comb->index_of(alpha->at(t)));

    std::vector<Word> images;
    for (std::size_t i = 0; i < alpha->size(); ++i) {
        if (i == t) {
            images.push_back(letter_word(comb, tc));
            continue;
        }
        auto it = rh.bounds.find(alpha->at(i).base);
        if (it == rh.bounds.end()) {
            images.push_back(letter_word(
                comb, static_cast<std::uint32_t>(*comb->index_of(alpha->at(i)))));
            continue;
        }
        int l = std::clamp(0, it->second.first, it->second.second);
        Word xl = letter_word(comb, static_cast<std::uint32_t>(*comb->index_of(
                                        Symbol{alpha->at(i).base, l, true})));
        images.push_back(word_power(letter_word(comb, tc), l)
                             .concat(xl)
                             .concat(word_power(letter_word(comb, tc), -l)));
    }
    return rewritten_handle(alpha, std::make_shared<GroupHandle>(std::move(hh)),
                            std::move(images));
}

std::optional<GroupHandle> one_relator_core(const AlphabetPtr& alpha, Word r,
                                            int depth) {
    r = cyclic_reduce(free_reduce(r)).core;
    if (r.empty()) return free_handle(alpha);
    if (auto h = free_detect_handle(alpha, r)) return h;

    std::set<std::uint32_t> occ = content(r);
    if (occ.size() == 1) {
        // s^e with |e| >= 2 (a single occurrence is free-detected):
        // finite cyclic factor times the free group on the rest.
        std::uint32_t s = *occ.begin();
        unsigned e = static_cast<unsigned>(std::abs(exponent_sum(r, s)));
        GroupHandle cy = cyclic_handle(make_alphabet({alpha->at(s)}), e);
        if (alpha->size() == 1) return cy;
        std::vector<Symbol> rest;
        for (std::size_t i = 0; i < alpha->size(); ++i)
            if (i != s) rest.push_back(alpha->at(i));
        auto sp = std::make_shared<AmalgamSpec>();
        sp->B = std::move(cy);
        sp->C = free_handle(make_alphabet(std::move(rest)));
        GroupHandle prod = amalgam_handle(sp);
        AlphabetPtr comb = prod.generators;
        std::vector<Word> images;
        for (std::size_t i = 0; i < alpha->size(); ++i)
            images.push_back(letter_word(
                comb, static_cast<std::uint32_t>(*comb->index_of(alpha->at(i)))));
        return rewritten_handle(alpha,
                                std::make_shared<GroupHandle>(std::move(prod)),
                                std::move(images));
    }

    for (std::uint32_t t : occ) {
        if (exponent_sum(r, t) != 0) continue;
        for (std::size_t k = 0; k < r.size(); ++k)
            if (auto h = try_moldavanskii(alpha, rotate(r, k), t)) return h;
    }

    if (depth <= 0) return std::nullopt;

    // No generator has zero exponent sum in a usable position: run a
    // Euclidean sequence of Nielsen moves p -> p q^k to create one,
    // tracking the induced automorphism so the original generators can
    // be rewritten into the transformed presentation.
    for (std::uint32_t p : occ)
        for (std::uint32_t q : occ) {
            if (p == q) continue;
            if (exponent_sum(r, p) == 0 || exponent_sum(r, q) == 0) continue;
            Word rr = r;
            std::vector<Word> im;
            for (std::size_t i = 0; i < alpha->size(); ++i)
                im.push_back(letter_word(alpha, static_cast<std::uint32_t>(i)));
            std::uint32_t cp = p, cq = q;
            bool progress = false, abandoned = false;
            for (int iter = 0; iter < 64; ++iter) {
                int ep = exponent_sum(rr, cp), eq = exponent_sum(rr, cq);
                if (ep == 0 || eq == 0) break;
                int k = -(eq / ep);
                if (k == 0) {
                    std::swap(cp, cq);
                    continue;
                }
                std::vector<Word> sub;
                for (std::size_t i = 0; i < alpha->size(); ++i)
                    sub.push_back(letter_word(alpha, static_cast<std::uint32_t>(i)));
                sub[cp] = letter_word(alpha, cp).concat(
                    word_power(letter_word(alpha, cq), k));
                rr = cyclic_reduce(free_reduce(substitute(rr, sub))).core;
                for (Word& w2 : im) w2 = free_reduce(substitute(w2, sub));
                progress = true;
                if (rr.size() > 4096) {
                    abandoned = true;
                    break;
                }
            }
            if (!progress || abandoned) continue;
            if (auto h = one_relator_core(alpha, rr, depth - 1))
                return rewritten_handle(
                    alpha, std::make_shared<GroupHandle>(std::move(*h)),
                    std::move(im));
        }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Deciders
// ---------------------------------------------------------------------------

struct DeciderBase : PrefixDecider {
    GroupHandle g;           // kRewritten model over the presentation alphabet
    std::vector<Word> gens;  // deduplicated non-empty prefixes of the relator
    const GroupHandle& group() const override { return g; }
    const std::vector<Word>& monoid_gens() const override { return gens; }
};

struct MarkerDecider final : DeciderBase {
    std::shared_ptr<const AmalgamSpec> spec;  // null: P_w is the whole group
    std::optional<RationalSet> qmon;          // Mon<Q> over the letter factor

    MemberResult member(const Word& query, std::size_t) const override {
        MemberResult r;
        r.method = "marker: free-product syllable criterion";
        if (!spec) {
            r.answer = MemberResult::yes;
            r.note = "prefix monoid is the whole group";
            return r;
        }
        Word hw = to_host(g, query);
        SyllableForm f =
            reduce_form(*spec, split_syllables(*spec, g.host->generators, hw));
        for (std::size_t i = 0; i < f.parts.size(); i += 2)
            if (!f.parts[i].empty() && !prefixm::member(*qmon, f.parts[i])) {
                r.answer = MemberResult::no;
                return r;
            }
        r.answer = MemberResult::yes;
        return r;
    }
};

struct DisjointDecider final : DeciderBase {
    struct Level {
        std::shared_ptr<const AmalgamSpec> spec;
        AlphabetPtr combined;  // alphabet of the words entering the level
        RationalSet bmon;      // letter-side syllable monoid
    };
    std::vector<Level> levels;                  // outermost first
    std::shared_ptr<const AmalgamSpec> bottom;  // null: bottom factor is H itself
    AlphabetPtr bottom_alpha;

    bool level_ok(std::size_t i, const Word& w) const {
        if (i == levels.size()) {
            if (!bottom) return true;
            SyllableForm f =
                reduce_form(*bottom, split_syllables(*bottom, bottom_alpha, w));
            for (std::size_t j = 0; j < f.parts.size(); j += 2)
                if (!f.parts[j].empty()) return false;
            return true;
        }
        const Level& lv = levels[i];
        SyllableForm f =
            reduce_form(*lv.spec, split_syllables(*lv.spec, lv.combined, w));
        for (std::size_t j = 0; j < f.parts.size(); ++j) {
            if (f.parts[j].empty()) continue;
            if (j % 2 == 0) {
                if (!prefixm::member(lv.bmon, f.parts[j])) return false;
            } else if (!level_ok(i + 1, f.parts[j])) {
                return false;
            }
        }
        return true;
    }

    MemberResult member(const Word& query, std::size_t) const override {
        MemberResult r;
        r.method = "disjoint: amalgam-tower syllable recursion";
        r.answer =
            level_ok(0, to_host(g, query)) ? MemberResult::yes : MemberResult::no;
        return r;
    }
};

struct CycPinchedDecider final : DeciderBase {
    std::shared_ptr<const AmalgamSpec> spec;
    std::vector<Word> mb, mc;  // prefix generators per factor

    MemberResult member(const Word& query, std::size_t cap) const override {
        MemberResult r;
        r.method = "cyc-pinched: amalgam rational-chain membership";
        Word hw = to_host(g, query);
        try {
            r.answer = member_thmB(*spec, mb, mc,
                                   split_syllables(*spec, g.host->generators, hw),
                                   cap)
                           ? MemberResult::yes
                           : MemberResult::no;
        } catch (const resource_exceeded& e) {
            r.answer = MemberResult::resources;
            r.note = e.what();
        }
        return r;
    }
};

struct HnnDecider final : DeciderBase {
    std::shared_ptr<const HnnSpec> spec;
    std::vector<std::vector<Word>> W, Wp;
    bool inverted = false;
    std::string method_name;
    mutable NSetCache cache;

    MemberResult member(const Word& query, std::size_t cap) const override {
        MemberResult r;
        r.method = method_name;
        Word hw = to_host(g, query);
        try {
            bool in = inverted ? member_thmD_inverted(*spec, W, Wp, hw, &cache, cap)
                               : member_thmD(*spec, W, Wp, hw, &cache, cap);
            r.answer = in ? MemberResult::yes : MemberResult::no;
        } catch (const resource_exceeded& e) {
            r.answer = MemberResult::resources;
            r.note = e.what();
        }
        return r;
    }
};

// Classified shape whose membership machinery is nevertheless missing.
struct StubDecider final : DeciderBase {
    std::string why;
    MemberResult member(const Word&, std::size_t) const override {
        MemberResult r;
        r.answer = MemberResult::unsupported;
        r.method = "unsupported";
        r.note = why;
        return r;
    }
};

// ---------------------------------------------------------------------------
// Class builders
// ---------------------------------------------------------------------------

struct PieceTypes {
    std::vector<Word> types;  // first-appearance order
    std::vector<std::pair<std::size_t, int>> occ;  // (type, sign) per piece
};

PieceTypes piece_types(const std::vector<Word>& pieces) {
    PieceTypes pt;
    for (const Word& p : pieces) {
        bool matched = false;
        for (std::size_t j = 0; j < pt.types.size() && !matched; ++j) {
            if (p == pt.types[j]) {
                pt.occ.emplace_back(j, 1);
                matched = true;
            } else if (p == invert(pt.types[j])) {
                pt.occ.emplace_back(j, -1);
                matched = true;
            }
        }
        if (!matched) {
            pt.occ.emplace_back(pt.types.size(), 1);
            pt.types.push_back(p);
        }
    }
    return pt;
}

std::string kind_str(Factorisation::Kind k) {
    switch (k) {
        case Factorisation::kAdjan: return "adjan";
        case Factorisation::kBenois: return "benois";
        default: return "user";
    }
}

bool model_sane(const GroupHandle& g, const Word& relator, std::string& err) {
    try {
        if (!handle_is_trivial(g, relator)) {
            err = "relator not trivial in the constructed model";
            return false;
        }
    } catch (const std::logic_error& e) {
        err = e.what();
        return false;
    }
    return true;
}

std::optional<ClassTag> build_marker(const Presentation& p,
                                     const Factorisation& fact,
                                     std::vector<std::string>& notes) {
    const Word& w = p.relator;
    const AlphabetPtr& alpha = p.alphabet;
    // No reducedness requirement: the relator may be an unreduced spelling
    // (the a x a^-1 rewriting produces one) and the argument still applies.
    if (!distinct_base_chars(alpha)) {
        notes.push_back("marker: alphabet base characters not pairwise distinct");
        return std::nullopt;
    }
    std::vector<Word> pieces = fact.pieces();
    PieceTypes pt = piece_types(pieces);
    std::size_t k = pt.types.size();

    // Occurrence counts per type, ignoring signs.
    std::vector<std::map<std::uint32_t, int>> counts(k);
    for (std::size_t j = 0; j < k; ++j)
        for (const Letter& l : pt.types[j].letters()) ++counts[j][l.sym];

    std::vector<std::uint32_t> marker_sym(k);
    std::vector<std::size_t> marker_pos(k);
    std::vector<int> marker_eps(k);
    for (std::size_t j = 0; j < k; ++j) {
        bool found = false;
        for (std::size_t pos = 0; pos < pt.types[j].size() && !found; ++pos) {
            std::uint32_t s = pt.types[j][pos].sym;
            if (counts[j][s] != 1) continue;
            bool elsewhere = false;
            for (std::size_t j2 = 0; j2 < k; ++j2)
                if (j2 != j && counts[j2].count(s)) elsewhere = true;
            if (elsewhere) continue;
            marker_sym[j] = s;
            marker_pos[j] = pos;
            marker_eps[j] = pt.types[j][pos].sign;
            found = true;
        }
        if (!found) {
            notes.push_back("marker: piece type \"" + print_word(pt.types[j]) +
                            "\" has no letter unique to it");
            return std::nullopt;
        }
    }

    std::set<std::uint32_t> markers(marker_sym.begin(), marker_sym.end());
    std::vector<Symbol> x1_syms;
    for (std::size_t i = 0; i < alpha->size(); ++i)
        if (!markers.count(static_cast<std::uint32_t>(i)))
            x1_syms.push_back(alpha->at(i));

    std::vector<Symbol> z_syms;
    for (std::size_t j = 0; j < k; ++j)
        z_syms.push_back(Symbol{alpha->at(marker_sym[j]).base, 0, false});
    AlphabetPtr z_alpha = make_alphabet(z_syms);
    Word u(z_alpha);
    for (const auto& [j, sign] : pt.occ)
        u = u.append(Letter{static_cast<std::uint32_t>(j),
                            static_cast<std::int8_t>(sign)});

    auto H = one_relator_handle(z_alpha, u);
    if (!H) {
        notes.push_back(
            "marker: no word-problem backend for the piece-arrangement group <" +
            print_word(u) + ">");
        return std::nullopt;
    }

    auto decider = std::make_shared<MarkerDecider>();
    GroupHandle host;
    AlphabetPtr x1_alpha;
    if (x1_syms.empty()) {
        host = *H;
    } else {
        x1_alpha = make_alphabet(x1_syms);
        auto sp = std::make_shared<AmalgamSpec>();
        sp->B = free_handle(x1_alpha);
        sp->C = *H;
        decider->spec = sp;
        host = amalgam_handle(sp);
    }
    AlphabetPtr comb = host.generators;

    std::vector<Word> images(alpha->size());
    std::vector<std::pair<Word, Word>> pq(k);  // before/after the marker
    for (std::size_t j = 0; j < k; ++j) {
        pq[j].first = pt.types[j].subword(0, marker_pos[j]);
        pq[j].second = pt.types[j].subword(marker_pos[j] + 1, pt.types[j].size());
        Word img = reindex(invert(pq[j].first), comb)
                       .concat(letter_word(
                           comb, static_cast<std::uint32_t>(*comb->index_of(
                                     z_alpha->at(j)))))
                       .concat(reindex(invert(pq[j].second), comb));
        if (marker_eps[j] < 0) img = invert(img);
        images[marker_sym[j]] = img;
    }
    for (std::size_t i = 0; i < alpha->size(); ++i)
        if (!markers.count(static_cast<std::uint32_t>(i)))
            images[i] = letter_word(
                comb, static_cast<std::uint32_t>(*comb->index_of(alpha->at(i))));

    decider->g = rewritten_handle(
        alpha, std::make_shared<GroupHandle>(std::move(host)), images);
    std::string err;
    if (!model_sane(decider->g, w, err)) {
        notes.push_back("marker: " + err);
        return std::nullopt;
    }

    std::string qnote;
    if (decider->spec) {
        std::vector<Word> Q;
        for (std::size_t j = 0; j < k; ++j) {
            for (const Word& pr : prefixes(pq[j].first))
                Q.push_back(reindex(pr, x1_alpha));
            for (const Word& pr : prefixes(invert(pq[j].second)))
                Q.push_back(reindex(pr, x1_alpha));
        }
        Q = dedup_nonempty(Q);
        decider->qmon = rational_monoid(x1_alpha, Q);
        std::vector<std::string> qs;
        for (const Word& qw : Q) qs.push_back(print_word(qw));
        qnote = "letter-factor prefix set: { " + join(qs, ", ") + " }";
    }
    decider->gens = dedup_nonempty(prefixes(w));

    ClassTag tag;
    tag.kind = ClassKind::marker;
    tag.provenance = kind_str(fact.kind);
    tag.note = qnote;
    tag.pieces = pieces;
    tag.decider = decider;
    return tag;
}

std::optional<ClassTag> build_disjoint(const Presentation& p,
                                       const Factorisation& fact,
                                       std::vector<std::string>& notes) {
    const Word& w = p.relator;
    const AlphabetPtr& alpha = p.alphabet;
    if (!is_cyclically_reduced(w)) {
        notes.push_back("disjoint: relator not cyclically reduced");
        return std::nullopt;
    }
    if (!distinct_base_chars(alpha)) {
        notes.push_back("disjoint: alphabet base characters not pairwise distinct");
        return std::nullopt;
    }
    std::vector<Word> pieces = fact.pieces();
    PieceTypes pt = piece_types(pieces);
    std::size_t k = pt.types.size();
    if (k < 2) {
        notes.push_back(
            "disjoint: fewer than two piece types (single-type relators are "
            "handled by other classes)");
        return std::nullopt;
    }
    std::vector<std::set<std::uint32_t>> cont(k);
    for (std::size_t j = 0; j < k; ++j) cont[j] = content(pt.types[j]);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t j2 = j + 1; j2 < k; ++j2)
            for (std::uint32_t s : cont[j])
                if (cont[j2].count(s)) {
                    notes.push_back("disjoint: piece types share letters");
                    return std::nullopt;
                }

    // Fresh stable letters for the piece-arrangement group.
    std::set<char> used;
    for (const Symbol& s : alpha->letters()) used.insert(s.base);
    std::vector<Symbol> t_syms;
    for (char c = 'a'; c <= 'z' && t_syms.size() < k; ++c)
        if (!used.count(c)) t_syms.push_back(Symbol{c, 0, false});
    if (t_syms.size() < k) {
        notes.push_back("disjoint: no free letters left for the arrangement group");
        return std::nullopt;
    }
    AlphabetPtr t_alpha = make_alphabet(t_syms);
    Word u(t_alpha);
    for (const auto& [j, sign] : pt.occ)
        u = u.append(Letter{static_cast<std::uint32_t>(j),
                            static_cast<std::int8_t>(sign)});
    auto H = one_relator_handle(t_alpha, u);
    if (!H) {
        notes.push_back(
            "disjoint: no word-problem backend for the piece-arrangement group <" +
            print_word(u) + ">");
        return std::nullopt;
    }

    std::vector<std::vector<Symbol>> x_syms(k);
    std::vector<Symbol> x0_syms;
    for (std::size_t i = 0; i < alpha->size(); ++i) {
        bool placed = false;
        for (std::size_t j = 0; j < k && !placed; ++j)
            if (cont[j].count(static_cast<std::uint32_t>(i))) {
                x_syms[j].push_back(alpha->at(i));
                placed = true;
            }
        if (!placed) x0_syms.push_back(alpha->at(i));
    }

    auto decider = std::make_shared<DisjointDecider>();
    GroupHandle inner;
    if (x0_syms.empty()) {
        inner = *H;
    } else {
        auto sp0 = std::make_shared<AmalgamSpec>();
        sp0->B = free_handle(make_alphabet(x0_syms));
        sp0->C = *H;
        decider->bottom = sp0;
        inner = amalgam_handle(sp0);
    }
    decider->bottom_alpha = inner.generators;

    std::vector<bool> pos_occ(k, false), neg_occ(k, false);
    for (const auto& [j, sign] : pt.occ) (sign > 0 ? pos_occ : neg_occ)[j] = true;

    std::vector<DisjointDecider::Level> levels;  // innermost first here
    for (std::size_t jj = k; jj-- > 0;) {
        AlphabetPtr xa = make_alphabet(x_syms[jj]);
        auto sp = std::make_shared<AmalgamSpec>();
        sp->B = free_handle(xa);
        sp->C = inner;
        sp->A_in_B = {reindex(pt.types[jj], xa)};
        sp->A_in_C = {letter_word(
            inner.generators, static_cast<std::uint32_t>(
                                  *inner.generators->index_of(t_alpha->at(jj))))};
        inner = amalgam_handle(sp);

        std::vector<Word> bg;
        if (pos_occ[jj])
            for (const Word& pr : prefixes(pt.types[jj]))
                bg.push_back(reindex(pr, xa));
        if (neg_occ[jj])
            for (const Word& pr : prefixes(invert(pt.types[jj])))
                bg.push_back(reindex(pr, xa));
        bg.push_back(reindex(pt.types[jj], xa));
        bg.push_back(reindex(invert(pt.types[jj]), xa));
        levels.push_back(DisjointDecider::Level{
            sp, inner.generators, rational_monoid(xa, dedup_nonempty(bg))});
    }
    std::reverse(levels.begin(), levels.end());
    decider->levels = std::move(levels);

    AlphabetPtr comb = inner.generators;
    std::vector<Word> images;
    for (std::size_t i = 0; i < alpha->size(); ++i)
        images.push_back(letter_word(
            comb, static_cast<std::uint32_t>(*comb->index_of(alpha->at(i)))));
    decider->g = rewritten_handle(
        alpha, std::make_shared<GroupHandle>(std::move(inner)), std::move(images));
    std::string err;
    if (!model_sane(decider->g, w, err)) {
        notes.push_back("disjoint: " + err);
        return std::nullopt;
    }
    decider->gens = dedup_nonempty(prefixes(w));

    ClassTag tag;
    tag.kind = ClassKind::disjoint;
    tag.provenance = kind_str(fact.kind);
    tag.pieces = pieces;
    tag.decider = decider;
    return tag;
}

std::optional<ClassTag> build_cyc_pinched(const Presentation& p,
                                          std::vector<std::string>& notes) {
    const Word& w = p.relator;
    const AlphabetPtr& alpha = p.alphabet;
    if (w.size() < 2) {
        notes.push_back("cyc-pinched: relator too short");
        return std::nullopt;
    }
    std::optional<std::size_t> cut;
    for (std::size_t c = 1; c < w.size() && !cut; ++c) {
        std::set<std::uint32_t> cl = content(w.subword(0, c));
        std::set<std::uint32_t> cr = content(w.subword(c, w.size()));
        bool disjoint = true;
        for (std::uint32_t s : cl)
            if (cr.count(s)) disjoint = false;
        if (disjoint) cut = c;
    }
    if (!cut) {
        notes.push_back("cyc-pinched: no cut splits the relator into halves "
                        "over disjoint letters");
        return std::nullopt;
    }
    Word u = w.subword(0, *cut);
    Word v = invert(w.subword(*cut, w.size()));
    std::set<std::uint32_t> cv = content(v);

    std::vector<Symbol> b_syms, c_syms;
    for (std::size_t i = 0; i < alpha->size(); ++i)
        (cv.count(static_cast<std::uint32_t>(i)) ? c_syms : b_syms)
            .push_back(alpha->at(i));
    AlphabetPtr b_alpha = make_alphabet(b_syms), c_alpha = make_alphabet(c_syms);

    auto decider = std::make_shared<CycPinchedDecider>();
    auto sp = std::make_shared<AmalgamSpec>();
    sp->B = free_handle(b_alpha);
    sp->C = free_handle(c_alpha);
    sp->A_in_B = {reindex(u, b_alpha)};
    sp->A_in_C = {reindex(v, c_alpha)};
    decider->spec = sp;
    GroupHandle host = amalgam_handle(sp);
    AlphabetPtr comb = host.generators;

    for (const Word& pr : prefixes(u)) decider->mb.push_back(reindex(pr, b_alpha));
    for (const Word& pr : prefixes(v)) decider->mc.push_back(reindex(pr, c_alpha));
    decider->mb = dedup_nonempty(decider->mb);
    decider->mc = dedup_nonempty(decider->mc);

    std::vector<Word> images;
    for (std::size_t i = 0; i < alpha->size(); ++i)
        images.push_back(letter_word(
            comb, static_cast<std::uint32_t>(*comb->index_of(alpha->at(i)))));
    decider->g = rewritten_handle(
        alpha, std::make_shared<GroupHandle>(std::move(host)), std::move(images));
    std::string err;
    if (!model_sane(decider->g, w, err)) {
        notes.push_back("cyc-pinched: " + err);
        return std::nullopt;
    }
    decider->gens = dedup_nonempty(prefixes(w));

    ClassTag tag;
    tag.kind = ClassKind::cyc_pinched;
    tag.provenance = "structural";
    tag.pieces = {u, invert(v)};
    tag.decider = decider;
    return tag;
}

std::optional<ClassTag> build_conj_pinched(const Presentation& p,
                                           std::vector<std::string>& notes) {
    const Word& w = p.relator;
    const AlphabetPtr& alpha = p.alphabet;
    auto fail = [&](const std::string& why) {
        notes.push_back("conj-pinched: " + why);
        return std::nullopt;
    };
    if (w.size() < 4 || w[0].sign != -1)
        return fail("relator does not start with an inverse stable letter");
    std::uint32_t t = w[0].sym;
    std::vector<std::size_t> tpos;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i].sym == t) tpos.push_back(i);
    if (tpos.size() != 2 || w[tpos[1]].sign != 1)
        return fail("stable letter must occur exactly twice, as t^-1 ... t ...");
    std::size_t j = tpos[1];
    if (j == 1 || j + 1 == w.size())
        return fail("both pinched halves must be non-empty");
    Word u = w.subword(1, j);
    Word v = invert(w.subword(j + 1, w.size()));

    std::vector<Symbol> base_syms;
    for (std::size_t i = 0; i < alpha->size(); ++i)
        if (static_cast<std::uint32_t>(i) != t) base_syms.push_back(alpha->at(i));
    AlphabetPtr base_alpha = make_alphabet(base_syms);
    Word u2 = reindex(u, base_alpha), v2 = reindex(v, base_alpha);

    std::shared_ptr<const HnnSpec> sp;
    try {
        sp = std::make_shared<HnnSpec>(
            make_hnn(free_handle(base_alpha), alpha->at(t), {u2}, {v2}));
    } catch (const std::invalid_argument& e) {
        return fail(e.what());
    }
    auto decider = std::make_shared<HnnDecider>();
    decider->spec = sp;
    decider->inverted = true;
    decider->method_name = "conj-pinched: HNN rational-chain membership";
    decider->W = {dedup_nonempty(prefixes(v2))};
    decider->Wp = {{}, prefixes(u2)};  // the empty prefix supplies bare t^-1

    GroupHandle host = hnn_handle(sp);
    AlphabetPtr comb = host.generators;
    std::vector<Word> images;
    for (std::size_t i = 0; i < alpha->size(); ++i)
        images.push_back(letter_word(
            comb, static_cast<std::uint32_t>(*comb->index_of(alpha->at(i)))));
    decider->g = rewritten_handle(
        alpha, std::make_shared<GroupHandle>(std::move(host)), std::move(images));
    std::string err;
    if (!model_sane(decider->g, w, err)) {
        notes.push_back("conj-pinched: " + err);
        return std::nullopt;
    }
    decider->gens = dedup_nonempty(prefixes(w));

    ClassTag tag;
    tag.kind = ClassKind::conj_pinched;
    tag.provenance = "structural";
    tag.pieces = {u, v};
    tag.stable = alpha->at(t);
    tag.decider = decider;
    return tag;
}

std::optional<ClassTag> build_posneg(const Presentation& p,
                                     std::vector<std::string>& notes,
                                     std::optional<std::uint32_t> force_stable) {
    const Word& w = p.relator;
    const AlphabetPtr& alpha = p.alphabet;
    if (!is_cyclically_reduced(w)) {
        notes.push_back("posneg: relator not cyclically reduced");
        return std::nullopt;
    }
    if (!distinct_base_chars(alpha)) {
        notes.push_back("posneg: alphabet base characters not pairwise distinct");
        return std::nullopt;
    }
    for (std::uint32_t t : content(w)) {
        if (force_stable && t != *force_stable) continue;
        if (exponent_sum(w, t) != 0) continue;
        PrefixSign ps = prefix_sign(w, t);
        std::string tn = to_string(alpha->at(t));
        if (ps == PrefixSign::mixed) {
            notes.push_back("posneg: prefix " + tn +
                            "-exponents take both signs");
            continue;
        }
        bool positive = ps == PrefixSign::positive;

        RhoImage rh = rho(w, t);
        if (!is_cyclically_reduced_word(rh.image)) {
            notes.push_back("posneg: rewritten relator over " + tn +
                            "-levels is not cyclically reduced");
            continue;
        }
        std::vector<Symbol> base_syms;
        for (const auto& [c, mm] : rh.bounds)
            for (int l = mm.first; l <= mm.second; ++l)
                base_syms.push_back(Symbol{c, l, true});
        for (std::size_t i = 0; i < alpha->size(); ++i)
            if (static_cast<std::uint32_t>(i) != t &&
                !content(w).count(static_cast<std::uint32_t>(i)))
                base_syms.push_back(alpha->at(i));
        AlphabetPtr base_alpha = make_alphabet(base_syms);
        Word base_rel = reindex(rh.image, base_alpha);

        auto base = free_detect_handle(base_alpha, base_rel);
        if (!base) {
            if (content(base_rel).size() == 1) {
                // Shape recognized, but the vertex group is finite
                // cyclic and the rational machinery needs a free one.
                if (auto model = one_relator_handle(alpha, w)) {
                    auto stub = std::make_shared<StubDecider>();
                    stub->g = std::move(*model);
                    stub->gens = dedup_nonempty(prefixes(w));
                    stub->why =
                        "vertex group of the " + tn +
                        "-splitting is finite cyclic; rational-subset "
                        "machinery requires a free vertex group";
                    ClassTag tag;
                    tag.kind = ClassKind::posneg;
                    tag.provenance = "structural";
                    tag.note = stub->why;
                    tag.stable = alpha->at(t);
                    tag.decider = stub;
                    return tag;
                }
            }
            notes.push_back("posneg: vertex group of the " + tn +
                            "-splitting is not free by single-occurrence "
                            "elimination");
            continue;
        }

        std::vector<Word> A, B;
        for (const auto& [c, mm] : rh.bounds)
            for (int l = mm.first; l < mm.second; ++l) {
                A.push_back(letter_word(
                    base_alpha, static_cast<std::uint32_t>(
                                    *base_alpha->index_of(Symbol{c, l, true}))));
                B.push_back(letter_word(
                    base_alpha,
                    static_cast<std::uint32_t>(
                        *base_alpha->index_of(Symbol{c, l + 1, true}))));
            }
        std::shared_ptr<const HnnSpec> sp;
        try {
            sp = std::make_shared<HnnSpec>(
                make_hnn(*base, alpha->at(t), std::move(A), std::move(B)));
        } catch (const std::invalid_argument& e) {
            notes.push_back(std::string("posneg: ") + e.what());
            continue;
        }

        // One pass over the relator's prefixes: each prefix equals
        // h t^sigma with h over the level letters.
        int sigma = 0, d = 0;
        Word h(base_alpha);
        std::map<int, std::set<Word>> lv;
        std::vector<std::pair<Word, int>> prefix_forms;  // (h, sigma) per prefix
        for (std::size_t i = 0; i < w.size(); ++i) {
            const Letter& l = w[i];
            if (l.sym == t) {
                sigma += l.sign;
            } else {
                h = h.append(Letter{
                    static_cast<std::uint32_t>(*base_alpha->index_of(
                        Symbol{alpha->at(l.sym).base, -sigma, true})),
                    l.sign});
            }
            Word hr = free_reduce(h);
            int level = positive ? sigma : -sigma;
            d = std::max(d, level);
            lv[level].insert(hr);
            prefix_forms.emplace_back(hr, sigma);
        }
        std::vector<std::vector<Word>> W(static_cast<std::size_t>(d) + 1);
        for (const auto& [level, hs] : lv)
            for (const Word& hw : hs)
                if (level > 0 || !hw.empty())
                    W[static_cast<std::size_t>(level)].push_back(hw);

        auto decider = std::make_shared<HnnDecider>();
        decider->spec = sp;
        decider->inverted = !positive;
        decider->method_name = positive
                                   ? "posneg: HNN rational-chain membership "
                                     "(prefix " + tn + "-exponents >= 0)"
                                   : "posneg: HNN rational-chain membership "
                                     "(prefix " + tn + "-exponents <= 0)";
        decider->W = std::move(W);

        GroupHandle host = hnn_handle(sp);
        AlphabetPtr comb = host.generators;
        std::uint32_t tc =
            static_cast<std::uint32_t>(*comb->index_of(alpha->at(t)));
        std::vector<Word> images;
        for (std::size_t i = 0; i < alpha->size(); ++i) {
            if (static_cast<std::uint32_t>(i) == t) {
                images.push_back(letter_word(comb, tc));
                continue;
            }
            auto it = rh.bounds.find(alpha->at(i).base);
            if (it == rh.bounds.end()) {
                images.push_back(letter_word(
                    comb,
                    static_cast<std::uint32_t>(*comb->index_of(alpha->at(i)))));
                continue;
            }
            int l = std::clamp(0, it->second.first, it->second.second);
            Word xl = letter_word(
                comb, static_cast<std::uint32_t>(*comb->index_of(
                          Symbol{alpha->at(i).base, l, true})));
            images.push_back(word_power(letter_word(comb, tc), l)
                                 .concat(xl)
                                 .concat(word_power(letter_word(comb, tc), -l)));
        }
        decider->g = rewritten_handle(
            alpha, std::make_shared<GroupHandle>(std::move(host)), images);
        std::string err;
        if (!model_sane(decider->g, w, err)) {
            notes.push_back("posneg: " + err);
            continue;
        }
        // Cross-check the prefix decomposition in the HNN model.
        bool forms_ok = true;
        for (std::size_t i = 0; i < w.size() && forms_ok; ++i) {
            Word expected = reindex(prefix_forms[i].first, comb)
                                .concat(word_power(letter_word(comb, tc),
                                                   prefix_forms[i].second));
            Word pw = w.subword(0, i + 1);
            Word img = free_reduce(substitute(pw, decider->g.basis_images));
            forms_ok = handle_is_trivial(*decider->g.host,
                                         img.concat(invert(expected)));
        }
        if (!forms_ok) {
            notes.push_back("posneg: prefix decomposition failed verification");
            continue;
        }
        decider->gens = dedup_nonempty(prefixes(w));

        ClassTag tag;
        tag.kind = ClassKind::posneg;
        tag.provenance = "structural";
        tag.stable = alpha->at(t);
        tag.decider = decider;
        return tag;
    }
    if (!force_stable)
        notes.push_back(
            "posneg: no stable letter with zero exponent sum and one-signed "
            "prefix exponents yields a free vertex group");
    return std::nullopt;
}

std::vector<int> a_gaps(const Word& x, std::uint32_t a) {
    std::vector<int> gaps;
    int run = 0;
    bool seen = false;
    for (const Letter& l : x.letters()) {
        if (l.sym == a) {
            if (seen) gaps.push_back(run);
            run = 0;
            seen = true;
        } else if (seen) {
            ++run;
        }
    }
    return gaps;
}

std::optional<ClassTag> build_adjan(const Presentation& p,
                                    std::vector<std::string>& notes) {
    const Word& w = p.relator;
    auto fail = [&](const std::string& why) {
        notes.push_back("adjan: " + why);
        return std::nullopt;
    };
    if (content(w).size() != 2) return fail("relator must use exactly two letters");
    std::size_t c = 0;
    while (c < w.size() && w[c].sign > 0) ++c;
    if (c == 0 || c == w.size())
        return fail("relator must be a positive word times a negative word");
    for (std::size_t i = c; i < w.size(); ++i)
        if (w[i].sign > 0)
            return fail("relator must be a positive word times a negative word");
    Word u = w.subword(0, c);
    Word v = invert(w.subword(c, w.size()));
    if (w[0].sym == w[w.size() - 1].sym)
        return fail("first and last relator letters must differ");

    auto count_sym = [](const Word& x, std::uint32_t s) {
        int n = 0;
        for (const Letter& l : x.letters())
            if (l.sym == s) ++n;
        return n;
    };
    auto begins_ba = [](const Word& x, std::uint32_t a, std::uint32_t b) {
        return x.size() >= 2 && x[0].sym == b && x[1].sym == a;
    };
    auto ends_ab = [](const Word& x, std::uint32_t a, std::uint32_t b) {
        return x.size() >= 2 && x[x.size() - 2].sym == a &&
               x[x.size() - 1].sym == b;
    };

    std::set<std::uint32_t> cw = content(w);
    std::vector<std::uint32_t> syms(cw.begin(), cw.end());
    for (int role = 0; role < 2; ++role) {
        std::uint32_t a = syms[role], b = syms[1 - role];
        if (count_sym(u, a) != count_sym(v, a)) continue;
        std::vector<int> gu = a_gaps(u, a), gv = a_gaps(v, a);
        bool gap_cond = false;
        for (std::size_t i = 0; i < std::min(gu.size(), gv.size()); ++i)
            if ((gu[i] == 1 && gv[i] == 0) || (gu[i] == 0 && gv[i] == 1))
                gap_cond = true;
        if (!(begins_ba(u, a, b) || begins_ba(v, a, b) || ends_ab(u, a, b) ||
              ends_ab(v, a, b) || gap_cond))
            continue;
        std::vector<std::string> scratch;
        if (auto tag = build_posneg(p, scratch, a)) {
            tag->kind = ClassKind::adjan;
            tag->pieces = {u, v};
            tag->note = "positive-negative splitting over " +
                        to_string(p.alphabet->at(a));
            return tag;
        }
    }
    return fail("no letter role satisfies the balance and overlap conditions");
}

struct OhareParse {
    std::uint32_t a = 0, d = 0;
    std::vector<Word> blocks;          // interior words, possibly empty
    std::vector<std::size_t> ends;     // positions after each closing letter
};

std::optional<OhareParse> ohare_parse(const Presentation& p, std::string& why) {
    const Word& w = p.relator;
    if (w.empty()) {
        why = "empty relator";
        return std::nullopt;
    }
    for (const Letter& l : w.letters())
        if (l.sign < 0) {
            why = "relator is not a positive word";
            return std::nullopt;
        }
    OhareParse op;
    op.a = w[0].sym;
    op.d = w[w.size() - 1].sym;
    if (op.a == op.d) {
        why = "first and last letters must differ";
        return std::nullopt;
    }
    std::size_t i = 0;
    while (i < w.size()) {
        if (w[i].sym != op.a) {
            why = "block does not open with the initial letter";
            return std::nullopt;
        }
        ++i;
        Word u(p.alphabet);
        while (i < w.size() && w[i].sym != op.d) {
            if (w[i].sym == op.a) {
                why = "opening letter recurs inside a block";
                return std::nullopt;
            }
            u = u.append(w[i]);
            ++i;
        }
        if (i == w.size()) {
            why = "unterminated block";
            return std::nullopt;
        }
        ++i;
        op.blocks.push_back(u);
        op.ends.push_back(i);
    }
    return op;
}

std::optional<std::string> ohare_conditions(const Presentation& p,
                                            const OhareParse& op) {
    bool has_empty = false;
    for (const Word& u : op.blocks)
        if (u.empty()) has_empty = true;
    if (!has_empty) return "no block is a bare opening-closing pair";

    std::set<std::uint32_t> interior = content(p.relator);
    interior.erase(op.a);
    interior.erase(op.d);
    for (std::uint32_t y : interior) {
        bool expressed = false;
        Word target = letter_word(p.alphabet, y);
        for (const Word& ur : op.blocks)
            for (const Word& us : op.blocks)
                if (free_reduce(ur.concat(invert(us))) == target) expressed = true;
        if (!expressed)
            return "letter " + to_string(p.alphabet->at(y)) +
                   " is not a difference of two block interiors";
    }

    Factorisation bf = benois_pieces(p.relator);
    std::set<std::size_t> cuts(bf.cut_points.begin(), bf.cut_points.end());
    for (std::size_t e : op.ends)
        if (e != p.relator.size() && !cuts.count(e))
            return "a block boundary is not an invertible-prefix cut";
    return std::nullopt;
}

Word ohare_rewritten_word(const Presentation& p, const OhareParse& op) {
    Word w2(p.alphabet);
    for (const Word& u : op.blocks) {
        for (const Letter& l : u.letters()) {
            w2 = w2.append(Letter{op.a, 1});
            w2 = w2.append(l);
            w2 = w2.append(Letter{op.a, -1});
        }
        w2 = w2.append(Letter{op.a, 1});
        w2 = w2.append(Letter{op.d, 1});
    }
    return w2;
}

std::optional<ClassTag> build_ohare(const Presentation& p,
                                    const Factorisation& fact,
                                    std::vector<std::string>& notes) {
    std::string why;
    auto op = ohare_parse(p, why);
    if (!op) {
        notes.push_back("ohare: " + why);
        return std::nullopt;
    }
    if (auto bad = ohare_conditions(p, *op)) {
        notes.push_back("ohare: " + *bad);
        return std::nullopt;
    }
    Presentation p2{p.alphabet, ohare_rewritten_word(p, *op), p.flavor};
    // The rewrite emits the pieces (a y a^-1) and (a d) directly, so the
    // factorisation of the rewritten relator is known without a search.
    Factorisation f2;
    f2.relator = p2.relator;
    f2.kind = Factorisation::kUser;
    std::size_t pos2 = 0;
    for (const Word& u : op->blocks) {
        for (std::size_t i = 0; i < u.size(); ++i) {
            pos2 += 3;
            f2.cut_points.push_back(pos2);
        }
        pos2 += 2;
        if (pos2 < p2.relator.size()) f2.cut_points.push_back(pos2);
    }
    std::vector<std::string> scratch;
    auto mtag = build_marker(p2, f2, scratch);
    if (!mtag) {
        notes.push_back("ohare: rewritten relator did not yield a marker "
                        "decomposition (" + join(scratch, "; ") + ")");
        return std::nullopt;
    }
    ClassTag tag;
    tag.kind = ClassKind::ohare;
    tag.provenance = kind_str(fact.kind);
    tag.note = "rewritten relator: " + print_word(p2.relator);
    tag.pieces = fact.pieces();
    tag.decider = mtag->decider;
    return tag;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public interface
// ---------------------------------------------------------------------------

std::optional<GroupHandle> one_relator_handle(const AlphabetPtr& alpha,
                                              const Word& relator) {
    if (!alpha) throw std::invalid_argument("alphabet required");
    if (!distinct_base_chars(alpha)) return std::nullopt;
    Word r = cyclic_reduce(free_reduce(relator)).core;
    if (r.empty()) return free_handle(alpha);
    return one_relator_core(alpha, std::move(r), 2);
}

std::string to_string(ClassKind k) {
    switch (k) {
        case ClassKind::marker: return "marker";
        case ClassKind::disjoint: return "disjoint";
        case ClassKind::cyc_pinched: return "cyc-pinched";
        case ClassKind::conj_pinched: return "conj-pinched";
        case ClassKind::posneg: return "posneg";
        case ClassKind::adjan: return "adjan";
        case ClassKind::ohare: return "ohare";
        default: return "unsupported";
    }
}

std::vector<ClassTag> classify(const Presentation& p,
                               const std::optional<Factorisation>& f) {
    std::vector<ClassTag> out;
    std::vector<std::string> notes;
    auto unsupported = [&](const std::string& why) {
        ClassTag tag;
        tag.kind = ClassKind::unsupported;
        tag.note = why;
        return std::vector<ClassTag>{tag};
    };
    if (!p.alphabet || p.relator.empty())
        return unsupported("empty relator");
    if (!is_reduced(p.relator))
        return unsupported("relator not freely reduced");
    if (f && !(f->relator == p.relator))
        throw std::invalid_argument("factorisation is for a different relator");
    Factorisation fact = f ? *f : benois_pieces(p.relator);

    if (auto t = build_marker(p, fact, notes)) out.push_back(std::move(*t));
    if (auto t = build_disjoint(p, fact, notes)) out.push_back(std::move(*t));
    if (auto t = build_cyc_pinched(p, notes)) out.push_back(std::move(*t));
    if (auto t = build_conj_pinched(p, notes)) out.push_back(std::move(*t));
    if (auto t = build_posneg(p, notes, std::nullopt)) out.push_back(std::move(*t));
    if (auto t = build_adjan(p, notes)) out.push_back(std::move(*t));
    if (auto t = build_ohare(p, fact, notes)) out.push_back(std::move(*t));

    if (out.empty()) return unsupported(join(notes, "; "));
    return out;
}

MemberResult prefix_member(const Presentation& p, const ClassTag& tag,
                           const Word& query, std::size_t automaton_cap,
                           std::size_t witness_len_cap) {
    if (tag.kind == ClassKind::unsupported || !tag.decider) {
        MemberResult r;
        r.answer = MemberResult::unsupported;
        r.method = "unsupported";
        r.note = tag.note;
        return r;
    }
    Word q = free_reduce(query);
    MemberResult r = tag.decider->member(q, automaton_cap);
    if (tag.provenance == "user")
        r.unchecked_hypotheses.push_back(
            "user-supplied factorisation assumed conservative");
    if (r.answer == MemberResult::yes && witness_len_cap > 0) {
        const PrefixDecider& d = *tag.decider;
        if (!d.ball)
            d.ball = std::make_shared<MonoidBall>(d.group(), d.monoid_gens());
        if (auto wit = d.ball->find(q, witness_len_cap)) {
            Word prod(p.alphabet);
            for (const Word& factor : *wit) prod = free_reduce(prod.concat(factor));
            if (!handle_is_trivial(d.group(), prod.concat(invert(q))))
                throw std::logic_error("witness failed re-verification");
            r.witness = std::move(*wit);
        } else {
            if (!r.note.empty()) r.note += "; ";
            r.note += "witness search exhausted its budget";
        }
    }
    return r;
}

MemberResult right_invertible(const Presentation& p, const Word& query,
                              std::size_t automaton_cap) {
    if (!is_reduced(p.relator) || !is_cyclically_reduced_word(p.relator))
        throw std::invalid_argument(
            "relator must be cyclically reduced: right invertibility reduces "
            "to prefix-monoid membership only for E-unitary presentations");
    std::vector<ClassTag> tags = classify(p);
    for (const ClassTag& tag : tags)
        if (tag.decider) return prefix_member(p, tag, query, automaton_cap);
    MemberResult r;
    r.answer = MemberResult::unsupported;
    r.method = "unsupported";
    r.note = tags.front().note;
    return r;
}

Presentation ohare_rewrite(const Presentation& p) {
    std::string why;
    auto op = ohare_parse(p, why);
    if (!op) throw std::invalid_argument(why);
    if (auto bad = ohare_conditions(p, *op)) throw std::invalid_argument(*bad);
    return Presentation{p.alphabet, ohare_rewritten_word(p, *op), p.flavor};
}

}  // namespace prefixm
