#include "prefixm/hnn.hpp"

#include <algorithm>
#include <sstream>

namespace prefixm {

namespace {

void cap_check(const RationalSet& r, std::size_t cap) {
    if (r.automaton.num_states > cap)
        throw resource_exceeded("automaton exceeds configured state cap");
}

std::vector<Word> invert_all(const std::vector<Word>& ws) {
    std::vector<Word> out;
    for (const Word& w : ws) out.push_back(invert(w));
    return out;
}

// phi or its inverse applied through an express witness; sub_gens and
// images are the paired generator lists in base coordinates.
Word transport(const GroupHandle& base, const std::vector<Word>& sub_gens,
               const std::vector<Word>& images, const Word& g) {
    auto y = handle_express(base, sub_gens, g);
    if (!y) throw std::invalid_argument("pinched syllable outside the edge subgroup");
    if (y->empty()) return Word(base.generators);
    return free_reduce(substitute(*y, images));
}

Fsa inv_automaton(const RationalSet& r) {
    return trim(fsa_reverse_invert(r.automaton));
}

}  // namespace

HnnSpec make_hnn(GroupHandle base, Symbol stable, std::vector<Word> a_gens,
                 std::vector<Word> b_gens) {
    if (base.generators->contains(stable))
        throw std::invalid_argument("stable letter collides with a base generator");
    if (a_gens.size() != b_gens.size())
        throw std::invalid_argument("subgroup generator lists differ in length");
    std::vector<Word> fa, fb;
    for (std::size_t i = 0; i < a_gens.size(); ++i) {
        bool ta = handle_is_trivial(base, a_gens[i]);
        bool tb = handle_is_trivial(base, b_gens[i]);
        if (ta != tb)
            throw std::invalid_argument("generator pairing is not injective");
        if (ta) continue;
        fa.push_back(a_gens[i]);
        fb.push_back(b_gens[i]);
    }
    std::vector<Symbol> all = base.generators->letters();
    all.push_back(stable);
    HnnSpec spec;
    spec.base = std::move(base);
    spec.stable = stable;
    spec.A_gens = std::move(fa);
    spec.B_gens = std::move(fb);
    spec.combined = make_alphabet(std::move(all));
    return spec;
}

Word britton_word(const HnnSpec& spec, const BrittonForm& w) {
    std::uint32_t t = static_cast<std::uint32_t>(spec.base.generators->size());
    std::vector<Letter> ls;
    for (std::size_t i = 0; i < w.g.size(); ++i) {
        for (const Letter& l : w.g[i].letters()) ls.push_back(l);
        if (i < w.eps.size())
            ls.push_back(Letter{t, static_cast<std::int8_t>(w.eps[i])});
    }
    return Word(spec.combined, std::move(ls));
}

BrittonForm britton_split(const HnnSpec& spec, const Word& w) {
    std::uint32_t t = static_cast<std::uint32_t>(spec.base.generators->size());
    BrittonForm f;
    std::vector<Letter> run;
    for (const Letter& l : w.letters()) {
        if (l.sym == t) {
            f.g.push_back(Word(spec.base.generators, std::move(run)));
            run.clear();
            f.eps.push_back(l.sign);
        } else {
            run.push_back(l);
        }
    }
    f.g.push_back(Word(spec.base.generators, std::move(run)));
    return f;
}

BrittonForm britton_reduce(const HnnSpec& spec, const Word& w) {
    BrittonForm f = britton_split(spec, w);
    for (;;) {
        bool changed = false;
        for (std::size_t i = 0; i + 1 < f.eps.size(); ++i) {
            const Word& mid = f.g[i + 1];
            Word repl;
            if (f.eps[i] == -1 && f.eps[i + 1] == 1) {
                if (!handle_subgroup_member(spec.base, spec.A_gens, mid)) continue;
                repl = transport(spec.base, spec.A_gens, spec.B_gens, mid);
            } else if (f.eps[i] == 1 && f.eps[i + 1] == -1) {
                if (!handle_subgroup_member(spec.base, spec.B_gens, mid)) continue;
                repl = transport(spec.base, spec.B_gens, spec.A_gens, mid);
            } else {
                continue;
            }
            f.g[i] = free_reduce(f.g[i].concat(repl).concat(f.g[i + 2]));
            f.g.erase(f.g.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                      f.g.begin() + static_cast<std::ptrdiff_t>(i) + 3);
            f.eps.erase(f.eps.begin() + static_cast<std::ptrdiff_t>(i),
                        f.eps.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            changed = true;
            break;
        }
        if (!changed) break;
    }
    for (Word& g : f.g) g = free_reduce(g);
    f.reduced_flag = true;
    return f;
}

bool is_trivial(const HnnSpec& spec, const Word& w) {
    BrittonForm f = britton_reduce(spec, w);
    return f.eps.empty() && handle_is_trivial(spec.base, f.g[0]);
}

bool member_thmC(const HnnSpec& spec, const std::vector<Word>& T_gens,
                 const Word& query) {
    BrittonForm f = britton_reduce(spec, query);
    for (const Word& g : f.g) {
        if (handle_is_trivial(spec.base, g)) continue;
        if (!handle_monoid_member(spec.base, T_gens, g)) return false;
    }
    return true;
}

NSetFamily build_nsets(const AlphabetPtr& base_alpha,
                       const std::vector<std::vector<Word>>& W,
                       const std::vector<std::vector<Word>>& Wp, std::size_t m,
                       NSetCache* cache, std::size_t automaton_cap) {
    NSetCache local;
    if (!cache) cache = &local;
    std::size_t d = std::max(W.size(), Wp.size());
    d = d == 0 ? 0 : d - 1;
    auto gens_at = [](const std::vector<std::vector<Word>>& v, std::size_t mu) {
        static const std::vector<Word> kNone;
        return mu < v.size() ? v[mu] : kNone;
    };
    RationalSet mon0 = rational_monoid(
        base_alpha, W.empty() ? std::vector<Word>{} : W[0]);
    cap_check(mon0, automaton_cap);
    RationalSet one = benois_reduce(fsa_from_words(base_alpha, {Word(base_alpha)}));

    for (std::size_t mm = cache->families.size(); mm <= m; ++mm) {
        NSetFamily fam;
        fam.m = mm;
        if (mm == 0) {
            fam.count = 1;
            fam.seqs = {{mon0}};
        } else {
            for (std::size_t mu = 1; mu <= std::min(d, mm); ++mu) {
                const NSetFamily& sub = cache->families[mm - mu];
                RationalSet head = benois_reduce(fsa_concat(
                    mon0.automaton, fsa_from_words(base_alpha, gens_at(W, mu))));
                cap_check(head, automaton_cap);
                for (std::size_t j = 0; j < sub.count; ++j) {
                    std::vector<RationalSet> sa, sb;
                    sa.push_back(head);
                    sb.push_back(mon0);
                    for (std::size_t i = 1; i < mu; ++i) {
                        sa.push_back(one);
                        sb.push_back(one);
                    }
                    RationalSet hop = benois_reduce(fsa_concat(
                        fsa_from_words(base_alpha, gens_at(Wp, mu)),
                        sub.seqs[j][0].automaton));
                    cap_check(hop, automaton_cap);
                    sb.push_back(hop);
                    for (std::size_t i = 0; i <= sub.m; ++i) {
                        sa.push_back(sub.seqs[j][i]);
                        if (i >= 1) sb.push_back(sub.seqs[j][i]);
                    }
                    fam.seqs.push_back(std::move(sa));
                    fam.seqs.push_back(std::move(sb));
                }
            }
            fam.count = fam.seqs.size();
        }
        cache->families.push_back(std::move(fam));
    }
    return cache->families[m];
}

bool member_thmD(const HnnSpec& spec, const std::vector<std::vector<Word>>& W,
                 const std::vector<std::vector<Word>>& Wp, const Word& query,
                 NSetCache* cache, std::size_t automaton_cap) {
    auto view = as_free(spec.base);
    if (!view) throw std::logic_error("rational intersection backend unavailable");

    BrittonForm f = britton_reduce(spec, query);
    for (int e : f.eps)
        if (e != 1) return false;
    std::size_t n = f.eps.size();

    auto map_sets = [&](const std::vector<std::vector<Word>>& v) {
        std::vector<std::vector<Word>> out;
        for (const auto& ws : v) out.push_back(view->map_all(ws));
        return out;
    };
    std::vector<std::vector<Word>> Wv = map_sets(W), Wpv = map_sets(Wp);

    if (n == 0)
        return member(rational_monoid(view->alpha,
                                      Wv.empty() ? std::vector<Word>{} : Wv[0]),
                      view->map(f.g[0]));

    NSetFamily fam = build_nsets(view->alpha, Wv, Wpv, n, cache, automaton_cap);
    StallingsGraph GA(view->alpha, view->map_all(spec.A_gens));
    std::vector<Word> zB = view->map_all(spec.B_gens);
    Word gn = view->map(f.g[n]);

    for (std::size_t j = 0; j < fam.count; ++j) {
        RationalSet Q =
            benois_reduce(fsa_from_words(view->alpha, {Word(view->alpha)}));
        bool dead = false;
        for (std::size_t i = 0; i < n; ++i) {
            RationalSet R = benois_reduce(fsa_concat(
                fsa_concat(inv_automaton(fam.seqs[j][i]), Q.automaton),
                fsa_from_words(view->alpha, {view->map(f.g[i])})));
            cap_check(R, automaton_cap);
            RationalSet QA = subgroup_intersect(R, GA);
            Q = image_under_iso(QA, GA, view->alpha, zB);
            cap_check(Q, automaton_cap);
            if (rational_empty(Q)) { dead = true; break; }
        }
        if (dead) continue;
        RationalSet fin = benois_reduce(
            fsa_concat(inv_automaton(Q), fam.seqs[j][n].automaton));
        cap_check(fin, automaton_cap);
        if (member(fin, gn)) return true;
    }
    return false;
}

bool member_thmD_inverted(const HnnSpec& spec,
                          const std::vector<std::vector<Word>>& W,
                          const std::vector<std::vector<Word>>& Wp,
                          const Word& query, NSetCache* cache,
                          std::size_t automaton_cap) {
    std::size_t d = std::max(W.size(), Wp.size());
    std::vector<std::vector<Word>> W2(d), Wp2(d);
    if (!W.empty()) W2[0] = invert_all(W[0]);
    for (std::size_t mu = 1; mu < d; ++mu) {
        if (mu < Wp.size()) W2[mu] = invert_all(Wp[mu]);
        if (mu < W.size()) Wp2[mu] = invert_all(W[mu]);
    }
    return member_thmD(spec, W2, Wp2, invert(query), cache, automaton_cap);
}

std::string canonical_key(const HnnSpec& spec, const Word& w) {
    auto view = as_free(spec.base);
    if (!view) throw std::logic_error("canonical form backend unavailable");
    std::vector<Word> zA = view->map_all(spec.A_gens);
    std::vector<Word> zB = view->map_all(spec.B_gens);
    StallingsGraph GA(view->alpha, zA), GB(view->alpha, zB);
    std::uint32_t t = static_cast<std::uint32_t>(spec.base.generators->size());

    auto phi = [&](const StallingsGraph& g, const std::vector<Word>& images,
                   const Word& a) {
        auto y = g.express(a);
        if (!y) throw std::logic_error("coset decomposition failed");
        if (y->empty()) return Word(view->alpha);
        return free_reduce(substitute(*y, images));
    };

    std::vector<std::pair<Word, int>> head;  // (coset rep, t-sign)
    Word h(view->alpha);
    for (const Letter& l : w.letters()) {
        if (l.sym != t) {
            Symbol s = spec.combined->at(l.sym);
            Word lw(spec.base.generators,
                    {Letter{static_cast<std::uint32_t>(
                                *spec.base.generators->index_of(s)),
                            l.sign}});
            h = free_reduce(h.concat(view->map(lw)));
            continue;
        }
        const StallingsGraph& g = l.sign > 0 ? GA : GB;
        const std::vector<Word>& images = l.sign > 0 ? zB : zA;
        if (g.contains(h) && !head.empty() && head.back().second == -l.sign) {
            h = free_reduce(head.back().first.concat(phi(g, images, h)));
            head.pop_back();
            continue;
        }
        Word r = g.left_coset_rep(h);
        Word a = free_reduce(invert(r).concat(h));
        head.push_back({r, l.sign});
        h = phi(g, images, a);
    }
    std::ostringstream out;
    for (const auto& [rep, sign] : head)
        out << print_word(rep) << (sign > 0 ? "|t|" : "|T|");
    out << print_word(h);
    return out.str();
}

}  // namespace prefixm
