#include "prefixm/fsa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace prefixm {

namespace {

// Outgoing adjacency indexed by state; kEps entries first is not
// guaranteed, callers filter.
std::vector<std::vector<std::pair<Sig, std::size_t>>> out_adjacency(const Fsa& a) {
    std::vector<std::vector<std::pair<Sig, std::size_t>>> adj(a.num_states);
    for (const auto& [u, x, v] : a.transitions) adj[u].push_back({x, v});
    return adj;
}

std::set<std::size_t> eps_closure_indexed(
    const std::vector<std::vector<std::pair<Sig, std::size_t>>>& adj,
    const std::set<std::size_t>& from) {
    std::set<std::size_t> out = from;
    std::deque<std::size_t> work(from.begin(), from.end());
    while (!work.empty()) {
        std::size_t p = work.front();
        work.pop_front();
        for (const auto& [x, v] : adj[p])
            if (x == kEps && out.insert(v).second) work.push_back(v);
    }
    return out;
}

std::size_t num_sigs(const Fsa& a) { return a.alphabet->size() * 2; }

}  // namespace

Fsa fsa_from_words(const AlphabetPtr& alpha, const std::vector<Word>& words) {
    Fsa a;
    a.alphabet = alpha;
    a.num_states = 1;
    a.initial = {0};
    for (const Word& w : words) {
        if (w.empty()) {
            a.final.insert(0);
            continue;
        }
        std::size_t prev = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::size_t next = a.num_states++;
            a.transitions.insert({prev, sig_of(w[i]), next});
            prev = next;
        }
        a.final.insert(prev);
    }
    return a;
}

Fsa fsa_union(const Fsa& a, const Fsa& b) {
    if (!(*a.alphabet == *b.alphabet))
        throw std::invalid_argument("alphabet mismatch");
    Fsa out = a;
    std::size_t off = a.num_states;
    out.num_states += b.num_states;
    for (const auto& [p, x, q] : b.transitions)
        out.transitions.insert({p + off, x, q + off});
    for (std::size_t p : b.initial) out.initial.insert(p + off);
    for (std::size_t p : b.final) out.final.insert(p + off);
    return out;
}

Fsa fsa_concat(const Fsa& a, const Fsa& b) {
    if (!(*a.alphabet == *b.alphabet))
        throw std::invalid_argument("alphabet mismatch");
    Fsa out = a;
    std::size_t off = a.num_states;
    out.num_states += b.num_states;
    out.final.clear();
    for (const auto& [p, x, q] : b.transitions)
        out.transitions.insert({p + off, x, q + off});
    for (std::size_t p : a.final)
        for (std::size_t q : b.initial) out.transitions.insert({p, kEps, q + off});
    for (std::size_t p : b.final) out.final.insert(p + off);
    return out;
}

Fsa fsa_star(const Fsa& a) {
    Fsa out = a;
    std::size_t s = out.num_states++;
    for (std::size_t p : out.initial) out.transitions.insert({s, kEps, p});
    for (std::size_t p : out.final) out.transitions.insert({p, kEps, s});
    out.initial = {s};
    out.final = {s};
    return out;
}

Fsa fsa_reverse_invert(const Fsa& a) {
    Fsa out;
    out.alphabet = a.alphabet;
    out.num_states = a.num_states;
    out.initial = a.final;
    out.final = a.initial;
    for (const auto& [p, x, q] : a.transitions)
        out.transitions.insert({q, x == kEps ? kEps : sig_inverse(x), p});
    return out;
}

Fsa eliminate_eps(const Fsa& a) {
    auto adj = out_adjacency(a);
    Fsa out;
    out.alphabet = a.alphabet;
    out.num_states = a.num_states;
    out.initial = a.initial;
    for (std::size_t p = 0; p < a.num_states; ++p) {
        auto cl = eps_closure_indexed(adj, {p});
        bool fin = false;
        for (std::size_t c : cl) {
            if (a.final.count(c)) fin = true;
            for (const auto& [x, v] : adj[c])
                if (x != kEps) out.transitions.insert({p, x, v});
        }
        if (fin) out.final.insert(p);
    }
    return out;
}

Fsa trim(const Fsa& a) {
    std::vector<std::vector<std::size_t>> succ(a.num_states), pred(a.num_states);
    for (const auto& [u, x, v] : a.transitions) {
        succ[u].push_back(v);
        pred[v].push_back(u);
    }
    std::vector<bool> fwd(a.num_states, false), bwd(a.num_states, false);
    std::deque<std::size_t> work;
    for (std::size_t p : a.initial) { fwd[p] = true; work.push_back(p); }
    while (!work.empty()) {
        std::size_t p = work.front(); work.pop_front();
        for (std::size_t v : succ[p])
            if (!fwd[v]) { fwd[v] = true; work.push_back(v); }
    }
    for (std::size_t p : a.final) { bwd[p] = true; work.push_back(p); }
    while (!work.empty()) {
        std::size_t p = work.front(); work.pop_front();
        for (std::size_t u : pred[p])
            if (!bwd[u]) { bwd[u] = true; work.push_back(u); }
    }
    std::vector<std::size_t> remap(a.num_states, SIZE_MAX);
    Fsa out;
    out.alphabet = a.alphabet;
    for (std::size_t p = 0; p < a.num_states; ++p)
        if (fwd[p] && bwd[p]) remap[p] = out.num_states++;
    for (const auto& [u, x, v] : a.transitions)
        if (remap[u] != SIZE_MAX && remap[v] != SIZE_MAX)
            out.transitions.insert({remap[u], x, remap[v]});
    for (std::size_t p : a.initial)
        if (remap[p] != SIZE_MAX) out.initial.insert(remap[p]);
    for (std::size_t p : a.final)
        if (remap[p] != SIZE_MAX) out.final.insert(remap[p]);
    return out;
}

bool fsa_accepts(const Fsa& a, const Word& w) {
    auto adj = out_adjacency(a);
    std::set<std::size_t> cur = eps_closure_indexed(adj, a.initial);
    for (const Letter& l : w.letters()) {
        Sig x = sig_of(l);
        std::set<std::size_t> next;
        for (std::size_t u : cur)
            for (const auto& [y, v] : adj[u])
                if (y == x) next.insert(v);
        cur = eps_closure_indexed(adj, next);
        if (cur.empty()) return false;
    }
    for (std::size_t p : cur)
        if (a.final.count(p)) return true;
    return false;
}

bool fsa_empty(const Fsa& a) {
    Fsa t = trim(a);
    return t.final.empty();
}

Fsa reduced_word_fsa(const AlphabetPtr& alpha) {
    // State 0: nothing read yet; state 1+s: last signed letter was s.
    Fsa a;
    a.alphabet = alpha;
    std::size_t n = alpha->size() * 2;
    a.num_states = n + 1;
    a.initial = {0};
    for (std::size_t p = 0; p <= n; ++p) a.final.insert(p);
    for (Sig x = 0; x < static_cast<Sig>(n); ++x) {
        a.transitions.insert({0, x, static_cast<std::size_t>(x) + 1});
        for (Sig y = 0; y < static_cast<Sig>(n); ++y)
            if (sig_inverse(y) != x)
                a.transitions.insert(
                    {static_cast<std::size_t>(y) + 1, x,
                     static_cast<std::size_t>(x) + 1});
    }
    return a;
}

Fsa determinize(const Fsa& a0) {
    Fsa a = eliminate_eps(a0);
    std::size_t ns = num_sigs(a);
    // Letter-indexed adjacency.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(ns);
    for (const auto& [u, x, v] : a.transitions) adj[x].push_back({u, v});

    std::map<std::set<std::size_t>, std::size_t> id;
    std::vector<std::set<std::size_t>> subsets;
    Fsa out;
    out.alphabet = a.alphabet;
    auto get = [&](const std::set<std::size_t>& s) {
        auto it = id.find(s);
        if (it != id.end()) return it->second;
        std::size_t i = out.num_states++;
        id.emplace(s, i);
        subsets.push_back(s);
        return i;
    };
    std::size_t start = get(a.initial);
    out.initial = {start};
    for (std::size_t i = 0; i < out.num_states; ++i) {
        std::set<std::size_t> cur = subsets[i];
        bool fin = false;
        for (std::size_t p : cur)
            if (a.final.count(p)) fin = true;
        if (fin) out.final.insert(i);
        for (Sig x = 0; x < static_cast<Sig>(ns); ++x) {
            std::set<std::size_t> next;
            for (const auto& [u, v] : adj[x])
                if (cur.count(u)) next.insert(v);
            out.transitions.insert({i, x, get(next)});
        }
    }
    return out;
}

Fsa normalize(const Fsa& a0) {
    Fsa d = determinize(a0);
    std::size_t ns = num_sigs(d);
    // Moore partition refinement.
    std::vector<std::size_t> cls(d.num_states);
    for (std::size_t p = 0; p < d.num_states; ++p) cls[p] = d.final.count(p) ? 1 : 0;
    std::vector<std::vector<std::size_t>> delta(d.num_states,
                                                std::vector<std::size_t>(ns));
    for (const auto& [u, x, v] : d.transitions) delta[u][x] = v;
    for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> sig_id;
        std::vector<std::size_t> next_cls(d.num_states);
        for (std::size_t p = 0; p < d.num_states; ++p) {
            std::vector<std::size_t> key{cls[p]};
            for (std::size_t x = 0; x < ns; ++x) key.push_back(cls[delta[p][x]]);
            auto [it, ins] = sig_id.emplace(key, sig_id.size());
            next_cls[p] = it->second;
            (void)ins;
        }
        if (next_cls == cls) break;
        cls = next_cls;
    }
    // Canonical BFS numbering from the initial class.
    std::size_t start_cls = cls[*d.initial.begin()];
    std::map<std::size_t, std::size_t> order;
    std::deque<std::size_t> work;
    auto visit = [&](std::size_t c) {
        if (!order.count(c)) { order.emplace(c, order.size()); work.push_back(c); }
    };
    visit(start_cls);
    std::vector<std::size_t> rep(d.num_states, SIZE_MAX);
    for (std::size_t p = 0; p < d.num_states; ++p)
        if (rep[cls[p]] == SIZE_MAX) rep[cls[p]] = p;
    while (!work.empty()) {
        std::size_t c = work.front(); work.pop_front();
        for (std::size_t x = 0; x < ns; ++x) visit(cls[delta[rep[c]][x]]);
    }
    Fsa out;
    out.alphabet = d.alphabet;
    out.num_states = order.size();
    out.initial = {order.at(start_cls)};
    for (auto [c, i] : order) {
        if (d.final.count(rep[c]) ||
            std::any_of(d.final.begin(), d.final.end(),
                        [&](std::size_t f) { return cls[f] == c; }))
            out.final.insert(i);
        for (std::size_t x = 0; x < ns; ++x)
            out.transitions.insert(
                {i, static_cast<Sig>(x), order.at(cls[delta[rep[c]][x]])});
    }
    return out;
}

bool same_language(const Fsa& a, const Fsa& b) {
    return normalize(a) == normalize(b);
}

RationalSet benois_reduce(const Fsa& a0) {
    Fsa a = eliminate_eps(trim(a0));
    std::size_t n = a.num_states;
    std::size_t ns = num_sigs(a);
    // Per-state transitions indexed by signed letter.
    std::vector<std::vector<std::vector<std::size_t>>> succ(
        n, std::vector<std::vector<std::size_t>>(ns)),
        pred(n, std::vector<std::vector<std::size_t>>(ns));
    for (const auto& [p, x, q] : a.transitions) {
        succ[p][x].push_back(q);
        pred[q][x].push_back(p);
    }
    // eps-reducing reachability, closed under cancellation and
    // composition via a pair worklist.
    std::vector<std::set<std::size_t>> fwd(n), bwd(n);
    std::deque<std::pair<std::size_t, std::size_t>> work;
    auto add = [&](std::size_t p, std::size_t q) {
        if (fwd[p].insert(q).second) {
            bwd[q].insert(p);
            work.push_back({p, q});
        }
    };
    for (std::size_t p = 0; p < n; ++p) add(p, p);
    while (!work.empty()) {
        auto [u, v] = work.front();
        work.pop_front();
        // p -x-> u ~> v -x^-1-> q  =>  p ~> q
        for (Sig x = 0; x < static_cast<Sig>(ns); ++x)
            for (std::size_t p : pred[u][x])
                for (std::size_t q : succ[v][sig_inverse(x)]) add(p, q);
        // u ~> v ~> r and t ~> u ~> v
        std::vector<std::size_t> outs(fwd[v].begin(), fwd[v].end());
        for (std::size_t r : outs) add(u, r);
        std::vector<std::size_t> ins(bwd[u].begin(), bwd[u].end());
        for (std::size_t t : ins) add(t, v);
    }
    Fsa sat = a;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q : fwd[p])
            if (p != q) sat.transitions.insert({p, kEps, q});
    RationalSet out;
    out.group_alphabet = a.alphabet;
    out.reduced_flag = true;
    // Product with the reduced-word automaton, built over reachable
    // states only; eps moves stay on the first component.  Reduced-word
    // states: 0 = nothing read, 1+x = last signed letter was x.
    auto sadj = out_adjacency(sat);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pid;
    std::deque<std::pair<std::size_t, std::size_t>> frontier;
    Fsa prod;
    prod.alphabet = a.alphabet;
    auto get = [&](std::size_t p, std::size_t r) {
        auto [it, ins] = pid.emplace(std::pair{p, r}, prod.num_states);
        if (ins) {
            ++prod.num_states;
            frontier.push_back({p, r});
            if (sat.final.count(p)) prod.final.insert(it->second);
        }
        return it->second;
    };
    for (std::size_t p : sat.initial) prod.initial.insert(get(p, 0));
    while (!frontier.empty()) {
        auto [p, r] = frontier.front();
        frontier.pop_front();
        std::size_t i = pid.at({p, r});
        for (const auto& [x, q] : sadj[p]) {
            if (x == kEps) {
                prod.transitions.insert({i, kEps, get(q, r)});
                continue;
            }
            if (r != 0 && sig_inverse(x) == static_cast<Sig>(r - 1)) continue;
            prod.transitions.insert({i, x, get(q, static_cast<std::size_t>(x) + 1)});
        }
    }
    out.automaton = trim(prod);
    return out;
}

RationalSet rational_monoid(const AlphabetPtr& alpha,
                            const std::vector<Word>& gens) {
    return benois_reduce(fsa_star(fsa_from_words(alpha, gens)));
}

bool member(const RationalSet& r, const Word& w) {
    if (!r.reduced_flag) throw std::logic_error("rational set not saturated");
    return fsa_accepts(r.automaton, free_reduce(w));
}

RationalSet intersect(const RationalSet& r1, const RationalSet& r2) {
    if (!(*r1.group_alphabet == *r2.group_alphabet))
        throw std::invalid_argument("alphabet mismatch");
    if (!r1.reduced_flag || !r2.reduced_flag)
        throw std::logic_error("rational set not saturated");
    Fsa a = eliminate_eps(r1.automaton), b = eliminate_eps(r2.automaton);
    Fsa prod;
    prod.alphabet = r1.group_alphabet;
    prod.num_states = a.num_states * b.num_states;
    auto pid = [&](std::size_t p, std::size_t q) { return p * b.num_states + q; };
    for (const auto& [u1, x1, v1] : a.transitions)
        for (const auto& [u2, x2, v2] : b.transitions)
            if (x1 == x2) prod.transitions.insert({pid(u1, u2), x1, pid(v1, v2)});
    for (std::size_t p : a.initial)
        for (std::size_t q : b.initial) prod.initial.insert(pid(p, q));
    for (std::size_t p : a.final)
        for (std::size_t q : b.final) prod.final.insert(pid(p, q));
    return RationalSet{trim(prod), r1.group_alphabet, true};
}

RationalSet complement(const RationalSet& r) {
    if (!r.reduced_flag) throw std::logic_error("rational set not saturated");
    Fsa d = determinize(r.automaton);
    std::set<std::size_t> flipped;
    for (std::size_t p = 0; p < d.num_states; ++p)
        if (!d.final.count(p)) flipped.insert(p);
    d.final = std::move(flipped);
    RationalSet all{reduced_word_fsa(r.group_alphabet), r.group_alphabet, true};
    RationalSet dd{d, r.group_alphabet, true};
    return intersect(dd, all);
}

bool rational_empty(const RationalSet& r) { return fsa_empty(r.automaton); }

std::optional<std::vector<Word>> express_in_monoid(const AlphabetPtr& alpha,
                                                   const std::vector<Word>& gens,
                                                   const Word& target) {
    Word t = free_reduce(target);
    if (t.empty()) return std::vector<Word>{};
    // Flower automaton: every generator is a petal looping at state 0.
    std::size_t n = 1;
    using Tr = std::tuple<std::size_t, Sig, std::size_t>;
    std::vector<Tr> trans;
    std::set<std::vector<Letter>> seen_gens;
    for (const Word& g : gens) {
        if (g.empty() || !seen_gens.insert(g.letters()).second) continue;
        std::size_t prev = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            std::size_t next = i + 1 == g.size() ? 0 : n++;
            trans.push_back({prev, sig_of(g[i]), next});
            prev = next;
        }
    }
    std::size_t ns = alpha->size() * 2;
    std::vector<std::vector<std::vector<std::size_t>>> succ(
        n, std::vector<std::vector<std::size_t>>(ns)),
        pred(n, std::vector<std::vector<std::size_t>>(ns));
    for (const auto& [p, x, q] : trans) {
        succ[p][x].push_back(q);
        pred[q][x].push_back(p);
    }
    // Saturation as in benois_reduce, but every pair records how it was
    // derived so a cancelling path can be reconstructed afterwards.
    struct Prov {
        enum Kind { kRefl, kCancel, kCompose } kind;
        Sig x = kEps;           // cancel: the cancelled outer letter
        std::size_t a = 0, b = 0;  // referenced pair ids
    };
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pid;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<Prov> prov;
    std::vector<std::set<std::size_t>> fwd(n), bwd(n);
    std::deque<std::size_t> work;
    auto add = [&](std::size_t p, std::size_t q, Prov pr) {
        if (!fwd[p].insert(q).second) return;
        bwd[q].insert(p);
        pid.emplace(std::pair{p, q}, pairs.size());
        pairs.push_back({p, q});
        prov.push_back(pr);
        work.push_back(pairs.size() - 1);
    };
    for (std::size_t p = 0; p < n; ++p) add(p, p, {Prov::kRefl});
    while (!work.empty()) {
        std::size_t id = work.front();
        work.pop_front();
        auto [u, v] = pairs[id];
        for (Sig x = 0; x < static_cast<Sig>(ns); ++x)
            for (std::size_t p : pred[u][x])
                for (std::size_t q : succ[v][sig_inverse(x)])
                    add(p, q, {Prov::kCancel, x, id, 0});
        std::vector<std::size_t> outs(fwd[v].begin(), fwd[v].end());
        for (std::size_t r : outs)
            add(u, r, {Prov::kCompose, kEps, id, pid.at({v, r})});
        std::vector<std::size_t> ins(bwd[u].begin(), bwd[u].end());
        for (std::size_t s : ins)
            add(s, v, {Prov::kCompose, kEps, pid.at({s, u}), id});
    }
    // Accepting path for t: letter steps through petals, one saturated
    // hop between them (the relation is already transitively closed).
    std::size_t m = t.size();
    struct Back {
        std::size_t prev = SIZE_MAX;  // node index
        bool is_pair = false;
        std::size_t pair_id = 0;
        Tr step{};
    };
    auto nid = [&](std::size_t p, std::size_t pos) { return pos * n + p; };
    std::vector<Back> back(n * (m + 1));
    std::vector<bool> seen(n * (m + 1), false);
    std::deque<std::size_t> bfs;
    seen[nid(0, 0)] = true;
    bfs.push_back(nid(0, 0));
    while (!bfs.empty()) {
        std::size_t cur = bfs.front();
        bfs.pop_front();
        std::size_t pos = cur / n, p = cur % n;
        if (pos == m) continue;
        Sig x = sig_of(t[pos]);
        auto step_to = [&](std::size_t from, std::size_t mid,
                           std::optional<std::size_t> pair_id) {
            for (std::size_t q : succ[mid][x]) {
                std::size_t next = nid(q, pos + 1);
                if (seen[next]) continue;
                seen[next] = true;
                Back b;
                b.prev = cur;
                if (pair_id) { b.is_pair = true; b.pair_id = *pair_id; }
                b.step = {mid, x, q};
                back[next] = b;
                bfs.push_back(next);
            }
            (void)from;
        };
        step_to(p, p, std::nullopt);
        for (std::size_t q : fwd[p])
            if (q != p) step_to(p, q, pid.at({p, q}));
    }
    std::optional<std::size_t> goal;
    if (seen[nid(0, m)]) goal = nid(0, m);
    // The word may also end inside a saturated hop back to the root.
    std::size_t goal_pair = SIZE_MAX;
    if (!goal)
        for (std::size_t p = 0; p < n && !goal; ++p)
            if (seen[nid(p, m)] && fwd[p].count(0)) {
                goal = nid(p, m);
                goal_pair = pid.at({p, 0});
            }
    if (!goal) return std::nullopt;
    // Flatten a pair into a sequence of flower transitions on demand.
    std::vector<std::vector<Tr>> memo(pairs.size());
    std::vector<char> done(pairs.size(), 0);
    auto expand = [&](std::size_t root) -> const std::vector<Tr>& {
        std::vector<std::size_t> stack{root};
        while (!stack.empty()) {
            std::size_t id = stack.back();
            if (done[id]) { stack.pop_back(); continue; }
            const Prov& pr = prov[id];
            if (pr.kind == Prov::kRefl) {
                done[id] = 1;
                stack.pop_back();
                continue;
            }
            if (pr.kind == Prov::kCancel) {
                if (!done[pr.a]) { stack.push_back(pr.a); continue; }
                auto [p, q] = pairs[id];
                auto [u, v] = pairs[pr.a];
                std::vector<Tr> out{{p, pr.x, u}};
                out.insert(out.end(), memo[pr.a].begin(), memo[pr.a].end());
                out.push_back({v, sig_inverse(pr.x), q});
                memo[id] = std::move(out);
                done[id] = 1;
                stack.pop_back();
                continue;
            }
            if (!done[pr.a]) { stack.push_back(pr.a); continue; }
            if (!done[pr.b]) { stack.push_back(pr.b); continue; }
            std::vector<Tr> out = memo[pr.a];
            out.insert(out.end(), memo[pr.b].begin(), memo[pr.b].end());
            memo[id] = std::move(out);
            done[id] = 1;
            stack.pop_back();
        }
        return memo[root];
    };
    std::vector<Tr> path;
    if (goal_pair != SIZE_MAX) {
        const auto& tail = expand(goal_pair);
        path.insert(path.end(), tail.rbegin(), tail.rend());
    }
    std::size_t cur = *goal;
    while (cur != nid(0, 0)) {
        const Back& b = back[cur];
        path.push_back(b.step);
        if (b.is_pair) {
            const auto& mid = expand(b.pair_id);
            path.insert(path.end(), mid.rbegin(), mid.rend());
        }
        cur = b.prev;
    }
    std::reverse(path.begin(), path.end());
    // Root-to-root segments of the path each spell one full petal.
    std::vector<Word> out;
    std::vector<Letter> seg;
    for (const auto& [p, x, q] : path) {
        seg.push_back(letter_of(x));
        if (q == 0) {
            out.push_back(Word(alpha, seg));
            seg.clear();
        }
    }
    return out;
}

std::optional<Word> rational_witness(const RationalSet& r) {
    Fsa a = trim(eliminate_eps(r.automaton));
    if (a.final.empty()) return std::nullopt;
    std::map<std::size_t, std::pair<std::size_t, Sig>> pred;
    std::deque<std::size_t> work;
    std::set<std::size_t> seen;
    for (std::size_t p : a.initial) { seen.insert(p); work.push_back(p); }
    std::optional<std::size_t> hit;
    for (std::size_t p : a.initial)
        if (a.final.count(p)) hit = p;
    while (!hit && !work.empty()) {
        std::size_t p = work.front(); work.pop_front();
        for (const auto& [u, x, v] : a.transitions) {
            if (u != p || seen.count(v)) continue;
            seen.insert(v);
            pred.emplace(v, std::pair{p, x});
            if (a.final.count(v)) { hit = v; break; }
            work.push_back(v);
        }
    }
    if (!hit) return std::nullopt;
    std::vector<Letter> ls;
    std::size_t cur = *hit;
    while (!a.initial.count(cur) || pred.count(cur)) {
        auto it = pred.find(cur);
        if (it == pred.end()) break;
        ls.push_back(letter_of(it->second.second));
        cur = it->second.first;
    }
    std::reverse(ls.begin(), ls.end());
    return Word(r.group_alphabet, std::move(ls));
}

std::string fsa_to_text(const Fsa& a) {
    std::ostringstream out;
    out << "fsa states=" << a.num_states << " alphabet=";
    for (const Symbol& s : a.alphabet->letters()) out << to_string(s);
    out << "\ninit:";
    for (std::size_t p : a.initial) out << " " << p;
    out << "\nfinal:";
    for (std::size_t p : a.final) out << " " << p;
    out << "\n";
    for (const auto& [p, x, q] : a.transitions) {
        out << p << " ";
        if (x == kEps)
            out << "-";
        else {
            Letter l = letter_of(x);
            Symbol s = a.alphabet->at(l.sym);
            if (l.sign < 0) s.base = static_cast<char>(std::toupper(s.base));
            out << to_string(s);
        }
        out << " " << q << "\n";
    }
    return out.str();
}

Fsa fsa_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("fsa ", 0) != 0)
        throw std::invalid_argument("bad fsa header");
    std::size_t spos = line.find("states=");
    std::size_t apos = line.find("alphabet=");
    if (spos == std::string::npos || apos == std::string::npos)
        throw std::invalid_argument("bad fsa header");
    Fsa a;
    a.num_states = std::stoul(line.substr(spos + 7));
    std::string letters = line.substr(apos + 9);
    {
        std::vector<Symbol> syms;
        std::size_t i = 0;
        while (i < letters.size()) {
            Symbol s{letters[i]};
            ++i;
            if (i < letters.size() && letters[i] == '{') {
                std::size_t close = letters.find('}', i);
                s.sub = std::stoi(letters.substr(i + 1, close - i - 1));
                s.has_sub = true;
                i = close + 1;
            }
            syms.push_back(s);
        }
        a.alphabet = make_alphabet(std::move(syms));
    }
    auto read_states = [&](const std::string& tag) {
        if (!std::getline(in, line) || line.rfind(tag, 0) != 0)
            throw std::invalid_argument("expected " + tag);
        std::istringstream ls(line.substr(tag.size()));
        std::set<std::size_t> out;
        std::size_t p;
        while (ls >> p) out.insert(p);
        return out;
    };
    a.initial = read_states("init:");
    a.final = read_states("final:");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::size_t p, q;
        std::string tok;
        if (!(ls >> p >> tok >> q)) throw std::invalid_argument("bad transition");
        if (tok == "-") {
            a.transitions.insert({p, kEps, q});
            continue;
        }
        Word w = parse_word(a.alphabet, tok);
        if (w.size() != 1) throw std::invalid_argument("bad transition letter");
        a.transitions.insert({p, sig_of(w[0]), q});
    }
    return a;
}

std::vector<Word> reduced_words_up_to(const AlphabetPtr& alpha,
                                      std::size_t max_len) {
    std::vector<Word> out{Word(alpha)};
    std::size_t begin = 0, end = 1;
    for (std::size_t len = 1; len <= max_len; ++len) {
        for (std::size_t i = begin; i < end; ++i) {
            for (std::uint32_t s = 0; s < alpha->size(); ++s)
                for (int sg : {1, -1}) {
                    Letter l{s, static_cast<std::int8_t>(sg)};
                    if (!out[i].empty() && out[i].letters().back() == l.inverse())
                        continue;
                    out.push_back(out[i].append(l));
                }
        }
        begin = end;
        end = out.size();
    }
    return out;
}

}  // namespace prefixm
