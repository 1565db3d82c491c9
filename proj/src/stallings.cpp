#include "prefixm/stallings.hpp"

#include <deque>

namespace prefixm {

namespace {

struct RawEdge {
    std::size_t a, b;
    Sig x;       // label in the a -> b direction
    Word prov;   // Y-word in the a -> b direction
    bool alive = true;
};

struct HalfEdge {
    std::size_t edge;
    bool forward;
};

}  // namespace

StallingsGraph::StallingsGraph(AlphabetPtr alphabet, std::vector<Word> generators)
    : alpha_(std::move(alphabet)) {
    std::vector<Word> kept;
    for (const Word& g : generators) {
        Word r = free_reduce(g);
        if (!r.empty()) kept.push_back(std::move(r));
    }
    gens_ = kept;
    if (!kept.empty()) {
        std::vector<Symbol> ys;
        for (std::size_t i = 0; i < kept.size(); ++i)
            ys.push_back(Symbol{'y', static_cast<int>(i + 1), true});
        ygens_ = make_alphabet(std::move(ys));
    }

    std::vector<RawEdge> edges;
    std::size_t nverts = 1;
    for (std::size_t j = 0; j < kept.size(); ++j) {
        const Word& w = kept[j];
        std::size_t prev = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::size_t next = (i + 1 == w.size()) ? 0 : nverts++;
            Word prov = (i + 1 == w.size() && ygens_)
                            ? Word(ygens_, {Letter{static_cast<std::uint32_t>(j), 1}})
                            : (ygens_ ? Word(ygens_) : Word());
            edges.push_back(RawEdge{prev, next, sig_of(w[i]), std::move(prov)});
            prev = next;
        }
    }

    // Fold to fixpoint.
    for (;;) {
        // Half-edge occurrences grouped by (vertex, outgoing sig).
        std::map<std::pair<std::size_t, Sig>, std::vector<HalfEdge>> occ;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (!edges[i].alive) continue;
            occ[{edges[i].a, edges[i].x}].push_back({i, true});
            occ[{edges[i].b, sig_inverse(edges[i].x)}].push_back({i, false});
        }
        const std::vector<HalfEdge>* dup = nullptr;
        for (const auto& [key, hs] : occ)
            if (hs.size() >= 2) { dup = &hs; break; }
        if (!dup) break;

        HalfEdge h1 = (*dup)[0], h2 = (*dup)[1];
        auto target = [&](HalfEdge h) {
            return h.forward ? edges[h.edge].b : edges[h.edge].a;
        };
        auto prov_out = [&](HalfEdge h) {
            return h.forward ? edges[h.edge].prov : invert(edges[h.edge].prov);
        };
        std::size_t v1 = target(h1), v2 = target(h2);
        if (v1 == v2) {
            edges[h2.edge].alive = false;
            continue;
        }
        if (v2 == base_) std::swap(h1, h2), std::swap(v1, v2);
        Word delta = free_reduce(invert(prov_out(h1)).concat(prov_out(h2)));
        Word delta_inv = invert(delta);
        for (RawEdge& e : edges) {
            if (!e.alive) continue;
            bool at_a = (e.a == v2), at_b = (e.b == v2);
            if (at_a) { e.a = v1; e.prov = free_reduce(delta.concat(e.prov)); }
            if (at_b) { e.b = v1; e.prov = free_reduce(e.prov.concat(delta_inv)); }
        }
    }

    // Drop hanging trees: repeatedly remove degree-1 non-basepoint
    // vertices.
    for (;;) {
        std::map<std::size_t, std::size_t> degree;
        for (const RawEdge& e : edges) {
            if (!e.alive) continue;
            ++degree[e.a];
            ++degree[e.b];
        }
        bool removed = false;
        for (RawEdge& e : edges) {
            if (!e.alive) continue;
            if ((degree[e.a] == 1 && e.a != base_) ||
                (degree[e.b] == 1 && e.b != base_)) {
                e.alive = false;
                removed = true;
            }
        }
        if (!removed) break;
    }

    // Compact vertex ids.
    std::map<std::size_t, std::size_t> remap;
    remap[base_] = 0;
    for (const RawEdge& e : edges) {
        if (!e.alive) continue;
        if (!remap.count(e.a)) { std::size_t id = remap.size(); remap[e.a] = id; }
        if (!remap.count(e.b)) { std::size_t id = remap.size(); remap[e.b] = id; }
    }
    adj_.resize(remap.size());
    for (const RawEdge& e : edges) {
        if (!e.alive) continue;
        std::size_t a = remap[e.a], b = remap[e.b];
        adj_[a][e.x] = {b, e.prov};
        adj_[b][sig_inverse(e.x)] = {a, invert(e.prov)};
    }
    base_ = 0;

    // Spanning tree words by BFS in letter order.
    tree_.assign(adj_.size(), Word(alpha_));
    std::vector<bool> seen(adj_.size(), false);
    std::deque<std::size_t> work{base_};
    seen[base_] = true;
    while (!work.empty()) {
        std::size_t v = work.front();
        work.pop_front();
        for (const auto& [x, to] : adj_[v]) {
            if (seen[to.first]) continue;
            seen[to.first] = true;
            tree_[to.first] = tree_[v].append(letter_of(x));
            work.push_back(to.first);
        }
    }
}

std::optional<std::pair<std::size_t, Word>> StallingsGraph::step(std::size_t v,
                                                                 Sig x) const {
    auto it = adj_[v].find(x);
    if (it == adj_[v].end()) return std::nullopt;
    return it->second;
}

bool StallingsGraph::contains(const Word& w) const {
    return express(w).has_value();
}

std::optional<Word> StallingsGraph::express(const Word& w) const {
    Word r = free_reduce(w);
    std::size_t v = base_;
    Word out = ygens_ ? Word(ygens_) : Word();
    for (const Letter& l : r.letters()) {
        auto nxt = step(v, sig_of(l));
        if (!nxt) return std::nullopt;
        v = nxt->first;
        out = out.concat(nxt->second);
    }
    if (v != base_) return std::nullopt;
    return free_reduce(out);
}

Word StallingsGraph::right_coset_rep(const Word& g) const {
    Word r = free_reduce(g);
    std::size_t v = base_;
    std::size_t i = 0;
    while (i < r.size()) {
        auto nxt = step(v, sig_of(r[i]));
        if (!nxt) break;
        v = nxt->first;
        ++i;
    }
    return free_reduce(tree_[v].concat(r.subword(i, r.size())));
}

Word StallingsGraph::left_coset_rep(const Word& g) const {
    return invert(right_coset_rep(invert(g)));
}

RationalSet StallingsGraph::rational_set() const {
    Fsa a;
    a.alphabet = alpha_;
    a.num_states = adj_.size();
    a.initial = {base_};
    a.final = {base_};
    for (std::size_t v = 0; v < adj_.size(); ++v)
        for (const auto& [x, to] : adj_[v]) a.transitions.insert({v, x, to.first});
    Fsa red = reduced_word_fsa(alpha_);
    Fsa prod;
    prod.alphabet = alpha_;
    prod.num_states = a.num_states * red.num_states;
    auto pid = [&](std::size_t p, std::size_t q) { return p * red.num_states + q; };
    for (const auto& [u1, x1, v1] : a.transitions)
        for (const auto& [u2, x2, v2] : red.transitions)
            if (x1 == x2) prod.transitions.insert({pid(u1, u2), x1, pid(v1, v2)});
    for (std::size_t q : red.initial) prod.initial.insert(pid(base_, q));
    for (std::size_t q : red.final) prod.final.insert(pid(base_, q));
    return RationalSet{trim(prod), alpha_, true};
}

}  // namespace prefixm
