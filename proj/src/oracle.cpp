#include "prefixm/oracle.hpp"

#include <algorithm>

namespace prefixm {

MonoidBall::MonoidBall(const GroupHandle& model, std::vector<Word> gens)
    : model_(&model), gens_(std::move(gens)) {
    Word identity(model.generators);
    nodes_.push_back({identity, static_cast<std::size_t>(-1), 0});
    seen_.emplace(handle_canonical_key(model, identity), 0);
    frontier_.push_back(0);
}

void MonoidBall::expand() {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier_) {
        for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
            Word w = free_reduce(nodes_[idx].element.concat(gens_[gi]));
            std::string key = handle_canonical_key(*model_, w);
            auto [it, fresh] = seen_.emplace(key, nodes_.size());
            if (!fresh) continue;
            next.push_back(nodes_.size());
            nodes_.push_back({std::move(w), idx, gi});
        }
    }
    frontier_ = std::move(next);
    ++depth_;
}

std::optional<std::vector<Word>> MonoidBall::find(const Word& target,
                                                  std::size_t max_len,
                                                  std::size_t node_budget) {
    std::string key = handle_canonical_key(*model_, target);
    for (;;) {
        auto it = seen_.find(key);
        if (it != seen_.end()) {
            std::vector<Word> factors;
            for (std::size_t i = it->second; nodes_[i].parent != static_cast<std::size_t>(-1);
                 i = nodes_[i].parent)
                factors.push_back(gens_[nodes_[i].gen]);
            std::reverse(factors.begin(), factors.end());
            return factors;
        }
        if (frontier_.empty() || depth_ >= max_len || nodes_.size() > node_budget)
            return std::nullopt;
        expand();
    }
}

std::optional<std::vector<Word>> oracle_member(const GroupHandle& model,
                                               const std::vector<Word>& gens,
                                               const Word& target,
                                               std::size_t max_len,
                                               std::size_t node_budget) {
    MonoidBall ball(model, gens);
    return ball.find(target, max_len, node_budget);
}

}  // namespace prefixm
