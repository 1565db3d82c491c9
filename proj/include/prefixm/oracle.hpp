#pragma once

#include "prefixm/amalgam.hpp"

namespace prefixm {

// Breadth-first ball of the submonoid generated by `gens` inside a
// group handle, deduplicated by canonical key and grown on demand, so
// repeated queries against the same generating set share the work.
// The handle must outlive the ball.
class MonoidBall {
  public:
    MonoidBall(const GroupHandle& model, std::vector<Word> gens);

    // Factors (as generator words, in product order) of a product of at
    // most max_len generators equal to the target in the group.  BFS
    // order makes the first hit a shortest product.  nullopt when the
    // ball is exhausted, the length bound is reached, or the node
    // budget runs out -- never a definitive "no" unless the frontier
    // emptied below the bound.
    std::optional<std::vector<Word>> find(const Word& target,
                                          std::size_t max_len,
                                          std::size_t node_budget = 200000);

    // True when the last find() stopped because every submonoid element
    // had been enumerated (empty frontier): absence then means "no".
    bool exhausted() const { return frontier_.empty(); }

    const std::vector<Word>& gens() const { return gens_; }
    std::size_t size() const { return nodes_.size(); }

  private:
    void expand();

    const GroupHandle* model_;
    std::vector<Word> gens_;
    struct Node {
        Word element;       // freely reduced product word
        std::size_t parent;
        std::size_t gen;    // index into gens_ of the last factor
    };
    std::vector<Node> nodes_;
    std::map<std::string, std::size_t> seen_;  // canonical key -> node
    std::vector<std::size_t> frontier_;
    std::size_t depth_ = 0;
};

// One-shot bounded product search: factors of a product of at most
// max_len generator words equal to target in the model.
std::optional<std::vector<Word>> oracle_member(const GroupHandle& model,
                                               const std::vector<Word>& gens,
                                               const Word& target,
                                               std::size_t max_len,
                                               std::size_t node_budget = 200000);

}  // namespace prefixm
