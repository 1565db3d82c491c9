#pragma once

#include <map>

#include "prefixm/fsa.hpp"

namespace prefixm {

// Folded core graph of a finitely generated subgroup of a free group.
// Every edge carries a word over the subgroup's given generators
// (y{1}..y{k}); for any basepoint loop, substituting the concatenated
// edge words equals the loop's label in the free group.
class StallingsGraph {
  public:
    StallingsGraph(AlphabetPtr alphabet, std::vector<Word> generators);

    const AlphabetPtr& alphabet() const { return alpha_; }
    const AlphabetPtr& y_alphabet() const { return ygens_; }  // null when trivial
    const std::vector<Word>& generators() const { return gens_; }

    std::size_t num_vertices() const { return adj_.size(); }
    std::size_t basepoint() const { return base_; }

    // Follows the edge labeled by the signed letter, if present;
    // second component is the edge's Y-word read in that direction.
    std::optional<std::pair<std::size_t, Word>> step(std::size_t v, Sig x) const;

    bool contains(const Word& w) const;
    // Witness over Y whose substitution equals red(w); absent when w
    // is outside the subgroup.
    std::optional<Word> express(const Word& w) const;

    // Canonical representative of the right coset H.g; depends only on
    // the coset.
    Word right_coset_rep(const Word& g) const;
    // Canonical representative r of the left coset g.H with g = r.h.
    Word left_coset_rep(const Word& g) const;

    // Reduced label of the spanning-tree path basepoint -> v.
    const Word& tree_word(std::size_t v) const { return tree_[v]; }

    // Saturated automaton for the subgroup's reduced words.
    RationalSet rational_set() const;

  private:
    AlphabetPtr alpha_;
    AlphabetPtr ygens_;
    std::vector<Word> gens_;
    std::size_t base_ = 0;
    std::vector<std::map<Sig, std::pair<std::size_t, Word>>> adj_;
    std::vector<Word> tree_;
};

}  // namespace prefixm
