#pragma once

#include "prefixm/fsa.hpp"

namespace prefixm {

struct Factorisation {
    Word relator;
    // Interior cut positions, strictly increasing, 0 < k < |relator|.
    std::vector<std::size_t> cut_points;
    enum Kind { kAdjan, kBenois, kUser } kind = kUser;
    // Benois only: for each cut prefix p, a product of U-words whose
    // free reduction equals red(p^-1).
    std::vector<std::vector<Word>> certificates;

    std::vector<Word> pieces() const;
};

// Overlap closure over the doubled alphabet: the stabilised set of
// words produced by keeping overlap-free words and adding every
// non-empty word that arises as a prefix/suffix overlap between set
// members.
std::vector<Word> adjan_overlap(const std::vector<Word>& relators);

// Factorisation induced by the overlap closure: greedy leftmost
// longest match against the closure pieces; a position with no match
// collapses to the single-piece factorisation.
Factorisation adjan_factorisation(const Word& w);

// Cuts after every proper prefix whose inverse lies in the submonoid
// of the free group generated by the reduced prefixes of w and w^-1.
Factorisation benois_pieces(const Word& w);

bool is_cyclically_reduced(const Word& w);

// f1 finer than f2: every cut of f2 is a cut of f1.
bool refines(const Factorisation& f1, const Factorisation& f2);

}  // namespace prefixm
