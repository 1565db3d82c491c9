#pragma once

#include "prefixm/stallings.hpp"

namespace prefixm {

// Rewrites an automaton over X whose group image lies inside the
// subgroup into an automaton over the subgroup generators y{1}..y{k}
// with the same image.  State elimination produces a rational
// expression; star-free parts are rewritten through witnesses and
// starred parts through the conjugated-subexpression recursion.
// Throws std::domain_error when some base word falls outside the
// subgroup (violated precondition).
Fsa herbst_rewrite(const Fsa& a, const StallingsGraph& A);

// Relabels every transition letter y by the assigned word over the
// target alphabet, splitting into letter steps.
Fsa herbst_embed(const Fsa& b, const AlphabetPtr& target,
                 const std::vector<Word>& assignment);

// Elements of the rational set lying in the subgroup.
RationalSet subgroup_intersect(const RationalSet& r, const StallingsGraph& A);

// Transports a rational subset of the subgroup generated by A's
// generators across the isomorphism pairing A's i-th generator with
// the word z_images[i].
RationalSet image_under_iso(const RationalSet& r, const StallingsGraph& A,
                            const AlphabetPtr& target,
                            const std::vector<Word>& z_images);

}  // namespace prefixm
