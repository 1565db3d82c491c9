#pragma once

#include "prefixm/herbst.hpp"

namespace prefixm {

struct AmalgamSpec;
struct HnnSpec;

// A group together with the algorithms available for it.  The
// capability flags are set truthfully at construction; operations that
// need a missing capability throw std::logic_error.
struct GroupHandle {
    enum Kind { kFree, kCyclic, kAmalgam, kHnn, kOneRelatorFreeDetected, kRewritten };
    Kind kind = kFree;
    AlphabetPtr generators;

    std::shared_ptr<const AmalgamSpec> amalgam;  // kAmalgam
    std::shared_ptr<const HnnSpec> hnn;          // kHnn
    unsigned cyclic_order = 0;                   // kCyclic: z^n = 1, n >= 1
    AlphabetPtr free_basis;                      // kOneRelatorFreeDetected
    std::vector<Word> basis_images;              // generator -> word over free_basis
                                                 // (kRewritten: over host generators)
    std::shared_ptr<const GroupHandle> host;     // kRewritten

    struct Caps {
        bool word_problem = false;
        bool a_membership = false;
        bool express_in_generators = false;
        bool rational_intersection = false;
    };
    Caps capabilities;
};

GroupHandle free_handle(const AlphabetPtr& alpha);
// Single generator of finite order n >= 1.
GroupHandle cyclic_handle(const AlphabetPtr& alpha, unsigned order);
// A relator in which some generator occurs exactly once presents a free
// group: that generator is eliminated and the rest form a free basis.
std::optional<GroupHandle> free_detect_handle(const AlphabetPtr& alpha,
                                              const Word& relator);

GroupHandle amalgam_handle(std::shared_ptr<const AmalgamSpec> spec);
GroupHandle hnn_handle(std::shared_ptr<const HnnSpec> spec);
// Each generator maps to a word over the host's generators; the map is
// assumed to induce an isomorphism onto the host group.
GroupHandle rewritten_handle(const AlphabetPtr& alpha,
                             std::shared_ptr<const GroupHandle> host,
                             std::vector<Word> images);

// View of a free-like handle as an honest free group: a free alphabet
// plus per-generator images into it (identity for a plain free group).
struct FreeLikeView {
    AlphabetPtr alpha;
    std::vector<Word> images;  // empty: identity view
    Word map(const Word& w) const;
    std::vector<Word> map_all(const std::vector<Word>& ws) const;
};
std::optional<FreeLikeView> as_free(const GroupHandle& g);

bool handle_is_trivial(const GroupHandle& g, const Word& w);
bool handle_subgroup_member(const GroupHandle& g,
                            const std::vector<Word>& sub_gens, const Word& w);
// Word over y{1..k} multiplying to w in g, when w lies in the subgroup.
std::optional<Word> handle_express(const GroupHandle& g,
                                   const std::vector<Word>& sub_gens,
                                   const Word& w);
bool handle_monoid_member(const GroupHandle& g, const std::vector<Word>& gens,
                          const Word& w);
// Canonical string key: equal exactly for equal group elements.
std::string handle_canonical_key(const GroupHandle& g, const Word& w);
// Rows spanning the relation lattice of the handle's abelianisation,
// written over the handle's generators.
std::vector<std::vector<long long>> handle_ab_lattice(const GroupHandle& g);

// B *_A C with A embedded by the paired generator lists.
struct AmalgamSpec {
    GroupHandle B, C;
    std::vector<Word> A_in_B;  // alpha_i over B's generators
    std::vector<Word> A_in_C;  // beta_i over C's generators
};

// Alternating syllables over B's and C's alphabets; parts[0], parts[2],
// ... are B-words, the others C-words.  Length is always even.
struct SyllableForm {
    std::vector<Word> parts;
    bool reduced_flag = false;
};

SyllableForm make_syllables(const AmalgamSpec& spec, std::vector<Word> parts);
// Split a word over the union alphabet into alternating B/C syllables by
// letter ownership (letters of B's alphabet go to B, the rest to C).
SyllableForm split_syllables(const AmalgamSpec& spec, const AlphabetPtr& alpha,
                             const Word& w);
SyllableForm invert(const AmalgamSpec& spec, const SyllableForm& w);
SyllableForm concat(const AmalgamSpec& spec, const SyllableForm& a,
                    const SyllableForm& b);

// Alternating form with every internal syllable outside A; pure
// A-elements are normalized onto the B side.
SyllableForm reduce_form(const AmalgamSpec& spec, const SyllableForm& w);

bool is_trivial(const AmalgamSpec& spec, const SyllableForm& w);

// Membership of the query in Mon<MB_gens u MC_gens>, assuming A lies in
// both submonoids: every syllable of the reduced form must belong to
// its side's submonoid.
bool member_thmA(const AmalgamSpec& spec, const std::vector<Word>& MB_gens,
                 const std::vector<Word>& MC_gens, const SyllableForm& query);

// Same membership decided through the alternating chain of rational
// subsets of A; requires both factors free.
bool member_thmB(const AmalgamSpec& spec, const std::vector<Word>& MB_gens,
                 const std::vector<Word>& MC_gens, const SyllableForm& query,
                 std::size_t automaton_cap = 1u << 20);

// Canonical string key: equal exactly for equal group elements.
// Requires factors with express capability.
std::string canonical_key(const AmalgamSpec& spec, const SyllableForm& w);

}  // namespace prefixm
