#pragma once

#include "prefixm/factorise.hpp"
#include "prefixm/hnn.hpp"

namespace prefixm {

enum class Flavor { group, inverse_monoid };

// One-relator presentation; the prefix monoid P_w depends on the
// literal spelling of the relator, so the relator is kept verbatim.
struct Presentation {
    AlphabetPtr alphabet;
    Word relator;
    Flavor flavor = Flavor::group;
};

// Word-problem backend for an arbitrary one-relator group: free
// detection, finite-cyclic splitting, or a Moldavanskii HNN embedding,
// reached after an exponent-zeroing basis change when necessary.
// Requires pairwise distinct base characters in the alphabet; returns
// nullopt when no supported shape is found.
std::optional<GroupHandle> one_relator_handle(const AlphabetPtr& alpha,
                                              const Word& relator);

enum class ClassKind {
    marker,
    disjoint,
    cyc_pinched,
    conj_pinched,
    posneg,
    adjan,
    ohare,
    unsupported,
};
std::string to_string(ClassKind k);

struct MemberResult {
    enum Answer { yes, no, unsupported, resources } answer = unsupported;
    std::string method;  // engine route that produced the answer
    // Product of prefix-monoid generator words (over the presentation
    // alphabet) equal to the query in the group; present on yes when
    // the bounded search finds one.
    std::optional<std::vector<Word>> witness;
    std::vector<std::string> unchecked_hypotheses;
    std::string note;
};

class MonoidBall;

// Decision procedure compiled for one presentation class.
struct PrefixDecider {
    virtual ~PrefixDecider() = default;
    virtual MemberResult member(const Word& query,
                                std::size_t automaton_cap) const = 0;
    // Word-problem model of the presented group, for oracles and
    // witness checking; words over the presentation alphabet.
    virtual const GroupHandle& group() const = 0;
    // Generating set of P_w over the presentation alphabet.
    virtual const std::vector<Word>& monoid_gens() const = 0;
    // Lazily built witness-search ball, shared across queries.
    mutable std::shared_ptr<MonoidBall> ball;
};

struct ClassTag {
    ClassKind kind = ClassKind::unsupported;
    std::string provenance;  // which factorisation enabled the tag
    std::string note;        // diagnostics, esp. for unsupported
    std::vector<Word> pieces;            // factorisation pieces used
    std::optional<Symbol> stable;        // posneg / conj-pinched / adjan
    std::shared_ptr<const PrefixDecider> decider;  // null when unsupported
};

// All applicable class tags, using the supplied factorisation or
// benois_pieces(relator) by default; a single unsupported tag with a
// diagnostic when none applies.
std::vector<ClassTag> classify(
    const Presentation& p,
    const std::optional<Factorisation>& f = std::nullopt);

// Membership of the query in P_w via the tag's decider; on yes a
// witness product over P_w generators is searched for and re-verified.
MemberResult prefix_member(const Presentation& p, const ClassTag& tag,
                           const Word& query,
                           std::size_t automaton_cap = 1u << 20,
                           std::size_t witness_len_cap = 24);

// Right invertibility in Inv<X | w=1>: true iff the query's group
// image lies in P_w.  Requires a cyclically reduced relator, which
// certifies E-unitarity and hence the reduction to P_w membership.
MemberResult right_invertible(const Presentation& p, const Word& query,
                              std::size_t automaton_cap = 1u << 20);

// Rewrites a relator of the shape (a u_1 d)(a u_2 d)...(a u_m d) with
// positive t-free blocks into the equivalent presentation whose benois
// factorisation has unique marker letters.  Throws
// std::invalid_argument naming the failed condition.
Presentation ohare_rewrite(const Presentation& p);

}  // namespace prefixm
