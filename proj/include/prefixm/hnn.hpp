#pragma once

#include "prefixm/amalgam.hpp"

namespace prefixm {

// G *_{t, phi: A -> B} with A and B given by the paired generator
// lists; queries are words over the combined alphabet (base + stable).
struct HnnSpec {
    GroupHandle base;
    Symbol stable;             // t; not a base generator
    std::vector<Word> A_gens;  // u_i over base generators
    std::vector<Word> B_gens;  // v_i, phi(u_i) = v_i
    AlphabetPtr combined;      // base generators followed by stable
};

HnnSpec make_hnn(GroupHandle base, Symbol stable, std::vector<Word> a_gens,
                 std::vector<Word> b_gens);

// Word over the combined alphabet from base syllables and t-signs.
struct BrittonForm {
    std::vector<Word> g;    // n+1 base words
    std::vector<int> eps;   // n entries, each +1 or -1
    bool reduced_flag = false;
};

Word britton_word(const HnnSpec& spec, const BrittonForm& w);
BrittonForm britton_split(const HnnSpec& spec, const Word& w);

// Pinch-free form equal to w: t^-1 a t -> phi(a), t b t^-1 -> phi^-1(b).
BrittonForm britton_reduce(const HnnSpec& spec, const Word& w);

bool is_trivial(const HnnSpec& spec, const Word& w);

// Membership in Mon<T_gens u {t, t^-1}>, assuming A u B lies in
// Mon<T_gens>: every base syllable of the reduced form must belong.
bool member_thmC(const HnnSpec& spec, const std::vector<Word>& T_gens,
                 const Word& query);

// The length-(m+1) families of rational sets whose alternating products
// with t exhaust the degree-m slice of Mon<W0 u W1 t u ... u t^d W'd>.
struct NSetFamily {
    std::size_t m = 0;
    std::size_t count = 0;                    // C_m
    std::vector<std::vector<RationalSet>> seqs;  // seqs[j][i], 0 <= i <= m
};

struct NSetCache {
    std::vector<NSetFamily> families;  // index m
};

NSetFamily build_nsets(const AlphabetPtr& base_alpha,
                       const std::vector<std::vector<Word>>& W,
                       const std::vector<std::vector<Word>>& Wp,
                       std::size_t m, NSetCache* cache = nullptr,
                       std::size_t automaton_cap = 1u << 20);

// Membership in Mon<W0 u W1 t u ... u Wd t^d u t W'1 u ... u t^d W'd>
// for a free base, via the Q-chain over the N-set families.
bool member_thmD(const HnnSpec& spec, const std::vector<std::vector<Word>>& W,
                 const std::vector<std::vector<Word>>& Wp, const Word& query,
                 NSetCache* cache = nullptr, std::size_t automaton_cap = 1u << 20);

// Same with t replaced by t^-1 throughout the generating set.
bool member_thmD_inverted(const HnnSpec& spec,
                          const std::vector<std::vector<Word>>& W,
                          const std::vector<std::vector<Word>>& Wp,
                          const Word& query, NSetCache* cache = nullptr,
                          std::size_t automaton_cap = 1u << 20);

// Canonical string key: equal exactly for equal group elements.
// Requires a free-like base.
std::string canonical_key(const HnnSpec& spec, const Word& w);

}  // namespace prefixm
