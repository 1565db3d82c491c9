#pragma once

#include <set>
#include <tuple>

#include "prefixm/words.hpp"

namespace prefixm {

// Signed-letter code for automaton transitions: sym*2 for x, sym*2+1
// for x^-1.  -1 marks an internal epsilon transition.
using Sig = int;

inline Sig sig_of(Letter l) {
    return static_cast<Sig>(l.sym) * 2 + (l.sign < 0 ? 1 : 0);
}
inline Letter letter_of(Sig s) {
    return Letter{static_cast<std::uint32_t>(s / 2),
                  static_cast<std::int8_t>(s % 2 ? -1 : 1)};
}
inline Sig sig_inverse(Sig s) { return s ^ 1; }
constexpr Sig kEps = -1;

// Raised when a computation exceeds a configured automaton-size budget;
// callers must treat it as "no answer", never as a verdict.
struct resource_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Fsa {
    AlphabetPtr alphabet;
    std::size_t num_states = 0;
    std::set<std::tuple<std::size_t, Sig, std::size_t>> transitions;
    std::set<std::size_t> initial;
    std::set<std::size_t> final;

    bool operator==(const Fsa& rhs) const {
        return num_states == rhs.num_states && transitions == rhs.transitions &&
               initial == rhs.initial && final == rhs.final &&
               (alphabet == rhs.alphabet ||
                (alphabet && rhs.alphabet && *alphabet == *rhs.alphabet));
    }
};

Fsa fsa_from_words(const AlphabetPtr& alpha, const std::vector<Word>& words);
Fsa fsa_union(const Fsa& a, const Fsa& b);
Fsa fsa_concat(const Fsa& a, const Fsa& b);
Fsa fsa_star(const Fsa& a);
Fsa fsa_reverse_invert(const Fsa& a);

Fsa eliminate_eps(const Fsa& a);
Fsa trim(const Fsa& a);
bool fsa_accepts(const Fsa& a, const Word& w);
bool fsa_empty(const Fsa& a);

// Accepts exactly the freely reduced words over the doubled alphabet.
Fsa reduced_word_fsa(const AlphabetPtr& alpha);

// Deterministic complete automaton for the same language; epsilon-free
// input not required.
Fsa determinize(const Fsa& a);
// Canonical minimal DFA of the language (complete, BFS state order).
Fsa normalize(const Fsa& a);
bool same_language(const Fsa& a, const Fsa& b);

struct RationalSet {
    Fsa automaton;            // accepts only freely reduced words
    AlphabetPtr group_alphabet;
    bool reduced_flag = false;
};

// Saturates the automaton so it accepts red(L(a)) exactly.
RationalSet benois_reduce(const Fsa& a);
// Rational subset generated as a submonoid of the given words.
RationalSet rational_monoid(const AlphabetPtr& alpha, const std::vector<Word>& gens);

bool member(const RationalSet& r, const Word& w);
RationalSet intersect(const RationalSet& r1, const RationalSet& r2);
RationalSet complement(const RationalSet& r);
bool rational_empty(const RationalSet& r);
// Shortest accepted word, if any.
std::optional<Word> rational_witness(const RationalSet& r);

// Sequence of generators whose product freely reduces to red(target),
// if target lies in the submonoid they generate.
std::optional<std::vector<Word>> express_in_monoid(const AlphabetPtr& alpha,
                                                   const std::vector<Word>& gens,
                                                   const Word& target);

std::string fsa_to_text(const Fsa& a);
Fsa fsa_from_text(const std::string& text);

// All freely reduced words of length <= max_len, in length-lex order.
std::vector<Word> reduced_words_up_to(const AlphabetPtr& alpha, std::size_t max_len);

}  // namespace prefixm
