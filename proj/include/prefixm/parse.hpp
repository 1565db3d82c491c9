#pragma once

#include "prefixm/hnn.hpp"
#include "prefixm/solvers.hpp"

namespace prefixm {

// Parse failure with a 1-based line number (0: not line-specific).
struct parse_error : std::runtime_error {
    std::size_t line;
    parse_error(std::size_t line_, const std::string& what_)
        : std::runtime_error(line_ ? "line " + std::to_string(line_) + ": " + what_
                                   : what_),
          line(line_) {}
};

// `kind: group|inverse-monoid` (optional, defaults to group),
// `gens: a b c`, `rel: word`.  Blank lines and #-comments are skipped.
Presentation parse_presentation(const std::string& text);

// Sections `factorB:` / `factorC:`, each either `free: a b` or a nested
// `gens:`/`rel:` presentation, plus `amalgam: u = v` pairs (u over the
// B factor, v over the C factor).
std::shared_ptr<const AmalgamSpec> parse_amalgam(const std::string& text);

// `base: free a b`, `stable: t`, `assoc: u = v` pairs over the base.
std::shared_ptr<const HnnSpec> parse_hnn(const std::string& text);

// One word per line over the given alphabet.
std::vector<Word> parse_gens(const AlphabetPtr& alpha, const std::string& text);

}  // namespace prefixm
