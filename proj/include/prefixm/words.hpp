#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace prefixm {

// Generator symbol: a base letter plus an optional integer subscript.
// Plain alphabets leave has_sub unset; subscript 0 on a subscripted
// symbol is still printed, e.g. "a{0}".
struct Symbol {
    char base = 'a';
    int sub = 0;
    bool has_sub = false;

    friend bool operator==(const Symbol&, const Symbol&) = default;
    friend auto operator<=>(const Symbol& x, const Symbol& y) {
        if (auto c = x.base <=> y.base; c != 0) return c;
        if (auto c = x.sub <=> y.sub; c != 0) return c;
        return x.has_sub <=> y.has_sub;
    }
};

std::string to_string(const Symbol& s);

class Alphabet {
  public:
    Alphabet() = default;
    explicit Alphabet(std::vector<Symbol> letters);
    static Alphabet from_string(const std::string& letters);  // "abc" -> {a,b,c}

    std::size_t size() const { return letters_.size(); }
    const Symbol& at(std::size_t i) const { return letters_.at(i); }
    const std::vector<Symbol>& letters() const { return letters_; }
    std::optional<std::size_t> index_of(const Symbol& s) const;
    bool contains(const Symbol& s) const { return index_of(s).has_value(); }

    friend bool operator==(const Alphabet& x, const Alphabet& y) {
        return x.letters_ == y.letters_;
    }

  private:
    std::vector<Symbol> letters_;
    std::map<Symbol, std::size_t> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(const std::string& letters);
AlphabetPtr make_alphabet(std::vector<Symbol> letters);

// Signed letter: index into the alphabet plus a sign.
struct Letter {
    std::uint32_t sym = 0;
    std::int8_t sign = 1;  // +1 or -1

    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter& x, const Letter& y) {
        if (auto c = x.sym <=> y.sym; c != 0) return c;
        return x.sign <=> y.sign;
    }
    Letter inverse() const { return {sym, static_cast<std::int8_t>(-sign)}; }
};

// Immutable word over an alphabet's doubled letter set.  The empty
// word denotes the identity.
class Word {
  public:
    Word() = default;
    explicit Word(AlphabetPtr alpha) : alpha_(std::move(alpha)) {}
    Word(AlphabetPtr alpha, std::vector<Letter> letters);

    const AlphabetPtr& alphabet() const { return alpha_; }
    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const Letter& operator[](std::size_t i) const { return letters_[i]; }

    Word append(Letter l) const;
    Word concat(const Word& rhs) const;
    Word subword(std::size_t begin, std::size_t end) const;

    bool operator==(const Word& rhs) const;
    auto operator<=>(const Word& rhs) const { return letters_ <=> rhs.letters_; }

  private:
    AlphabetPtr alpha_;
    std::vector<Letter> letters_;
};

// Word syntax: lowercase letter = generator, uppercase = its inverse;
// subscripted letters as a{-2} / A{-2}.
std::string print_word(const Word& w);
Word parse_word(const AlphabetPtr& alpha, const std::string& text);

Word free_reduce(const Word& w);
Word invert(const Word& w);
bool is_reduced(const Word& w);
bool is_cyclically_reduced_word(const Word& w);

// w = conjugator . core . conjugator^-1 in the free group, core
// cyclically reduced.
struct CyclicDecomposition {
    Word conjugator;
    Word core;
};
CyclicDecomposition cyclic_reduce(const Word& w);

// Syntactic substitution: no free reduction applied.
Word substitute(const Word& tmpl,
                const std::vector<Word>& assignment);  // indexed by tmpl symbol

// All prefixes including the empty one, syntactic duplicates removed,
// order of first appearance.
std::vector<Word> prefixes(const Word& w);

int exponent_sum(const Word& w, std::uint32_t t_sym);

enum class PrefixSign { positive, negative, mixed, zero_free };
PrefixSign prefix_sign(const Word& w, std::uint32_t t_sym);

struct RhoImage {
    Word image;  // over the derived subscripted alphabet
    std::map<char, std::pair<int, int>> bounds;  // base letter -> (mu, m)
    Symbol stable;
};

// Moldavanskii rewriting: requires zero t-exponent sum and at least one
// occurrence of t.  Each x^e occurrence with preceding t-exponent i
// becomes x_{-i}^e; occurrences of t are deleted.
RhoImage rho(const Word& w, std::uint32_t t_sym);

}  // namespace prefixm
