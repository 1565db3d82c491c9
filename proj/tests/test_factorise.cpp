#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "prefixm/factorise.hpp"

using namespace prefixm;

namespace {

std::set<std::string> word_strings(const std::vector<Word>& ws) {
    std::set<std::string> out;
    for (const Word& w : ws) out.insert(print_word(w));
    return out;
}

std::string pieces_display(const Factorisation& f) {
    std::string out;
    for (const Word& p : f.pieces()) out += "(" + print_word(p) + ")";
    return out;
}

}  // namespace

TEST_CASE("ohare benois pieces") {
    auto al = make_alphabet("abcd");
    Word w = parse_word(al, "abcdacdadabbcdacd");
    Factorisation f = benois_pieces(w);
    CHECK(pieces_display(f) == "(abcd)(acd)(ad)(abbcd)(acd)");
    CHECK(f.cut_points == std::vector<std::size_t>{4, 7, 9, 14});
}

TEST_CASE("ohare adjan stays whole") {
    auto al = make_alphabet("abcd");
    Word w = parse_word(al, "abcdacdadabbcdacd");
    CHECK(word_strings(adjan_overlap({w})) ==
          std::set<std::string>{"abcdacdadabbcdacd"});
    Factorisation f = adjan_factorisation(w);
    CHECK(f.cut_points.empty());
    CHECK(pieces_display(f) == "(abcdacdadabbcdacd)");
}

TEST_CASE("overlap closure hand-run fixtures") {
    auto al = make_alphabet("ab");
    // aa: rule (ii) with u=a, v=v'=a adds a; aa survives rule (i).
    CHECK(word_strings(adjan_overlap({parse_word(al, "aa")})) ==
          std::set<std::string>{"a", "aa"});
    // ab, ba: the single letters arise as prefix/suffix overlaps.
    CHECK(word_strings(adjan_overlap(
              {parse_word(al, "ab"), parse_word(al, "ba")})) ==
          std::set<std::string>{"a", "b", "ab", "ba"});
}

TEST_CASE("marker example benois pieces") {
    auto al = make_alphabet("abxy");
    Word w = parse_word(al, "axbaybaybaxbaybaxb");
    Factorisation f = benois_pieces(w);
    CHECK(pieces_display(f) == "(axb)(ayb)(ayb)(axb)(ayb)(axb)");
}

TEST_CASE("single letter relator") {
    auto al = make_alphabet("a");
    Factorisation f = benois_pieces(parse_word(al, "a"));
    CHECK(f.cut_points.empty());
    CHECK(pieces_display(f) == "(a)");
}

TEST_CASE("certificates verify") {
    auto al = make_alphabet("abcd");
    Word w = parse_word(al, "abcdacdadabbcdacd");
    Factorisation f = benois_pieces(w);
    REQUIRE(f.certificates.size() == f.cut_points.size());
    for (std::size_t i = 0; i < f.cut_points.size(); ++i) {
        Word prefix = w.subword(0, f.cut_points[i]);
        Word prod(al);
        for (const Word& u : f.certificates[i]) prod = prod.concat(u);
        CHECK(free_reduce(prod) == free_reduce(invert(prefix)));
    }
}

TEST_CASE("pieces of cyclically reduced relators invert into V") {
    auto al = make_alphabet("ab");
    std::mt19937 rng(314);
    std::uniform_int_distribution<std::uint32_t> sym(0, 1);
    std::uniform_int_distribution<int> sgn(0, 1);
    int done = 0;
    while (done < 25) {
        std::vector<Letter> ls;
        std::uniform_int_distribution<std::size_t> len(1, 7);
        for (std::size_t i = len(rng); i > 0; --i)
            ls.push_back(Letter{sym(rng), static_cast<std::int8_t>(sgn(rng) ? 1 : -1)});
        Word w(al, ls);
        if (!is_cyclically_reduced(w)) continue;
        ++done;
        Factorisation f = benois_pieces(w);
        std::vector<Word> ugens;
        for (const Word& p : prefixes(w)) ugens.push_back(free_reduce(p));
        for (const Word& p : prefixes(invert(w))) ugens.push_back(free_reduce(p));
        RationalSet v = rational_monoid(al, ugens);
        for (const Word& piece : f.pieces()) CHECK(member(v, invert(piece)));
    }
}

TEST_CASE("benois refines adjan") {
    auto al = make_alphabet("ab");
    std::mt19937 rng(2718);
    std::uniform_int_distribution<std::uint32_t> sym(0, 1);
    std::uniform_int_distribution<int> sgn(0, 1);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Letter> ls;
        std::uniform_int_distribution<std::size_t> len(1, 6);
        for (std::size_t i = len(rng); i > 0; --i)
            ls.push_back(Letter{sym(rng), static_cast<std::int8_t>(sgn(rng) ? 1 : -1)});
        Word w(al, ls);
        CHECK(refines(benois_pieces(w), adjan_factorisation(w)));
    }
    auto al4 = make_alphabet("abcd");
    Word ohare = parse_word(al4, "abcdacdadabbcdacd");
    CHECK(refines(benois_pieces(ohare), adjan_factorisation(ohare)));
}

TEST_CASE("refines basics") {
    auto al = make_alphabet("ab");
    Word w = parse_word(al, "abab");
    Factorisation whole{w, {}, Factorisation::kUser, {}};
    Factorisation fine{w, {2}, Factorisation::kUser, {}};
    CHECK(refines(fine, whole));
    CHECK(refines(fine, fine));
    CHECK(!refines(whole, fine));
    Factorisation other{parse_word(al, "ab"), {}, Factorisation::kUser, {}};
    CHECK_THROWS(refines(fine, other));
}

TEST_CASE("cyclically reduced predicate") {
    auto al = make_alphabet("ab");
    CHECK(is_cyclically_reduced(parse_word(al, "abab")));
    CHECK(!is_cyclically_reduced(parse_word(al, "abA")));
    CHECK(is_cyclically_reduced(Word(al)));
    CHECK(!is_cyclically_reduced(parse_word(al, "aAb")));
}
