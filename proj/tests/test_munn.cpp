#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "prefixm/munn.hpp"

using namespace prefixm;

namespace {

Word rand_word(const AlphabetPtr& alpha, std::mt19937& rng, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::uint32_t> sym(
        0, static_cast<std::uint32_t>(alpha->size() - 1));
    std::uniform_int_distribution<int> sgn(0, 1);
    std::vector<Letter> ls;
    std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i)
        ls.push_back(Letter{sym(rng), static_cast<std::int8_t>(sgn(rng) ? 1 : -1)});
    return Word(alpha, std::move(ls));
}

}  // namespace

TEST_CASE("munn tree fixtures") {
    auto al = make_alphabet("abc");
    MunnTree t = munn_tree(parse_word(al, "aA"));
    CHECK(t.vertices.size() == 2);
    CHECK(t.endpoint.empty());
    CHECK(munn_vertex_strings(t) == std::vector<std::string>{"1", "a"});

    MunnTree e = munn_tree(Word(al));
    CHECK(e.vertices.size() == 1);
    CHECK(e.endpoint.empty());

    MunnTree t2 = munn_tree(parse_word(al, "abBc"));
    CHECK(munn_vertex_strings(t2) ==
          std::vector<std::string>{"1", "a", "ab", "ac"});
    CHECK(print_word(Word(al, t2.endpoint)) == "ac");
}

TEST_CASE("fim equality fixtures") {
    auto al = make_alphabet("ab");
    CHECK(fim_equal(parse_word(al, "aAa"), parse_word(al, "a")));
    CHECK(!fim_equal(parse_word(al, "aA"), Word(al)));
    CHECK(fim_equal(parse_word(al, "aAbB"), parse_word(al, "bBaA")));
}

TEST_CASE("vagner axioms on random words") {
    auto al = make_alphabet("ab");
    std::mt19937 rng(55110);
    for (int trial = 0; trial < 500; ++trial) {
        Word u = rand_word(al, rng, 10);
        Word v = rand_word(al, rng, 10);
        Word uu = u.concat(invert(u));
        Word vv = v.concat(invert(v));
        CHECK(fim_equal(u, u.concat(invert(u)).concat(u)));
        CHECK(fim_equal(uu.concat(vv), vv.concat(uu)));
        if (fim_equal(u, v)) CHECK(free_reduce(u) == free_reduce(v));
    }
}

TEST_CASE("fim equality is a congruence") {
    auto al = make_alphabet("ab");
    std::mt19937 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        Word u = rand_word(al, rng, 8);
        Word v = rand_word(al, rng, 8);
        Word w = rand_word(al, rng, 8);
        CHECK(fim_equal(u, u));
        if (fim_equal(u, v)) {
            CHECK(fim_equal(v, u));
            CHECK(fim_equal(u.concat(w), v.concat(w)));
            CHECK(fim_equal(w.concat(u), w.concat(v)));
        }
        // Transitivity through a shared canonical object.
        if (fim_equal(u, v) && fim_equal(v, w)) CHECK(fim_equal(u, w));
    }
}
