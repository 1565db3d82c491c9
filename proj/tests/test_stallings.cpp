#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "prefixm/stallings.hpp"

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

Word rand_subgroup_element(const std::vector<Word>& gens, const AlphabetPtr& alpha,
                           std::mt19937& rng, std::size_t factors) {
    Word out(alpha);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> sgn(0, 1);
    for (std::size_t i = 0; i < factors; ++i) {
        const Word& g = gens[pick(rng)];
        out = out.concat(sgn(rng) ? g : invert(g));
    }
    return free_reduce(out);
}

}  // namespace

TEST_CASE("single loop") {
    auto al = make_alphabet("ab");
    StallingsGraph g(al, {parse_word(al, "a")});
    CHECK(g.num_vertices() == 1);
    auto w = g.express(parse_word(al, "aaa"));
    REQUIRE(w.has_value());
    CHECK(print_word(*w) == "y{1}y{1}y{1}");
    CHECK(!g.express(parse_word(al, "b")).has_value());
}

TEST_CASE("two generators a2 b") {
    auto al = make_alphabet("ab");
    StallingsGraph g(al, {parse_word(al, "aa"), parse_word(al, "b")});
    CHECK(!g.contains(parse_word(al, "a")));
    CHECK(g.contains(parse_word(al, "aab")));
    auto w = g.express(parse_word(al, "aabaa"));
    REQUIRE(w.has_value());
    CHECK(print_word(*w) == "y{1}y{2}y{1}");
}

TEST_CASE("conjugate generator") {
    auto al = make_alphabet("ab");
    StallingsGraph g(al, {parse_word(al, "abA"), parse_word(al, "aa")});
    CHECK(g.contains(parse_word(al, "abbA")));
    CHECK(!g.contains(parse_word(al, "b")));
    auto w = g.express(parse_word(al, "abbA"));
    REQUIRE(w.has_value());
    Word back = substitute(*w, g.generators());
    CHECK(free_reduce(back) == free_reduce(parse_word(al, "abbA")));
}

TEST_CASE("trivial and epsilon generators") {
    auto al = make_alphabet("ab");
    StallingsGraph g(al, {Word(al), parse_word(al, "aA")});
    CHECK(g.num_vertices() == 1);
    CHECK(g.contains(Word(al)));
    CHECK(!g.contains(parse_word(al, "a")));
    auto w = g.express(parse_word(al, "bB"));
    REQUIRE(w.has_value());
    CHECK(w->empty());
}

TEST_CASE("witness soundness and dual-route membership") {
    auto al = make_alphabet("ab");
    std::mt19937 rng(6021);
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_int_distribution<std::size_t> ngens(1, 3);
        std::vector<Word> gens;
        for (std::size_t i = ngens(rng); i > 0; --i) {
            Word w = rand_word(al, rng, 5);
            gens.push_back(w);
        }
        StallingsGraph g(al, gens);
        // Rational route: the subgroup as a monoid over gens and inverses.
        std::vector<Word> both = gens;
        for (const Word& w : gens) both.push_back(invert(w));
        RationalSet sub = rational_monoid(al, both);
        for (int q = 0; q < 30; ++q) {
            Word w = rand_word(al, rng, 6);
            auto witness = g.express(w);
            CHECK(witness.has_value() == member(sub, w));
            if (witness) {
                Word back = substitute(*witness, g.generators());
                CHECK(free_reduce(back) == free_reduce(w));
            }
        }
        // Generators themselves are always expressible.
        for (const Word& w : gens) CHECK(g.contains(w));
        // Subgroup elements built as generator products are members.
        for (int q = 0; q < 10; ++q)
            CHECK(g.contains(rand_subgroup_element(gens, al, rng, 4)));
    }
}

TEST_CASE("coset representatives are canonical") {
    auto al = make_alphabet("ab");
    std::mt19937 rng(777);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Word> gens{rand_word(al, rng, 5), rand_word(al, rng, 5)};
        StallingsGraph g(al, gens);
        for (int q = 0; q < 20; ++q) {
            Word w = rand_word(al, rng, 6);
            Word rep = g.right_coset_rep(w);
            CHECK(g.contains(free_reduce(w.concat(invert(rep)))));
            Word h = rand_subgroup_element(gens, al, rng, 3);
            CHECK(g.right_coset_rep(free_reduce(h.concat(w))) == rep);

            Word lrep = g.left_coset_rep(w);
            CHECK(g.contains(free_reduce(invert(lrep).concat(w))));
            CHECK(g.left_coset_rep(free_reduce(w.concat(h))) == lrep);
        }
        CHECK(g.right_coset_rep(Word(al)).empty());
    }
}

TEST_CASE("rational set matches graph membership") {
    auto al = make_alphabet("ab");
    std::mt19937 rng(424);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Word> gens{rand_word(al, rng, 4), rand_word(al, rng, 4)};
        StallingsGraph g(al, gens);
        RationalSet r = g.rational_set();
        for (const Word& w : reduced_words_up_to(al, 5))
            CHECK(member(r, w) == g.contains(w));
    }
}
