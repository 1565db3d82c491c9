#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "prefixm/words.hpp"

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

// Applies cancellations one at a time in randomized positions until
// none remain; independent of the stack-based free_reduce.
Word cancel_randomly(Word w, std::mt19937& rng) {
    for (;;) {
        std::vector<std::size_t> spots;
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] == w[i + 1].inverse()) spots.push_back(i);
        if (spots.empty()) return w;
        std::uniform_int_distribution<std::size_t> pick(0, spots.size() - 1);
        std::size_t i = spots[pick(rng)];
        std::vector<Letter> ls(w.letters());
        ls.erase(ls.begin() + i, ls.begin() + i + 2);
        w = Word(w.alphabet(), std::move(ls));
    }
}

}  // namespace

TEST_CASE("free reduction fixtures") {
    auto al = make_alphabet("abc");
    CHECK(print_word(free_reduce(parse_word(al, "abB"))) == "a");
    CHECK(print_word(free_reduce(parse_word(al, "1"))) == "1");
    CHECK(print_word(free_reduce(parse_word(al, "aBbAac"))) == "ac");
    CHECK(free_reduce(free_reduce(parse_word(al, "aBbAac"))) ==
          free_reduce(parse_word(al, "aBbAac")));
}

TEST_CASE("free reduction is confluent") {
    auto al = make_alphabet("ab");
    std::mt19937 rng(7201);
    for (int trial = 0; trial < 400; ++trial) {
        Word w = rand_word(al, rng, 20);
        CHECK(cancel_randomly(w, rng) == free_reduce(w));
    }
}

TEST_CASE("w times its inverse dies") {
    auto al = make_alphabet("abc");
    std::mt19937 rng(991);
    for (int trial = 0; trial < 200; ++trial) {
        Word w = rand_word(al, rng, 12);
        CHECK(free_reduce(w.concat(invert(w))).empty());
        CHECK(invert(invert(w)) == w);
    }
}

TEST_CASE("invert fixtures") {
    auto al = make_alphabet("ab");
    CHECK(print_word(invert(parse_word(al, "ab"))) == "BA");
    CHECK(invert(parse_word(al, "1")).empty());
    CHECK(print_word(invert(parse_word(al, "aA"))) == "aA");
}

TEST_CASE("cyclic reduction") {
    auto al = make_alphabet("abc");
    auto d = cyclic_reduce(parse_word(al, "abA"));
    CHECK(print_word(d.conjugator) == "a");
    CHECK(print_word(d.core) == "b");
    d = cyclic_reduce(parse_word(al, "ab"));
    CHECK(d.conjugator.empty());
    CHECK(print_word(d.core) == "ab");
    d = cyclic_reduce(parse_word(al, "CabBac"));
    CHECK(print_word(d.conjugator) == "C");
    CHECK(print_word(d.core) == "aa");

    std::mt19937 rng(5150);
    for (int trial = 0; trial < 200; ++trial) {
        Word w = rand_word(al, rng, 14);
        auto dec = cyclic_reduce(w);
        CHECK(is_cyclically_reduced_word(dec.core));
        Word back = dec.conjugator.concat(dec.core).concat(invert(dec.conjugator));
        CHECK(free_reduce(back) == free_reduce(w));
    }
}

TEST_CASE("substitution is syntactic") {
    auto ys = make_alphabet("yz");
    auto xs = make_alphabet("abc");
    std::vector<Word> asg{parse_word(xs, "ab"), parse_word(xs, "c")};
    CHECK(print_word(substitute(parse_word(ys, "yz"), asg)) == "abc");
    CHECK(print_word(substitute(parse_word(ys, "Y"), asg)) == "BA");
    std::vector<Word> asg2{parse_word(xs, "a"), Word(xs)};
    CHECK(print_word(substitute(parse_word(ys, "yY"), asg2)) == "aA");
}

TEST_CASE("prefixes") {
    auto al = make_alphabet("abcd");
    auto ps = prefixes(parse_word(al, "ab"));
    REQUIRE(ps.size() == 3);
    CHECK(ps[0].empty());
    CHECK(print_word(ps[1]) == "a");
    CHECK(print_word(ps[2]) == "ab");
    CHECK(prefixes(Word(al)).size() == 1);
    CHECK(prefixes(parse_word(al, "abcdacdadabbcdacd")).size() == 18);
    // deduplication: aa has prefixes 1, a, aa
    CHECK(prefixes(parse_word(al, "aAa")).size() == 4);  // 1,a,aA,aAa all distinct
}

TEST_CASE("exponent sum and prefix sign") {
    auto al = make_alphabet("abt");
    std::uint32_t t = 2;
    Word w = parse_word(al, "bTattbTa");
    CHECK(exponent_sum(w, t) == 0);
    CHECK(prefix_sign(w, t) == PrefixSign::mixed);
    CHECK(prefix_sign(parse_word(al, "taT"), t) == PrefixSign::positive);
    CHECK(exponent_sum(parse_word(al, "taT"), t) == 0);
    CHECK(prefix_sign(parse_word(al, "ab"), t) == PrefixSign::zero_free);
    CHECK(prefix_sign(parse_word(al, "Tat"), t) == PrefixSign::negative);
}

TEST_CASE("rho fixture b0 a1 b-1 a0") {
    auto al = make_alphabet("abt");
    RhoImage im = rho(parse_word(al, "bTattbTa"), 2);
    CHECK(print_word(im.image) == "b{0}a{1}b{-1}a{0}");
    CHECK(im.bounds.at('a') == std::pair{0, 1});
    CHECK(im.bounds.at('b') == std::pair{-1, 0});
    CHECK(im.stable == Symbol{'t'});
}

TEST_CASE("rho single conjugate") {
    auto al = make_alphabet("xt");
    RhoImage im = rho(parse_word(al, "txT"), 1);
    CHECK(print_word(im.image) == "x{-1}");
}

TEST_CASE("rho second fixture") {
    auto al = make_alphabet("abct");
    RhoImage im = rho(parse_word(al, "TatcbTTattcbTTTatttc"), 3);
    // t^-1 a t c b t^-2 a t^2 c b t^-3 a t^3 c
    CHECK(print_word(im.image) ==
          "a{1}c{0}b{0}a{2}c{0}b{0}a{3}c{0}");
}

TEST_CASE("rho errors and letter count") {
    auto al = make_alphabet("at");
    CHECK_THROWS(rho(parse_word(al, "ta"), 1));
    CHECK_THROWS(rho(parse_word(al, "aa"), 1));
    std::mt19937 rng(31);
    int done = 0;
    while (done < 100) {
        Word w = rand_word(al, rng, 14);
        if (exponent_sum(w, 1) != 0) continue;
        bool has_t = false;
        for (auto& l : w.letters()) has_t |= (l.sym == 1);
        if (!has_t) continue;
        RhoImage im = rho(w, 1);
        std::size_t tcount = 0;
        for (auto& l : w.letters()) tcount += (l.sym == 1);
        CHECK(im.image.size() == w.size() - tcount);
        // prefix-positive words only give non-positive subscripts
        if (prefix_sign(w, 1) == PrefixSign::positive)
            for (auto& l : im.image.letters())
                CHECK(im.image.alphabet()->at(l.sym).sub <= 0);
        ++done;
    }
}

TEST_CASE("parse and print round trip") {
    auto al = make_alphabet("ab");
    for (const char* s : {"1", "a", "Ab", "aabBA"}) {
        Word w = parse_word(al, s);
        CHECK(parse_word(al, print_word(w)) == w);
    }
    CHECK_THROWS(parse_word(al, "ac"));
    CHECK_THROWS(parse_word(al, "a2"));
}
