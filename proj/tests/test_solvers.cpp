#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "prefixm/oracle.hpp"
#include "prefixm/solvers.hpp"

using namespace prefixm;

namespace {

Presentation pres(const std::string& gens, const std::string& rel,
                  Flavor f = Flavor::group) {
    AlphabetPtr a = make_alphabet(gens);
    return Presentation{a, parse_word(a, rel), f};
}

Word rand_word(std::mt19937& rng, const AlphabetPtr& alpha, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::size_t> sym(0, alpha->size() - 1);
    std::uniform_int_distribution<int> sgn(0, 1);
    Word w(alpha);
    std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i)
        w = w.append(Letter{static_cast<std::uint32_t>(sym(rng)),
                            static_cast<std::int8_t>(sgn(rng) ? 1 : -1)});
    return w;
}

std::optional<ClassTag> find_tag(const std::vector<ClassTag>& tags, ClassKind k) {
    for (const ClassTag& t : tags)
        if (t.kind == k && t.decider) return t;
    return std::nullopt;
}

const ClassTag& first_tag(const std::vector<ClassTag>& tags) {
    for (const ClassTag& t : tags)
        if (t.decider) return t;
    REQUIRE(false);
    return tags.front();
}

// Witness factors must multiply to the query in the group model.
void check_witness(const PrefixDecider& d, const Word& q,
                   const MemberResult& r) {
    if (!r.witness) return;
    Word prod(q.alphabet());
    for (const Word& f : *r.witness) prod = free_reduce(prod.concat(f));
    CHECK(handle_is_trivial(d.group(), prod.concat(invert(q))));
}

MemberResult member_of(const Presentation& p, const std::vector<ClassTag>& tags,
                       const std::string& q) {
    return prefix_member(p, first_tag(tags), parse_word(p.alphabet, q));
}

}  // namespace

TEST_CASE("one_relator_handle: cyclic and free detection") {
    AlphabetPtr a = make_alphabet("a");
    auto h = one_relator_handle(a, parse_word(a, "aaa"));
    REQUIRE(h);
    CHECK(handle_is_trivial(*h, parse_word(a, "aaa")));
    CHECK(handle_is_trivial(*h, parse_word(a, "AAA")));
    CHECK_FALSE(handle_is_trivial(*h, parse_word(a, "a")));
    CHECK_FALSE(handle_is_trivial(*h, parse_word(a, "aa")));
    CHECK(handle_canonical_key(*h, parse_word(a, "aaaa")) ==
          handle_canonical_key(*h, parse_word(a, "a")));

    // b occurs once: the group is free on {a} and b = a^-2.
    AlphabetPtr ab = make_alphabet("ab");
    auto g = one_relator_handle(ab, parse_word(ab, "aba"));
    REQUIRE(g);
    CHECK(handle_is_trivial(*g, parse_word(ab, "aba")));
    CHECK(handle_is_trivial(*g, parse_word(ab, "baa")));
    CHECK_FALSE(handle_is_trivial(*g, parse_word(ab, "b")));
    CHECK_FALSE(handle_is_trivial(*g, parse_word(ab, "ab")));
}

TEST_CASE("one_relator_handle: trivial relator gives the free group") {
    AlphabetPtr ab = make_alphabet("ab");
    auto g = one_relator_handle(ab, parse_word(ab, "aA"));
    REQUIRE(g);
    CHECK_FALSE(handle_is_trivial(*g, parse_word(ab, "ab")));
    CHECK(handle_is_trivial(*g, parse_word(ab, "abBA")));
}

TEST_CASE("one_relator_handle: duplicate base characters are refused") {
    std::vector<Symbol> syms = {Symbol{'a', 1, true}, Symbol{'a', 2, true}};
    AlphabetPtr a = make_alphabet(syms);
    Word r(a);
    r = r.append(Letter{0, 1}).append(Letter{1, 1}).append(Letter{0, 1});
    CHECK_FALSE(one_relator_handle(a, r).has_value());
}

TEST_CASE("one_relator_handle: Moldavanskii models separate group elements") {
    struct Case {
        const char* gens;
        const char* rel;
    };
    // The H groups arising from the marker, disjoint and O'Hare-style
    // fixtures, plus BS(2,3) directly.
    for (Case c : {Case{"yz", "yzzyzy"}, Case{"ts", "tstsst"},
                   Case{"bcd", "bcdcddbbcdcd"}, Case{"ab", "BaabAAA"}}) {
        CAPTURE(c.rel);
        AlphabetPtr alpha = make_alphabet(c.gens);
        Word r = parse_word(alpha, c.rel);
        auto h = one_relator_handle(alpha, r);
        REQUIRE(h);
        CHECK(handle_is_trivial(*h, r));
        for (std::size_t i = 0; i < alpha->size(); ++i) {
            Word l(alpha);
            CHECK_FALSE(handle_is_trivial(*h, l.append(Letter{
                                                  static_cast<std::uint32_t>(i), 1})));
        }
        // Conjugates and products of conjugates of the relator die.
        std::mt19937 rng(7);
        for (int i = 0; i < 15; ++i) {
            Word u = rand_word(rng, alpha, 4), v = rand_word(rng, alpha, 4);
            Word x = free_reduce(u.concat(r).concat(invert(u))
                                     .concat(v)
                                     .concat(invert(r))
                                     .concat(invert(v)));
            CHECK(handle_is_trivial(*h, x));
        }
        // Canonical keys agree with triviality of quotients.
        std::mt19937 rng2(11);
        for (int i = 0; i < 15; ++i) {
            Word u = rand_word(rng2, alpha, 4), v = rand_word(rng2, alpha, 4);
            bool same = handle_canonical_key(*h, u) == handle_canonical_key(*h, v);
            CHECK(same == handle_is_trivial(*h, u.concat(invert(v))));
        }
    }
}

TEST_CASE("classify: fixtures land in their intended classes") {
    auto has = [](const Presentation& p, ClassKind k) {
        return find_tag(classify(p), k).has_value();
    };
    CHECK(has(pres("axby", "axbaybaybaxbaybaxb"), ClassKind::marker));
    CHECK(has(pres("abcd", "ababcdcdababcdcdcdcdabab"), ClassKind::disjoint));
    CHECK(has(pres("abcd", "abABcdCD"), ClassKind::cyc_pinched));
    CHECK(has(pres("ab", "BaabAAA"), ClassKind::conj_pinched));
    CHECK(has(pres("abct", "TatcbTTattcbTTTatttc"), ClassKind::posneg));
    CHECK(has(pres("ab", "abaBAAB"), ClassKind::adjan));
    CHECK(has(pres("abcd", "abcdacdadabbcdacd"), ClassKind::ohare));
    CHECK(has(pres("ab", "aba"), ClassKind::marker));
    CHECK(has(pres("ab", "baa"), ClassKind::marker));
}

TEST_CASE("classify: non-examples come back unsupported") {
    for (const char* rel : {"aabab", "bbaaba"}) {
        CAPTURE(rel);
        std::vector<ClassTag> tags = classify(pres("ab", rel));
        REQUIRE(tags.size() == 1);
        CHECK(tags.front().kind == ClassKind::unsupported);
        CHECK(tags.front().decider == nullptr);
        CHECK_FALSE(tags.front().note.empty());
    }
}

TEST_CASE("classify: malformed inputs are rejected") {
    AlphabetPtr ab = make_alphabet("ab");
    CHECK_THROWS_AS(classify(Presentation{ab, Word(ab)}), std::invalid_argument);
    CHECK_THROWS_AS(classify(Presentation{ab, parse_word(ab, "aAb")}),
                    std::invalid_argument);
    // A user factorisation must concatenate to the relator.
    Factorisation f;
    f.relator = parse_word(ab, "abab");
    f.kind = Factorisation::kUser;
    f.cut_points = {3};
    Presentation p{ab, parse_word(ab, "aba")};
    CHECK_THROWS_AS(classify(p, f), std::invalid_argument);
}

TEST_CASE("prefix_member: aba vs baa contrast") {
    Presentation p1 = pres("ab", "aba");
    auto t1 = classify(p1);
    for (const char* q : {"a", "A", "b", "B"}) {
        CAPTURE(q);
        MemberResult r = member_of(p1, t1, q);
        CHECK(r.answer == MemberResult::yes);
        REQUIRE(r.witness);
        check_witness(*first_tag(t1).decider, parse_word(p1.alphabet, q), r);
    }

    Presentation p2 = pres("ab", "baa");
    auto t2 = classify(p2);
    CHECK(member_of(p2, t2, "A").answer == MemberResult::yes);
    CHECK(member_of(p2, t2, "AA").answer == MemberResult::yes);
    CHECK(member_of(p2, t2, "b").answer == MemberResult::yes);
    CHECK(member_of(p2, t2, "a").answer == MemberResult::no);
    CHECK(member_of(p2, t2, "B").answer == MemberResult::no);
}

TEST_CASE("prefix_member: fixture answers per class") {
    struct Q {
        const char* w;
        MemberResult::Answer want;
    };
    struct Case {
        const char* gens;
        const char* rel;
        std::vector<Q> qs;
    };
    const std::vector<Case> cases = {
        {"axby", "axbaybaybaxbaybaxb",
         {{"a", MemberResult::yes}, {"axb", MemberResult::yes},
          {"X", MemberResult::no}}},
        {"abcd", "ababcdcdababcdcdcdcdabab",
         {{"abab", MemberResult::yes}, {"BA", MemberResult::yes},
          {"DC", MemberResult::yes}}},
        {"abcd", "abABcdCD",
         {{"a", MemberResult::yes}, {"abAB", MemberResult::yes},
          {"A", MemberResult::no}, {"cd", MemberResult::no}}},
        {"ab", "BaabAAA",
         {{"B", MemberResult::yes}, {"Ba", MemberResult::yes},
          {"a", MemberResult::yes}, {"A", MemberResult::no}}},
        {"abct", "TatcbTTattcbTTTatttc",
         {{"T", MemberResult::yes}, {"Ta", MemberResult::yes},
          {"a", MemberResult::no}}},
        {"ab", "abaBAAB",
         {{"a", MemberResult::yes}, {"ab", MemberResult::yes},
          {"B", MemberResult::no}}},
        {"abcd", "abcdacdadabbcdacd",
         {{"a", MemberResult::yes}, {"abcd", MemberResult::yes},
          {"ad", MemberResult::yes}, {"b", MemberResult::no},
          {"c", MemberResult::no}}},
    };
    for (const Case& c : cases) {
        CAPTURE(c.rel);
        Presentation p = pres(c.gens, c.rel);
        auto tags = classify(p);
        const ClassTag& tag = first_tag(tags);
        for (const Q& q : c.qs) {
            CAPTURE(q.w);
            MemberResult r = prefix_member(p, tag, parse_word(p.alphabet, q.w));
            CHECK(r.answer == q.want);
            check_witness(*tag.decider, parse_word(p.alphabet, q.w), r);
        }
    }
}

TEST_CASE("prefix_member: invariance under free reduction and relator append") {
    std::mt19937 rng(31);
    for (const auto& [gens, rel] :
         std::vector<std::pair<const char*, const char*>>{
             {"ab", "aba"}, {"ab", "baa"}, {"abcd", "abABcdCD"}}) {
        CAPTURE(rel);
        Presentation p = pres(gens, rel);
        auto tags = classify(p);
        const ClassTag& tag = first_tag(tags);
        for (int i = 0; i < 12; ++i) {
            Word q = rand_word(rng, p.alphabet, 5);
            MemberResult base = prefix_member(p, tag, q);
            if (base.answer != MemberResult::yes && base.answer != MemberResult::no)
                continue;
            // Insert a cancelling pair mid-word.
            Word padded(p.alphabet);
            padded = padded.concat(q)
                         .append(Letter{0, 1})
                         .append(Letter{0, -1});
            CHECK(prefix_member(p, tag, padded).answer == base.answer);
            CHECK(prefix_member(p, tag, q.concat(p.relator)).answer == base.answer);
        }
    }
}

TEST_CASE("prefix_member: co-applicable deciders agree") {
    std::mt19937 rng(43);
    for (const auto& [gens, rel] :
         std::vector<std::pair<const char*, const char*>>{
             {"ab", "aba"},
             {"ab", "abaBAAB"},
             {"abcd", "ababcdcdababcdcdcdcdabab"},
             {"abcd", "abABcdCD"}}) {
        CAPTURE(rel);
        Presentation p = pres(gens, rel);
        std::vector<ClassTag> tags = classify(p);
        std::vector<const ClassTag*> live;
        for (const ClassTag& t : tags)
            if (t.decider) live.push_back(&t);
        REQUIRE(live.size() >= 2);
        for (int i = 0; i < 10; ++i) {
            Word q = rand_word(rng, p.alphabet, 4);
            CAPTURE(print_word(q));
            std::optional<MemberResult::Answer> seen;
            for (const ClassTag* t : live) {
                MemberResult r = prefix_member(p, *t, q);
                if (r.answer != MemberResult::yes && r.answer != MemberResult::no)
                    continue;
                if (seen) CHECK(*seen == r.answer);
                seen = r.answer;
            }
        }
    }
}

TEST_CASE("prefix_member: oracle positives are accepted") {
    std::mt19937 rng(59);
    for (const auto& [gens, rel] :
         std::vector<std::pair<const char*, const char*>>{
             {"axby", "axbaybaybaxbaybaxb"},
             {"ab", "BaabAAA"},
             {"ab", "abaBAAB"},
             {"abcd", "abcdacdadabbcdacd"}}) {
        CAPTURE(rel);
        Presentation p = pres(gens, rel);
        auto tags = classify(p);
        const ClassTag& tag = first_tag(tags);
        const std::vector<Word>& mg = tag.decider->monoid_gens();
        std::uniform_int_distribution<std::size_t> pick(0, mg.size() - 1);
        for (int i = 0; i < 12; ++i) {
            Word prod(p.alphabet);
            int n = 1 + static_cast<int>(rng() % 4);
            for (int j = 0; j < n; ++j)
                prod = free_reduce(prod.concat(mg[pick(rng)]));
            CAPTURE(print_word(prod));
            MemberResult r = prefix_member(p, tag, prod);
            CHECK(r.answer == MemberResult::yes);
            check_witness(*tag.decider, prod, r);
        }
    }
}

TEST_CASE("right_invertible: O'Hare units and refusals") {
    Presentation p = pres("abcd", "abcdacdadabbcdacd", Flavor::inverse_monoid);
    for (const char* q : {"abcd", "acd", "ad", "abbcd"}) {
        CAPTURE(q);
        CHECK(right_invertible(p, parse_word(p.alphabet, q)).answer ==
              MemberResult::yes);
    }
    for (const char* q : {"b", "c", "D", "A"}) {
        CAPTURE(q);
        CHECK(right_invertible(p, parse_word(p.alphabet, q)).answer ==
              MemberResult::no);
    }
    // Non-cyclically-reduced relators carry no E-unitarity certificate.
    Presentation bad = pres("ab", "abA", Flavor::inverse_monoid);
    CHECK_THROWS_AS(right_invertible(bad, parse_word(bad.alphabet, "a")),
                    std::invalid_argument);
}

TEST_CASE("ohare_rewrite: minimal instance and condition failures") {
    Presentation p = pres("abd", "abdad", Flavor::inverse_monoid);
    Presentation r = ohare_rewrite(p);
    CHECK(print_word(r.relator) == "abAadad");
    CHECK(free_reduce(r.relator) == p.relator);

    // Condition (i): no empty block.
    CHECK_THROWS_AS(ohare_rewrite(pres("abd", "abdabd")), std::invalid_argument);
    // Condition (ii): b is not a difference of block interiors.
    CHECK_THROWS_WITH_AS(ohare_rewrite(pres("abcd", "abcdad")),
                         doctest::Contains("difference"), std::invalid_argument);
}

TEST_CASE("ohare_rewrite: rewritten presentation has the same prefix monoid") {
    Presentation p = pres("abcd", "abcdacdadabbcdacd");
    Presentation r = ohare_rewrite(p);
    auto tp = classify(p);
    auto tr = classify(r);
    const ClassTag& a = first_tag(tp);
    const ClassTag& b = first_tag(tr);
    std::mt19937 rng(73);
    for (int i = 0; i < 10; ++i) {
        Word q = rand_word(rng, p.alphabet, 4);
        CAPTURE(print_word(q));
        MemberResult ra = prefix_member(p, a, q);
        MemberResult rb = prefix_member(r, b, q);
        if ((ra.answer == MemberResult::yes || ra.answer == MemberResult::no) &&
            (rb.answer == MemberResult::yes || rb.answer == MemberResult::no))
            CHECK(ra.answer == rb.answer);
    }
}

TEST_CASE("MonoidBall: exhaustive on finite submonoids") {
    // <a | aaa>: Mon<a> is all of Z/3.
    AlphabetPtr a = make_alphabet("a");
    auto h = one_relator_handle(a, parse_word(a, "aaa"));
    REQUIRE(h);
    MonoidBall ball(*h, {parse_word(a, "a")});
    auto w = ball.find(parse_word(a, "A"), 10);
    REQUIRE(w);
    CHECK(w->size() == 2);
    CHECK_FALSE(ball.find(parse_word(a, "a"), 0).has_value());
    // Free group: a^-1 is never a product of copies of a.
    GroupHandle f = free_handle(a);
    MonoidBall fb(f, {parse_word(a, "a")});
    CHECK_FALSE(fb.find(parse_word(a, "A"), 12).has_value());
}
