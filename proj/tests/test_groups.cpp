#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "kweights/groups.hpp"
#include "kweights/plex_search.hpp"
#include "oracles.hpp"

using namespace kweights;

TEST(Groups, Addition) {
    const auto Z4 = AbelianGroup::cyclic(4);
    EXPECT_EQ(Z4.add({1}, {3}), GroupElement{0});
    const AbelianGroup K({2, 2});
    EXPECT_EQ(K.add(K.encode({1, 0}), K.encode({1, 1})), K.encode({0, 1}));
    for (const auto& G : oracle::groups_up_to(12))
        for (int g = 0; g < G.order(); ++g) EXPECT_EQ(G.add({g}, G.identity()), GroupElement{g});
    EXPECT_THROW(Z4.add({4}, {0}), Error);
}

TEST(Groups, AdditionIsAssociativeAndCommutative) {
    for (const auto& G : {AbelianGroup({2, 4}), AbelianGroup({3, 2, 2}), AbelianGroup({6})}) {
        const int n = G.order();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                EXPECT_EQ(G.add({a}, {b}), G.add({b}, {a}));
                for (int c = 0; c < n; ++c) EXPECT_EQ(G.add(G.add({a}, {b}), {c}), G.add({a}, G.add({b}, {c})));
            }
    }
}

TEST(Groups, MixedRadixEncoding) {
    const AbelianGroup G({2, 4});
    EXPECT_EQ(G.encode({1, 3}).index, 7);
    EXPECT_EQ(G.decode({6}), (std::vector<int>{1, 2}));
    EXPECT_THROW(G.encode({2, 0}), Error);
}

TEST(Groups, ScaleMatchesRepeatedAddition) {
    const AbelianGroup G({3, 4});
    for (int g = 0; g < G.order(); ++g) {
        GroupElement acc = G.identity();
        for (int s = 0; s <= 30; ++s) {
            EXPECT_EQ(G.scale(s, {g}), acc);
            EXPECT_EQ(G.add(G.scale(-s, {g}), acc), G.identity());
            acc = G.add(acc, {g});
        }
    }
    EXPECT_EQ(G.scale(std::numeric_limits<std::int64_t>::min(), {5}), G.scale(std::numeric_limits<std::int64_t>::min() % 12, {5}));
}

TEST(Groups, ElementSumExamples) {
    EXPECT_EQ(element_sum(AbelianGroup::cyclic(4)), GroupElement{2});
    EXPECT_EQ(element_sum(AbelianGroup({2, 2})), GroupElement{0});
    EXPECT_EQ(element_sum(AbelianGroup::cyclic(5)), GroupElement{0});
}

TEST(Groups, UniqueInvolutionExamples) {
    EXPECT_EQ(unique_involution(AbelianGroup::cyclic(4)), GroupElement{2});
    EXPECT_FALSE(unique_involution(AbelianGroup({2, 2})));
    EXPECT_FALSE(unique_involution(AbelianGroup::cyclic(9)));
    for (int m = 1; m <= 10; ++m) EXPECT_EQ(unique_involution(AbelianGroup::cyclic(2 * m)), GroupElement{m});
}

TEST(Groups, ElementSumAgreesWithInvolutionAndDigitOracle) {
    for (int n = 1; n <= 16; ++n)
        for (const auto& G : abelian_groups_of_order(n)) {
            const auto sum = element_sum(G);
            const auto inv = unique_involution(G);
            EXPECT_EQ(sum, inv.value_or(G.identity())) << G.to_string();
            EXPECT_EQ(G.decode(sum), oracle::element_sum_digits(G.factors())) << G.to_string();
            if (n % 2) { EXPECT_FALSE(inv); }
        }
    // Non-canonical factor lists are legal.
    EXPECT_EQ(element_sum(AbelianGroup({2, 4})), element_sum(AbelianGroup({2, 4})));
    EXPECT_FALSE(unique_involution(AbelianGroup({2, 4})));
}

TEST(Groups, IsomorphismClassCounts) {
    // Abelian groups of order 1..16 up to isomorphism.
    const std::size_t expected[] = {0, 1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5};
    for (int n = 1; n <= 16; ++n) EXPECT_EQ(abelian_groups_of_order(n).size(), expected[n]) << n;
}

TEST(Groups, CayleyTables) {
    EXPECT_EQ(cayley_table(AbelianGroup::cyclic(2)).flat(), (std::vector<int>{0, 1, 1, 0}));
    EXPECT_EQ(cayley_table(AbelianGroup::cyclic(3)).flat(), (std::vector<int>{0, 1, 2, 1, 2, 0, 2, 0, 1}));
    EXPECT_EQ(cayley_table(AbelianGroup({2, 2})).rows(),
              (std::vector<std::vector<int>>{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}));
    for (const auto& G : oracle::groups_up_to(16)) EXPECT_NO_THROW(cayley_table(G));
}

TEST(Groups, ParseGroupSpec) {
    EXPECT_EQ(parse_group_spec("cyclic:4").factors(), std::vector<int>{4});
    EXPECT_EQ(parse_group_spec("sum:2,4").factors(), (std::vector<int>{2, 4}));
    for (const char* bad : {"cyclic:", "cyclic:0", "sum:2,,4", "sum:2,x", "klein", "cyclic:-3", "sum:"})
        EXPECT_THROW(parse_group_spec(bad), Error) << bad;
}

TEST(GroupSumIdentity, VanishesForEveryWeight) {
    std::mt19937_64 rng(2024);
    WeightMatrix ones(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) ones.at(r, c) = 1;
    EXPECT_EQ(group_sum_identity(AbelianGroup::cyclic(4), ones), GroupElement{0});
    for (const auto& G : {AbelianGroup::cyclic(5), AbelianGroup({2, 2}), AbelianGroup({2, 4}), AbelianGroup({3, 3})}) {
        for (int trial = 0; trial < 1000; ++trial)
            ASSERT_EQ(group_sum_identity(G, oracle::random_weight(G.order(), rng, -9, 9)), G.identity()) << G.to_string();
    }
    EXPECT_THROW(group_sum_identity(AbelianGroup::cyclic(3), WeightMatrix(4)), Error);
}

TEST(Lemma22, Examples) {
    const auto Z4 = AbelianGroup::cyclic(4);
    auto res = lemma22_check(Z4, WeightMatrix::indicator(4, {{0, 0}, {1, 1}, {2, 3}}), 1);
    EXPECT_EQ(res.delta, GroupElement{2});
    EXPECT_EQ(res.expected, GroupElement{2});
    EXPECT_TRUE(res.matches);

    const auto Z3 = AbelianGroup::cyclic(3);
    res = lemma22_check(Z3, WeightMatrix::indicator(3, {{0, 0}, {1, 1}}), 1);
    EXPECT_EQ(res.delta, GroupElement{0});
    EXPECT_EQ(res.expected, GroupElement{0});
    EXPECT_TRUE(res.matches);

    // An exact 2-weight: empty missing sets.
    WeightMatrix two(4);
    for (int r = 0; r < 4; ++r) two.at(r, r) = 1, two.at(r, (r + 1) % 4) = 1;
    res = lemma22_check(Z4, two, 2);
    EXPECT_EQ(res.delta, GroupElement{0});
    EXPECT_TRUE(res.matches);
}

TEST(Lemma22, RejectsNonPartialWeights) {
    try {
        lemma22_check(AbelianGroup::cyclic(3), WeightMatrix::indicator(3, {{0, 1}, {1, 0}}), 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotAPartialWeight);
    }
}

TEST(Lemma22, HoldsOnEveryNearTransversalUpToOrderSeven) {
    for (const auto& G : oracle::groups_up_to(7)) {
        const auto L = cayley_table(G);
        std::uint64_t checked = 0;
        for_each_near_transversal(L, [&](const NearTransversal& nt) {
            const auto res = lemma22_check(G, WeightMatrix::indicator(L.order(), nt.cells), 1);
            ASSERT_TRUE(res.matches) << G.to_string();
            ++checked;
        });
        EXPECT_GT(checked, 0u);
    }
}

TEST(ProfileExcluded, Examples) {
    const auto Z5 = AbelianGroup::cyclic(5);
    EXPECT_TRUE(profile_excluded(Z5, {1}, {3}, 2));
    EXPECT_FALSE(profile_excluded(AbelianGroup::cyclic(4), {3}, {1}, 2));
    for (int g = 0; g < 6; ++g) EXPECT_FALSE(profile_excluded(AbelianGroup::cyclic(6), {g}, {g}, 1));
}

TEST(ProfileExcluded, CoprimeIndexAlwaysExcludes) {
    for (int n = 2; n <= 12; ++n)
        for (const auto& G : abelian_groups_of_order(n))
            for (int g = 0; g < n; ++g)
                for (int h = 0; h < n; ++h)
                    for (int i = 1; i < n; ++i)
                        if (g != h && std::gcd(n, i) == 1) { EXPECT_TRUE(profile_excluded(G, {g}, {h}, i)); }
}

TEST(ProfileExcluded, Errors) {
    const auto Z5 = AbelianGroup::cyclic(5);
    try {
        profile_excluded(Z5, {1}, {2}, 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IOutOfRange);
    }
    try {
        profile_excluded(Z5, {7}, {2}, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ElementOutOfRange);
    }
}
