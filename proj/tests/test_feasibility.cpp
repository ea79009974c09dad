#include <gtest/gtest.h>

#include <random>

#include "kweights/feasibility.hpp"
#include "kweights/groups.hpp"
#include "kweights/patterns.hpp"
#include "kweights/plex_search.hpp"
#include "oracles.hpp"

using namespace kweights;

namespace {

LatinSquare cyclic(int n) { return cayley_table(AbelianGroup::cyclic(n)); }

std::vector<BigInt> big(std::initializer_list<std::int64_t> v) { return {v.begin(), v.end()}; }

::testing::AssertionResult hermite_ok(const IntegerMatrix& A, const HermiteForm& hf) {
    const auto defect = oracle::hermite_defect(A, hf);
    if (defect.empty()) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << defect;
}

} // namespace

TEST(IncidenceMatrix, Shape) {
    const auto A1 = incidence_matrix(validate_grid({{0}}));
    EXPECT_EQ(A1.rows(), 3u);
    EXPECT_EQ(A1.cols(), 1u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(A1(i, 0), 1);

    for (const auto& L : {cyclic(4), random_square(6, 9)}) {
        const auto A = incidence_matrix(L);
        const auto n = static_cast<std::size_t>(L.order());
        for (std::size_t j = 0; j < A.cols(); ++j) {
            BigInt s = 0;
            for (std::size_t i = 0; i < A.rows(); ++i) s += A(i, j);
            EXPECT_EQ(s, 3);
        }
        for (std::size_t i = 0; i < A.rows(); ++i) {
            BigInt s = 0;
            for (std::size_t j = 0; j < A.cols(); ++j) s += A(i, j);
            EXPECT_EQ(s, n);
        }
        EXPECT_EQ(A(2 * n + static_cast<std::size_t>(L.at(1, 2)), 1 * n + 2), 1);
    }
}

TEST(IncidenceMatrix, RationalRankIsThreeNMinusTwo) {
    for (int n = 2; n <= 6; ++n) {
        EXPECT_EQ(oracle::bareiss(incidence_matrix(cyclic(n))).first, static_cast<std::size_t>(3 * n - 2));
        EXPECT_EQ(oracle::bareiss(incidence_matrix(random_square(n, 40 + n))).first, static_cast<std::size_t>(3 * n - 2));
    }
}

TEST(HermiteNormalForm, Identity) {
    const auto I = IntegerMatrix::identity(4);
    const auto hf = hermite_normal_form(I);
    EXPECT_EQ(hf.H, I);
    EXPECT_EQ(hf.U, I);
}

TEST(HermiteNormalForm, GcdStep) {
    const auto A = IntegerMatrix::from_rows({{2, 4}});
    const auto hf = hermite_normal_form(A);
    EXPECT_EQ(hf.H, IntegerMatrix::from_rows({{2, 0}}));
    EXPECT_TRUE(hermite_ok(A, hf));
    const auto B = IntegerMatrix::from_rows({{6, -4, 10}});
    const auto hb = hermite_normal_form(B);
    EXPECT_EQ(hb.H, IntegerMatrix::from_rows({{2, 0, 0}}));
    EXPECT_TRUE(hermite_ok(B, hb));
}

TEST(HermiteNormalForm, ReducesLeftOfPivot) {
    const auto A = IntegerMatrix::from_rows({{1, 0}, {5, 3}});
    const auto hf = hermite_normal_form(A);
    EXPECT_EQ(hf.H, IntegerMatrix::from_rows({{1, 0}, {2, 3}}));
    EXPECT_TRUE(hermite_ok(A, hf));
}

TEST(HermiteNormalForm, RandomMatrices) {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t rows = 1 + trial % 6, cols = 1 + (trial / 6) % 9;
        IntegerMatrix A(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) A(i, j) = (trial % 4 == 0 && entry(rng) > 3) ? 0 : entry(rng);
        ASSERT_TRUE(hermite_ok(A, hermite_normal_form(A))) << "trial " << trial;
    }
}

TEST(HermiteNormalForm, IncidenceMatrices) {
    for (int n = 1; n <= 8; ++n) ASSERT_TRUE(hermite_ok(incidence_matrix(cyclic(n)), hermite_normal_form(incidence_matrix(cyclic(n)))));
}

TEST(SolveDiophantine, Examples) {
    const auto A = IntegerMatrix::from_rows({{2}});
    auto res = solve_diophantine(A, big({4}));
    ASSERT_TRUE(res.feasible);
    EXPECT_EQ(res.solution, big({2}));

    res = solve_diophantine(A, big({3}));
    ASSERT_FALSE(res.feasible);
    ASSERT_EQ(res.certificate.size(), 1u);
    EXPECT_EQ(res.certificate[0], Rational(1, 2));
    EXPECT_TRUE(verify_certificate(A, res.certificate, big({3})));

    const auto Z4 = incidence_matrix(cyclic(4));
    const std::vector<BigInt> ones(Z4.rows(), BigInt(1));
    res = solve_diophantine(Z4, ones);
    EXPECT_FALSE(res.feasible);
    EXPECT_TRUE(verify_certificate(Z4, res.certificate, ones));

    EXPECT_THROW(solve_diophantine(A, big({1, 2})), Error);
}

TEST(SolveDiophantine, RationallyInconsistentSystem) {
    // x + y = 1 and 2x + 2y = 3 has no rational solution at all.
    const auto A = IntegerMatrix::from_rows({{1, 1}, {2, 2}});
    const auto res = solve_diophantine(A, big({1, 3}));
    ASSERT_FALSE(res.feasible);
    EXPECT_TRUE(verify_certificate(A, res.certificate, big({1, 3})));
}

TEST(SolveDiophantine, AgreesWithBruteForce) {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> entry(-3, 3);
    int feasible = 0, infeasible = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t rows = 1 + trial % 3, cols = 1 + (trial / 3) % 3;
        std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(cols));
        for (auto& r : a)
            for (auto& v : r) v = entry(rng);
        // Half the right-hand sides come from a small x so solvable cases are common.
        std::vector<std::int64_t> b(rows);
        if (trial % 2) {
            std::vector<std::int64_t> x(cols);
            for (auto& v : x) v = entry(rng);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) b[i] += a[i][j] * x[j];
        } else {
            for (auto& v : b) v = entry(rng) * 2 + 1;
        }
        const auto A = IntegerMatrix::from_rows(a);
        const std::vector<BigInt> bb(b.begin(), b.end());
        const auto res = solve_diophantine(A, bb);
        if (res.feasible) {
            ++feasible;
            EXPECT_TRUE(verify_solution(A, res.solution, bb));
        } else {
            ++infeasible;
            EXPECT_TRUE(verify_certificate(A, res.certificate, bb));
            // A certificate rules out every integer x, so brute force finds nothing.
            EXPECT_FALSE(oracle::brute_force_solvable(a, b, 6)) << "trial " << trial;
        }
        if (oracle::brute_force_solvable(a, b, 6)) { EXPECT_TRUE(res.feasible) << "trial " << trial; }
    }
    EXPECT_GT(feasible, 50);
    EXPECT_GT(infeasible, 50);
}

TEST(DecideKWeight, Examples) {
    EXPECT_FALSE(decide_k_weight(cyclic(4), 1).feasible);
    EXPECT_TRUE(decide_k_weight(cayley_table(AbelianGroup({2, 2})), 1).feasible);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto L = random_square(1 + static_cast<int>(seed % 8), seed);
        const auto d = decide_k_weight(L, 2);
        ASSERT_TRUE(d.feasible);
        EXPECT_TRUE(classify(L, *d.witness, 2).is_exact());
    }
}

TEST(DecideKWeight, ZeroKReturnsZeroWitness) {
    const auto d = decide_k_weight(cyclic(4), 0);
    ASSERT_TRUE(d.feasible);
    EXPECT_TRUE(d.witness->is_zero());
}

TEST(DecideKWeight, WitnessesAndCertificatesVerify) {
    for (const auto& L : {cyclic(2), cyclic(3), cyclic(4), cyclic(5), cyclic(6), random_square(7, 1), random_square(8, 2)})
        for (std::int64_t k = -5; k <= 7; ++k) {
            const auto d = decide_k_weight(L, k);
            if (d.feasible) {
                ASSERT_TRUE(d.witness);
                if (k) { EXPECT_TRUE(classify(L, *d.witness, k).is_exact()); }
            } else {
                const auto A = incidence_matrix(L);
                EXPECT_TRUE(verify_certificate(A, d.certificate, std::vector<BigInt>(A.rows(), BigInt(k))));
            }
            // Odd k reduces to k = 1.
            if (k % 2) { EXPECT_EQ(d.feasible, decide_k_weight(L, 1).feasible); }
        }
}

TEST(DecideKWeight, MatchesUniqueInvolutionOnGroups) {
    for (const auto& G : oracle::groups_up_to(8)) {
        const auto L = cayley_table(G);
        const bool obstructed = unique_involution(G).has_value();
        for (std::int64_t k : {1, 3, 5}) EXPECT_EQ(decide_k_weight(L, k).feasible, !obstructed) << G.to_string();
    }
}

TEST(DecideKWeight, AgreesWithTransversalSearchAtOrderFour) {
    for_each_square(4, [](const LatinSquare& L) {
        ASSERT_EQ(decide_k_weight(L, 1).feasible, count_transversals(L) > 0);
    });
}

TEST(WeightSpectrum, Examples) {
    EXPECT_EQ(weight_spectrum(cyclic(3)), Spectrum::AllIntegers);
    EXPECT_EQ(weight_spectrum(cyclic(4)), Spectrum::EvensOnly);
    EXPECT_EQ(weight_spectrum(cayley_table(AbelianGroup({2, 2}))), Spectrum::AllIntegers);
}
