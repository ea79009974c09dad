#pragma once

// Exhaustive small-order survey of squares without odd weights, compared
// against squares with an odd-block pattern of an even cyclic group.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "kweights/error.hpp"
#include "kweights/feasibility.hpp"
#include "kweights/groups.hpp"
#include "kweights/latin.hpp"
#include "kweights/patterns.hpp"

namespace kweights {

inline constexpr int kMaxIsotopyOrder = 5;

/// Brute force over row and column permutations; the symbol bijection is
/// then forced cell by cell.
inline bool is_isotopic(const LatinSquare& a, const LatinSquare& b) {
    const int n = a.order();
    if (n != b.order()) return false;
    if (n > kMaxIsotopyOrder) throw Error(ErrorCode::OrderTooLarge, "isotopy test is capped at order 5");
    std::vector<int> rowPerm(static_cast<std::size_t>(n)), colPerm(static_cast<std::size_t>(n));
    std::vector<int> symMap(static_cast<std::size_t>(n)), symInv(static_cast<std::size_t>(n));
    std::iota(rowPerm.begin(), rowPerm.end(), 0);
    do {
        std::iota(colPerm.begin(), colPerm.end(), 0);
        do {
            std::fill(symMap.begin(), symMap.end(), -1);
            std::fill(symInv.begin(), symInv.end(), -1);
            bool ok = true;
            for (int i = 0; i < n && ok; ++i)
                for (int j = 0; j < n && ok; ++j) {
                    const auto from = static_cast<std::size_t>(a.at(rowPerm[static_cast<std::size_t>(i)], colPerm[static_cast<std::size_t>(j)]));
                    const int to = b.at(i, j);
                    if (symMap[from] == -1 && symInv[static_cast<std::size_t>(to)] == -1) {
                        symMap[from] = to;
                        symInv[static_cast<std::size_t>(to)] = static_cast<int>(from);
                    } else if (symMap[from] != to) {
                        ok = false;
                    }
                }
            if (ok) return true;
        } while (std::next_permutation(colPerm.begin(), colPerm.end()));
    } while (std::next_permutation(rowPerm.begin(), rowPerm.end()));
    return false;
}

/// One (q, m) with q odd and m = N / q even: squares with the q-block
/// pattern of Z_m have no odd weights.
struct OddBlockCandidate {
    int q = 0;
    int m = 0;
    LatinSquare stepSquare;
};

inline std::vector<OddBlockCandidate> odd_block_candidates(int order) {
    std::vector<OddBlockCandidate> out;
    for (int q = 1; q <= order; q += 2)
        if (order % q == 0 && (order / q) % 2 == 0) {
            const int m = order / q;
            out.push_back({q, m, step_type(cayley_table(AbelianGroup::cyclic(m)), q).first});
        }
    return out;
}

struct SurveyReport {
    int order = 0;
    std::uint64_t squares = 0;
    std::uint64_t evensOnly = 0;
    /// EvensOnly squares whose aligned q-blocks (q odd) follow a pattern
    /// isotopic to Z_m, m = N / q even.
    std::uint64_t evensOnlyAlignedDetected = 0;
    /// EvensOnly squares isotopic to step_type(Z_m, q) for some candidate.
    std::uint64_t evensOnlyIsotopicToStep = 0;
    /// All squares of the order isotopic to some candidate step-type square.
    std::uint64_t isotopicToStepTotal = 0;
    /// EvensOnly squares matched by neither test.
    std::uint64_t evensOnlyUnexplained = 0;
    std::vector<std::pair<int, int>> candidates; // (q, m)
};

/// Enumerates every square of the given order (<= 5) and classifies its
/// weight spectrum. Reports evidence only; nothing is asserted.
inline SurveyReport survey_no_odd_weight(int order) {
    if (order < 1 || order > SquareCursor::kMaxOrder)
        throw Error(ErrorCode::OrderTooLarge, "survey supports orders 1..5");
    const auto candidates = odd_block_candidates(order);
    SurveyReport rep;
    rep.order = order;
    for (const auto& c : candidates) rep.candidates.emplace_back(c.q, c.m);

    for_each_square(order, [&](const LatinSquare& L) {
        ++rep.squares;
        bool isotopic = false;
        for (const auto& c : candidates)
            if (is_isotopic(L, c.stepSquare)) {
                isotopic = true;
                break;
            }
        if (isotopic) ++rep.isotopicToStepTotal;
        if (weight_spectrum(L) != Spectrum::EvensOnly) return;
        ++rep.evensOnly;
        bool aligned = false;
        for (const auto& c : candidates) {
            const auto bs = detect_block_pattern(L, c.q);
            if (bs && is_isotopic(bs->pattern, cayley_table(AbelianGroup::cyclic(c.m)))) {
                aligned = true;
                break;
            }
        }
        if (aligned) ++rep.evensOnlyAlignedDetected;
        if (isotopic) ++rep.evensOnlyIsotopicToStep;
        if (!aligned && !isotopic) ++rep.evensOnlyUnexplained;
    });
    return rep;
}

} // namespace kweights
