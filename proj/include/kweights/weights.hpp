#pragma once

// Closed-form weight constructions and the extension/maximality test for
// near 1-weights on Abelian Cayley tables.

#include <cstdint>
#include <optional>

#include "kweights/error.hpp"
#include "kweights/groups.hpp"
#include "kweights/latin.hpp"

namespace kweights {

/// All ones: an n-weight of any square of order n.
inline WeightMatrix uniform_weight(const LatinSquare& L) {
    WeightMatrix w(L.order());
    for (int r = 0; r < L.order(); ++r)
        for (int c = 0; c < L.order(); ++c) w.at(r, c) = 1;
    return w;
}

/// 3 - n on the anchor, 1 on every cell sharing exactly one of row, column,
/// symbol with the anchor, 0 elsewhere. Always a 2-weight: a row other than
/// the anchor's meets the anchor column and the anchor symbol in two
/// distinct cells, and the anchor row carries (n - 1) + (3 - n).
inline WeightMatrix two_weight(const LatinSquare& L, const CellTriple& anchor) {
    if (!L.contains(anchor))
        throw Error(ErrorCode::InvalidAnchor, "(" + std::to_string(anchor.row) + "," + std::to_string(anchor.col) + "," +
                                                  std::to_string(anchor.symbol) + ") is not a cell of the square");
    const int n = L.order();
    WeightMatrix w(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const int agree = (r == anchor.row) + (c == anchor.col) + (L.at(r, c) == anchor.symbol);
            if (agree == 3)
                w.at(r, c) = 3 - n;
            else if (agree == 1)
                w.at(r, c) = 1;
        }
    return w;
}

inline WeightMatrix linear_combine(std::int64_t a, const WeightMatrix& W1, std::int64_t b, const WeightMatrix& W2) {
    if (W1.order() != W2.order()) throw Error(ErrorCode::DimensionMismatch);
    WeightMatrix out(W1.order());
    for (int r = 0; r < W1.order(); ++r)
        for (int c = 0; c < W1.order(); ++c)
            out.at(r, c) = checked::add(checked::mul(a, W1.at(r, c)), checked::mul(b, W2.at(r, c)));
    return out;
}

/// For odd n = 2m + 1: uniform - m * two_weight(anchor), a 1-weight.
inline WeightMatrix one_weight_odd(const LatinSquare& L, std::optional<CellTriple> anchor = std::nullopt) {
    const int n = L.order();
    if (n % 2 == 0) throw Error(ErrorCode::EvenOrder, "order " + std::to_string(n) + " is even");
    const auto a = anchor.value_or(L.triple(0, 0));
    return linear_combine(1, uniform_weight(L), -(n - 1) / 2, two_weight(L, a));
}

namespace detail {

struct NearOneWeight {
    GroupElement row, col, symbol;
};

inline NearOneWeight missing_of_near_one_weight(const AbelianGroup& G, const WeightMatrix& W) {
    const auto L = cayley_table(G);
    const auto cls = classify(L, W, 1);
    if (!cls.is_partial() || cls.length != L.order() - 1)
        throw Error(ErrorCode::NotANearOneWeight);
    return {{cls.missingRows.front()}, {cls.missingCols.front()}, {cls.missingSymbols.front()}};
}

} // namespace detail

/// A near 1-weight missing row r, column c and symbol s is maximal iff
/// r + c != s. Only near 1-weights on Cayley tables are accepted; no general
/// domination order is implemented.
inline bool is_maximal_near_one_weight(const AbelianGroup& G, const WeightMatrix& W) {
    const auto m = detail::missing_of_near_one_weight(G, W);
    return G.add(m.row, m.col) != m.symbol;
}

/// Adds 1 at the missing cell (r, c) when r + c = s; nullopt means the weight
/// is maximal and cannot be extended.
inline std::optional<WeightMatrix> extend_near_one_weight(const AbelianGroup& G, const WeightMatrix& W) {
    const auto m = detail::missing_of_near_one_weight(G, W);
    if (G.add(m.row, m.col) != m.symbol) return std::nullopt;
    WeightMatrix out = W;
    out.at(m.row.index, m.col.index) = checked::add(out.at(m.row.index, m.col.index), 1);
    return out;
}

} // namespace kweights
