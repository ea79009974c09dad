#pragma once

// Latin squares, integer weights on their cells, and the row/column/symbol
// sum machinery every other header builds on.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "kweights/error.hpp"

namespace kweights {

/// A cell viewed as the triple (row, column, symbol).
struct CellTriple {
    int row = 0;
    int col = 0;
    int symbol = 0;

    friend bool operator==(const CellTriple&, const CellTriple&) = default;
};

/// A validated latin square on the symbols 0..n-1, stored row-major.
class LatinSquare {
public:
    /// Validates a row-major grid; see validate_grid for the error order.
    static LatinSquare from_flat(int order, std::vector<int> grid);

    int order() const noexcept { return order_; }
    int at(int row, int col) const { return grid_[static_cast<std::size_t>(row * order_ + col)]; }
    std::span<const int> row(int r) const {
        return {grid_.data() + static_cast<std::size_t>(r * order_), static_cast<std::size_t>(order_)};
    }
    const std::vector<int>& flat() const noexcept { return grid_; }

    CellTriple triple(int row, int col) const { return {row, col, at(row, col)}; }
    bool contains(const CellTriple& t) const {
        return t.row >= 0 && t.row < order_ && t.col >= 0 && t.col < order_ && at(t.row, t.col) == t.symbol;
    }

    std::vector<std::vector<int>> rows() const {
        std::vector<std::vector<int>> out(static_cast<std::size_t>(order_));
        for (int r = 0; r < order_; ++r) out[static_cast<std::size_t>(r)].assign(row(r).begin(), row(r).end());
        return out;
    }

    friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

private:
    LatinSquare(int order, std::vector<int> grid) : order_(order), grid_(std::move(grid)) {}

    int order_;
    std::vector<int> grid_;
};

namespace detail {

inline void check_flat(int n, const std::vector<int>& grid) {
    if (n < 1 || grid.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw Error(ErrorCode::NotSquare);
    const auto at = [&](int r, int c) { return grid[static_cast<std::size_t>(r * n + c)]; };
    // Range errors take priority so that repeat checks only see valid symbols.
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (at(r, c) < 0 || at(r, c) >= n)
                throw Error(ErrorCode::SymbolOutOfRange, "(" + std::to_string(r) + "," + std::to_string(c) + ")");
    std::vector<char> seen(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int c = 0; c < n; ++c) {
            auto& s = seen[static_cast<std::size_t>(at(r, c))];
            if (s) throw Error(ErrorCode::RepeatInRow, "(" + std::to_string(r) + "," + std::to_string(at(r, c)) + ")");
            s = 1;
        }
    }
    for (int c = 0; c < n; ++c) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int r = 0; r < n; ++r) {
            auto& s = seen[static_cast<std::size_t>(at(r, c))];
            if (s)
                throw Error(ErrorCode::RepeatInColumn, "(" + std::to_string(c) + "," + std::to_string(at(r, c)) + ")");
            s = 1;
        }
    }
}

} // namespace detail

inline LatinSquare LatinSquare::from_flat(int order, std::vector<int> grid) {
    detail::check_flat(order, grid);
    return LatinSquare(order, std::move(grid));
}

/// Checks shape, symbol range, then rows, then columns, reporting the first
/// offence found in row-major scan order.
inline LatinSquare validate_grid(const std::vector<std::vector<int>>& raw) {
    const auto n = raw.size();
    if (n == 0) throw Error(ErrorCode::NotSquare, "empty grid");
    std::vector<int> flat;
    flat.reserve(n * n);
    for (const auto& r : raw) {
        if (r.size() != n) throw Error(ErrorCode::NotSquare);
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return LatinSquare::from_flat(static_cast<int>(n), std::move(flat));
}

/// Integer weight on the cells of a square, indexed by (row, col).
class WeightMatrix {
public:
    WeightMatrix() = default;
    explicit WeightMatrix(int order) : order_(order), entries_(static_cast<std::size_t>(order * order), 0) {
        if (order < 1) throw Error(ErrorCode::NotSquare);
    }

    static WeightMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
        const auto n = static_cast<int>(rows.size());
        WeightMatrix w(n);
        for (int r = 0; r < n; ++r) {
            if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != n) throw Error(ErrorCode::NotSquare);
            for (int c = 0; c < n; ++c) w.at(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        }
        return w;
    }

    /// 0/1 matrix with ones on the listed (row, col) cells.
    static WeightMatrix indicator(int order, const std::vector<std::pair<int, int>>& cells) {
        WeightMatrix w(order);
        for (auto [r, c] : cells) w.at(r, c) = 1;
        return w;
    }

    int order() const noexcept { return order_; }
    std::int64_t at(int r, int c) const { return entries_[static_cast<std::size_t>(r * order_ + c)]; }
    std::int64_t& at(int r, int c) { return entries_[static_cast<std::size_t>(r * order_ + c)]; }
    const std::vector<std::int64_t>& flat() const noexcept { return entries_; }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](std::int64_t v) { return v == 0; });
    }

    friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

private:
    int order_ = 0;
    std::vector<std::int64_t> entries_;
};

struct SumProfile {
    std::vector<std::int64_t> rowSums;
    std::vector<std::int64_t> colSums;
    std::vector<std::int64_t> symbolSums;
};

inline void require_same_order(const LatinSquare& L, const WeightMatrix& W) {
    if (L.order() != W.order())
        throw Error(ErrorCode::DimensionMismatch,
                    "square order " + std::to_string(L.order()) + ", weight order " + std::to_string(W.order()));
}

inline SumProfile sum_profile(const LatinSquare& L, const WeightMatrix& W) {
    require_same_order(L, W);
    const int n = L.order();
    SumProfile p{std::vector<std::int64_t>(static_cast<std::size_t>(n)),
                 std::vector<std::int64_t>(static_cast<std::size_t>(n)),
                 std::vector<std::int64_t>(static_cast<std::size_t>(n))};
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const auto w = W.at(r, c);
            auto& rs = p.rowSums[static_cast<std::size_t>(r)];
            auto& cs = p.colSums[static_cast<std::size_t>(c)];
            auto& ss = p.symbolSums[static_cast<std::size_t>(L.at(r, c))];
            rs = checked::add(rs, w);
            cs = checked::add(cs, w);
            ss = checked::add(ss, w);
        }
    return p;
}

enum class WeightKind { Exact, Partial, Unclassified };

/// Outcome of classify. For Partial, `length` is t and the missing sets are
/// sorted ascending; for Exact, length = n and the sets are empty.
struct PartialWeightClass {
    WeightKind kind = WeightKind::Unclassified;
    std::int64_t k = 0;
    int length = 0;
    std::vector<int> missingRows;
    std::vector<int> missingCols;
    std::vector<int> missingSymbols;

    bool is_exact() const noexcept { return kind == WeightKind::Exact; }
    bool is_partial() const noexcept { return kind == WeightKind::Partial; }
    bool is_exact_or_partial() const noexcept { return kind != WeightKind::Unclassified; }
};

inline PartialWeightClass classify(const LatinSquare& L, const WeightMatrix& W, std::int64_t k) {
    require_same_order(L, W);
    if (k == 0) throw Error(ErrorCode::ZeroK);
    const auto p = sum_profile(L, W);
    const int n = L.order();

    PartialWeightClass out;
    out.k = k;
    int hits[3] = {0, 0, 0};
    std::vector<int>* missing[3] = {&out.missingRows, &out.missingCols, &out.missingSymbols};
    const std::vector<std::int64_t>* sums[3] = {&p.rowSums, &p.colSums, &p.symbolSums};
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < n; ++i) {
            const auto s = (*sums[a])[static_cast<std::size_t>(i)];
            if (s == k)
                ++hits[a];
            else if (s == 0)
                missing[a]->push_back(i);
            else
                return PartialWeightClass{WeightKind::Unclassified, k, 0, {}, {}, {}};
        }
    if (hits[0] != hits[1] || hits[1] != hits[2]) return PartialWeightClass{WeightKind::Unclassified, k, 0, {}, {}, {}};
    out.length = hits[0];
    out.kind = out.length == n ? WeightKind::Exact : WeightKind::Partial;
    return out;
}

/// Resumable row-major lexicographic enumerator of all latin squares of
/// order 1..5. Each call to next() yields the following square.
class SquareCursor {
public:
    static constexpr int kMaxOrder = 5;

    explicit SquareCursor(int n) : n_(n) {
        if (n < 1 || n > kMaxOrder)
            throw Error(ErrorCode::OrderTooLarge, "enumeration supports orders 1.." + std::to_string(kMaxOrder));
        grid_.assign(static_cast<std::size_t>(n * n), -1);
        rowUsed_.assign(static_cast<std::size_t>(n), 0);
        colUsed_.assign(static_cast<std::size_t>(n), 0);
    }

    std::optional<LatinSquare> next() {
        if (done_) return std::nullopt;
        const int cells = n_ * n_;
        int p = started_ ? cells - 1 : 0;
        started_ = true;
        while (p >= 0) {
            const int r = p / n_;
            const int c = p % n_;
            auto& v = grid_[static_cast<std::size_t>(p)];
            if (v >= 0) toggle(r, c, v);
            int nv = v + 1;
            while (nv < n_ && ((rowUsed_[static_cast<std::size_t>(r)] | colUsed_[static_cast<std::size_t>(c)]) >> nv & 1u))
                ++nv;
            if (nv < n_) {
                v = nv;
                toggle(r, c, v);
                if (p == cells - 1) return LatinSquare::from_flat(n_, grid_);
                ++p;
            } else {
                v = -1;
                --p;
            }
        }
        done_ = true;
        return std::nullopt;
    }

private:
    void toggle(int r, int c, int v) {
        rowUsed_[static_cast<std::size_t>(r)] ^= 1u << v;
        colUsed_[static_cast<std::size_t>(c)] ^= 1u << v;
    }

    int n_;
    bool started_ = false;
    bool done_ = false;
    std::vector<int> grid_;
    std::vector<unsigned> rowUsed_;
    std::vector<unsigned> colUsed_;
};

inline SquareCursor enumerate_squares(int n) { return SquareCursor(n); }

template <class Fn>
void for_each_square(int n, Fn&& fn) {
    auto cursor = enumerate_squares(n);
    while (auto sq = cursor.next()) fn(*sq);
}

/// Deterministic pseudo-random latin square built by cell-by-cell
/// backtracking over per-cell shuffled symbol orders. The output is NOT
/// uniformly distributed over latin squares of order n.
inline LatinSquare random_square(int n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorCode::NotSquare);
    std::mt19937_64 rng(seed);
    const auto cells = static_cast<std::size_t>(n * n);
    std::vector<std::vector<int>> order(cells);
    std::vector<std::size_t> cursor(cells, 0);
    std::vector<int> grid(cells, -1);
    std::vector<std::vector<char>> rowUsed(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n)));
    auto colUsed = rowUsed;

    auto shuffled = [&] {
        std::vector<int> s(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = i;
        // Fisher-Yates with raw engine output so the result does not depend
        // on the standard library's distribution implementation.
        for (std::size_t i = s.size(); i > 1; --i) std::swap(s[i - 1], s[rng() % i]);
        return s;
    };

    std::size_t p = 0;
    order[0] = shuffled();
    while (p < cells) {
        const auto r = p / static_cast<std::size_t>(n);
        const auto c = p % static_cast<std::size_t>(n);
        if (grid[p] >= 0) {
            rowUsed[r][static_cast<std::size_t>(grid[p])] = 0;
            colUsed[c][static_cast<std::size_t>(grid[p])] = 0;
            grid[p] = -1;
        }
        bool placed = false;
        while (cursor[p] < order[p].size()) {
            const int s = order[p][cursor[p]++];
            if (!rowUsed[r][static_cast<std::size_t>(s)] && !colUsed[c][static_cast<std::size_t>(s)]) {
                grid[p] = s;
                rowUsed[r][static_cast<std::size_t>(s)] = 1;
                colUsed[c][static_cast<std::size_t>(s)] = 1;
                placed = true;
                break;
            }
        }
        if (placed) {
            ++p;
            if (p < cells) {
                order[p] = shuffled();
                cursor[p] = 0;
            }
        } else {
            // Latin rectangles always extend, so p never underflows.
            --p;
        }
    }
    return LatinSquare::from_flat(n, std::move(grid));
}

} // namespace kweights
