#pragma once

// q-block patterns: a square of order qm split into aligned q x q latin
// blocks whose symbol sets follow a base square of order m.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "kweights/error.hpp"
#include "kweights/latin.hpp"

namespace kweights {

struct BlockStructure {
    int baseOrder = 0;
    int blockSize = 0;
    LatinSquare pattern;
    /// symbolSets[s] is the sorted set of big-square symbols used by every
    /// block whose pattern symbol is s.
    std::vector<std::vector<int>> symbolSets;
};

/// L'(x, y) = q * base(x / q, y / q) + (x + y) mod q.
inline std::pair<LatinSquare, BlockStructure> step_type(const LatinSquare& base, int q) {
    if (q < 1) throw Error(ErrorCode::QDoesNotDivideOrder, "block size must be >= 1");
    const int m = base.order();
    const std::int64_t n64 = checked::mul(m, q);
    if (n64 > 4096) throw Error(ErrorCode::IntegerOverflow, "step-type order too large");
    const int n = static_cast<int>(n64);
    std::vector<int> grid(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            grid[static_cast<std::size_t>(x * n + y)] = q * base.at(x / q, y / q) + (x + y) % q;
    std::vector<std::vector<int>> sets(static_cast<std::size_t>(m));
    for (int s = 0; s < m; ++s)
        for (int t = 0; t < q; ++t) sets[static_cast<std::size_t>(s)].push_back(q * s + t);
    return {LatinSquare::from_flat(n, std::move(grid)), BlockStructure{m, q, base, std::move(sets)}};
}

namespace detail {

inline std::vector<int> block_symbols(const LatinSquare& L, int q, int bi, int bj) {
    std::vector<int> syms;
    for (int x = bi * q; x < (bi + 1) * q; ++x)
        for (int y = bj * q; y < (bj + 1) * q; ++y) syms.push_back(L.at(x, y));
    std::sort(syms.begin(), syms.end());
    syms.erase(std::unique(syms.begin(), syms.end()), syms.end());
    return syms;
}

} // namespace detail

/// Aligned contiguous blocks only; no row/column permutation is searched.
/// Pattern symbols are numbered by the smallest member of their symbol set.
inline std::optional<BlockStructure> detect_block_pattern(const LatinSquare& L, int q) {
    const int n = L.order();
    if (q < 1 || n % q != 0)
        throw Error(ErrorCode::QDoesNotDivideOrder, std::to_string(q) + " does not divide " + std::to_string(n));
    const int m = n / q;
    // Rows and columns of L have no repeats, so a block holding exactly q
    // distinct symbols is itself a latin square on them.
    std::vector<std::vector<int>> blockSets(static_cast<std::size_t>(m * m));
    std::map<std::vector<int>, int> ids;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            auto syms = detail::block_symbols(L, q, i, j);
            if (static_cast<int>(syms.size()) != q) return std::nullopt;
            ids.emplace(syms, 0);
            blockSets[static_cast<std::size_t>(i * m + j)] = std::move(syms);
        }
    if (static_cast<int>(ids.size()) != m) return std::nullopt;

    std::vector<std::vector<int>> sets;
    for (auto& [set, id] : ids) sets.push_back(set);
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    for (std::size_t s = 0; s < sets.size(); ++s) {
        ids[sets[s]] = static_cast<int>(s);
        for (int v : sets[s]) {
            if (covered[static_cast<std::size_t>(v)]) return std::nullopt;
            covered[static_cast<std::size_t>(v)] = 1;
        }
    }

    std::vector<int> grid(static_cast<std::size_t>(m * m));
    for (std::size_t b = 0; b < blockSets.size(); ++b) grid[b] = ids[blockSets[b]];
    try {
        auto pattern = LatinSquare::from_flat(m, std::move(grid));
        return BlockStructure{m, q, std::move(pattern), std::move(sets)};
    } catch (const Error&) {
        return std::nullopt;
    }
}

/// psi(i, j) = sum of W over block (i, j). If W is a k-weight of L' then psi
/// is a qk-weight of the pattern square.
inline WeightMatrix block_projection(const LatinSquare& L, const BlockStructure& bs, const WeightMatrix& W) {
    require_same_order(L, W);
    const int q = bs.blockSize;
    const int m = bs.baseOrder;
    if (q < 1 || m != bs.pattern.order() || static_cast<std::int64_t>(q) * m != L.order() ||
        static_cast<int>(bs.symbolSets.size()) != m)
        throw Error(ErrorCode::InconsistentBlockStructure, "dimensions disagree");
    WeightMatrix psi(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const auto& allowed = bs.symbolSets[static_cast<std::size_t>(bs.pattern.at(i, j))];
            std::int64_t acc = 0;
            for (int x = i * q; x < (i + 1) * q; ++x)
                for (int y = j * q; y < (j + 1) * q; ++y) {
                    if (!std::binary_search(allowed.begin(), allowed.end(), L.at(x, y)))
                        throw Error(ErrorCode::InconsistentBlockStructure,
                                    "cell (" + std::to_string(x) + "," + std::to_string(y) + ") outside its block's symbol set");
                    acc = checked::add(acc, W.at(x, y));
                }
            psi.at(i, j) = acc;
        }
    return psi;
}

} // namespace kweights
