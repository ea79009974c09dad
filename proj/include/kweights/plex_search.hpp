#pragma once

// Backtracking search and exact counting for k-plexes, transversals and
// near transversals.

#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "kweights/error.hpp"
#include "kweights/latin.hpp"

namespace kweights {

/// A 0/1 selection of cells meeting every row, column and symbol k times.
struct PlexSelection {
    int order = 0;
    int k = 0;
    WeightMatrix chosen;
};

/// Counts backtracking nodes, so outcomes do not depend on machine speed.
struct SearchBudget {
    std::uint64_t maxNodes = 100'000'000;
};

enum class SearchOutcome { Found, Exhausted, BudgetExceeded };

inline const char* to_string(SearchOutcome o) {
    switch (o) {
    case SearchOutcome::Found: return "found";
    case SearchOutcome::Exhausted: return "exhausted";
    case SearchOutcome::BudgetExceeded: return "budget";
    }
    return "?";
}

struct PlexSearchResult {
    SearchOutcome outcome = SearchOutcome::Exhausted;
    std::optional<PlexSelection> selection;
    std::uint64_t nodes = 0;
};

namespace detail {

class PlexSearcher {
public:
    PlexSearcher(const LatinSquare& L, int k, SearchBudget budget)
        : L_(L), n_(L.order()), k_(k), budget_(budget), rowCnt_(n_), colCnt_(n_), symCnt_(n_), symRem_(n_),
          chosen_(static_cast<std::size_t>(n_ * n_), 0) {
        for (int s : L.flat()) ++symRem_[static_cast<std::size_t>(s)];
    }

    PlexSearchResult run() {
        PlexSearchResult res;
        const bool found = dfs(0);
        res.nodes = nodes_;
        if (found) {
            res.outcome = SearchOutcome::Found;
            PlexSelection sel{n_, k_, WeightMatrix(n_)};
            for (int p = 0; p < n_ * n_; ++p) sel.chosen.at(p / n_, p % n_) = chosen_[static_cast<std::size_t>(p)];
            res.selection = std::move(sel);
        } else {
            res.outcome = overBudget_ ? SearchOutcome::BudgetExceeded : SearchOutcome::Exhausted;
        }
        return res;
    }

private:
    // Cells are visited row-major; at cell p the counters cover cells < p.
    bool dfs(int p) {
        if (++nodes_ > budget_.maxNodes) {
            overBudget_ = true;
            return false;
        }
        if (p == n_ * n_) return true;
        const int r = p / n_;
        const int c = p % n_;
        const auto s = static_cast<std::size_t>(L_.at(r, c));
        auto& rc = rowCnt_[static_cast<std::size_t>(r)];
        auto& cc = colCnt_[static_cast<std::size_t>(c)];
        auto& sc = symCnt_[s];
        // Cells after this one still available to each line.
        const int rowLeft = n_ - c - 1;
        const int colLeft = n_ - r - 1;
        const int symLeft = symRem_[s] - 1;

        --symRem_[s];
        bool found = false;
        if (rc + rowLeft >= k_ && cc + colLeft >= k_ && sc + symLeft >= k_) found = dfs(p + 1);
        if (!found && !overBudget_ && rc < k_ && cc < k_ && sc < k_ && rc + 1 + rowLeft >= k_ &&
            cc + 1 + colLeft >= k_ && sc + 1 + symLeft >= k_) {
            ++rc, ++cc, ++sc;
            chosen_[static_cast<std::size_t>(p)] = 1;
            found = dfs(p + 1);
            if (!found) {
                chosen_[static_cast<std::size_t>(p)] = 0;
                --rc, --cc, --sc;
            }
        }
        if (!found) ++symRem_[s];
        return found;
    }

    const LatinSquare& L_;
    int n_;
    int k_;
    SearchBudget budget_;
    std::vector<int> rowCnt_, colCnt_, symCnt_, symRem_;
    std::vector<std::int64_t> chosen_;
    std::uint64_t nodes_ = 0;
    bool overBudget_ = false;
};

} // namespace detail

/// Cell-by-cell search in row-major order, excluding before including.
/// Exhausted is a proof that no k-plex exists.
inline PlexSearchResult find_k_plex(const LatinSquare& L, int k, SearchBudget budget = {}) {
    if (k < 1 || k > L.order())
        throw Error(ErrorCode::KOutOfRange, "k must lie in 1.." + std::to_string(L.order()));
    return detail::PlexSearcher(L, k, budget).run();
}

inline constexpr int kMaxTransversalCountOrder = 9;
inline constexpr int kMaxNearCountOrder = 7;
inline constexpr int kMaxTwoSymbolOrder = 8;

namespace detail {

inline void check_cap(const LatinSquare& L, int cap) {
    if (L.order() > cap)
        throw Error(ErrorCode::OrderTooLarge, "order " + std::to_string(L.order()) + " exceeds cap " + std::to_string(cap));
}

inline std::uint64_t count_transversals_from(const LatinSquare& L, int row, unsigned colMask, unsigned symMask) {
    const int n = L.order();
    if (row == n) return 1;
    std::uint64_t total = 0;
    const auto r = L.row(row);
    for (int c = 0; c < n; ++c) {
        const unsigned s = 1u << r[static_cast<std::size_t>(c)];
        if ((colMask >> c & 1u) || (symMask & s)) continue;
        total += count_transversals_from(L, row + 1, colMask | 1u << c, symMask | s);
    }
    return total;
}

} // namespace detail

/// Depth-first over column permutations with symbol bitmasks.
inline std::uint64_t count_transversals(const LatinSquare& L) {
    detail::check_cap(L, kMaxTransversalCountOrder);
    return detail::count_transversals_from(L, 0, 0, 0);
}

/// A near transversal: cells in n - 1 distinct rows, columns and symbols.
/// It misses exactly one row, column and symbol.
struct NearTransversal {
    std::vector<std::pair<int, int>> cells;
    int missingRow = 0;
    int missingCol = 0;
    int missingSymbol = 0;

    /// Not contained in a transversal: the missing cell lacks the missing symbol.
    bool maximal(const LatinSquare& L) const { return L.at(missingRow, missingCol) != missingSymbol; }
};

/// Calls fn(const NearTransversal&) for every near transversal of L, grouped
/// by missing row (ascending) and then in lexicographic column order.
template <class Fn>
void for_each_near_transversal(const LatinSquare& L, Fn&& fn) {
    const int n = L.order();
    const unsigned full = (n >= 32) ? ~0u : (1u << n) - 1u;
    NearTransversal nt;
    for (int skip = 0; skip < n; ++skip) {
        nt.cells.clear();
        nt.missingRow = skip;
        auto rec = [&](auto&& self, int row, unsigned colMask, unsigned symMask) -> void {
            if (row == skip) return self(self, row + 1, colMask, symMask);
            if (row == n) {
                nt.missingCol = std::countr_zero(~colMask & full);
                nt.missingSymbol = std::countr_zero(~symMask & full);
                fn(static_cast<const NearTransversal&>(nt));
                return;
            }
            for (int c = 0; c < n; ++c) {
                const unsigned s = 1u << L.at(row, c);
                if ((colMask >> c & 1u) || (symMask & s)) continue;
                nt.cells.emplace_back(row, c);
                self(self, row + 1, colMask | 1u << c, symMask | s);
                nt.cells.pop_back();
            }
        };
        rec(rec, 0, 0u, 0u);
    }
}

inline std::uint64_t count_near_transversals(const LatinSquare& L, bool maximalOnly) {
    detail::check_cap(L, kMaxNearCountOrder);
    std::uint64_t count = 0;
    for_each_near_transversal(L, [&](const NearTransversal& nt) {
        if (!maximalOnly || nt.maximal(L)) ++count;
    });
    return count;
}

struct NearTransversalSearch {
    SearchOutcome outcome = SearchOutcome::Exhausted;
    std::optional<NearTransversal> selection;
};

/// Stops at the first near transversal found. Cayley tables of Abelian groups
/// always have one; on other squares the result is evidence only.
inline NearTransversalSearch find_near_transversal(const LatinSquare& L) {
    const int n = L.order();
    NearTransversal nt;
    std::vector<char> colUsed(static_cast<std::size_t>(n)), symUsed(static_cast<std::size_t>(n));
    for (int skip = n - 1; skip >= 0; --skip) {
        nt.cells.clear();
        auto rec = [&](auto&& self, int row) -> bool {
            if (row == skip) return self(self, row + 1);
            if (row == n) return true;
            for (int c = 0; c < n; ++c) {
                const auto s = static_cast<std::size_t>(L.at(row, c));
                if (colUsed[static_cast<std::size_t>(c)] || symUsed[s]) continue;
                colUsed[static_cast<std::size_t>(c)] = symUsed[s] = 1;
                nt.cells.emplace_back(row, c);
                if (self(self, row + 1)) return true;
                nt.cells.pop_back();
                colUsed[static_cast<std::size_t>(c)] = symUsed[s] = 0;
            }
            return false;
        };
        if (rec(rec, 0)) {
            nt.missingRow = skip;
            for (int i = 0; i < n; ++i) {
                if (!colUsed[static_cast<std::size_t>(i)]) nt.missingCol = i;
                if (!symUsed[static_cast<std::size_t>(i)]) nt.missingSymbol = i;
            }
            return {SearchOutcome::Found, std::move(nt)};
        }
    }
    return {SearchOutcome::Exhausted, std::nullopt};
}

struct SelectionSearch {
    SearchOutcome outcome = SearchOutcome::Exhausted;
    /// cells[r] = (r, column) of the selection, when found.
    std::vector<std::pair<int, int>> cells;
};

/// Looks for one cell per row and per column whose symbols take exactly two
/// distinct values.
inline SelectionSearch two_symbol_selection_search(const LatinSquare& L) {
    detail::check_cap(L, kMaxTwoSymbolOrder);
    const int n = L.order();
    SelectionSearch out;
    auto rec = [&](auto&& self, int row, unsigned colMask, unsigned symMask) -> bool {
        if (std::popcount(symMask) > 2) return false;
        if (row == n) return std::popcount(symMask) == 2;
        for (int c = 0; c < n; ++c) {
            if (colMask >> c & 1u) continue;
            out.cells.emplace_back(row, c);
            if (self(self, row + 1, colMask | 1u << c, symMask | 1u << L.at(row, c))) return true;
            out.cells.pop_back();
        }
        return false;
    };
    if (rec(rec, 0, 0u, 0u))
        out.outcome = SearchOutcome::Found;
    else
        out.cells.clear();
    return out;
}

/// Transversal and near-transversal counts with their residues. Reports only.
struct ParityReport {
    std::uint64_t transversalCount = 0;
    std::uint64_t transversalCountMod2 = 0;
    std::uint64_t nearTransversalCount = 0;
    std::uint64_t nearTransversalCountMod4 = 0;
};

inline ParityReport parity_report(const LatinSquare& L) {
    detail::check_cap(L, kMaxNearCountOrder);
    ParityReport r;
    r.transversalCount = count_transversals(L);
    r.transversalCountMod2 = r.transversalCount % 2;
    r.nearTransversalCount = count_near_transversals(L, false);
    r.nearTransversalCountMod4 = r.nearTransversalCount % 4;
    return r;
}

} // namespace kweights
