#pragma once

// Whole-group consistency checks tying the search, feasibility and weight
// modules together on Abelian Cayley tables.

#include <cstdint>
#include <optional>

#include "kweights/feasibility.hpp"
#include "kweights/groups.hpp"
#include "kweights/plex_search.hpp"
#include "kweights/weights.hpp"

namespace kweights {

inline constexpr int kMaxDichotomyOrder = 8;

struct DichotomyReport {
    std::uint64_t transversals = 0;
    std::uint64_t nearTransversals = 0;
    std::uint64_t maximalNearTransversals = 0;
    bool oneWeightFeasible = false;
    bool uniqueInvolution = false;
    /// is_maximal_near_one_weight agreed on every near transversal.
    bool maximalityConstant = true;
    std::optional<bool> maximality;

    /// Exactly one of {transversal, maximal near transversal}; exactly one of
    /// {1-weight, maximal near 1-weight}; maximality is a property of the
    /// group alone and coincides with having a unique involution.
    bool holds() const {
        const bool maximalExists = maximalNearTransversals > 0;
        return ((transversals > 0) != maximalExists) && (oneWeightFeasible != maximalExists) && maximalityConstant &&
               maximality.value_or(false) == uniqueInvolution;
    }
};

inline DichotomyReport check_dichotomy(const AbelianGroup& G) {
    if (G.order() > kMaxDichotomyOrder)
        throw Error(ErrorCode::OrderTooLarge, "dichotomy check is capped at order " + std::to_string(kMaxDichotomyOrder));
    const auto L = cayley_table(G);
    DichotomyReport rep;
    rep.transversals = count_transversals(L);
    rep.oneWeightFeasible = decide_k_weight(L, 1).feasible;
    rep.uniqueInvolution = unique_involution(G).has_value();
    for_each_near_transversal(L, [&](const NearTransversal& nt) {
        ++rep.nearTransversals;
        if (nt.maximal(L)) ++rep.maximalNearTransversals;
        const bool m = is_maximal_near_one_weight(G, WeightMatrix::indicator(L.order(), nt.cells));
        if (rep.maximality && *rep.maximality != m) rep.maximalityConstant = false;
        rep.maximality = m;
    });
    return rep;
}

} // namespace kweights
