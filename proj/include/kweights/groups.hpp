#pragma once

// Finite Abelian groups given as direct sums of cyclic factors, with
// elements encoded as mixed-radix integers (first factor most significant).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kweights/error.hpp"
#include "kweights/latin.hpp"

namespace kweights {

struct GroupElement {
    int index = 0;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

class AbelianGroup {
public:
    explicit AbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
        if (factors_.empty()) throw Error(ErrorCode::ParseError, "group needs at least one factor");
        std::int64_t ord = 1;
        for (int m : factors_) {
            if (m < 1) throw Error(ErrorCode::ParseError, "factor must be >= 1");
            ord = checked::mul(ord, m);
            if (ord > (1 << 20)) throw Error(ErrorCode::IntegerOverflow, "group order too large");
        }
        order_ = static_cast<int>(ord);
    }

    static AbelianGroup cyclic(int n) { return AbelianGroup({n}); }

    const std::vector<int>& factors() const noexcept { return factors_; }
    int order() const noexcept { return order_; }
    GroupElement identity() const noexcept { return {0}; }

    std::vector<int> decode(GroupElement g) const {
        check(g);
        std::vector<int> digits(factors_.size());
        int idx = g.index;
        for (std::size_t i = factors_.size(); i-- > 0;) {
            digits[i] = idx % factors_[i];
            idx /= factors_[i];
        }
        return digits;
    }

    GroupElement encode(const std::vector<int>& digits) const {
        if (digits.size() != factors_.size()) throw Error(ErrorCode::ElementOutOfRange, "wrong tuple length");
        int idx = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (digits[i] < 0 || digits[i] >= factors_[i]) throw Error(ErrorCode::ElementOutOfRange);
            idx = idx * factors_[i] + digits[i];
        }
        return {idx};
    }

    GroupElement element(int index) const {
        GroupElement g{index};
        check(g);
        return g;
    }

    void check(GroupElement g) const {
        if (g.index < 0 || g.index >= order_)
            throw Error(ErrorCode::ElementOutOfRange, std::to_string(g.index) + " not below " + std::to_string(order_));
    }

    GroupElement add(GroupElement a, GroupElement b) const {
        check(a);
        check(b);
        // Digit-wise add with per-factor wraparound, least significant first.
        int ia = a.index, ib = b.index, out = 0, place = 1;
        for (std::size_t i = factors_.size(); i-- > 0;) {
            const int m = factors_[i];
            out += ((ia % m + ib % m) % m) * place;
            ia /= m;
            ib /= m;
            place *= m;
        }
        return {out};
    }

    GroupElement negate(GroupElement a) const {
        check(a);
        int ia = a.index, out = 0, place = 1;
        for (std::size_t i = factors_.size(); i-- > 0;) {
            const int m = factors_[i];
            out += ((m - ia % m) % m) * place;
            ia /= m;
            place *= m;
        }
        return {out};
    }

    GroupElement sub(GroupElement a, GroupElement b) const { return add(a, negate(b)); }

    /// scalar * a by repeated doubling; negative scalars act through -a.
    GroupElement scale(std::int64_t scalar, GroupElement a) const {
        check(a);
        if (scalar < 0) {
            a = negate(a);
            // -(INT64_MIN) overflows; reduce modulo the order first.
            scalar = -(scalar % order_);
        }
        GroupElement acc = identity();
        while (scalar > 0) {
            if (scalar & 1) acc = add(acc, a);
            a = add(a, a);
            scalar >>= 1;
        }
        return acc;
    }

    bool operator==(const AbelianGroup& o) const { return factors_ == o.factors_; }

    std::string to_string() const {
        std::string s = factors_.size() == 1 ? "cyclic:" : "sum:";
        for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? "," : "") + std::to_string(factors_[i]);
        return s;
    }

private:
    std::vector<int> factors_;
    int order_ = 1;
};

/// Parses "cyclic:N" or "sum:a,b,..." (factors >= 1, strict).
inline AbelianGroup parse_group_spec(const std::string& spec) {
    auto parse_int = [&](const std::string& tok) {
        if (tok.empty() || tok.size() > 9 || tok.find_first_not_of("0123456789") != std::string::npos)
            throw Error(ErrorCode::ParseError, "bad group factor '" + tok + "' in '" + spec + "'");
        const int v = std::stoi(tok);
        if (v < 1) throw Error(ErrorCode::ParseError, "group factors must be >= 1 in '" + spec + "'");
        return v;
    };
    if (spec.rfind("cyclic:", 0) == 0) return AbelianGroup::cyclic(parse_int(spec.substr(7)));
    if (spec.rfind("sum:", 0) == 0) {
        std::vector<int> factors;
        std::string rest = spec.substr(4);
        std::size_t start = 0;
        while (true) {
            const auto comma = rest.find(',', start);
            factors.push_back(parse_int(rest.substr(start, comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return AbelianGroup(std::move(factors));
    }
    throw Error(ErrorCode::ParseError, "group spec must be cyclic:N or sum:a,b,... (got '" + spec + "')");
}

/// Sum of every element of G. Equal to the unique involution when there is
/// exactly one, and to the identity otherwise.
inline GroupElement element_sum(const AbelianGroup& G) {
    GroupElement acc = G.identity();
    for (int i = 0; i < G.order(); ++i) acc = G.add(acc, GroupElement{i});
    return acc;
}

/// Direct scan for elements u != 0 with u + u = 0.
inline std::optional<GroupElement> unique_involution(const AbelianGroup& G) {
    std::optional<GroupElement> found;
    for (int i = 1; i < G.order(); ++i) {
        const GroupElement g{i};
        if (G.add(g, g) == G.identity()) {
            if (found) return std::nullopt;
            found = g;
        }
    }
    return found;
}

inline LatinSquare cayley_table(const AbelianGroup& G) {
    const int n = G.order();
    std::vector<int> grid(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) grid[static_cast<std::size_t>(x * n + y)] = G.add({x}, {y}).index;
    return LatinSquare::from_flat(n, std::move(grid));
}

/// Evaluates sum_z S_z z - sum_x R_x x - sum_y C_y y for the sum profile of W
/// on the Cayley table of G. Every cell (x, y, z) of the table has
/// z - x - y = 0, so the result is the identity for every W.
inline GroupElement group_sum_identity(const AbelianGroup& G, const WeightMatrix& W) {
    const auto L = cayley_table(G);
    const auto p = sum_profile(L, W);
    GroupElement acc = G.identity();
    for (int g = 0; g < G.order(); ++g) {
        const auto i = static_cast<std::size_t>(g);
        acc = G.add(acc, G.scale(p.symbolSums[i], {g}));
        acc = G.sub(acc, G.scale(p.rowSums[i], {g}));
        acc = G.sub(acc, G.scale(p.colSums[i], {g}));
    }
    return acc;
}

struct Lemma22Result {
    GroupElement delta;
    GroupElement expected;
    bool matches = false;
};

/// For a partial k-weight with missing rows R, columns C and symbols S
/// (summing to r, c, s in G): delta = k(s - r - c), and expected is the
/// element sum when k is odd and G has a unique involution, else 0.
inline Lemma22Result lemma22_check(const AbelianGroup& G, const WeightMatrix& W, std::int64_t k) {
    const auto cls = classify(cayley_table(G), W, k);
    if (!cls.is_exact_or_partial()) throw Error(ErrorCode::NotAPartialWeight);
    auto group_sum = [&](const std::vector<int>& idx) {
        GroupElement acc = G.identity();
        for (int i : idx) acc = G.add(acc, {i});
        return acc;
    };
    const auto r = group_sum(cls.missingRows);
    const auto c = group_sum(cls.missingCols);
    const auto s = group_sum(cls.missingSymbols);
    Lemma22Result out;
    out.delta = G.scale(k, G.sub(G.sub(s, r), c));
    out.expected = (k % 2 != 0 && unique_involution(G)) ? element_sum(G) : G.identity();
    out.matches = out.delta == out.expected;
    return out;
}

/// True iff i(g - h) != 0 in G. A weight whose row and column sums are all 1
/// and whose symbol sums are i at g, |G| - i at h and 0 elsewhere forces
/// i(g - h) = 0, so `true` means that profile is impossible. This answers the
/// algebraic obstruction only; it never searches for a realizing weight.
inline bool profile_excluded(const AbelianGroup& G, GroupElement g, GroupElement h, std::int64_t i) {
    G.check(g);
    G.check(h);
    if (i <= 0 || i >= G.order())
        throw Error(ErrorCode::IOutOfRange, "i must satisfy 0 < i < " + std::to_string(G.order()));
    return G.scale(i, G.sub(g, h)) != G.identity();
}

/// All Abelian groups of order n up to isomorphism, as invariant factor
/// lists d_1 | d_2 | ... | d_t with d_1 > 1 (or {1} for the trivial group).
inline std::vector<AbelianGroup> abelian_groups_of_order(int n) {
    std::vector<AbelianGroup> out;
    if (n == 1) {
        out.emplace_back(std::vector<int>{1});
        return out;
    }
    std::vector<int> chain;
    auto rec = [&](auto&& self, int remaining, int prev) -> void {
        if (remaining == 1) {
            out.emplace_back(chain);
            return;
        }
        for (int d = std::max(2, prev); d <= remaining; d += prev)
            if (d % prev == 0 && remaining % d == 0) {
                chain.push_back(d);
                self(self, remaining / d, d);
                chain.pop_back();
            }
    };
    rec(rec, n, 1);
    return out;
}

} // namespace kweights
