#pragma once

// Exact integer feasibility of "every row, column and symbol sums to k".
//
// The constraint matrix A (3n x n^2) is brought to column-style Hermite
// normal form H = A U with U unimodular. A x = b then reduces to forward
// substitution H y = b followed by x = U y. When the substitution fails the
// failing step yields a rational vector y with y^T A integral and y^T b not
// an integer, which certifies that no integral solution exists.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kweights/error.hpp"
#include "kweights/latin.hpp"
#include "kweights/weights.hpp"

namespace kweights {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntegerMatrix identity(std::size_t n) {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntegerMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.front().size() : 0;
        IntegerMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged matrix");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// col[dst] -= factor * col[src]
    void sub_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
        for (std::size_t i = 0; i < rows_; ++i)
            if (!(*this)(i, src).is_zero()) (*this)(i, dst) -= factor * (*this)(i, src);
    }
    void negate_col(std::size_t c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
    }

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
        if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch);
        IntegerMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const auto& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    std::vector<BigInt> apply(const std::vector<BigInt>& x) const {
        if (x.size() != cols_) throw Error(ErrorCode::DimensionMismatch);
        std::vector<BigInt> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!(*this)(i, j).is_zero() && !x[j].is_zero()) out[i] += (*this)(i, j) * x[j];
        return out;
    }

    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

/// Column for cell (x, y) (index x*n + y) has ones at rows x, n + y and
/// 2n + L(x, y).
inline IntegerMatrix incidence_matrix(const LatinSquare& L) {
    const auto n = static_cast<std::size_t>(L.order());
    IntegerMatrix A(3 * n, n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const auto col = x * n + y;
            A(x, col) = 1;
            A(n + y, col) = 1;
            A(2 * n + static_cast<std::size_t>(L.at(static_cast<int>(x), static_cast<int>(y))), col) = 1;
        }
    return A;
}

struct HermiteForm {
    IntegerMatrix H;
    IntegerMatrix U;
    /// (row, column) of each pivot; pivot columns are 0, 1, ..., rank-1 and
    /// their rows strictly increase.
    std::vector<std::pair<std::size_t, std::size_t>> pivots;

    std::size_t rank() const noexcept { return pivots.size(); }
};

/// Column-style Hermite normal form A U = H. Rows are processed top to
/// bottom; within a row the pivot is the column (at or right of the current
/// pivot position) holding the smallest nonzero absolute value, ties going to
/// the leftmost. Pivots end positive, entries left of a pivot in its row lie
/// in [0, pivot), and zero columns come last.
inline HermiteForm hermite_normal_form(const IntegerMatrix& A) {
    HermiteForm out{A, IntegerMatrix::identity(A.cols()), {}};
    auto& H = out.H;
    auto& U = out.U;
    const std::size_t rows = H.rows();
    const std::size_t cols = H.cols();
    std::size_t p = 0;
    for (std::size_t i = 0; i < rows && p < cols; ++i) {
        while (true) {
            std::size_t best = cols;
            for (std::size_t j = p; j < cols; ++j) {
                if (H(i, j).is_zero()) continue;
                if (best == cols || abs(H(i, j)) < abs(H(i, best))) best = j;
            }
            if (best == cols) break;
            H.swap_cols(p, best);
            U.swap_cols(p, best);
            bool clean = true;
            for (std::size_t j = p + 1; j < cols; ++j) {
                if (H(i, j).is_zero()) continue;
                const BigInt q = H(i, j) / H(i, p); // truncates; |remainder| < |pivot|
                H.sub_col_multiple(j, p, q);
                U.sub_col_multiple(j, p, q);
                if (!H(i, j).is_zero()) clean = false;
            }
            if (clean) break;
        }
        if (H(i, p).is_zero()) continue; // no pivot in this row
        if (H(i, p) < 0) {
            H.negate_col(p);
            U.negate_col(p);
        }
        const BigInt& pivot = H(i, p);
        for (std::size_t j = 0; j < p; ++j) {
            BigInt q = H(i, j) / pivot;
            if (H(i, j) - q * pivot < 0) --q; // floor division
            if (!q.is_zero()) {
                H.sub_col_multiple(j, p, q);
                U.sub_col_multiple(j, p, q);
            }
        }
        out.pivots.emplace_back(i, p);
        ++p;
    }
    return out;
}

inline std::string to_string(const Rational& q) { return q.str(); }

/// Either an integral solution x of A x = b, or a rational certificate y
/// with y^T A integral and y^T b not an integer.
struct DiophantineOutcome {
    bool feasible = false;
    std::vector<BigInt> solution;
    std::vector<Rational> certificate;
};

inline bool verify_solution(const IntegerMatrix& A, const std::vector<BigInt>& x, const std::vector<BigInt>& b) {
    return x.size() == A.cols() && b.size() == A.rows() && A.apply(x) == b;
}

inline bool verify_certificate(const IntegerMatrix& A, const std::vector<Rational>& y, const std::vector<BigInt>& b) {
    if (y.size() != A.rows() || b.size() != A.rows()) return false;
    for (std::size_t j = 0; j < A.cols(); ++j) {
        Rational acc = 0;
        for (std::size_t i = 0; i < A.rows(); ++i)
            if (!y[i].is_zero() && !A(i, j).is_zero()) acc += y[i] * Rational(A(i, j));
        if (denominator(acc) != 1) return false;
    }
    Rational yb = 0;
    for (std::size_t i = 0; i < A.rows(); ++i) yb += y[i] * Rational(b[i]);
    return denominator(yb) != 1;
}

namespace detail {

/// Solves z^T H_P = rhs^T over the first `count` pivots, where H_P is the
/// lower-triangular block of pivot rows and pivot columns.
inline std::vector<Rational> solve_left_triangular(const HermiteForm& hf, std::size_t count,
                                                   const std::vector<Rational>& rhs) {
    std::vector<Rational> z(count);
    for (std::size_t q = count; q-- > 0;) {
        Rational acc = rhs[q];
        for (std::size_t k = q + 1; k < count; ++k)
            if (!z[k].is_zero()) acc -= z[k] * Rational(hf.H(hf.pivots[k].first, q));
        z[q] = acc / Rational(hf.H(hf.pivots[q].first, q));
    }
    return z;
}

} // namespace detail

/// Solves A x = b given A's Hermite form (A U = H).
inline DiophantineOutcome solve_with_hermite(const HermiteForm& hf, const std::vector<BigInt>& b) {
    const auto& H = hf.H;
    if (b.size() != H.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
    std::vector<BigInt> y(H.cols());
    std::size_t next = 0; // pivots consumed so far
    for (std::size_t i = 0; i < H.rows(); ++i) {
        BigInt residual = b[i];
        for (std::size_t q = 0; q < next; ++q)
            if (!H(i, q).is_zero()) residual -= H(i, q) * y[q];
        const bool pivotRow = next < hf.pivots.size() && hf.pivots[next].first == i;
        if (pivotRow) {
            const auto& pivot = H(i, next);
            if (residual % pivot != 0) {
                // z^T H_P = e_p^T gives z^T H = e_p^T and z^T b = residual / pivot.
                std::vector<Rational> rhs(next + 1);
                rhs[next] = 1;
                const auto z = detail::solve_left_triangular(hf, next + 1, rhs);
                DiophantineOutcome out;
                out.certificate.assign(H.rows(), Rational(0));
                for (std::size_t k = 0; k <= next; ++k) out.certificate[hf.pivots[k].first] = z[k];
                return out;
            }
            y[next] = residual / pivot;
            ++next;
        } else if (!residual.is_zero()) {
            // Row i is a rational combination v of the earlier pivot rows but
            // b_i disagrees: w = e_i - v has w^T H = 0 and w^T b = residual.
            std::vector<Rational> rhs(next);
            for (std::size_t q = 0; q < next; ++q) rhs[q] = Rational(H(i, q));
            const auto v = detail::solve_left_triangular(hf, next, rhs);
            DiophantineOutcome out;
            out.certificate.assign(H.rows(), Rational(0));
            const Rational scale = Rational(1) / (Rational(2) * Rational(residual));
            out.certificate[i] = scale;
            for (std::size_t k = 0; k < next; ++k) out.certificate[hf.pivots[k].first] = -v[k] * scale;
            return out;
        }
    }
    DiophantineOutcome out;
    out.feasible = true;
    out.solution = hf.U.apply(y);
    return out;
}

inline DiophantineOutcome solve_diophantine(const IntegerMatrix& A, const std::vector<BigInt>& b) {
    if (b.size() != A.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
    return solve_with_hermite(hermite_normal_form(A), b);
}

/// Result of asking whether L has a k-weight.
struct WeightDecision {
    bool feasible = false;
    std::int64_t k = 0;
    std::optional<WeightMatrix> witness;
    /// Verifying certificate for the system with right-hand side k * 1.
    std::vector<Rational> certificate;
};

namespace detail {

inline std::int64_t to_int64(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw Error(ErrorCode::IntegerOverflow, "witness entry does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

[[noreturn]] inline void internal_failure(const std::string& what) {
    throw std::logic_error("feasibility self-check failed: " + what);
}

} // namespace detail

/// Decides whether L has a k-weight. k = 0 yields the zero witness; even k
/// is always feasible via a scaled 2-weight; odd k is feasible iff k = 1 is,
/// and W_1 + ((k - 1) / 2) W_2 turns a 1-weight into a k-weight. Every
/// witness and certificate is re-verified before being returned.
inline WeightDecision decide_k_weight(const LatinSquare& L, std::int64_t k) {
    const int n = L.order();
    WeightDecision out;
    out.k = k;
    if (k == 0) {
        out.feasible = true;
        out.witness = WeightMatrix(n);
        return out;
    }
    const auto W2 = two_weight(L, L.triple(0, 0));
    if (k % 2 == 0) {
        out.feasible = true;
        out.witness = linear_combine(k / 2, W2, 0, W2);
    } else {
        const auto A = incidence_matrix(L);
        const auto hf = hermite_normal_form(A);
        const auto ones = std::vector<BigInt>(A.rows(), BigInt(1));
        const auto one = solve_with_hermite(hf, ones);
        if (one.feasible) {
            if (!verify_solution(A, one.solution, ones)) detail::internal_failure("1-weight solution");
            WeightMatrix W1(n);
            for (int c = 0; c < n * n; ++c) W1.at(c / n, c % n) = detail::to_int64(one.solution[static_cast<std::size_t>(c)]);
            out.feasible = true;
            out.witness = linear_combine(1, W1, (k - 1) / 2, W2);
        } else {
            const auto rhs = std::vector<BigInt>(A.rows(), BigInt(k));
            auto direct = solve_with_hermite(hf, rhs);
            if (direct.feasible) detail::internal_failure("odd k feasible while k = 1 is not");
            if (!verify_certificate(A, direct.certificate, rhs)) detail::internal_failure("certificate");
            out.certificate = std::move(direct.certificate);
        }
    }
    if (out.feasible && !classify(L, *out.witness, k).is_exact()) detail::internal_failure("witness classification");
    return out;
}

enum class Spectrum { AllIntegers, EvensOnly };

/// A square has k-weights either for every integer k or for exactly the even k.
inline Spectrum weight_spectrum(const LatinSquare& L) {
    return decide_k_weight(L, 1).feasible ? Spectrum::AllIntegers : Spectrum::EvensOnly;
}

} // namespace kweights
