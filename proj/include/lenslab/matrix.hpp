#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace lenslab {

// square integer matrix, fixed after construction
class IntMatrix {
public:
    explicit IntMatrix(std::vector<std::vector<Int>> rows) : e_(std::move(rows)) {
        n_ = e_.size();
        if (n_ == 0) throw invalid_params("matrix must have dimension >= 1");
        for (const auto& row : e_)
            if (row.size() != n_) throw invalid_params("matrix must be square");
        sym_ = true;
        for (std::size_t i = 0; i + 1 < n_ && sym_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (e_[i][j] != e_[j][i]) { sym_ = false; break; }
    }

    std::size_t size() const { return n_; }
    const Int& at(std::size_t i, std::size_t j) const { return e_[i][j]; }
    bool symmetric() const { return sym_; }

private:
    std::vector<std::vector<Int>> e_;
    std::size_t n_;
    bool sym_;
};

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<std::vector<Rational>>;
using IntVector = std::vector<Int>;

// Bareiss fraction-free elimination with row swaps; every division is exact
inline Int det(const IntMatrix& M) {
    const std::size_t n = M.size();
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = M.at(i, j);

    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// exact Gauss-Jordan over rationals
inline RatMatrix inverse(const IntMatrix& M) {
    const std::size_t n = M.size();
    RatMatrix a(n, RatVector(n)), inv(n, RatVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(M.at(i, j));
        inv[i][i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) throw singular_matrix("matrix has no inverse");
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        Rational p = a[c][c];
        for (std::size_t j = 0; j < n; ++j) { a[c][j] /= p; inv[c][j] /= p; }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

// leading principal minors via fraction-free elimination without row swaps;
// the k-th minor must have sign (-1)^k, and a zero pivot already refutes
// definiteness, so no swap is ever needed before the answer is known
inline bool is_negative_definite(const IntMatrix& M) {
    if (!M.symmetric()) throw not_symmetric("definiteness needs a symmetric matrix");
    const std::size_t n = M.size();
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = M.at(i, j);

    Int prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        const Int& minor_k = a[k][k];
        if (k % 2 == 0 ? minor_k >= 0 : minor_k <= 0) return false;
        if (k + 1 == n) break;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * minor_k - a[i][k] * a[k][j]) / prev;
        prev = minor_k;
    }
    return true;
}

inline bool is_integral_vector(const RatVector& v) {
    for (const auto& x : v)
        if (x.get_den() != 1) return false;
    return true;
}

inline RatVector mat_vec(const RatMatrix& A, const std::vector<long>& w) {
    const std::size_t n = A.size();
    if (w.size() != n) throw invalid_params("vector length does not match matrix");
    RatVector out(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (w[j] != 0) out[i] += A[i][j] * w[j];
    return out;
}

}
