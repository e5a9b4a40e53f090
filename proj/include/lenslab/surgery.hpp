#pragma once

#include <cstdlib>
#include <tuple>
#include <utility>

#include "rational.hpp"

namespace lenslab {

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// returns (g, x, y) with a*x + b*y = g = gcd(a,b), g >= 0 for a,b >= 0
inline std::tuple<long, long, long> egcd(long a, long b) {
    if (b == 0) return {a, 1, 0};
    auto [g, x, y] = egcd(b, a % b);
    return {g, y, x - (a / b) * y};
}

// a knot in L(p,1) whose homology class is k times a generator; k = 0 is
// the null-homologous case with its own homology bookkeeping below
struct SurgeryProblem {
    long p, k, m;

    SurgeryProblem(long p_, long k_, long m_) : p(p_), k(k_), m(m_) {
        if (!is_prime(p) || p < 5)
            throw invalid_params("surgery problem needs a prime p >= 5");
        if (k < 0 || k > (p - 1) / 2)
            throw invalid_params("homology class k must lie in [0, (p-1)/2]");
    }
};

// |H1| of the surgered manifold for an essential knot
inline long h1_order(const SurgeryProblem& sp) {
    if (sp.k < 1)
        throw invalid_params("h1_order needs k >= 1; null-homologous knots use h1_null");
    return std::labs(sp.p * sp.m - sp.k * sp.k);
}

// H1 = Z/p + Z/|m| for a null-homologous knot with framing m
struct NullHomology {
    long p, m;
    long order() const { return p * std::labs(m); }
};

inline NullHomology h1_null(long p, long m) {
    if (p < 2 || m == 0) throw invalid_params("h1_null needs p >= 2 and m != 0");
    return {p, m};
}

inline bool is_spin_cobordism(const SurgeryProblem& sp) {
    return h1_order(sp) % 2 == 0;
}

// (b+, b-) of the rational form [[p, k], [k, m]] on the surgery cobordism
inline std::pair<int, int> qz_b_plus_minus(const SurgeryProblem& sp) {
    long d = sp.p * sp.m - sp.k * sp.k;
    if (d == 0) throw degenerate_form("pm - k^2 = 0");
    if (d < 0) return {1, 1};
    return {2, 0};
}

// k', p' with p*k' - k*p' = 1, the change-of-basis data for the dual class
inline std::pair<long, long> theta_coefficients(long p, long k) {
    if (k < 1 || k >= p) throw invalid_params("theta_coefficients needs 0 < k < p");
    auto [g, x, y] = egcd(p, k);
    if (g != 1) throw invalid_params("theta_coefficients needs gcd(p,k) = 1");
    return {x, -y};
}

}
