#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lens.hpp"
#include "simpleknot.hpp"
#include "surgery.hpp"

namespace lenslab {

enum class RowVerdict { obstructed, not_obstructed, undetermined, realized };

inline std::string to_string(RowVerdict v) {
    switch (v) {
        case RowVerdict::obstructed: return "Obstructed";
        case RowVerdict::not_obstructed: return "NotObstructed";
        case RowVerdict::undetermined: return "Undetermined";
        case RowVerdict::realized: return "Realized";
    }
    throw error("unreachable");
}

inline RowVerdict row_verdict_from_string(const std::string& s) {
    if (s == "Obstructed") return RowVerdict::obstructed;
    if (s == "NotObstructed") return RowVerdict::not_obstructed;
    if (s == "Undetermined") return RowVerdict::undetermined;
    if (s == "Realized") return RowVerdict::realized;
    throw invalid_params("unknown verdict '" + s + "'");
}

struct Verdict {
    RowVerdict outcome;
    std::string engine;
    std::string witness;

    bool operator==(const Verdict&) const = default;
};

// integer roots of a*x^2 + b*x + c in [lo, hi], ascending
inline std::vector<Int> quad_root_in_range(const Int& a, const Int& b, const Int& c,
                                           const Int& lo, const Int& hi) {
    if (a == 0) throw invalid_params("quad_root_in_range needs a != 0");
    Int disc = b * b - 4 * a * c;
    if (disc < 0) return {};
    if (mpz_perfect_square_p(disc.get_mpz_t()) == 0) return {};
    Int s;
    mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
    std::vector<Int> roots;
    for (const Int& num : {Int(-b - s), Int(-b + s)}) {
        if (num % (2 * a) != 0) continue;
        Int x = num / (2 * a);
        if (lo <= x && x <= hi && (roots.empty() || roots.back() != x))
            roots.push_back(x);
    }
    if (roots.size() == 2 && roots[0] > roots[1]) std::swap(roots[0], roots[1]);
    return roots;
}

// orientation pair for the null-homologous case: sign of the source lens
// space order, then sign of the claimed surgery result
enum class NullOrientation { plus_plus, plus_minus, minus_plus, minus_minus };

inline int null_source_sign(NullOrientation o) {
    return (o == NullOrientation::plus_plus || o == NullOrientation::plus_minus) ? 1 : -1;
}

inline int null_result_sign(NullOrientation o) {
    return (o == NullOrientation::plus_plus || o == NullOrientation::minus_plus) ? 1 : -1;
}

// can +m-surgery (m >= 1 odd) on a null-homologous knot in L(sY*p,1)
// yield L(sn*p*m,1)? checked through the two d-invariant counting bounds
inline Verdict null_case(long p, long m, NullOrientation o) {
    if (p < 2) throw invalid_params("null_case needs p >= 2");
    if (m < 1 || m % 2 == 0) throw invalid_params("null_case needs odd m >= 1");
    const int sY = null_source_sign(o), sn = null_result_sign(o);
    Rational N00 = (sY * d_Ln1(p, 0) + d_Ln1(m, 0) - sn * d_Ln1(p * m, 0)) / 2;
    if (N00 < 0 || !is_integer(N00))
        return {RowVerdict::obstructed, "null",
                "N00=" + to_string(N00) + " not a nonnegative integer"};
    if (m == 1)
        return {RowVerdict::not_obstructed, "null",
                "N00=" + to_string(N00) + ", no second constraint at m=1"};
    std::vector<Rational> targets;
    for (const Rational& N01 : {N00, Rational(N00 - 1)})
        if (N01 >= 0) targets.push_back(sY * d_Ln1(p, 0) + d_Ln1(m, 1) - 2 * N01);
    for (long j = 0; j < p * m; ++j) {
        Rational dj = sn * d_Ln1(p * m, j);
        for (const Rational& t : targets)
            if (dj == t)
                return {RowVerdict::not_obstructed, "null",
                        "witness index j=" + std::to_string(j)};
    }
    return {RowVerdict::obstructed, "null",
            "N00=" + to_string(N00) + ", second constraint unsolvable"};
}

namespace detail {

// closed forms at the distinguished class and its companion for the
// three-armed plumbing model, valid for m >= k+3
inline std::pair<Rational, Rational> d_star_closed(long p, long k, long m) {
    Int P = p, K = k, M = m;
    Int D = P * M - K * K;
    if (k % 2 == 0) {
        Rational tm = rat(M + P - 2 * K - 2, 4);
        Rational comp = rat(P * M * M - (6 * P + 2 * K * P - P * P + K * K) * M
                                + 4 * P + 6 * K * K + 2 * K * K * K - P * K * K,
                            4 * D);
        return {tm, comp};
    }
    Rational tm = rat(M - 2, 4);
    Rational comp = rat(P * M * M - (6 * P + K * K) * M + 6 * K * K + 4 * P, 4 * D);
    return {tm, comp};
}

}

// d-invariants of the knot exterior's surgery model at the distinguished
// spin-c class and its companion, when a model is available
inline std::optional<std::pair<Rational, Rational>>
essential_d_source(long p, long k, long m) {
    if (k == 1) {
        if (m >= 2) {
            long P = p * m - 1;
            return {{d_lens(P, p, (p - 1) / 2), d_lens(P, p, (3 * p - 1) / 2)}};
        }
        if (m <= -2) {
            long P = -p * m + 1;
            return {{Rational(-d_lens(P, p, (p - 1) / 2)),
                     Rational(-d_lens(P, p, (3 * p - 1) / 2))}};
        }
        return std::nullopt;
    }
    if (p == 5 && k == 2 && m <= -1) {
        Int M = m;
        return {{rat(M + 1, 4), rat(-5 * M * M - 21 * M, 4 * (-5 * M + 4))}};
    }
    if (p == 7 && k == 2 && m <= -1) {
        Int M = m;
        return {{rat(M + 3, 4), rat(-7 * M * M - 45 * M, 4 * (-7 * M + 4))}};
    }
    if (p == 7 && k == 3 && m <= 0) {
        Int M = m;
        return {{rat(M, 4), rat(-7 * M * M - 19 * M + 8, 4 * (-7 * M + 9))}};
    }
    if (m == k + 1) {
        long q = k + 1;
        long P = p * q - k * k;
        auto sc = self_conjugate_indices(P, q);
        if (sc.size() != 1) throw error("expected a unique self-conjugate class");
        long i0 = *sc.begin();
        return {{d_lens(P, q, i0), d_lens(P, q, (i0 + p) % P)}};
    }
    if (m >= k + 3) return detail::d_star_closed(p, k, m);
    return std::nullopt;
}

namespace detail {

inline bool essential_gate(long p, long k, long m, long D) {
    if (D > 0) {
        if (2 * p * m >= (p + k) * k + 2 * p) return true;
        return (p == 5 || p == 7) && xi0_support_ok_at_order(p, k, D);
    }
    if (2 * p * m <= (3 * k - p) * k - 2 * p) return true;
    return (p == 5 || p == 7) && xi0_support_ok_at_order(p, k, -D);
}

}

// can m-surgery on an essential knot of class k in L(p,1) yield L(n,1)?
// cases the d-invariant machinery cannot reach raise outside_applicability
inline Verdict essential_case(const SurgeryProblem& sp, long n) {
    if (sp.k < 1) throw invalid_params("essential_case needs k >= 1");
    const long p = sp.p, k = sp.k, m = sp.m;
    const long D = p * m - k * k;
    if (std::labs(n) != std::labs(D) || D % 2 == 0)
        throw invalid_params("essential_case needs |n| = |pm - k^2| odd");
    if (std::labs(D) == 1)
        throw outside_applicability("order 1 outside scope");
    if (D > 0 && D < 5)
        throw outside_applicability("|H1|=" + std::to_string(D) + " < 5 outside scope");
    if (!detail::essential_gate(p, k, m, D))
        throw outside_applicability("applicability bound fails");
    auto ds = essential_d_source(p, k, m);
    if (!ds)
        throw outside_applicability("no d-invariant source for M");
    const auto& [d_tm, d_comp] = *ds;
    Rational V = D > 0 ? Rational((d_tm - d_Ln1(n, 0)) / 2)
                       : Rational((d_Ln1(n, 0) - d_tm) / 2);
    if (!is_integer(V))
        return {RowVerdict::obstructed, "essential", "V=" + to_string(V) + " non-integer"};
    if (V < 0)
        return {RowVerdict::obstructed, "essential", "V=" + to_string(V) + " negative"};
    if (V < 2)
        return {RowVerdict::not_obstructed, "essential",
                "V=" + to_string(V) + ", second formula not applicable"};
    for (long j = 0; j < std::labs(n); ++j) {
        Rational dj = d_Ln1(n, j);
        for (const Rational& Vp : {V, Rational(V - 1)}) {
            Rational want = D > 0 ? Rational(d_comp - 2 * Vp) : Rational(d_comp + 2 * Vp);
            if (dj == want)
                return {RowVerdict::not_obstructed, "essential",
                        "V=" + to_string(V) + ", witness index j=" + std::to_string(j)};
        }
    }
    return {RowVerdict::obstructed, "essential",
            "V=" + to_string(V) + ", companion constraint unsolvable"};
}

// even-order targets: some self-conjugate class of L(n,1) must sit at
// d-distance 1/4 from d(L(p,1), 0), in one direction or the other
inline Verdict spin_deltad_check(long p, long n) {
    if (p < 2) throw invalid_params("spin_deltad_check needs p >= 2");
    if (n == 0 || n % 2 != 0)
        throw invalid_params("spin_deltad_check needs even n != 0");
    Rational d0 = d_Ln1(p, 0);
    for (long i : self_conjugate_indices(std::labs(n), 1)) {
        Rational dn = d_Ln1(n, i);
        if (dn - d0 == rat(-1, 4) || d0 - dn == rat(-1, 4))
            return {RowVerdict::not_obstructed, "spin", "spin index i=" + std::to_string(i)};
    }
    return {RowVerdict::obstructed, "spin", "no spin structure with d-shift -1/4"};
}

// are the cyclic linking forms q_candidate/order and q_target/order
// equivalent, i.e. related by a unit square mod order?
inline Verdict linking_form_obstruct(long order, long q_candidate, long q_target) {
    if (order < 1) throw invalid_params("linking_form_obstruct needs order >= 1");
    auto norm = [order](long q) { return ((q % order) + order) % order; };
    long qc = norm(q_candidate), qt = norm(q_target);
    if (std::gcd(qc, order) != 1 || std::gcd(qt, order) != 1)
        throw invalid_params("linking form parameters must be units mod the order");
    if (order == 1)
        return {RowVerdict::not_obstructed, "linking", "unit square a=1"};
    for (long a = 1; a < order; ++a) {
        if (std::gcd(a, order) != 1) continue;
        if (norm(qt * a * a - qc) == 0)
            return {RowVerdict::not_obstructed, "linking",
                    "unit square a=" + std::to_string(a)};
    }
    return {RowVerdict::obstructed, "linking",
            "linking form " + std::to_string(qc) + "/" + std::to_string(order) + " vs " +
                std::to_string(qt) + "/" + std::to_string(order) + " inequivalent"};
}

// linking-form comparison for the surgered manifold against L(n,1);
// nullopt when the form matches or the comparison does not apply
inline std::optional<Verdict> linking_form_of_surgery(long p, long k, long m, long n) {
    long D = p * m - k * k;
    if (std::labs(n) != std::labs(D))
        throw invalid_params("linking_form_of_surgery needs |n| = |pm - k^2|");
    if (std::gcd(p, k * k) != 1) return std::nullopt;
    auto [g, x, y] = egcd(p, k * k);
    if (g != 1) throw error("unreachable");
    long c = x, d = -y;
    long N = std::labs(n);
    long sgn = D > 0 ? 1 : -1;
    long q_cand = ((sgn * (c - d * m)) % N + N) % N;
    long q_target = (((n > 0 ? 1 : -1) % N) + N) % N;
    Verdict v = linking_form_obstruct(N, q_cand, q_target);
    if (v.outcome == RowVerdict::not_obstructed) return std::nullopt;
    return v;
}

// does -1-surgery on a knot in S^3 ever yield L(-m, 1)? known for positive
// odd squarefree m; true only for the two smallest cases
inline bool mv_negative_lens(long m) {
    if (m < 1 || m % 2 == 0)
        throw invalid_params("mv_negative_lens needs positive odd m");
    for (long d = 2; d * d <= m; ++d)
        if (m % (d * d) == 0)
            throw invalid_params("mv_negative_lens needs squarefree m");
    return m == 1 || m == 5;
}

// targets excluded by knot Floer homology classifications in small lens
// spaces, imported as facts
inline std::optional<std::string> lmv_import_witness(long p, long n) {
    if (p == 7 && n == -3)
        return "obstructed by knot Floer homology in L(3,1) (imported result)";
    return std::nullopt;
}

}
