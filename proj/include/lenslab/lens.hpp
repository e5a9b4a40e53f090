#pragma once

#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "rational.hpp"

namespace lenslab {

// correction terms of L(p,q) indexed by 0 <= i < p, computed by the
// standard recursion that descends through the continued fraction of p/q
inline Rational d_lens(long p, long q, long i) {
    if (p == 1 && q == 1 && i == 0) return Rational(0);
    if (p <= q || q < 1 || i < 0 || i >= p)
        throw invalid_params("d_lens needs p > q >= 1 and 0 <= i < p");
    if (std::gcd(p, q) != 1) throw invalid_params("d_lens needs gcd(p,q) = 1");

    thread_local std::map<std::tuple<long, long, long>, Rational> memo;
    auto it = memo.find({p, q, i});
    if (it != memo.end()) return it->second;

    Rational result;
    if (q == 1) {
        result = rat(-1, 4) + rat((2 * i - p) * (2 * i - p), 4 * p);
    } else {
        long r = p % q;
        long j = i % q;
        Int t = Int(2 * i + 1 - p - q);
        result = rat(-1, 4) + rat(t * t, Int(4) * p * q) - d_lens(q, r, j);
    }
    memo.emplace(std::make_tuple(p, q, i), result);
    return result;
}

// L(n,1) for either sign of n; reversing orientation negates the invariant
inline Rational d_Ln1(long n, long i) {
    if (n == 0) throw invalid_params("d_Ln1 needs n != 0");
    long p = std::labs(n);
    if (i < 0 || i >= p) throw invalid_params("d_Ln1 index out of range");
    Rational v = d_lens(p, 1, i);
    return n > 0 ? v : Rational(-v);
}

// indices fixed by conjugation: the integer members of
// {(p+q-1)/2, (q-1)/2} taken mod p
inline std::set<long> self_conjugate_indices(long p, long q) {
    if (p < 1 || q < 1 || (p == 1 ? q != 1 : q >= p))
        throw invalid_params("self_conjugate_indices needs valid lens parameters");
    if (std::gcd(p, q) != 1)
        throw invalid_params("self_conjugate_indices needs gcd(p,q) = 1");
    std::set<long> out;
    if ((p + q - 1) % 2 == 0) out.insert(((p + q - 1) / 2) % p);
    if ((q - 1) % 2 == 0) out.insert(((q - 1) / 2) % p);
    return out;
}

enum class LensForm {
    big_pos_center,   // d(L(pm-1,1), 0),            m >= 2
    big_pos_index,    // d(L(pm-1,1), j),            m >= 2
    small_pos_center, // d(L(pm-1,p), (p-1)/2),      m >= 2, odd p
    small_pos_shift,  // d(L(pm-1,p), (3p-1)/2),     m >= 2, odd p
    big_neg_center,   // d(L(-pm+1,1), 0),           m <= -2
    big_neg_index,    // d(L(-pm+1,1), j),           m <= -2
    small_neg_center, // d(L(-pm+1,p), (p-1)/2),     m <= -2, odd p
    small_neg_shift,  // d(L(-pm+1,p), (3p-1)/2),    m <= -2, odd p
};

// closed forms for the eight lens evaluations above; j only matters for
// the two *_index forms
inline Rational d_closed_form(LensForm f, long p, long m, long j = 0) {
    const bool pos = (f == LensForm::big_pos_center || f == LensForm::big_pos_index ||
                      f == LensForm::small_pos_center || f == LensForm::small_pos_shift);
    if (p < 2) throw invalid_params("d_closed_form needs p >= 2");
    if (pos ? m < 2 : m > -2)
        throw invalid_params("d_closed_form parameter m out of range for this form");
    const long order = pos ? p * m - 1 : -p * m + 1;

    switch (f) {
    case LensForm::big_pos_center:
        return rat(p * m - 2, 4);
    case LensForm::big_pos_index:
    case LensForm::big_neg_index: {
        if (j < 0 || j >= order) throw invalid_params("d_closed_form index out of range");
        Int t = Int(2 * j - order);
        return rat(-1, 4) + rat(t * t, Int(4) * order);
    }
    case LensForm::big_neg_center:
        return rat(-p * m, 4);
    default:
        break;
    }

    if (p % 2 == 0) throw invalid_params("this closed form needs odd p");
    switch (f) {
    case LensForm::small_pos_center:
        return rat(m - 2, 4);
    case LensForm::small_pos_shift:
        return rat(Int(p) * m * m - Int(6 * p + 1) * m + (4 * p + 6), Int(4) * (p * m - 1));
    case LensForm::small_neg_center:
        return rat(-m, 4);
    case LensForm::small_neg_shift:
        return rat(Int(p) * m * m + Int(4 * p - 1) * m + (4 * p - 4), Int(4) * (-p * m + 1));
    default:
        throw invalid_params("unknown closed form");
    }
}

}
