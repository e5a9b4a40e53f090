#pragma once

#include <gmpxx.h>
#include <string>

#include "errors.hpp"

namespace lenslab {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational rat(const Int& num, const Int& den) {
    if (den == 0) throw invalid_params("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rat(long num, long den = 1) { return rat(Int(num), Int(den)); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// reduced form, integers rendered without a denominator
inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_string(const Int& z) { return z.get_str(); }

}
