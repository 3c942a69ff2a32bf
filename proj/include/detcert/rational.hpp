#pragma once

#include <gmpxx.h>

#include <string>

#include "detcert/errors.hpp"

namespace detcert {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw InputError("zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw InputError("zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// s^e for integer e of either sign; s must be nonzero when e < 0.
inline Rat rat_pow(const Rat& s, long long e) {
    if (e < 0) {
        if (s == 0) throw InputError("zero base raised to a negative power");
        return rat_pow(Rat(1) / s, -e);
    }
    Rat acc(1);
    Rat base = s;
    auto k = static_cast<unsigned long long>(e);
    while (k != 0) {
        if (k & 1u) acc *= base;
        base *= base;
        k >>= 1u;
    }
    return acc;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

// ceil(a / b) for b > 0.
inline long long ceil_div(long long a, long long b) {
    long long q = a / b;
    if (a % b > 0) ++q;
    return q;
}

}  // namespace detcert
