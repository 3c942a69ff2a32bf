#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "detcert/errors.hpp"

namespace detcert {

// Exponent vector of a power product x^alpha.
struct Monomial {
    std::vector<int> e;

    Monomial() = default;
    explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}

    static Monomial one(int nvars) { return Monomial(std::vector<int>(nvars, 0)); }

    static Monomial var(int nvars, int idx, int power = 1) {
        if (idx < 0 || idx >= nvars) throw DimensionError("variable index out of range");
        Monomial m = one(nvars);
        m.e[static_cast<std::size_t>(idx)] = power;
        return m;
    }

    int nvars() const { return static_cast<int>(e.size()); }

    long long total_degree() const {
        long long s = 0;
        for (int x : e) s += x;
        return s;
    }

    bool is_one() const {
        return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
};

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    if (a.nvars() != b.nvars()) throw DimensionError("monomial variable counts differ");
    Monomial r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
    return r;
}

// Listing order used everywhere: higher total degree first, ties broken
// lexicographically with the larger exponent vector first. Returns < 0
// when a is listed before b.
inline int mono_cmp(const Monomial& a, const Monomial& b) {
    long long da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db ? -1 : 1;
    for (std::size_t i = 0; i < a.e.size() && i < b.e.size(); ++i) {
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
    }
    if (a.e.size() != b.e.size()) return a.e.size() > b.e.size() ? -1 : 1;
    return 0;
}

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return mono_cmp(a, b) < 0; }
};

// Positive integer weights on the ambient variables.
struct Weights {
    std::vector<long long> w;

    Weights() = default;
    explicit Weights(std::vector<long long> ws) : w(std::move(ws)) {
        if (w.empty()) throw InputError("weights must be non-empty");
        for (long long x : w) {
            if (x < 1) throw InputError("weights must be positive integers");
        }
    }

    static Weights ones(int nvars) { return Weights(std::vector<long long>(nvars, 1)); }

    int size() const { return static_cast<int>(w.size()); }
    long long min() const { return *std::min_element(w.begin(), w.end()); }
    long long max() const { return *std::max_element(w.begin(), w.end()); }
    bool is_unit() const {
        return std::all_of(w.begin(), w.end(), [](long long x) { return x == 1; });
    }
    bool operator==(const Weights& o) const { return w == o.w; }
};

inline long long wdeg(const Monomial& m, const Weights& w) {
    if (m.nvars() != w.size()) throw DimensionError("monomial and weight lengths differ");
    long long s = 0;
    for (std::size_t i = 0; i < m.e.size(); ++i)
        s += static_cast<long long>(m.e[i]) * w.w[i];
    return s;
}

namespace detail {
inline void enumerate_wdeg(int nvars, const Weights& w, long long remaining, int idx,
                           std::vector<int>& cur, std::vector<Monomial>& out) {
    if (idx == nvars) {
        if (remaining == 0) out.emplace_back(cur);
        return;
    }
    if (idx == nvars - 1) {
        if (remaining % w.w[static_cast<std::size_t>(idx)] == 0) {
            cur[static_cast<std::size_t>(idx)] =
                static_cast<int>(remaining / w.w[static_cast<std::size_t>(idx)]);
            out.emplace_back(cur);
            cur[static_cast<std::size_t>(idx)] = 0;
        }
        return;
    }
    long long wi = w.w[static_cast<std::size_t>(idx)];
    for (long long a = remaining / wi; a >= 0; --a) {
        cur[static_cast<std::size_t>(idx)] = static_cast<int>(a);
        enumerate_wdeg(nvars, w, remaining - a * wi, idx + 1, cur, out);
    }
    cur[static_cast<std::size_t>(idx)] = 0;
}
}  // namespace detail

// All monomials in nvars variables of weighted degree exactly target,
// sorted in the global listing order.
inline std::vector<Monomial> monomials_of_wdeg(int nvars, const Weights& w, long long target) {
    if (nvars != w.size()) throw DimensionError("variable count and weight length differ");
    std::vector<Monomial> out;
    if (target < 0) return out;
    std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
    detail::enumerate_wdeg(nvars, w, target, 0, cur, out);
    std::sort(out.begin(), out.end(), MonoLess{});
    return out;
}

}  // namespace detcert
