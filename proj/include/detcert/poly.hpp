#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "detcert/monomial.hpp"
#include "detcert/rational.hpp"

namespace detcert {

// Exact multivariate polynomial over the rationals. The term map is
// canonical: no zero coefficients are ever stored, so equality of the
// maps is equality of polynomials.
class Poly {
public:
    Poly() = default;
    explicit Poly(int nvars) : nv_(nvars) {}

    static Poly zero(int nvars) { return Poly(nvars); }

    static Poly constant(int nvars, const Rat& c) {
        Poly p(nvars);
        if (c != 0) p.terms_[Monomial::one(nvars)] = c;
        return p;
    }

    static Poly variable(int nvars, int idx) {
        Poly p(nvars);
        p.terms_[Monomial::var(nvars, idx)] = 1;
        return p;
    }

    static Poly term(int nvars, const Monomial& m, const Rat& c) {
        if (m.nvars() != nvars) throw DimensionError("term monomial has wrong length");
        Poly p(nvars);
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    int nvars() const { return nv_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rat, MonoLess>& terms() const { return terms_; }

    Rat coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(const Monomial& m, const Rat& c) {
        if (m.nvars() != nv_) throw DimensionError("term monomial has wrong length");
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly r(nv_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        check_same(a, b);
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        check_same(a, b);
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        check_same(a, b);
        Poly r(a.nv_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
        return r;
    }

    friend Poly operator*(const Rat& c, const Poly& a) {
        Poly r(a.nv_);
        if (c == 0) return r;
        for (const auto& [m, v] : a.terms_) r.terms_.emplace(m, c * v);
        return r;
    }

    bool operator==(const Poly& o) const { return nv_ == o.nv_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

private:
    static void check_same(const Poly& a, const Poly& b) {
        if (a.nv_ != b.nv_) throw DimensionError("polynomials have different variable counts");
    }

    int nv_ = 0;
    std::map<Monomial, Rat, MonoLess> terms_;
};

// Formal partial derivative with respect to variable idx (0-based).
inline Poly partial(const Poly& f, int idx) {
    if (idx < 0 || idx >= f.nvars()) throw DimensionError("variable index out of range");
    Poly r(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        int a = m.e[static_cast<std::size_t>(idx)];
        if (a == 0) continue;
        Monomial md = m;
        md.e[static_cast<std::size_t>(idx)] = a - 1;
        r.add_term(md, c * a);
    }
    return r;
}

// Replace each variable u_l by x_l^d; exponent vectors scale by d.
inline Poly substitute_powers(const Poly& f, long long d) {
    if (d < 1) throw InputError("power substitution needs d >= 1");
    Poly r(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        Monomial ms = m;
        for (auto& x : ms.e) x = static_cast<int>(x * d);
        r.add_term(ms, c);
    }
    return r;
}

// Terms of total degree at most r (the r-jet at the origin).
inline Poly jet(const Poly& f, long long r) {
    Poly out(f.nvars());
    for (const auto& [m, c] : f.terms())
        if (m.total_degree() <= r) out.add_term(m, c);
    return out;
}

inline long long total_degree(const Poly& f) {
    long long d = -1;
    for (const auto& [m, c] : f.terms()) d = std::max(d, m.total_degree());
    return d;  // -1 for the zero polynomial
}

// Weighted filtration: minimal weighted degree of a present monomial.
// Empty (infinite) for the zero polynomial.
inline std::optional<long long> fil(const Poly& f, const Weights& w) {
    std::optional<long long> best;
    for (const auto& [m, c] : f.terms()) {
        long long d = wdeg(m, w);
        if (!best || d < *best) best = d;
    }
    return best;
}

// True iff every present term has weighted degree exactly d. The zero
// polynomial is weighted homogeneous of every degree.
inline bool is_whomog(const Poly& f, const Weights& w, long long d) {
    for (const auto& [m, c] : f.terms())
        if (wdeg(m, w) != d) return false;
    return true;
}

inline std::string mono_to_string(const Monomial& m, char alphabet) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < m.nvars(); ++i) {
        int a = m.e[static_cast<std::size_t>(i)];
        if (a == 0) continue;
        if (!first) os << '*';
        os << alphabet << (i + 1);
        if (a != 1) os << '^' << a;
        first = false;
    }
    if (first) os << '1';
    return os.str();
}

// Canonical printer; parse(poly_to_string(f)) == f.
inline std::string poly_to_string(const Poly& f, char alphabet = 'x') {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << '-';
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (m.is_one()) {
            os << rat_to_string(a);
        } else {
            if (a != 1) os << rat_to_string(a) << '*';
            os << mono_to_string(m, alphabet);
        }
        first = false;
    }
    return os.str();
}

}  // namespace detcert
