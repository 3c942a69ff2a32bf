#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "detcert/poly.hpp"

namespace detcert {

// Dense m x n array of polynomials, row-major.
struct PolyMat {
    int rows = 0, cols = 0;
    std::vector<Poly> a;

    PolyMat() = default;
    PolyMat(int r, int c, int nvars)
        : rows(r), cols(c), a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), Poly(nvars)) {}

    Poly& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Poly& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    int nvars() const { return a.empty() ? 0 : a.front().nvars(); }

    bool is_zero() const {
        for (const auto& p : a)
            if (!p.is_zero()) return false;
        return true;
    }

    friend PolyMat operator+(const PolyMat& x, const PolyMat& y) {
        if (x.rows != y.rows || x.cols != y.cols)
            throw DimensionError("matrix shapes differ");
        PolyMat r = x;
        for (std::size_t t = 0; t < r.a.size(); ++t) r.a[t] = r.a[t] + y.a[t];
        return r;
    }

    bool operator==(const PolyMat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

// Matrix unit E_ij: the single-entry basis matrix. Indices are 0-based
// in code and printed 1-based.
struct MatUnit {
    int i = 0, j = 0;
    bool operator==(const MatUnit& o) const { return i == o.i && j == o.j; }
    bool operator<(const MatUnit& o) const { return i != o.i ? i < o.i : j < o.j; }
};

// A polynomial matrix family together with its weights.
struct MatrixFamily {
    PolyMat entries;
    Weights weights;
    char alphabet = 'x';

    MatrixFamily() = default;
    MatrixFamily(PolyMat e, Weights w, char alpha = 'x')
        : entries(std::move(e)), weights(std::move(w)), alphabet(alpha) {
        if (entries.rows < 1 || entries.cols < 1)
            throw InputError("matrix family must have positive dimensions");
        for (const auto& p : entries.a)
            if (p.nvars() != weights.size())
                throw DimensionError("entry variable count differs from weight count");
    }

    int m() const { return entries.rows; }
    int n() const { return entries.cols; }
    int nvars() const { return weights.size(); }

    bool operator==(const MatrixFamily& o) const {
        return entries == o.entries && weights == o.weights;
    }
};

// Filtration degrees d_ij of the entries, with the weighted homogeneous
// type relations d_ij - d_ik = d_lj - d_lk checked over them. Zero
// entries have infinite filtration; when the relations pin their degree
// it is recorded here, otherwise the entry is flagged unconstrained.
struct DegreeMatrix {
    int m = 0, n = 0;
    std::vector<long long> d;           // row-major; pinned values for zero entries
    std::vector<uint8_t> known;         // entry has finite filtration
    std::vector<uint8_t> unconstrained; // zero entry the relations leave free
    bool whomog_type_ok = false;
    std::optional<std::array<int, 4>> violated;  // witnessing (i,l,j,k), 1-based

    long long at(int i, int j) const { return d[static_cast<std::size_t>(i) * n + j]; }
    bool is_known(int i, int j) const { return known[static_cast<std::size_t>(i) * n + j] != 0; }
    bool is_unconstrained(int i, int j) const {
        return unconstrained[static_cast<std::size_t>(i) * n + j] != 0;
    }
    bool any_unconstrained() const {
        for (auto u : unconstrained)
            if (u) return true;
        return false;
    }

    long long max_degree() const {
        long long r = d.empty() ? 0 : d.front();
        for (auto x : d) r = std::max(r, x);
        return r;
    }
    long long min_degree() const {
        long long r = d.empty() ? 0 : d.front();
        for (auto x : d) r = std::min(r, x);
        return r;
    }

    std::string to_string() const {
        std::string s = "[";
        for (int i = 0; i < m; ++i) {
            s += "[";
            for (int j = 0; j < n; ++j) {
                if (is_unconstrained(i, j))
                    s += "?";
                else
                    s += std::to_string(at(i, j));
                if (j + 1 < n) s += ",";
            }
            s += "]";
            if (i + 1 < m) s += ",";
        }
        s += "]";
        return s;
    }
};

// Filtration degrees plus the type relations. Degrees of zero entries
// are completed from the relations where possible (row/column potential
// propagation over the support graph).
inline DegreeMatrix degree_matrix(const MatrixFamily& F) {
    const int m = F.m(), n = F.n();
    DegreeMatrix D;
    D.m = m;
    D.n = n;
    D.d.assign(static_cast<std::size_t>(m) * n, 0);
    D.known.assign(static_cast<std::size_t>(m) * n, 0);
    D.unconstrained.assign(static_cast<std::size_t>(m) * n, 0);

    std::vector<std::optional<long long>> filv(static_cast<std::size_t>(m) * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            filv[static_cast<std::size_t>(i) * n + j] = fil(F.entries.at(i, j), F.weights);

    // Row potential r_i and column potential c_j with r_i + c_j = d_ij on
    // the known support; components are flood-filled one at a time.
    std::vector<std::optional<long long>> rp(static_cast<std::size_t>(m)), cp(static_cast<std::size_t>(n));
    std::vector<int> rcomp(static_cast<std::size_t>(m), -1), ccomp(static_cast<std::size_t>(n), -1);
    bool consistent = true;
    int comp = 0;
    for (int start = 0; start < m && consistent; ++start) {
        bool has_edge = false;
        for (int j = 0; j < n; ++j)
            if (filv[static_cast<std::size_t>(start) * n + j]) has_edge = true;
        if (rcomp[static_cast<std::size_t>(start)] != -1 || !has_edge) continue;
        rp[static_cast<std::size_t>(start)] = 0;
        rcomp[static_cast<std::size_t>(start)] = comp;
        std::vector<std::pair<bool, int>> queue{{true, start}};  // (is_row, index)
        while (!queue.empty() && consistent) {
            auto [is_row, idx] = queue.back();
            queue.pop_back();
            if (is_row) {
                for (int j = 0; j < n; ++j) {
                    auto dv = filv[static_cast<std::size_t>(idx) * n + j];
                    if (!dv) continue;
                    long long want = *dv - *rp[static_cast<std::size_t>(idx)];
                    if (!cp[static_cast<std::size_t>(j)]) {
                        cp[static_cast<std::size_t>(j)] = want;
                        ccomp[static_cast<std::size_t>(j)] = comp;
                        queue.emplace_back(false, j);
                    } else if (*cp[static_cast<std::size_t>(j)] != want) {
                        consistent = false;
                        break;
                    }
                }
            } else {
                for (int i = 0; i < m; ++i) {
                    auto dv = filv[static_cast<std::size_t>(i) * n + idx];
                    if (!dv) continue;
                    long long want = *dv - *cp[static_cast<std::size_t>(idx)];
                    if (!rp[static_cast<std::size_t>(i)]) {
                        rp[static_cast<std::size_t>(i)] = want;
                        rcomp[static_cast<std::size_t>(i)] = comp;
                        queue.emplace_back(true, i);
                    } else if (*rp[static_cast<std::size_t>(i)] != want) {
                        consistent = false;
                        break;
                    }
                }
            }
        }
        ++comp;
    }

    D.whomog_type_ok = consistent;
    if (!consistent) {
        // Locate a violated quadruple among fully known entries for the
        // diagnostic; sparse-support conflicts fall back to (1,1,1,1).
        for (int i = 0; i < m && !D.violated; ++i)
            for (int l = i + 1; l < m && !D.violated; ++l)
                for (int j = 0; j < n && !D.violated; ++j)
                    for (int k = j + 1; k < n && !D.violated; ++k) {
                        auto dij = filv[static_cast<std::size_t>(i) * n + j];
                        auto dik = filv[static_cast<std::size_t>(i) * n + k];
                        auto dlj = filv[static_cast<std::size_t>(l) * n + j];
                        auto dlk = filv[static_cast<std::size_t>(l) * n + k];
                        if (dij && dik && dlj && dlk && *dij - *dik != *dlj - *dlk)
                            D.violated = std::array<int, 4>{i + 1, l + 1, j + 1, k + 1};
                    }
        if (!D.violated) D.violated = std::array<int, 4>{1, 1, 1, 1};
    }

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            std::size_t t = static_cast<std::size_t>(i) * n + j;
            if (filv[t]) {
                D.d[t] = *filv[t];
                D.known[t] = 1;
            } else if (consistent && rp[static_cast<std::size_t>(i)] && cp[static_cast<std::size_t>(j)] &&
                       rcomp[static_cast<std::size_t>(i)] == ccomp[static_cast<std::size_t>(j)]) {
                D.d[t] = *rp[static_cast<std::size_t>(i)] + *cp[static_cast<std::size_t>(j)];
            } else {
                D.unconstrained[t] = 1;
            }
        }
    return D;
}

// Full weighted homogeneity validation: every entry weighted homogeneous
// of its filtration degree, relations satisfied, every zero entry pinned.
inline DegreeMatrix validate_whomog(const MatrixFamily& F) {
    DegreeMatrix D = degree_matrix(F);
    std::vector<std::pair<int, int>> bad;
    for (int i = 0; i < F.m(); ++i)
        for (int j = 0; j < F.n(); ++j) {
            const Poly& f = F.entries.at(i, j);
            if (f.is_zero()) continue;
            if (!is_whomog(f, F.weights, D.at(i, j))) bad.emplace_back(i + 1, j + 1);
        }
    if (!bad.empty()) {
        std::string msg = "entries are not weighted homogeneous:";
        for (auto [i, j] : bad) msg += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
        throw NotQuasihomogeneousError(msg, bad);
    }
    if (!D.whomog_type_ok) {
        auto v = *D.violated;
        throw TypeRelationError("degree matrix violates the type relations at rows (" +
                                    std::to_string(v[0]) + "," + std::to_string(v[1]) +
                                    ") columns (" + std::to_string(v[2]) + "," +
                                    std::to_string(v[3]) + ")",
                                v[0], v[1], v[2], v[3]);
    }
    for (int i = 0; i < F.m(); ++i)
        for (int j = 0; j < F.n(); ++j)
            if (D.is_unconstrained(i, j))
                throw UnconstrainedEntryError(
                    "zero entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ") has no degree pinned by the type relations",
                    i + 1, j + 1);
    return D;
}

namespace detail {
inline Poly poly_det(const PolyMat& M) {
    if (M.rows != M.cols) throw DimensionError("determinant of a non-square matrix");
    const int t = M.rows;
    if (t == 1) return M.at(0, 0);
    Poly acc(M.nvars());
    for (int j = 0; j < t; ++j) {
        if (M.at(0, j).is_zero()) continue;
        PolyMat sub(t - 1, t - 1, M.nvars());
        for (int i = 1; i < t; ++i) {
            int cc = 0;
            for (int c = 0; c < t; ++c) {
                if (c == j) continue;
                sub.at(i - 1, cc++) = M.at(i, c);
            }
        }
        Poly cof = M.at(0, j) * poly_det(sub);
        acc = (j % 2 == 0) ? acc + cof : acc - cof;
    }
    return acc;
}

inline std::vector<std::vector<int>> combinations(int total, int pick) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(pick));
    for (int i = 0; i < pick; ++i) cur[static_cast<std::size_t>(i)] = i;
    for (;;) {
        out.push_back(cur);
        int i = pick - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == total - pick + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < pick; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}
}  // namespace detail

// All t x t minors, ordered by increasing row set then column set.
inline std::vector<Poly> minors(const MatrixFamily& F, int t) {
    if (t < 1 || t > std::min(F.m(), F.n()))
        throw InputError("minor size out of range");
    std::vector<Poly> out;
    auto rowsets = detail::combinations(F.m(), t);
    auto colsets = detail::combinations(F.n(), t);
    for (const auto& rs : rowsets)
        for (const auto& cs : colsets) {
            PolyMat sub(t, t, F.nvars());
            for (int i = 0; i < t; ++i)
                for (int j = 0; j < t; ++j)
                    sub.at(i, j) = F.entries.at(rs[static_cast<std::size_t>(i)],
                                                cs[static_cast<std::size_t>(j)]);
            out.push_back(detail::poly_det(sub));
        }
    return out;
}

// Stratum of m x n matrices of rank strictly less than t. Note the
// strict inequality: rank < t, not rank <= t.
struct RankStratum {
    int m = 0, n = 0, t = 0;
};

inline long long expected_codim(const RankStratum& s) {
    if (s.t < 1 || s.t > std::min(s.m, s.n)) throw InputError("rank stratum parameter out of range");
    return static_cast<long long>(s.m - s.t + 1) * static_cast<long long>(s.n - s.t + 1);
}

enum class GenKind { Jacobian, Row, Col };

// One tangent-space generator: a polynomial matrix whose (i,j) entry is
// weighted homogeneous of degree d_ij + shift (or zero).
struct Generator {
    GenKind kind = GenKind::Jacobian;
    int p = 0, q = 0;  // lambda for Jacobian; (l,k) rows; (p,q) columns. 0-based.
    PolyMat mat;
    long long shift = 0;

    std::string label(char alphabet = 'x') const {
        switch (kind) {
            case GenKind::Jacobian: return std::string("d/d") + alphabet + std::to_string(p + 1);
            case GenKind::Row: return "R" + std::to_string(p + 1) + std::to_string(q + 1);
            case GenKind::Col: return "C" + std::to_string(p + 1) + std::to_string(q + 1);
        }
        return "?";
    }
};

struct GeneratorSet {
    std::vector<Generator> gens;  // jacobians, then row copies, then column copies
    int jacobian_count = 0;
};

// Tangent-space generators: the N partial-derivative matrices, the m*m
// row copies R_lk (row l replaced by row k, zeros elsewhere) and the n*n
// column copies C_pq. Duplicates such as R_ll are kept on purpose so the
// indexing stays predictable.
inline GeneratorSet generators(const MatrixFamily& F, const DegreeMatrix& D) {
    const int m = F.m(), n = F.n(), N = F.nvars();
    GeneratorSet G;
    G.jacobian_count = N;
    for (int lam = 0; lam < N; ++lam) {
        Generator g;
        g.kind = GenKind::Jacobian;
        g.p = lam;
        g.mat = PolyMat(m, n, N);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) g.mat.at(i, j) = partial(F.entries.at(i, j), lam);
        g.shift = -F.weights.w[static_cast<std::size_t>(lam)];
        G.gens.push_back(std::move(g));
    }
    for (int l = 0; l < m; ++l)
        for (int k = 0; k < m; ++k) {
            Generator g;
            g.kind = GenKind::Row;
            g.p = l;
            g.q = k;
            g.mat = PolyMat(m, n, N);
            for (int j = 0; j < n; ++j) g.mat.at(l, j) = F.entries.at(k, j);
            g.shift = D.at(k, 0) - D.at(l, 0);
            G.gens.push_back(std::move(g));
        }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            Generator g;
            g.kind = GenKind::Col;
            g.p = p;
            g.q = q;
            g.mat = PolyMat(m, n, N);
            for (int i = 0; i < m; ++i) g.mat.at(i, p) = F.entries.at(i, q);
            g.shift = D.at(0, q) - D.at(0, p);
            G.gens.push_back(std::move(g));
        }
    return G;
}

inline GeneratorSet generators(const MatrixFamily& F) {
    return generators(F, validate_whomog(F));
}

// Diagonal exponents for the row/column rescaling matrices, normalized
// by a_1 = 0. The solution is unique up to the shift a_i + c, b_j - c.
struct ScalingShifts {
    std::vector<long long> a;  // size m
    std::vector<long long> b;  // size n
};

inline ScalingShifts scaling_shifts(const DegreeMatrix& D) {
    if (!D.whomog_type_ok) {
        auto v = D.violated.value_or(std::array<int, 4>{1, 1, 1, 1});
        throw TypeRelationError("no scaling exponents exist: type relations fail", v[0], v[1],
                                v[2], v[3]);
    }
    if (D.any_unconstrained())
        throw InputError("no scaling exponents exist: a zero entry is unconstrained");
    ScalingShifts s;
    s.a.resize(static_cast<std::size_t>(D.m));
    s.b.resize(static_cast<std::size_t>(D.n));
    for (int i = 0; i < D.m; ++i) s.a[static_cast<std::size_t>(i)] = D.at(i, 0) - D.at(0, 0);
    for (int j = 0; j < D.n; ++j) s.b[static_cast<std::size_t>(j)] = D.at(0, j);
    for (int i = 0; i < D.m; ++i)
        for (int j = 0; j < D.n; ++j)
            if (s.a[static_cast<std::size_t>(i)] + s.b[static_cast<std::size_t>(j)] != D.at(i, j))
                throw TypeRelationError("no scaling exponents exist: type relations fail", 1,
                                        i + 1, 1, j + 1);
    return s;
}

// psi_s h_s^*(F) phi_s for a concrete nonzero rational s: the term x^alpha
// of entry (i,j) picks up the factor s^(a_i + b_j - wdeg(alpha)). For a
// weighted homogeneous family every exponent vanishes and F is returned
// unchanged.
inline MatrixFamily apply_scaling(const MatrixFamily& F, const Rat& s) {
    if (s == 0) throw InputError("scaling parameter must be nonzero");
    if (s == 1) return F;  // the identity deformation, defined for every family
    DegreeMatrix D = degree_matrix(F);
    ScalingShifts sh = scaling_shifts(D);
    MatrixFamily out = F;
    for (int i = 0; i < F.m(); ++i)
        for (int j = 0; j < F.n(); ++j) {
            Poly r(F.nvars());
            for (const auto& [mono, c] : F.entries.at(i, j).terms()) {
                long long expo = sh.a[static_cast<std::size_t>(i)] +
                                 sh.b[static_cast<std::size_t>(j)] - wdeg(mono, F.weights);
                r.add_term(mono, c * rat_pow(s, expo));
            }
            out.entries.at(i, j) = r;
        }
    return out;
}

// Same rescaling with s kept symbolic as an extra last variable. Only
// meaningful when every term sits at or below its base degree d_ij, so
// that all s-exponents are non-negative. D and the shifts come from the
// unperturbed family.
inline PolyMat apply_scaling_symbolic(const PolyMat& M, const DegreeMatrix& D, const Weights& w) {
    ScalingShifts sh = scaling_shifts(D);
    const int N = w.size();
    PolyMat out(M.rows, M.cols, N + 1);
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j) {
            Poly r(N + 1);
            for (const auto& [mono, c] : M.at(i, j).terms()) {
                long long expo = sh.a[static_cast<std::size_t>(i)] +
                                 sh.b[static_cast<std::size_t>(j)] - wdeg(mono, w);
                if (expo < 0)
                    throw InputError("term of weighted degree above the base degree at entry (" +
                                     std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
                Monomial ext(std::vector<int>(static_cast<std::size_t>(N + 1), 0));
                for (int v = 0; v < N; ++v) ext.e[static_cast<std::size_t>(v)] = mono.e[static_cast<std::size_t>(v)];
                ext.e[static_cast<std::size_t>(N)] = static_cast<int>(expo);
                r.add_term(ext, c);
            }
            out.at(i, j) = r;
        }
    return out;
}

}  // namespace detcert
