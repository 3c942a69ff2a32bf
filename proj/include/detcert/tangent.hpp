#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "detcert/linalg.hpp"
#include "detcert/matrix_family.hpp"

namespace detcert {

// Strict keeps the maximal-ideal factor on the jacobian generators
// (multipliers of weighted degree zero are forbidden there); Extended
// allows unit multipliers on every generator.
enum class Mode { Strict, Extended };

inline const char* mode_name(Mode m) { return m == Mode::Strict ? "strict" : "extended"; }

// A graded submodule of the m x n matrix module: the ambient component of
// level e consists of matrices whose (i,j) entry is weighted homogeneous
// of degree offsets[i][j] + e. Each generator lives in a single level
// (its shift) and is multiplied by monomials to span higher levels.
struct GradedModule {
    int m = 0, n = 0, nvars = 0;
    Weights w;
    std::vector<long long> offsets;  // row-major d_ij

    struct Gen {
        PolyMat mat;
        long long shift = 0;
        bool jacobian = false;  // subject to the Strict-mode restriction
        std::string label;
    };
    std::vector<Gen> gens;

    long long offset_at(int i, int j) const { return offsets[static_cast<std::size_t>(i) * n + j]; }
    long long max_offset() const { return *std::max_element(offsets.begin(), offsets.end()); }
    long long min_offset() const { return *std::min_element(offsets.begin(), offsets.end()); }
    long long level_min() const { return -max_offset(); }
};

inline GradedModule tangent_module(const MatrixFamily& F, const DegreeMatrix& D,
                                   const GeneratorSet& G) {
    GradedModule mod;
    mod.m = F.m();
    mod.n = F.n();
    mod.nvars = F.nvars();
    mod.w = F.weights;
    mod.offsets = D.d;
    for (const auto& g : G.gens)
        mod.gens.push_back({g.mat, g.shift, g.kind == GenKind::Jacobian, g.label(F.alphabet)});
    return mod;
}

// Ideal membership as the 1 x 1 specialization: the ambient level-e
// component is the space of weighted homogeneous polynomials of degree e.
inline GradedModule ideal_module(const std::vector<Poly>& gens, const Weights& w) {
    GradedModule mod;
    mod.m = 1;
    mod.n = 1;
    mod.nvars = w.size();
    mod.w = w;
    mod.offsets = {0};
    int idx = 0;
    for (const auto& g : gens) {
        ++idx;
        if (g.is_zero()) continue;
        auto d = fil(g, w);
        if (!is_whomog(g, w, *d))
            throw InputError("ideal generator " + std::to_string(idx) +
                             " is not weighted homogeneous");
        PolyMat mat(1, 1, w.size());
        mat.at(0, 0) = g;
        mod.gens.push_back({std::move(mat), *d, false, "g" + std::to_string(idx)});
    }
    return mod;
}

struct AmbientKeyLess {
    bool operator()(const std::pair<MatUnit, Monomial>& a,
                    const std::pair<MatUnit, Monomial>& b) const {
        if (!(a.first == b.first)) return a.first < b.first;
        return mono_cmp(a.second, b.second) < 0;
    }
};

// Finite-dimensional slice of one level: the ambient monomial-times-unit
// basis together with the generator-multiple span vectors.
struct LevelSlice {
    long long level = 0;
    std::vector<std::pair<Monomial, MatUnit>> ambient;
    std::vector<SparseRowQ> rows;
    struct RowMeta {
        int gen = 0;
        Monomial beta;
    };
    std::vector<RowMeta> meta;

    int column_of(const Monomial& mono, int i, int j) const {
        auto it = index_.find(std::make_pair(MatUnit{i, j}, mono));
        return it == index_.end() ? -1 : it->second;
    }

    std::map<std::pair<MatUnit, Monomial>, int, AmbientKeyLess> index_;
};

inline LevelSlice build_slice(const GradedModule& mod, long long level, Mode mode) {
    LevelSlice s;
    s.level = level;
    for (int i = 0; i < mod.m; ++i)
        for (int j = 0; j < mod.n; ++j) {
            auto monos = monomials_of_wdeg(mod.nvars, mod.w, level + mod.offset_at(i, j));
            for (auto& mo : monos) {
                s.index_[{MatUnit{i, j}, mo}] = static_cast<int>(s.ambient.size());
                s.ambient.emplace_back(std::move(mo), MatUnit{i, j});
            }
        }
    for (int gi = 0; gi < static_cast<int>(mod.gens.size()); ++gi) {
        const auto& g = mod.gens[static_cast<std::size_t>(gi)];
        long long bdeg = level - g.shift;
        if (bdeg < 0) continue;
        if (mode == Mode::Strict && g.jacobian && bdeg == 0) continue;
        for (const auto& beta : monomials_of_wdeg(mod.nvars, mod.w, bdeg)) {
            SparseRowQ row;
            for (int i = 0; i < mod.m; ++i)
                for (int j = 0; j < mod.n; ++j)
                    for (const auto& [alpha, c] : g.mat.at(i, j).terms()) {
                        int col = s.column_of(mono_mul(alpha, beta), i, j);
                        if (col < 0)
                            throw Error("internal: generator term escapes its level slice");
                        row.emplace_back(col, c);
                    }
            if (row.empty()) continue;
            std::sort(row.begin(), row.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            s.rows.push_back(std::move(row));
            s.meta.push_back({gi, beta});
        }
    }
    return s;
}

struct LevelReport {
    long long level = 0;
    long long ambient_dim = 0;
    long long span_rank = 0;
    bool covered() const { return span_rank == ambient_dim; }
};

namespace detail {
// Exact per-level coverage. The mod-p rank is tried first: when it is
// already full the rational rank is full as well and the elimination
// over Z is skipped.
inline LevelReport check_level(const GradedModule& mod, long long level, Mode mode) {
    LevelSlice s = build_slice(mod, level, mode);
    LevelReport rep;
    rep.level = level;
    rep.ambient_dim = static_cast<long long>(s.ambient.size());
    if (rep.ambient_dim == 0) {
        rep.span_rank = 0;
        return rep;
    }
    long long mp = modp_rank(s.rows, static_cast<int>(s.ambient.size()));
    if (mp == rep.ambient_dim) {
        rep.span_rank = mp;
        return rep;
    }
    rep.span_rank = exact_rank(s.rows, static_cast<int>(s.ambient.size())).rank();
    return rep;
}
}  // namespace detail

struct Obstruction {
    long long level = 0;
    Monomial mono;
    int i = 0, j = 0;  // 0-based entry
};

enum class MembershipVerdict { Verified, NotVerifiedUpTo };

// Outcome of the level scan. Verified means a run of max(w) consecutive
// fully covered levels was found, ending at or above every constant
// level -d_ij; from there every monomial target of any higher level
// factors through the run, which yields the maximal-ideal exponent k.
struct MembershipCertificate {
    MembershipVerdict verdict = MembershipVerdict::NotVerifiedUpTo;
    long long level_bound = 0;
    std::vector<LevelReport> covered_levels;
    long long window_start = 0;  // meaningful when Verified
    long long window_width = 0;
    long long k = 0;  // M^k O^{mn} is contained in the module when Verified
    std::optional<Obstruction> obstruction;

    bool verified() const { return verdict == MembershipVerdict::Verified; }
};

inline long long default_level_bound(const GradedModule& mod) { return mod.level_min() + 30; }

inline MembershipCertificate check_membership(const GradedModule& mod, Mode mode,
                                              long long level_bound) {
    MembershipCertificate cert;
    cert.level_bound = level_bound;
    const long long e_min = mod.level_min();
    const long long width = mod.w.max();
    const long long guard = -mod.min_offset();  // highest level holding a constant target
    long long run_start = 0;
    bool in_run = false;
    for (long long e = e_min; e <= level_bound; ++e) {
        LevelReport rep = detail::check_level(mod, e, mode);
        cert.covered_levels.push_back(rep);
        if (!rep.covered()) {
            in_run = false;
            continue;
        }
        if (!in_run) {
            run_start = e;
            in_run = true;
        }
        if (e - run_start + 1 >= width && e >= guard) {
            cert.verdict = MembershipVerdict::Verified;
            cert.window_start = run_start;
            cert.window_width = e - run_start + 1;
            long long k = 1;
            for (long long d : mod.offsets)
                k = std::max(k, ceil_div(run_start + d, mod.w.min()));
            cert.k = k;
            return cert;
        }
    }
    // Locate a concrete missing target at the highest uncovered level.
    for (auto it = cert.covered_levels.rbegin(); it != cert.covered_levels.rend(); ++it) {
        if (it->covered()) continue;
        LevelSlice s = build_slice(mod, it->level, mode);
        Echelon ech = exact_rank(s.rows, static_cast<int>(s.ambient.size()));
        for (std::size_t t = 0; t < s.ambient.size(); ++t) {
            SparseRowQ unit{{static_cast<int>(t), Rat(1)}};
            if (!ech.contains(unit)) {
                cert.obstruction = Obstruction{it->level, s.ambient[t].first, s.ambient[t].second.i,
                                               s.ambient[t].second.j};
                break;
            }
        }
        break;
    }
    return cert;
}

struct WitnessTerm {
    int gen = 0;
    Monomial beta;
    Rat coeff;
};

struct MemberResult {
    bool is_member = false;
    long long level = 0;
    std::vector<WitnessTerm> witness;  // nonzero coefficients only
};

// Decide whether a shifted-homogeneous matrix lies in the module span at
// its level, producing an explicit combination on success.
inline MemberResult member(const PolyMat& target, const GradedModule& mod, Mode mode) {
    if (target.rows != mod.m || target.cols != mod.n)
        throw DimensionError("target shape differs from the module shape");
    std::optional<long long> level;
    for (int i = 0; i < mod.m; ++i)
        for (int j = 0; j < mod.n; ++j) {
            const Poly& f = target.at(i, j);
            if (f.is_zero()) continue;
            auto d = fil(f, mod.w);
            if (!is_whomog(f, mod.w, *d))
                throw InputError("target entry (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ") is not weighted homogeneous");
            long long e = *d - mod.offset_at(i, j);
            if (level && *level != e)
                throw InputError("target entries sit at inconsistent levels");
            level = e;
        }
    MemberResult res;
    if (!level) {  // zero target
        res.is_member = true;
        return res;
    }
    res.level = *level;
    LevelSlice s = build_slice(mod, *level, mode);
    SparseRowQ tv;
    for (int i = 0; i < mod.m; ++i)
        for (int j = 0; j < mod.n; ++j)
            for (const auto& [mono, c] : target.at(i, j).terms()) {
                int col = s.column_of(mono, i, j);
                if (col < 0) throw InputError("target monomial escapes its level slice");
                tv.emplace_back(col, c);
            }
    std::sort(tv.begin(), tv.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    auto sol = solve_combination(s.rows, static_cast<int>(s.ambient.size()), tv);
    if (!sol) return res;
    res.is_member = true;
    for (std::size_t t = 0; t < sol->size(); ++t)
        if ((*sol)[t] != 0) res.witness.push_back({s.meta[t].gen, s.meta[t].beta, (*sol)[t]});
    return res;
}

// Expand a witness back into a polynomial matrix; tests compare this
// against the original target bit for bit.
inline PolyMat expand_witness(const std::vector<WitnessTerm>& witness, const GradedModule& mod) {
    PolyMat acc(mod.m, mod.n, mod.nvars);
    for (const auto& wt : witness) {
        const auto& g = mod.gens[static_cast<std::size_t>(wt.gen)];
        Poly mult = Poly::term(mod.nvars, wt.beta, wt.coeff);
        for (int i = 0; i < mod.m; ++i)
            for (int j = 0; j < mod.n; ++j) acc.at(i, j) = acc.at(i, j) + mult * g.mat.at(i, j);
    }
    return acc;
}

// Per-level quotient dimensions: dim of ambient minus span rank, summed
// until the covered window certifies that all higher levels vanish.
struct CodimReport {
    bool finite = false;
    long long total = 0;
    std::vector<LevelReport> per_level;
    long long level_bound = 0;
};

inline CodimReport codimension(const GradedModule& mod, Mode mode, long long level_bound) {
    CodimReport rep;
    rep.level_bound = level_bound;
    const long long e_min = mod.level_min();
    const long long width = mod.w.max();
    const long long guard = -mod.min_offset();
    long long run_start = 0;
    bool in_run = false;
    for (long long e = e_min; e <= level_bound; ++e) {
        LevelReport lr = detail::check_level(mod, e, mode);
        rep.per_level.push_back(lr);
        rep.total += lr.ambient_dim - lr.span_rank;
        if (!lr.covered()) {
            in_run = false;
            continue;
        }
        if (!in_run) {
            run_start = e;
            in_run = true;
        }
        if (e - run_start + 1 >= width && e >= guard) {
            rep.finite = true;
            return rep;
        }
    }
    rep.finite = false;
    return rep;
}

}  // namespace detcert
