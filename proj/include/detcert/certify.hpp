#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "detcert/tangent.hpp"

namespace detcert {

// Deterministic small-integer stream for genericity sampling; the whole
// report is reproducible from the seed alone.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    // uniform integer numerator in [-9, 9]
    long long coefficient() { return static_cast<long long>(next() % 19ull) - 9; }
};

struct EidsConclusion {
    int t = 0;
    long long codim = 0;  // expected codimension (m-t+1)(n-t+1)
};

enum class DeterminacyVerdict { FinitelyDetermined, NotVerified };

struct DeterminacyCertificate {
    MatrixFamily family;
    DegreeMatrix degrees;
    DeterminacyVerdict verdict = DeterminacyVerdict::NotVerified;
    long long k = 0;  // valid when finitely determined
    MembershipCertificate membership;
    std::vector<EidsConclusion> eids;  // populated only on a verified run
    long long level_bound = 0;

    bool finitely_determined() const { return verdict == DeterminacyVerdict::FinitelyDetermined; }
};

// Strict-mode membership scan; a verified window makes the family
// finitely determined and every determinantal variety it defines an
// essentially isolated determinantal singularity. A NotVerified verdict
// is only a bounded failure to verify, never a disproof.
inline DeterminacyCertificate certify_finite_determinacy(
    const MatrixFamily& F, std::optional<long long> level_bound = {}) {
    DeterminacyCertificate cert;
    cert.family = F;
    cert.degrees = validate_whomog(F);
    for (long long d : cert.degrees.d)
        if (d < 1)
            throw InputError(
                "entries of weighted degree below 1 are outside the graded engine; "
                "reduce unit entries first");
    GeneratorSet G = generators(F, cert.degrees);
    GradedModule mod = tangent_module(F, cert.degrees, G);
    cert.level_bound = level_bound.value_or(default_level_bound(mod));
    cert.membership = check_membership(mod, Mode::Strict, cert.level_bound);
    if (cert.membership.verified()) {
        cert.verdict = DeterminacyVerdict::FinitelyDetermined;
        cert.k = cert.membership.k;
        for (int t = 1; t <= std::min(F.m(), F.n()); ++t)
            cert.eids.push_back({t, expected_codim(RankStratum{F.m(), F.n(), t})});
    }
    return cert;
}

// Module generated by { u_l * dL/du_l, R_lk(L), C_pq(L) } for a linear
// family L. All generators are homogeneous of degree one, so the degree
// matrix is uniformly one and every shift vanishes.
inline GradedModule eq1_module(const MatrixFamily& L) {
    const int m = L.m(), n = L.n(), N = L.nvars();
    if (!L.weights.is_unit()) throw InputError("linear families use unit weights");
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            const Poly& f = L.entries.at(i, j);
            if (f.is_zero()) continue;
            for (const auto& [mono, c] : f.terms())
                if (mono.total_degree() != 1)
                    throw InputError("entry (" + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1) + ") is not homogeneous linear");
        }
    GradedModule mod;
    mod.m = m;
    mod.n = n;
    mod.nvars = N;
    mod.w = Weights::ones(N);
    mod.offsets.assign(static_cast<std::size_t>(m) * n, 1);
    for (int lam = 0; lam < N; ++lam) {
        PolyMat mat(m, n, N);
        Poly u = Poly::variable(N, lam);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) mat.at(i, j) = u * partial(L.entries.at(i, j), lam);
        mod.gens.push_back({std::move(mat), 0, false,
                            std::string(1, L.alphabet) + std::to_string(lam + 1) + "L" +
                                std::to_string(lam + 1)});
    }
    for (int l = 0; l < m; ++l)
        for (int k = 0; k < m; ++k) {
            PolyMat mat(m, n, N);
            for (int j = 0; j < n; ++j) mat.at(l, j) = L.entries.at(k, j);
            mod.gens.push_back(
                {std::move(mat), 0, false, "R" + std::to_string(l + 1) + std::to_string(k + 1)});
        }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            PolyMat mat(m, n, N);
            for (int i = 0; i < m; ++i) mat.at(i, p) = L.entries.at(i, q);
            mod.gens.push_back(
                {std::move(mat), 0, false, "C" + std::to_string(p + 1) + std::to_string(q + 1)});
        }
    return mod;
}

enum class Eq1Verdict { Holds, NotVerifiedUpTo };

struct Eq1LevelReport {
    long long r = 0;
    long long ambient_dim = 0;
    long long span_rank = 0;
    bool full() const { return span_rank == ambient_dim; }
};

struct Eq1Obstruction {
    long long r = 0;
    Monomial mono;
    int i = 0, j = 0;  // 0-based entry
};

struct Eq1Certificate {
    MatrixFamily linear_family;
    Eq1Verdict verdict = Eq1Verdict::NotVerifiedUpTo;
    long long r = 0;  // minimal verified exponent when the condition holds
    long long r_max = 0;
    std::vector<Eq1LevelReport> per_r;
    std::vector<Eq1Obstruction> obstructions;  // first missing target per failed exponent

    bool holds() const { return verdict == Eq1Verdict::Holds; }
};

// Degree-by-degree test of whether the module above contains a power of
// the maximal ideal times the full matrix module: the degree-r slice is
// spanned by the degree-(r-1) monomial multiples of the generators, and
// a full slice propagates to all higher degrees.
inline Eq1Certificate eq1_check(const MatrixFamily& L, long long r_max) {
    Eq1Certificate cert;
    cert.linear_family = L;
    cert.r_max = r_max;
    GradedModule mod = eq1_module(L);
    for (long long r = 1; r <= r_max; ++r) {
        LevelSlice s = build_slice(mod, r - 1, Mode::Extended);
        long long dim = static_cast<long long>(s.ambient.size());
        long long rank = modp_rank(s.rows, static_cast<int>(dim));
        std::optional<Echelon> ech;
        if (rank != dim) {
            ech = exact_rank(s.rows, static_cast<int>(dim));
            rank = ech->rank();
        }
        cert.per_r.push_back({r, dim, rank});
        if (rank == dim) {
            cert.verdict = Eq1Verdict::Holds;
            cert.r = r;
            return cert;
        }
        for (std::size_t t = 0; t < s.ambient.size(); ++t) {
            SparseRowQ unit{{static_cast<int>(t), Rat(1)}};
            if (!ech->contains(unit)) {
                cert.obstructions.push_back(
                    {r, s.ambient[t].first, s.ambient[t].second.i, s.ambient[t].second.j});
                break;
            }
        }
    }
    return cert;
}

struct LiftCertificate {
    Eq1Certificate eq1;
    long long d = 0;
    MatrixFamily lifted;       // entries of L with u_l replaced by x_l^d
    bool chain_rule_ok = false;  // x_l * dF/dx_l equals d * (u_l dL/du_l) after substitution
    bool power_targets_ok = false;  // every x_l^{d r} E_ij certified in the tangent space
    DeterminacyCertificate direct;  // independent engine run on the lifted family
};

// Power substitution u_l -> x_l^d turns a verified linear family into a
// degree-d family that is again finitely determined. Both the symbolic
// chain-rule bookkeeping and a direct engine run are recorded.
inline LiftCertificate lift_eq1(const Eq1Certificate& cert, long long d,
                                std::optional<long long> level_bound = {}) {
    if (!cert.holds()) throw InputError("lift requires a verified linear certificate");
    if (d < 1) throw InputError("substitution degree must be at least 1");
    const MatrixFamily& L = cert.linear_family;
    const int m = L.m(), n = L.n(), N = L.nvars();
    LiftCertificate out;
    out.eq1 = cert;
    out.d = d;
    PolyMat entries(m, n, N);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) entries.at(i, j) = substitute_powers(L.entries.at(i, j), d);
    out.lifted = MatrixFamily(std::move(entries), Weights::ones(N), 'x');

    out.chain_rule_ok = true;
    for (int lam = 0; lam < N && out.chain_rule_ok; ++lam) {
        Poly x = Poly::variable(N, lam);
        for (int i = 0; i < m && out.chain_rule_ok; ++i)
            for (int j = 0; j < n; ++j) {
                Poly lhs = x * partial(out.lifted.entries.at(i, j), lam);
                Poly rhs = make_rat(d) *
                           substitute_powers(Poly::variable(N, lam) * partial(L.entries.at(i, j), lam), d);
                if (lhs != rhs) {
                    out.chain_rule_ok = false;
                    break;
                }
            }
    }

    out.direct = certify_finite_determinacy(out.lifted, level_bound);

    DegreeMatrix D = validate_whomog(out.lifted);
    GradedModule mod = tangent_module(out.lifted, D, generators(out.lifted, D));
    out.power_targets_ok = true;
    for (int lam = 0; lam < N && out.power_targets_ok; ++lam)
        for (int i = 0; i < m && out.power_targets_ok; ++i)
            for (int j = 0; j < n; ++j) {
                PolyMat target(m, n, N);
                target.at(i, j) =
                    Poly::term(N, Monomial::var(N, lam, static_cast<int>(d * cert.r)), 1);
                if (!member(target, mod, Mode::Strict).is_member) {
                    out.power_targets_ok = false;
                    break;
                }
            }
    return out;
}

struct PerturbCertificate {
    DeterminacyCertificate base;
    MatrixFamily sum;  // base plus perturbation
    std::string conclusion;
    std::string semicontinuity_note;
};

// Adding terms of strictly lower weighted degree never destroys a
// verified family. The perturbed family is generally not weighted
// homogeneous, so the conclusion is recorded by principle rather than by
// a second engine run; the codimension inequality is noted unverified.
inline PerturbCertificate perturb_check(const MatrixFamily& F, const MatrixFamily& G,
                                        std::optional<long long> level_bound = {}) {
    if (G.m() != F.m() || G.n() != F.n() || G.nvars() != F.nvars())
        throw DimensionError("perturbation shape differs from the base family");
    PerturbCertificate out;
    out.base = certify_finite_determinacy(F, level_bound);
    if (!out.base.finitely_determined())
        throw InputError("base family is not certified finitely determined");
    std::vector<std::pair<int, int>> bad;
    std::string bad_term;
    for (int i = 0; i < F.m(); ++i)
        for (int j = 0; j < F.n(); ++j)
            for (const auto& [mono, c] : G.entries.at(i, j).terms())
                if (wdeg(mono, F.weights) >= out.base.degrees.at(i, j)) {
                    bad.emplace_back(i + 1, j + 1);
                    if (bad_term.empty())
                        bad_term = poly_to_string(Poly::term(G.nvars(), mono, c), G.alphabet);
                }
    if (!bad.empty()) {
        std::string msg = "perturbation terms reach the base degrees at entries:";
        for (auto [i, j] : bad) msg += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
        throw DegreeConditionError(msg, bad, bad_term);
    }
    out.sum = MatrixFamily(F.entries + G.entries, F.weights, F.alphabet);
    out.conclusion =
        "perturbed family is finitely determined (lower-order terms preserve the verdict)";
    out.semicontinuity_note =
        "extended codimension of the perturbed family is bounded by the base value "
        "(recorded, not verified: the sum is not weighted homogeneous)";
    return out;
}

// L with entries sum_l a(i,j)_l x_l^d from a coefficient tensor laid out
// (i, j, l) row-major.
inline MatrixFamily generic_family(int N, int m, int n, long long d,
                                   const std::vector<long long>& tensor) {
    if (tensor.size() != static_cast<std::size_t>(N) * m * n)
        throw DimensionError("coefficient tensor needs N*m*n entries");
    PolyMat entries(m, n, N);
    std::size_t t = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            Poly f(N);
            for (int lam = 0; lam < N; ++lam) {
                long long a = tensor[t++];
                if (a != 0)
                    f.add_term(Monomial::var(N, lam, static_cast<int>(d)), make_rat(a));
            }
            entries.at(i, j) = f;
        }
    return MatrixFamily(std::move(entries), Weights::ones(N), 'x');
}

struct GenericSampleReport {
    int N = 0, m = 0, n = 0;
    long long d = 0;
    long long trials = 0;
    long long passes = 0;
    uint64_t seed = 0;
    std::vector<std::vector<long long>> failures;  // coefficient tensors that failed
};

// Sample coefficient tensors with numerators uniform in [-9, 9] and run
// the determinacy engine on each family. Near-total success is the
// expected outcome; failures keep their tensors for inspection. Trials
// use a degree-scaled level bound: generic families verify well below
// 5d, and degenerate draws must fail fast rather than scan the full
// default range.
inline GenericSampleReport generic_sample(int N, int m, int n, long long d, long long trials,
                                          uint64_t seed) {
    if (N < 1 || m < 1 || n < 1 || d < 1 || trials < 1)
        throw InputError("sample parameters must be positive");
    GenericSampleReport rep;
    rep.N = N;
    rep.m = m;
    rep.n = n;
    rep.d = d;
    rep.trials = trials;
    rep.seed = seed;
    SplitMix64 rng(seed);
    for (long long t = 0; t < trials; ++t) {
        std::vector<long long> tensor;
        tensor.reserve(static_cast<std::size_t>(N) * m * n);
        for (int i = 0; i < m * n * N; ++i) tensor.push_back(rng.coefficient());
        bool pass = false;
        try {
            MatrixFamily L = generic_family(N, m, n, d, tensor);
            auto cert = certify_finite_determinacy(L, 5 * d);
            pass = cert.finitely_determined();
        } catch (const Error&) {
            pass = false;
        }
        if (pass)
            ++rep.passes;
        else
            rep.failures.push_back(std::move(tensor));
    }
    return rep;
}

struct CompleteJetResult {
    MatrixFamily jet_part;      // G, the prescribed jet
    long long r = 0;            // inferred jet order
    long long d = 0;            // degree of the generic completion
    uint64_t seed = 0;
    int trials_used = 0;
    MatrixFamily generic_part;  // certified generic family F
    MatrixFamily completed;     // H = G + F with j^r(H) = G
    bool jet_identity_ok = false;
    DeterminacyCertificate generic_certificate;
};

// Complete an arbitrary polynomial jet to a finitely determined family
// by adding a certified generic part of strictly higher degree.
inline CompleteJetResult complete_jet(const MatrixFamily& G, long long d, uint64_t seed,
                                      int retry_limit = 8,
                                      std::optional<long long> level_bound = {}) {
    if (!G.weights.is_unit())
        throw InputError("jet completion works with unit weights (ordinary degree)");
    long long r = 0;
    for (const auto& p : G.entries.a) r = std::max(r, total_degree(p));
    r = std::max(r, 0LL);
    if (d < r + 1) throw InputError("completion degree must exceed the jet order");
    SplitMix64 rng(seed);
    const int N = G.nvars(), m = G.m(), n = G.n();
    // degree-scaled trial bound, like the sampler's
    long long trial_bound = level_bound.value_or(5 * d);
    for (int trial = 1; trial <= retry_limit; ++trial) {
        std::vector<long long> tensor;
        for (int i = 0; i < m * n * N; ++i) tensor.push_back(rng.coefficient());
        try {
            MatrixFamily F = generic_family(N, m, n, d, tensor);
            auto cert = certify_finite_determinacy(F, trial_bound);
            if (!cert.finitely_determined()) continue;
            CompleteJetResult out;
            out.jet_part = G;
            out.r = r;
            out.d = d;
            out.seed = seed;
            out.trials_used = trial;
            out.generic_part = F;
            out.completed = MatrixFamily(G.entries + F.entries, G.weights, G.alphabet);
            PolyMat truncated(m, n, N);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j)
                    truncated.at(i, j) = jet(out.completed.entries.at(i, j), r);
            out.jet_identity_ok = (truncated == G.entries);
            out.generic_certificate = std::move(cert);
            return out;
        } catch (const Error&) {
            continue;
        }
    }
    throw InputError("no certified generic completion found within the retry limit");
}

enum class Cm2Verdict { Verified, NotVerifiedUpTo };

struct Cm2Certificate {
    Cm2Verdict verdict = Cm2Verdict::NotVerifiedUpTo;
    long long r = 0;  // M^r lies in the ideal when verified
    MembershipCertificate membership;
    std::vector<Poly> maximal_minors;
    long long ideal_generator_count = 0;
    long long level_bound = 0;

    bool verified() const { return verdict == Cm2Verdict::Verified; }
};

// Ideal-theoretic determinacy test for (n+1) x n families: the ideal
// generated by the 2 x 2 minors of the Jacobian matrix of the maximal
// minors, together with the minors themselves, must contain a power of
// the maximal ideal.
inline Cm2Certificate cm2_check(const MatrixFamily& F, std::optional<long long> level_bound = {}) {
    if (F.m() != F.n() + 1)
        throw DimensionError("shape must be (n+1) x n for the codimension-two test");
    DegreeMatrix D = validate_whomog(F);
    for (long long dv : D.d)
        if (dv < 1) throw InputError("entries of weighted degree below 1 are not supported");
    const int n = F.n(), N = F.nvars();
    Cm2Certificate cert;
    cert.maximal_minors = minors(F, n);
    const int nf = static_cast<int>(cert.maximal_minors.size());  // n + 1
    PolyMat jac(nf, N, N);
    for (int i = 0; i < nf; ++i)
        for (int v = 0; v < N; ++v) jac.at(i, v) = partial(cert.maximal_minors[static_cast<std::size_t>(i)], v);
    std::vector<Poly> ideal_gens;
    for (int i1 = 0; i1 < nf; ++i1)
        for (int i2 = i1 + 1; i2 < nf; ++i2)
            for (int v1 = 0; v1 < N; ++v1)
                for (int v2 = v1 + 1; v2 < N; ++v2)
                    ideal_gens.push_back(jac.at(i1, v1) * jac.at(i2, v2) -
                                         jac.at(i1, v2) * jac.at(i2, v1));
    for (const auto& f : cert.maximal_minors) ideal_gens.push_back(f);
    GradedModule mod = ideal_module(ideal_gens, F.weights);
    cert.ideal_generator_count = static_cast<long long>(mod.gens.size());
    cert.level_bound = level_bound.value_or(default_level_bound(mod));
    cert.membership = check_membership(mod, Mode::Extended, cert.level_bound);
    if (cert.membership.verified()) {
        cert.verdict = Cm2Verdict::Verified;
        cert.r = cert.membership.k;
    }
    return cert;
}

}  // namespace detcert
