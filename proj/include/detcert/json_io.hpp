#pragma once

#include <string>

#include "detcert/certify.hpp"
#include "json.hpp"

namespace detcert {

using OrderedJson = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "detcert/1";

namespace jsonio {

inline OrderedJson family_json(const MatrixFamily& F) {
    OrderedJson j;
    j["m"] = F.m();
    j["n"] = F.n();
    j["N"] = F.nvars();
    j["weights"] = F.weights.w;
    j["vars"] = std::string(1, F.alphabet);
    OrderedJson rows = OrderedJson::array();
    for (int i = 0; i < F.m(); ++i) {
        OrderedJson row = OrderedJson::array();
        for (int jj = 0; jj < F.n(); ++jj)
            row.push_back(poly_to_string(F.entries.at(i, jj), F.alphabet));
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
}

inline OrderedJson degree_json(const DegreeMatrix& D) {
    OrderedJson rows = OrderedJson::array();
    for (int i = 0; i < D.m; ++i) {
        OrderedJson row = OrderedJson::array();
        for (int j = 0; j < D.n; ++j) row.push_back(D.at(i, j));
        rows.push_back(row);
    }
    OrderedJson j;
    j["d"] = rows;
    j["type_ok"] = D.whomog_type_ok;
    return j;
}

inline OrderedJson membership_json(const MembershipCertificate& c, char alphabet) {
    OrderedJson j;
    j["verdict"] = c.verified() ? "Verified" : "NotVerifiedUpTo";
    j["level_bound"] = c.level_bound;
    OrderedJson levels = OrderedJson::array();
    for (const auto& lr : c.covered_levels) {
        OrderedJson l;
        l["level"] = lr.level;
        l["ambient_dim"] = lr.ambient_dim;
        l["span_rank"] = lr.span_rank;
        levels.push_back(l);
    }
    j["levels"] = levels;
    if (c.verified()) {
        j["window_start"] = c.window_start;
        j["window_width"] = c.window_width;
        j["k"] = c.k;
    }
    if (c.obstruction) {
        OrderedJson o;
        o["level"] = c.obstruction->level;
        o["monomial"] = mono_to_string(c.obstruction->mono, alphabet);
        o["entry"] = OrderedJson::array({c.obstruction->i + 1, c.obstruction->j + 1});
        j["obstruction"] = o;
    }
    return j;
}

}  // namespace jsonio

inline OrderedJson to_json(const DeterminacyCertificate& c) {
    OrderedJson j;
    j["schema"] = kSchemaTag;
    j["kind"] = "determinacy";
    j["family"] = jsonio::family_json(c.family);
    j["degrees"] = jsonio::degree_json(c.degrees);
    j["verdict"] =
        c.finitely_determined() ? "FinitelyDetermined" : "NotVerified";
    if (c.finitely_determined()) j["k"] = c.k;
    j["membership"] = jsonio::membership_json(c.membership, c.family.alphabet);
    OrderedJson eids = OrderedJson::array();
    for (const auto& e : c.eids) {
        OrderedJson one;
        one["t"] = e.t;
        one["expected_codim"] = e.codim;
        one["statement"] = "X^" + std::to_string(e.t) + " is an EIDS";
        eids.push_back(one);
    }
    j["eids"] = eids;
    j["level_bound"] = c.level_bound;
    return j;
}

inline OrderedJson to_json(const CodimReport& r) {
    OrderedJson j;
    j["finite"] = r.finite;
    if (r.finite) j["total"] = r.total;
    OrderedJson levels = OrderedJson::array();
    for (const auto& lr : r.per_level) {
        OrderedJson l;
        l["level"] = lr.level;
        l["quotient_dim"] = lr.ambient_dim - lr.span_rank;
        levels.push_back(l);
    }
    j["per_level"] = levels;
    j["level_bound"] = r.level_bound;
    return j;
}

inline OrderedJson to_json(const Eq1Certificate& c) {
    OrderedJson j;
    j["schema"] = kSchemaTag;
    j["kind"] = "eq1";
    j["family"] = jsonio::family_json(c.linear_family);
    j["verdict"] = c.holds() ? "Holds" : "NotVerifiedUpTo";
    if (c.holds())
        j["r"] = c.r;
    else
        j["r_max"] = c.r_max;
    OrderedJson per = OrderedJson::array();
    for (const auto& lr : c.per_r) {
        OrderedJson l;
        l["r"] = lr.r;
        l["ambient_dim"] = lr.ambient_dim;
        l["span_rank"] = lr.span_rank;
        per.push_back(l);
    }
    j["per_r"] = per;
    OrderedJson obs = OrderedJson::array();
    for (const auto& o : c.obstructions) {
        OrderedJson one;
        one["r"] = o.r;
        one["monomial"] = mono_to_string(o.mono, c.linear_family.alphabet);
        one["entry"] = OrderedJson::array({o.i + 1, o.j + 1});
        obs.push_back(one);
    }
    j["obstructions"] = obs;
    return j;
}

inline OrderedJson to_json(const LiftCertificate& c) {
    OrderedJson j;
    j["schema"] = kSchemaTag;
    j["kind"] = "lift";
    j["d"] = c.d;
    j["eq1"] = to_json(c.eq1);
    j["lifted_family"] = jsonio::family_json(c.lifted);
    j["chain_rule_ok"] = c.chain_rule_ok;
    j["power_targets_ok"] = c.power_targets_ok;
    j["direct"] = to_json(c.direct);
    return j;
}

inline OrderedJson to_json(const GenericSampleReport& r) {
    OrderedJson j;
    j["schema"] = kSchemaTag;
    j["kind"] = "sample";
    j["N"] = r.N;
    j["m"] = r.m;
    j["n"] = r.n;
    j["d"] = r.d;
    j["trials"] = r.trials;
    j["passes"] = r.passes;
    j["seed"] = r.seed;
    OrderedJson fails = OrderedJson::array();
    for (const auto& t : r.failures) fails.push_back(t);
    j["failures"] = fails;
    return j;
}

inline OrderedJson to_json(const Cm2Certificate& c, const MatrixFamily& F) {
    OrderedJson j;
    j["schema"] = kSchemaTag;
    j["kind"] = "cm2";
    j["family"] = jsonio::family_json(F);
    j["verdict"] = c.verified() ? "Verified" : "NotVerifiedUpTo";
    if (c.verified()) j["r"] = c.r;
    OrderedJson mins = OrderedJson::array();
    for (const auto& f : c.maximal_minors) mins.push_back(poly_to_string(f, F.alphabet));
    j["maximal_minors"] = mins;
    j["ideal_generators"] = c.ideal_generator_count;
    j["membership"] = jsonio::membership_json(c.membership, F.alphabet);
    j["level_bound"] = c.level_bound;
    return j;
}

inline OrderedJson to_json(const CompleteJetResult& r) {
    OrderedJson j;
    j["schema"] = kSchemaTag;
    j["kind"] = "complete";
    j["r"] = r.r;
    j["d"] = r.d;
    j["seed"] = r.seed;
    j["trials_used"] = r.trials_used;
    j["jet_part"] = jsonio::family_json(r.jet_part);
    j["generic_part"] = jsonio::family_json(r.generic_part);
    j["completed"] = jsonio::family_json(r.completed);
    j["jet_identity_ok"] = r.jet_identity_ok;
    j["generic_certificate"] = to_json(r.generic_certificate);
    return j;
}

inline OrderedJson validate_json(const MatrixFamily& F, const DegreeMatrix& D) {
    OrderedJson j;
    j["schema"] = kSchemaTag;
    j["kind"] = "validate";
    j["family"] = jsonio::family_json(F);
    j["degrees"] = jsonio::degree_json(D);
    j["verdict"] = "valid";
    ScalingShifts sh = scaling_shifts(D);
    OrderedJson sc;
    sc["a"] = sh.a;
    sc["b"] = sh.b;
    sc["normalization"] = "a1 = 0; solutions form the one-parameter family a_i + c, b_j - c";
    j["scaling"] = sc;
    return j;
}

}  // namespace detcert
