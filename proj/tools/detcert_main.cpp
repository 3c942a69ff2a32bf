// detcert: certification engine for finite determinacy of polynomial
// matrix families and the determinantal singularities they define.
//
// Exit codes: 0 verified/valid, 1 usage or parse errors, 2 invalid
// input, 3 not verified within the configured bound.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "detcert/certify.hpp"
#include "detcert/family_file.hpp"
#include "detcert/json_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNotVerified = 3;

void print_membership(const detcert::MembershipCertificate& c, char alphabet) {
    std::cout << "  level  ambient  rank\n";
    for (const auto& lr : c.covered_levels)
        std::cout << "  " << lr.level << "\t " << lr.ambient_dim << "\t  " << lr.span_rank
                  << (lr.covered() ? "  (covered)" : "") << "\n";
    if (c.verified()) {
        std::cout << "window: levels " << c.window_start << ".."
                  << (c.window_start + c.window_width - 1) << "\n";
        std::cout << "k: " << c.k << "\n";
    } else if (c.obstruction) {
        std::cout << "obstruction: " << detcert::mono_to_string(c.obstruction->mono, alphabet)
                  << " * E" << (c.obstruction->i + 1) << (c.obstruction->j + 1) << " at level "
                  << c.obstruction->level << "\n";
    }
}

int run_validate(const std::string& path, bool as_json) {
    auto F = detcert::read_family_file(path);
    try {
        auto D = detcert::validate_whomog(F);
        if (as_json) {
            std::cout << detcert::validate_json(F, D).dump(2) << "\n";
        } else {
            std::cout << "D = " << D.to_string() << "\n";
            std::cout << "type: ok\n";
            auto sh = detcert::scaling_shifts(D);
            std::cout << "scaling exponents: a = (";
            for (std::size_t i = 0; i < sh.a.size(); ++i) std::cout << (i ? "," : "") << sh.a[i];
            std::cout << "), b = (";
            for (std::size_t j = 0; j < sh.b.size(); ++j) std::cout << (j ? "," : "") << sh.b[j];
            std::cout << ")  [a1 = 0; unique up to a_i + c, b_j - c]\n";
        }
        return kExitOk;
    } catch (const detcert::NotQuasihomogeneousError& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const detcert::TypeRelationError& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const detcert::UnconstrainedEntryError& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return kExitInvalid;
    }
}

int run_determinacy(const std::string& path, const std::string& mode_name,
                    std::optional<long long> bound, bool as_json) {
    auto F = detcert::read_family_file(path);
    auto cert = detcert::certify_finite_determinacy(F, bound);
    detcert::Mode codim_mode =
        mode_name == "strict" ? detcert::Mode::Strict : detcert::Mode::Extended;
    auto D = cert.degrees;
    auto mod = detcert::tangent_module(F, D, detcert::generators(F, D));
    auto codim = detcert::codimension(mod, codim_mode, cert.level_bound);
    if (as_json) {
        auto j = detcert::to_json(cert);
        j["codimension_mode"] = mode_name;
        j["codimension"] = detcert::to_json(codim);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "verdict: "
                  << (cert.finitely_determined() ? "FinitelyDetermined"
                                                 : "NotVerifiedUpTo " + std::to_string(cert.level_bound))
                  << "\n";
        print_membership(cert.membership, F.alphabet);
        if (codim.finite)
            std::cout << "codimension (" << mode_name << "): " << codim.total << "\n";
        else
            std::cout << "codimension (" << mode_name << "): not finite up to bound\n";
        for (const auto& e : cert.eids)
            std::cout << "EIDS: X^" << e.t << " (expected codim " << e.codim << ")\n";
    }
    return cert.finitely_determined() ? kExitOk : kExitNotVerified;
}

int run_eq1(const std::string& path, long long rmax, bool as_json) {
    auto L = detcert::read_family_file(path);
    auto cert = detcert::eq1_check(L, rmax);
    if (as_json) {
        std::cout << detcert::to_json(cert).dump(2) << "\n";
    } else {
        if (cert.holds())
            std::cout << "Holds(r=" << cert.r << ")\n";
        else
            std::cout << "NotVerifiedUpTo(" << cert.r_max << ")\n";
        std::cout << "  r  ambient  rank\n";
        for (const auto& lr : cert.per_r)
            std::cout << "  " << lr.r << "\t " << lr.ambient_dim << "\t  " << lr.span_rank << "\n";
        for (const auto& o : cert.obstructions)
            std::cout << "obstruction at r=" << o.r << ": "
                      << detcert::mono_to_string(o.mono, L.alphabet) << " * E" << (o.i + 1)
                      << (o.j + 1) << "\n";
    }
    return cert.holds() ? kExitOk : kExitNotVerified;
}

int run_lift(const std::string& path, long long d, long long rmax,
             std::optional<long long> bound, bool as_json) {
    auto L = detcert::read_family_file(path);
    auto eq1 = detcert::eq1_check(L, rmax);
    if (!eq1.holds()) {
        std::cerr << "lift refused: the linear certificate is NotVerifiedUpTo(" << eq1.r_max
                  << ")\n";
        return kExitNotVerified;
    }
    auto lift = detcert::lift_eq1(eq1, d, bound);
    if (as_json) {
        std::cout << detcert::to_json(lift).dump(2) << "\n";
    } else {
        std::cout << "eq1: Holds(r=" << eq1.r << ")\n";
        std::cout << "lifted family (d=" << d << "):\n" << detcert::write_family(lift.lifted);
        std::cout << "chain rule: " << (lift.chain_rule_ok ? "ok" : "FAILED") << "\n";
        std::cout << "power targets x^(d*r)*E_ij in tangent space: "
                  << (lift.power_targets_ok ? "ok" : "FAILED") << "\n";
        std::cout << "direct verdict: "
                  << (lift.direct.finitely_determined() ? "FinitelyDetermined" : "NotVerified")
                  << "\n";
        if (lift.direct.finitely_determined()) std::cout << "k: " << lift.direct.k << "\n";
        for (const auto& e : lift.direct.eids)
            std::cout << "EIDS: X^" << e.t << " (expected codim " << e.codim << ")\n";
    }
    return lift.direct.finitely_determined() ? kExitOk : kExitNotVerified;
}

int run_sample(int N, int m, int n, long long d, long long trials, uint64_t seed, bool as_json) {
    auto rep = detcert::generic_sample(N, m, n, d, trials, seed);
    if (as_json) {
        std::cout << detcert::to_json(rep).dump(2) << "\n";
    } else {
        std::cout << "trials: " << rep.trials << "\n";
        std::cout << "passes: " << rep.passes << "\n";
        std::cout << "seed: " << rep.seed << "\n";
        for (const auto& t : rep.failures) {
            std::cout << "failed tensor:";
            for (long long v : t) std::cout << ' ' << v;
            std::cout << "\n";
        }
    }
    return kExitOk;
}

int run_cm2(const std::string& path, std::optional<long long> bound, bool as_json) {
    auto F = detcert::read_family_file(path);
    auto cert = detcert::cm2_check(F, bound);
    if (as_json) {
        std::cout << detcert::to_json(cert, F).dump(2) << "\n";
    } else {
        if (cert.verified())
            std::cout << "Verified(r=" << cert.r << ")\n";
        else
            std::cout << "NotVerifiedUpTo(" << cert.level_bound << ")\n";
        std::cout << "maximal minors:\n";
        for (const auto& f : cert.maximal_minors)
            std::cout << "  " << detcert::poly_to_string(f, F.alphabet) << "\n";
        std::cout << "ideal generators: " << cert.ideal_generator_count << "\n";
    }
    return cert.verified() ? kExitOk : kExitNotVerified;
}

int run_complete(const std::string& path, long long d, uint64_t seed, int retries,
                 std::optional<long long> bound, bool as_json) {
    auto G = detcert::read_family_file(path);
    detcert::CompleteJetResult res;
    try {
        res = detcert::complete_jet(G, d, seed, retries, bound);
    } catch (const detcert::InputError& e) {
        std::string msg = e.what();
        if (msg.find("retry limit") != std::string::npos) {
            std::cerr << msg << "\n";
            return kExitNotVerified;
        }
        throw;
    }
    if (as_json) {
        std::cout << detcert::to_json(res).dump(2) << "\n";
    } else {
        std::cout << "jet order r: " << res.r << "\n";
        std::cout << "completed family:\n" << detcert::write_family(res.completed);
        std::cout << "jet identity j^r(H) = G: " << (res.jet_identity_ok ? "ok" : "FAILED") << "\n";
        std::cout << "generic part verdict: FinitelyDetermined (k=" << res.generic_certificate.k
                  << ")\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certification engine for determinantal singularity families"};
    app.require_subcommand(1);

    std::string file;
    std::string mode = "extended";
    bool as_json = false;
    long long rmax = 6;
    long long d = 1;
    long long bound_flag = -1000000;  // sentinel: not set
    int N = 1, m = 1, n = 1;
    long long trials = 100;
    uint64_t seed = 1;
    int retries = 8;

    auto add_bound = [&](CLI::App* cmd) {
        cmd->add_option("--level-bound", bound_flag, "highest level scanned");
    };
    auto bound_opt = [&]() -> std::optional<long long> {
        if (bound_flag == -1000000) return std::nullopt;
        return bound_flag;
    };

    auto* c_validate = app.add_subcommand("validate", "check weighted homogeneity and type");
    c_validate->add_option("file", file)->required();
    c_validate->add_flag("--json", as_json);

    auto* c_det = app.add_subcommand("determinacy", "certify finite determinacy");
    c_det->add_option("file", file)->required();
    c_det->add_option("--mode", mode, "codimension mode: strict|extended")
        ->check(CLI::IsMember({"strict", "extended"}));
    add_bound(c_det);
    c_det->add_flag("--json", as_json);

    auto* c_eq1 = app.add_subcommand("eq1", "test the linear membership condition");
    c_eq1->add_option("file", file)->required();
    c_eq1->add_option("--rmax", rmax);
    c_eq1->add_flag("--json", as_json);

    auto* c_lift = app.add_subcommand("lift", "lift a verified linear family to degree d");
    c_lift->add_option("file", file)->required();
    c_lift->add_option("--d", d)->required();
    c_lift->add_option("--rmax", rmax);
    add_bound(c_lift);
    c_lift->add_flag("--json", as_json);

    auto* c_sample = app.add_subcommand("sample", "genericity sampling");
    c_sample->add_option("--N", N)->required();
    c_sample->add_option("--m", m)->required();
    c_sample->add_option("--n", n)->required();
    c_sample->add_option("--d", d)->required();
    c_sample->add_option("--trials", trials);
    c_sample->add_option("--seed", seed);
    c_sample->add_flag("--json", as_json);

    auto* c_cm2 = app.add_subcommand("cm2", "codimension-two ideal criterion for (n+1) x n");
    c_cm2->add_option("file", file)->required();
    add_bound(c_cm2);
    c_cm2->add_flag("--json", as_json);

    auto* c_complete = app.add_subcommand("complete", "complete a jet to a certified family");
    c_complete->add_option("file", file)->required();
    c_complete->add_option("--d", d)->required();
    c_complete->add_option("--seed", seed);
    c_complete->add_option("--retries", retries);
    add_bound(c_complete);
    c_complete->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c_validate->parsed()) return run_validate(file, as_json);
        if (c_det->parsed()) return run_determinacy(file, mode, bound_opt(), as_json);
        if (c_eq1->parsed()) return run_eq1(file, rmax, as_json);
        if (c_lift->parsed()) return run_lift(file, d, rmax, bound_opt(), as_json);
        if (c_sample->parsed())
            return run_sample(N, m, n, d, trials, seed, as_json);
        if (c_cm2->parsed()) return run_cm2(file, bound_opt(), as_json);
        if (c_complete->parsed())
            return run_complete(file, d, seed, retries, bound_opt(), as_json);
    } catch (const detcert::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const detcert::NotQuasihomogeneousError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const detcert::TypeRelationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const detcert::UnconstrainedEntryError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const detcert::DegreeConditionError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const detcert::Error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitUsage;
}
