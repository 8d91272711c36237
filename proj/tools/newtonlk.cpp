// Command line front end: identity suite, example verification, CSV fitting.

#include "newtonlk/report.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

using namespace newtonlk;

int emit(const CommandResult& result, const std::string& out_path) {
    const std::string text = dump_json(result.report);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text_file(out_path, text);
    }
    return result.pass ? kExitOk : kExitChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Newton transformations and the operators L_k on hypersurfaces of space forms"};
    app.require_subcommand(1);

    IdentitySuiteConfig suite;
    std::string out_path;
    auto* cmd_suite = app.add_subcommand("identity-suite", "Check the algebraic identities on random shape operators");
    cmd_suite->add_option("--n-max", suite.n_max, "Largest dimension (>= 2)")->capture_default_str();
    cmd_suite->add_option("--trials", suite.trials, "Random matrices per dimension")->capture_default_str();
    cmd_suite->add_option("--seed", suite.seed)->capture_default_str();
    cmd_suite->add_option("--out", out_path, "JSON report path (stdout if omitted)");

    VerifyConfig verify;
    std::string family = "umbilic_sphere_cap";
    std::string axis = "spacelike";
    std::string csv_out;
    auto* cmd_verify = app.add_subcommand("verify-example", "Sample a catalog family, fit (A, b) and classify");
    cmd_verify->add_option("--family", family, "umbilic_sphere_cap | umbilic_hyperbolic | riemannian_product")
        ->capture_default_str();
    cmd_verify->add_option("--n", verify.family.n)->capture_default_str();
    cmd_verify->add_option("--k", verify.k)->capture_default_str();
    cmd_verify->add_option("--c", verify.family.c, "Ambient curvature sign (+1 sphere, -1 hyperbolic)")
        ->capture_default_str();
    cmd_verify->add_option("--tau", verify.family.tau)->capture_default_str();
    cmd_verify->add_option("--r", verify.family.r)->capture_default_str();
    cmd_verify->add_option("--m", verify.family.m)->capture_default_str();
    cmd_verify->add_option("--axis", axis, "spacelike | timelike | lightlike")->capture_default_str();
    cmd_verify->add_option("--samples", verify.samples)->capture_default_str();
    cmd_verify->add_option("--seed", verify.seed)->capture_default_str();
    cmd_verify->add_option("--tol-class", verify.tol_class)->capture_default_str();
    cmd_verify->add_flag("--constrain-selfadjoint", verify.constrain_selfadjoint);
    cmd_verify->add_option("--out", out_path, "JSON report path (stdout if omitted)");
    cmd_verify->add_option("--csv", csv_out, "Also write the samples as CSV");

    FitConfig fit;
    std::string csv_in;
    auto* cmd_fit = app.add_subcommand("fit", "Fit (A, b) to samples read from CSV");
    cmd_fit->add_option("--csv", csv_in, "Samples: u_1..u_n, x_0..x_{n+1}, Lkx_0..Lkx_{n+1}")->required();
    cmd_fit->add_option("--k", fit.k)->required();
    cmd_fit->add_option("--c", fit.c)->required();
    cmd_fit->add_option("--tol-class", fit.tol_class)->capture_default_str();
    cmd_fit->add_flag("--constrain-selfadjoint", fit.constrain_selfadjoint);
    cmd_fit->add_option("--out", out_path, "JSON report path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cmd_suite->parsed()) return emit(run_identity_suite(suite), out_path);
        if (cmd_verify->parsed()) {
            verify.family.kind = parse_family_kind(family);
            verify.family.axis = parse_axis_type(axis);
            const CommandResult result = run_verify_example(verify);
            if (!csv_out.empty()) write_text_file(csv_out, write_samples_csv(*result.samples));
            return emit(result, out_path);
        }
        if (cmd_fit->parsed()) {
            if (fit.c != 1 && fit.c != -1) throw DomainError("--c must be +1 or -1");
            fit.source = csv_in;
            const SampleSet samples = read_samples_csv(read_text_file(csv_in), fit.k, fit.c);
            samples.validate();
            return emit(run_fit(samples, fit), out_path);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitChecksFailed;
    }
    return kExitUsage;
}
