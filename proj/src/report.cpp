#include "newtonlk/report.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace newtonlk {

namespace {

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Tracker {
    double max = 0.0;
    void add(double v) { max = std::max(max, v); }
};

Json rank_json(const RankInfo& r) {
    return Json{{"rank", r.rank},
                {"unknowns", r.unknowns},
                {"deficient", r.deficient},
                {"tolerance", r.tolerance},
                {"null_space_dimension", static_cast<int>(r.null_space.cols())}};
}

Json fit_json(const AffineFit& f) {
    return Json{{"A", to_json(f.A)},
                {"b", to_json(f.b)},
                {"constrained_selfadjoint", f.constrained},
                {"rms_residual", f.rms_residual},
                {"selfadjoint_defect", f.selfadjoint_defect},
                {"rank_info", rank_json(f.rank_info)}};
}

Json classification_json(const ClassificationReport& rep) {
    const auto& e = rep.evidence;
    Json also = Json::array();
    for (auto v : e.also_matches) also.push_back(to_string(v));
    return Json{{"verdict", to_string(rep.verdict)},
                {"also_matches", also},
                {"thresholds", {{"tol_class", rep.thresholds.tol_class}, {"cluster_gap", rep.thresholds.cluster_gap}}},
                {"evidence",
                 {{"frames_available", e.frames_available},
                  {"Hk1_mean", e.hk1_mean},
                  {"Hk1_mean_abs", e.hk1_mean_abs},
                  {"Hk1_stddev", e.hk1_stddev},
                  {"Hk_mean", e.hk_mean},
                  {"Hk_stddev", e.hk_stddev},
                  {"umbilicity_defect", e.umbilicity_defect},
                  {"quadratic_lambda", e.quadratic.lambda},
                  {"quadratic_defect", e.quadratic.defect},
                  {"quadratic_defect_normalized", e.quadratic_defect_normalized},
                  {"curvature_clusters", e.curvature_clusters},
                  {"alpha_mean", e.alpha_mean},
                  {"alpha_stddev", e.alpha_stddev},
                  {"b_max_abs", e.b_norm},
                  {"affine_rms_relative", e.affine_rms_relative},
                  {"isotropy_defect", e.isotropy_defect},
                  {"affine_eigen_clusters", e.affine_eigen_clusters}}}};
}

Json family_echo(const FamilyParams& p) {
    return Json{{"family", to_string(p.kind)}, {"n", p.n},     {"c", p.c},
                {"tau", p.tau},                {"r", p.r},     {"m", p.m},
                {"axis", to_string(p.axis)}};
}

}  // namespace

Mat random_symmetric(int n, std::mt19937_64& rng) {
    Mat s(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) s(i, j) = s(j, i) = 2.0 * unit_draw(rng) - 1.0;
    }
    return s;
}

CommandResult run_identity_suite(const IdentitySuiteConfig& cfg) {
    if (cfg.n_max < 2) throw DomainError("identity-suite: n_max must be >= 2");
    if (cfg.trials < 1) throw DomainError("identity-suite: trials must be >= 1");
    const IdentityTolerances tol;
    std::mt19937_64 rng(cfg.seed);

    Tracker trace_p, trace_sp, trace_s2p, rec_vs_sum, commutation, cayley, scalar, eigen, telescoping, parity, charpoly;
    for (int n = 2; n <= cfg.n_max; ++n) {
        for (int t = 0; t < cfg.trials; ++t) {
            const ShapeMatrix S(random_symmetric(n, rng));
            const Mat& m = S.matrix();
            const double scale = std::max(1.0, m.cwiseAbs().rowwise().sum().maxCoeff());
            auto rel = [scale](double v, int deg) { return v / std::pow(scale, deg); };

            Eigen::SelfAdjointEigenSolver<Mat> es(m);
            const PrincipalCurvatures kappa(std::vector<double>(es.eigenvalues().data(), es.eigenvalues().data() + n));
            const auto s = elementary_symmetric(kappa.values());
            const auto s_neg = elementary_symmetric(kappa.flipped().values());

            scalar.add(rel(scalar_curvature_residual(S, 1), 2));
            scalar.add(rel(scalar_curvature_residual(S, -1), 2));
            const auto cp = characteristic_polynomial(S);
            for (int i = 0; i < n; ++i) charpoly.add(rel(std::abs(evaluate_polynomial(cp, kappa[i])), n));

            for (int k = 0; k <= n; ++k) {
                const Mat P = newton_matrix(S, k);
                rec_vs_sum.add(rel(max_abs(Mat(P - newton_matrix_sum(S, k))), k));
                commutation.add(rel(max_abs(Mat(m * P - P * m)), k + 1));
                parity.add(rel(std::abs(s_neg[k] - ((k % 2) ? -s[k] : s[k])), k));
                if (k == n) {
                    cayley.add(rel(max_abs(P), n));
                    continue;
                }
                const auto ti = trace_identities(S, k);
                trace_p.add(rel(ti.residual_p, k));
                trace_sp.add(rel(ti.residual_sp, k + 1));
                trace_s2p.add(rel(ti.residual_s2p, k + 2));

                const auto mu = newton_eigenvalues(kappa, k);
                const auto mu_neg = newton_eigenvalues(kappa.flipped(), k);
                const Mat D = es.eigenvectors().transpose() * P * es.eigenvectors();
                double sum_mu = 0.0;
                for (int i = 0; i < n; ++i) {
                    eigen.add(rel(std::abs(D(i, i) - mu[i]), k));
                    // flipped() reverses the order of the curvatures
                    parity.add(rel(std::abs(mu_neg[n - 1 - i] - ((k % 2) ? -mu[i] : mu[i])), k));
                    sum_mu += mu[i];
                }
                telescoping.add(rel(std::abs(sum_mu - (n - k) * s[k]), k));
            }
        }
    }

    struct Row {
        const char* name;
        double value;
        double tolerance;
    };
    const Row rows[] = {
        {"trace_P", trace_p.max, tol.algebraic},
        {"trace_SP", trace_sp.max, tol.algebraic},
        {"trace_S2P", trace_s2p.max, tol.algebraic},
        {"recursion_vs_sum", rec_vs_sum.max, tol.algebraic},
        {"commutation", commutation.max, tol.algebraic},
        {"cayley_hamilton", cayley.max, tol.algebraic},
        {"scalar_curvature", scalar.max, tol.algebraic},
        {"characteristic_polynomial_roots", charpoly.max, tol.algebraic},
        {"trace_telescoping", telescoping.max, tol.algebraic},
        {"orientation_parity", parity.max, tol.algebraic},
        {"eigenstructure", eigen.max, tol.eigenstructure},
    };
    Json identities = Json::object();
    bool pass = true;
    for (const auto& r : rows) {
        const bool ok = r.value <= r.tolerance;
        pass = pass && ok;
        identities[r.name] = Json{{"max_residual", r.value}, {"tolerance", r.tolerance}, {"pass", ok}};
    }

    CommandResult out;
    out.pass = pass;
    out.report = Json{{"schema_version", kSchemaVersion},
                      {"command", "identity-suite"},
                      {"config_echo", {{"n_max", cfg.n_max}, {"trials", cfg.trials}, {"seed", cfg.seed}}},
                      {"predicted", nullptr},
                      {"fitted", nullptr},
                      {"residuals", nullptr},
                      {"identities", identities},
                      {"classification", nullptr},
                      {"pass", pass}};
    return out;
}

Verdict expected_verdict(const ExampleFamily& family, int) {
    if (family.params().kind == FamilyKind::RiemannianProduct) return Verdict::IsoparametricProduct;
    return family.params().tau == 0.0 ? Verdict::ZeroHk1ConstHk : Verdict::TotallyUmbilical;
}

CommandResult run_verify_example(const VerifyConfig& cfg) {
    const ExampleFamily family(cfg.family);
    const int n = family.n();
    if (cfg.k < 0 || cfg.k > n - 1) throw DomainError("verify-example: k must be in [0, n-1]");
    if (cfg.samples < 2) throw DomainError("verify-example: needs at least 2 samples");
    const Chart chart = family.chart();
    const LkTolerances lk_tol;

    SampleSet samples = generate_samples(chart, cfg.k, cfg.samples, cfg.seed);

    double pos_disc = 0.0, gauss_disc = 0.0, hk_err = 0.0, hk1_err = 0.0;
    const double hk_pred = predicted_Hk(family, cfg.k);
    const double hk1_pred = predicted_Hk(family, cfg.k + 1);
    std::vector<FrameData> frames;
    frames.reserve(samples.points.size());
    for (std::size_t i = 0; i < samples.points.size(); ++i) {
        const Vec& u = samples.points[i].u;
        frames.push_back(frame(chart, u));
        const auto prof = frames.back().profile();
        hk_err = std::max(hk_err, std::abs(prof.H_at(cfg.k) - hk_pred));
        hk1_err = std::max(hk1_err, std::abs(prof.H_at(cfg.k + 1) - hk1_pred));
        if (static_cast<int>(i) < cfg.dual_path_points) {
            pos_disc = std::max(pos_disc, lk_position(frames.back(), chart.jet(u), cfg.k).discrepancy);
            gauss_disc = std::max(gauss_disc, lk_gauss(chart, u, cfg.k).discrepancy);
        }
    }

    const AffineFit fit = fit_affine(samples, cfg.constrain_selfadjoint);
    const AffineFit sa_fit = cfg.constrain_selfadjoint ? fit : fit_affine(samples, true);
    const PredictedAffine pred = predicted_affine(family, cfg.k);
    const AffineComparison cmp = compare_affine(fit, pred);
    const StructuralReport st = structural_checks(chart, samples, sa_fit);
    const ClassificationReport cls =
        classify(samples, fit, frames, ClassificationThresholds{cfg.tol_class, ClassificationThresholds{}.cluster_gap});

    const Verdict expected = expected_verdict(family, cfg.k);
    Json checks = Json::object();
    checks["affine_matches_prediction"] = cmp.within_tolerance;
    checks["rms_residual"] = fit.rms_residual <= 1e-5;
    checks["selfadjoint_defect"] = fit.selfadjoint_defect <= 1e-6;
    checks["lk_position_dual_path"] = pos_disc <= lk_tol.position;
    checks["lk_gauss_dual_path"] = gauss_disc <= lk_tol.gauss;
    checks["predicted_Hk"] = hk_err <= 1e-8 && hk1_err <= 1e-8;
    checks["ax_relation"] = st.ax_residual <= 1e-4;
    checks["eq1bis_constancy"] = st.eq1bis_stddev <= 1e-6;
    checks["verdict"] = cls.verdict == expected;
    bool pass = true;
    for (const auto& [_, v] : checks.items()) pass = pass && v.get<bool>();

    Json config = family_echo(cfg.family);
    config["k"] = cfg.k;
    config["samples"] = cfg.samples;
    config["seed"] = cfg.seed;
    config["tol_class"] = cfg.tol_class;
    config["constrain_selfadjoint"] = cfg.constrain_selfadjoint;

    CommandResult out;
    out.pass = pass;
    out.report = Json{
        {"schema_version", kSchemaVersion},
        {"command", "verify-example"},
        {"config_echo", config},
        {"predicted", {{"k", pred.k}, {"A", to_json(pred.A)}, {"b", to_json(pred.b)}, {"H_k", hk_pred}, {"H_k1", hk1_pred}}},
        {"fitted", fit_json(fit)},
        {"residuals",
         {{"entrywise_max_error", cmp.raw_max_error},
          {"entrywise_identifiable_error", cmp.identifiable_max_error},
          {"entrywise_tolerance", cmp.tolerance},
          {"lk_position_max_discrepancy", pos_disc},
          {"lk_gauss_max_discrepancy", gauss_disc},
          {"structural",
           {{"fit", "selfadjoint_constrained"},
            {"ax_residual", st.ax_residual},
            {"eq1bis_stddev", st.eq1bis_stddev},
            {"ax_decomposition", st.ax_decomposition},
            {"eq2bis_residual", st.eq2bis_residual},
            {"eq2bis_points", st.eq2bis_points}}}}},
        {"identities", {{"H_k_max_error", hk_err}, {"H_k1_max_error", hk1_err}}},
        {"classification", classification_json(cls)},
        {"expected_verdict", to_string(expected)},
        {"checks", checks},
        {"pass", pass}};
    out.samples = std::move(samples);
    return out;
}

CommandResult run_fit(const SampleSet& samples, const FitConfig& cfg) {
    samples.validate();
    const AffineFit fit = fit_affine(samples, cfg.constrain_selfadjoint);
    const ClassificationReport cls =
        classify(samples, fit, {}, ClassificationThresholds{cfg.tol_class, ClassificationThresholds{}.cluster_gap});

    Json checks;
    checks["rms_residual"] = fit.rms_residual <= 1e-5;
    checks["selfadjoint_defect"] = fit.selfadjoint_defect <= 1e-6;
    checks["classified"] = cls.verdict != Verdict::NoMatch;
    bool pass = true;
    for (const auto& [name, ok] : checks.items()) pass = pass && ok.get<bool>();

    CommandResult out;
    out.pass = pass;
    out.report = Json{{"schema_version", kSchemaVersion},
                      {"command", "fit"},
                      {"config_echo",
                       {{"csv", cfg.source},
                        {"n", samples.n},
                        {"k", cfg.k},
                        {"c", cfg.c},
                        {"samples", static_cast<int>(samples.points.size())},
                        {"tol_class", cfg.tol_class},
                        {"constrain_selfadjoint", cfg.constrain_selfadjoint}}},
                      {"predicted", nullptr},
                      {"fitted", fit_json(fit)},
                      {"residuals", {{"rms_residual", fit.rms_residual}}},
                      {"identities", nullptr},
                      {"classification", classification_json(cls)},
                      {"checks", checks},
                      {"pass", pass}};
    return out;
}

}  // namespace newtonlk
