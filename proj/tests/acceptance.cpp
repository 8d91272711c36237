// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   1  algebraic identity suite, n = 2..8, 100 random S each, <= 1e-12, <= 10 s
//   2  worked trace example S = diag(1,2,3), k = 1, exact
//   3  dual-path L_k x (1e-5) and L_k N (1e-4) on every catalog run, 50 points, <= 60 s
//   4  fitted (A, b) from 200 samples equals the closed-form constants, 1e-4 (1 + |A|)
//   5  self-adjointness defect of every fitted A <= 1e-6 in the ambient metric
//   6  classification of every catalog run; quadratic check on the (1,-1) product
//   7  (AX) residual <= 1e-4 and stddev(<b,x> - c_k H_k) <= 1e-6 with the constrained fit
//   8  negative control: rms > 1e-2 and verdict no_match
//   9  repeated CLI runs give byte-identical JSON

#include "newtonlk/report.hpp"
#include "oracle.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <unistd.h>

using namespace newtonlk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Tally {
    int failed = 0;
    void report(int id, bool pass, const std::string& what, const std::string& detail) {
        std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failed;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// catalog runs

FamilyParams cap(int n, double tau) { return {FamilyKind::UmbilicSphereCap, n, 1, tau}; }

FamilyParams hyperbolic(int n, AxisType axis, double tau) {
    FamilyParams p;
    p.kind = FamilyKind::UmbilicHyperbolic;
    p.n = n;
    p.c = -1;
    p.tau = tau;
    p.axis = axis;
    return p;
}

FamilyParams product(int n, int m, int c, double r) {
    FamilyParams p;
    p.kind = FamilyKind::RiemannianProduct;
    p.n = n;
    p.m = m;
    p.c = c;
    p.r = r;
    return p;
}

std::vector<FamilyParams> catalog_runs() {
    std::vector<FamilyParams> runs;
    for (int n : {2, 3}) {
        for (double tau : {0.0, 0.5, 0.9}) runs.push_back(cap(n, tau));
        runs.push_back(hyperbolic(n, AxisType::Spacelike, 0.5));
        runs.push_back(hyperbolic(n, AxisType::Timelike, -2.0));
        runs.push_back(hyperbolic(n, AxisType::Lightlike, -1.0));
    }
    runs.push_back(hyperbolic(2, AxisType::Spacelike, 0.0));
    runs.push_back(product(2, 1, 1, 1.0 / std::sqrt(2.0)));
    runs.push_back(product(3, 1, 1, 0.6));
    runs.push_back(product(3, 2, 1, 0.6));
    runs.push_back(product(2, 1, -1, 0.5));
    runs.push_back(product(2, 1, -1, 1.0));
    return runs;
}

struct Worst {
    double value = 0;
    std::string where;
    void update(double v, const std::string& label) {
        if (!(v <= value)) {  // also captures NaN
            value = v;
            where = label;
        }
    }
};

// ---------------------------------------------------------------------------
// criterion 9 helpers

std::string read_all(const std::string& path) {
    try {
        return read_text_file(path);
    } catch (const IoError&) {
        return {};
    }
}

int run_cli(const std::string& env, const std::string& args, const std::string& out) {
    const std::string cmd = env + " " + std::string(NEWTONLK_CLI) + " " + args + " --out " + out + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
    Tally tally;

    // ── 1. algebraic identity suite ────────────────────────────────────────
    {
        const auto t0 = Clock::now();
        const auto result = run_identity_suite({8, 100, 42});
        const double elapsed = seconds_since(t0);
        double worst = 0;
        for (const auto& [name, entry] : result.report["identities"].items()) {
            if (name == "eigenstructure" || name == "characteristic_polynomial_roots") continue;
            worst = std::max(worst, entry["max_residual"].get<double>());
        }
        tally.report(1, result.pass && worst <= 1e-12 && elapsed <= 10.0, "algebraic identity suite n=2..8 x 100",
                     "max residual " + fmt(worst) + " <= 1e-12, " + fmt(elapsed) + " s <= 10 s");
    }

    // ── 2. worked trace example against the subset oracle ──────────────────
    {
        const Mat S = Vec((Vec(3) << 1, 2, 3).finished()).asDiagonal();
        const auto t = trace_identities(ShapeMatrix(S), 1);
        const std::vector<double> kappa{1, 2, 3};
        const double s1 = oracle::sigma_subsets(kappa, 1);
        const double s2 = oracle::sigma_subsets(kappa, 2);
        const double s3 = oracle::sigma_subsets(kappa, 3);
        const double want_p = (3 - 1) * s1;
        const double want_sp = 2 * s2;
        const double want_s2p = s1 * s2 - 3 * s3;
        const bool pass = t.trace_p == 12.0 && t.trace_sp == 22.0 && t.trace_s2p == 48.0 && want_p == 12.0 &&
                          want_sp == 22.0 && want_s2p == 48.0;
        tally.report(2, pass, "trace example S=diag(1,2,3), k=1",
                     "tr P1=" + fmt(t.trace_p) + " tr SP1=" + fmt(t.trace_sp) + " tr S^2P1=" + fmt(t.trace_s2p));
    }

    // ── 3-7. catalog runs ──────────────────────────────────────────────────
    Worst pos, gauss, pos_numeric, gauss_numeric, fit_err, sa_plain, sa_con, ax, eq1bis;
    double dual_path_seconds = 0;
    int runs = 0;
    std::vector<std::string> misclassified;
    std::vector<std::string> unmatched;
    for (const auto& params : catalog_runs()) {
        const ExampleFamily family(params);
        const Chart chart = family.chart();
        const Chart numeric = chart.numeric();
        for (int k = 0; k < family.n(); ++k) {
            ++runs;
            const std::string label = family.name() + " k=" + std::to_string(k);

            // 3: dual paths at 50 seeded points, with exact chart derivatives and with finite differences
            const auto t0 = Clock::now();
            std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(runs));
            for (int i = 0; i < 50; ++i) {
                const Vec u = chart.sample(rng);
                pos.update(lk_position(chart, u, k).discrepancy, label);
                gauss.update(lk_gauss(chart, u, k).discrepancy, label);
                pos_numeric.update(lk_position(numeric, u, k).discrepancy, label);
                gauss_numeric.update(lk_gauss(numeric, u, k).discrepancy, label);
            }
            dual_path_seconds += seconds_since(t0);

            // 4-5: plain and constrained fits from 200 samples
            const auto samples = generate_samples(chart, k, 200, 1);
            const auto pred = predicted_affine(family, k);
            const auto plain = fit_affine(samples, false);
            const auto constrained = fit_affine(samples, true);
            const auto cmp = compare_affine(plain, pred);
            fit_err.update(cmp.raw_max_error / (1.0 + max_abs(pred.A)), label);
            if (!cmp.within_tolerance || plain.rms_residual > 1e-5) unmatched.push_back(label);
            sa_plain.update(plain.selfadjoint_defect, label);
            sa_con.update(constrained.selfadjoint_defect, label);

            // 6: classification
            std::vector<FrameData> frames;
            frames.reserve(samples.points.size());
            for (const auto& p : samples.points) frames.push_back(frame(chart, p.u));
            const auto verdict = classify(samples, constrained, frames).verdict;
            if (verdict != expected_verdict(family, k)) misclassified.push_back(label + " -> " + to_string(verdict));

            // 7: structural relations with the constrained fit
            const auto rep = structural_checks(chart, samples, constrained);
            ax.update(rep.ax_residual, label);
            eq1bis.update(rep.eq1bis_stddev, label);
        }
    }

    tally.report(3,
                 pos.value <= 1e-5 && gauss.value <= 1e-4 && pos_numeric.value <= 1e-5 && gauss_numeric.value <= 1e-4 &&
                     dual_path_seconds <= 60.0,
                 "dual-path L_k x and L_k N on " + std::to_string(runs) + " catalog runs x 50 points",
                 "exact charts: position " + fmt(pos.value) + ", gauss " + fmt(gauss.value) +
                     "; finite differences: position " + fmt(pos_numeric.value) + " <= 1e-5, gauss " +
                     fmt(gauss_numeric.value) + " <= 1e-4 [" + gauss_numeric.where + "]; " + fmt(dual_path_seconds) +
                     " s <= 60 s");

    {
        // the two concrete anchors, through the same fitting path
        const ExampleFamily ex2(cap(2, 0.5));
        const auto fit2 = fit_affine(generate_samples(ex2.chart(), 0, 200, 1), false);
        Vec b2 = Vec::Zero(4);
        b2(3) = 4.0 / 3.0;
        const double anchor2 = std::max(max_abs(Mat(fit2.A + (8.0 / 3.0) * Mat::Identity(4, 4))), max_abs(Vec(fit2.b - b2)));
        const ExampleFamily ex4(product(2, 1, 1, 1.0 / std::sqrt(2.0)));
        const auto fit4 = fit_affine(generate_samples(ex4.chart(), 0, 200, 1), false);
        const double anchor4 = std::max(max_abs(Mat(fit4.A + 2.0 * Mat::Identity(4, 4))), max_abs(fit4.b));
        const bool pass = unmatched.empty() && fit_err.value <= 1e-4 && anchor2 <= 1e-4 * (1 + 8.0 / 3.0) &&
                          anchor4 <= 1e-4 * 3.0;
        tally.report(4, pass, "fitted (A,b) reproduces the closed-form constants",
                     "max |fit - closed| / (1+|A|) " + fmt(fit_err.value) + " <= 1e-4; anchors " + fmt(anchor2) + ", " +
                         fmt(anchor4) + (unmatched.empty() ? "" : "; failing: " + unmatched.front()));
    }

    tally.report(5, sa_plain.value <= 1e-6 && sa_con.value <= 1e-6, "self-adjointness of fitted A in the ambient metric",
                 "unconstrained " + fmt(sa_plain.value) + ", constrained " + fmt(sa_con.value) + " <= 1e-6");

    {
        const ExampleFamily clifford(product(2, 1, 1, 1.0 / std::sqrt(2.0)));
        const Chart chart = clifford.chart();
        const auto samples = generate_samples(chart, 0, 50, 3);
        std::vector<FrameData> frames;
        for (const auto& p : samples.points) frames.push_back(frame(chart, p.u));
        const auto q = quadratic_shape_check(frames, 1);
        const bool pass = misclassified.empty() && q.defect <= 1e-8 && std::abs(q.lambda) <= 1e-8;
        tally.report(6, pass, "classification of all " + std::to_string(runs) + " catalog runs",
                     std::to_string(misclassified.size()) + " misclassified" +
                         (misclassified.empty() ? "" : " [" + misclassified.front() + "]") +
                         "; (1,-1) product lambda* " + fmt(q.lambda) + ", defect " + fmt(q.defect) + " <= 1e-8");
    }

    tally.report(7, ax.value <= 1e-4 && eq1bis.value <= 1e-6, "structural relations with the constrained fit",
                 "AX residual " + fmt(ax.value) + " <= 1e-4, stddev(<b,x> - c_k H_k) " + fmt(eq1bis.value) + " <= 1e-6");

    // ── 8. negative control ───────────────────────────────────────────────
    {
        double min_rms = 1e300;
        bool all_no_match = true;
        for (int c : {1, -1}) {
            for (int n : {2, 3}) {
                const Chart chart = non_example_chart(n, c);
                const auto samples = generate_samples(chart, 0, 200, 17);
                const auto fit = fit_affine(samples, false);
                std::vector<FrameData> frames;
                for (const auto& p : samples.points) frames.push_back(frame(chart, p.u));
                min_rms = std::min(min_rms, fit.rms_residual);
                all_no_match = all_no_match && classify(samples, fit, frames).verdict == Verdict::NoMatch;
            }
        }
        tally.report(8, min_rms > 1e-2 && all_no_match, "negative control point clouds",
                     "min rms " + fmt(min_rms) + " > 1e-2, verdict " + (all_no_match ? "no_match" : "NOT no_match"));
    }

    // ── 9. determinism of the command line ─────────────────────────────────
    {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / ("newtonlk_accept_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        const std::vector<std::string> commands{
            "verify-example --family umbilic_hyperbolic --c -1 --axis timelike --tau -2 --n 3 --k 1 --seed 7",
            "verify-example --family riemannian_product --n 3 --m 2 --r 0.6 --k 2 --constrain-selfadjoint",
            "identity-suite --n-max 5 --trials 10 --seed 3"};
        bool identical = true;
        int compared = 0;
        for (std::size_t i = 0; i < commands.size(); ++i) {
            std::string reference;
            for (const char* env : {"NEWTONLK_THREADS=1", "NEWTONLK_THREADS=1", "NEWTONLK_THREADS=4"}) {
                const std::string out = (dir / ("run" + std::to_string(compared++) + ".json")).string();
                const int code = run_cli(env, commands[i], out);
                const std::string text = read_all(out);
                if (code != kExitOk || text.empty()) identical = false;
                if (reference.empty()) reference = text;
                identical = identical && text == reference;
            }
        }
        std::error_code ec;
        fs::remove_all(dir, ec);
        tally.report(9, identical, "repeated CLI runs are byte-identical",
                     std::to_string(compared) + " runs of " + std::to_string(commands.size()) + " commands");
    }

    std::printf("%d of 9 criteria passed\n", 9 - tally.failed);
    return tally.failed == 0 ? 0 : 1;
}
