// Python bindings for the curvature algebra, the example catalog and the report commands.
// Reports cross the boundary as JSON text; the package wrapper turns them into dicts.

#include "newtonlk/report.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace newtonlk;

namespace {

ExampleFamily make_family(const std::string& family, int n, int c, double tau, double r, int m, const std::string& axis) {
    FamilyParams p;
    p.kind = parse_family_kind(family);
    p.n = n;
    p.c = c;
    p.tau = tau;
    p.r = r;
    p.m = m;
    p.axis = parse_axis_type(axis);
    return ExampleFamily(p);
}

py::dict trace_dict(const TraceIdentities& t) {
    py::dict d;
    d["trace_p"] = t.trace_p;
    d["trace_sp"] = t.trace_sp;
    d["trace_s2p"] = t.trace_s2p;
    d["residual_p"] = t.residual_p;
    d["residual_sp"] = t.residual_sp;
    d["residual_s2p"] = t.residual_s2p;
    return d;
}

}  // namespace

PYBIND11_MODULE(_newtonlk, m) {
    m.doc() = "Newton transformations and the operators L_k on hypersurfaces of space forms";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
    py::register_exception<GeometryError>(m, "GeometryError", PyExc_ArithmeticError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def("binomial", &binomial, py::arg("n"), py::arg("k"));
    m.def("newton_constant", &newton_constant, py::arg("n"), py::arg("k"), "c_k = (n-k) C(n,k)");
    m.def(
        "elementary_symmetric", [](const std::vector<double>& kappa) { return elementary_symmetric(kappa); },
        py::arg("kappa"), "s_0..s_n of the principal curvatures");
    m.def(
        "mean_curvatures", [](const std::vector<double>& s, int n) { return mean_curvatures(s, n); }, py::arg("s"),
        py::arg("n"), "H_0..H_n from s_0..s_n");
    m.def(
        "newton_matrix", [](const Mat& S, int k) { return newton_matrix(ShapeMatrix(S), k); }, py::arg("S"),
        py::arg("k"), "P_k by the recursion P_k = s_k I - S P_{k-1}");
    m.def(
        "newton_matrix_sum", [](const Mat& S, int k) { return newton_matrix_sum(ShapeMatrix(S), k); }, py::arg("S"),
        py::arg("k"), "P_k by the explicit alternating sum");
    m.def(
        "newton_eigenvalues",
        [](const std::vector<double>& kappa, int k) { return newton_eigenvalues(PrincipalCurvatures(kappa), k); },
        py::arg("kappa"), py::arg("k"), "sigma_k of the curvatures without kappa_i, for ascending kappa");
    m.def(
        "trace_identities", [](const Mat& S, int k) { return trace_dict(trace_identities(ShapeMatrix(S), k)); },
        py::arg("S"), py::arg("k"));
    m.def(
        "scalar_curvature_residual", [](const Mat& S, int c) { return scalar_curvature_residual(ShapeMatrix(S), c); },
        py::arg("S"), py::arg("c"));
    m.def(
        "characteristic_polynomial", [](const Mat& S) { return characteristic_polynomial(ShapeMatrix(S)); },
        py::arg("S"), "coefficients of det(tI - S), highest power first");
    m.def("selfadjoint_defect", &selfadjoint_defect, py::arg("A"), py::arg("G"));

    m.def(
        "predicted_affine",
        [](const std::string& family, int n, int c, double tau, double r, int mm, const std::string& axis, int k) {
            const auto pred = predicted_affine(make_family(family, n, c, tau, r, mm, axis), k);
            return py::make_tuple(pred.A, pred.b);
        },
        py::arg("family"), py::arg("n") = 2, py::arg("c") = 1, py::arg("tau") = 0.0, py::arg("r") = 0.5,
        py::arg("m") = 1, py::arg("axis") = "spacelike", py::arg("k") = 0, "closed-form (A, b) with L_k x = A x + b");
    m.def(
        "predicted_Hk",
        [](const std::string& family, int n, int c, double tau, double r, int mm, const std::string& axis, int k) {
            return predicted_Hk(make_family(family, n, c, tau, r, mm, axis), k);
        },
        py::arg("family"), py::arg("n") = 2, py::arg("c") = 1, py::arg("tau") = 0.0, py::arg("r") = 0.5,
        py::arg("m") = 1, py::arg("axis") = "spacelike", py::arg("k") = 0);
    m.def(
        "classify_example3",
        [](double axis_norm, double tau) {
            const auto s = classify_example3(axis_norm, tau);
            return py::make_tuple(to_string(s.shape), s.radius);
        },
        py::arg("axis_norm"), py::arg("tau"), "(shape, signed radius) of {x in H^{n+1} : <a,x> = tau}");
    m.def(
        "sample_family",
        [](const std::string& family, int n, int c, double tau, double r, int mm, const std::string& axis, int k,
           int samples, std::uint64_t seed) {
            const auto set = generate_samples(make_family(family, n, c, tau, r, mm, axis).chart(), k, samples, seed);
            const auto count = static_cast<Eigen::Index>(set.points.size());
            Mat u(count, n), x(count, n + 2), lkx(count, n + 2);
            for (Eigen::Index i = 0; i < count; ++i) {
                const auto& p = set.points[static_cast<std::size_t>(i)];
                u.row(i) = p.u.transpose();
                x.row(i) = p.x.transpose();
                lkx.row(i) = p.lkx.transpose();
            }
            return py::make_tuple(u, x, lkx);
        },
        py::arg("family"), py::arg("n") = 2, py::arg("c") = 1, py::arg("tau") = 0.0, py::arg("r") = 0.5,
        py::arg("m") = 1, py::arg("axis") = "spacelike", py::arg("k") = 0, py::arg("samples") = 200,
        py::arg("seed") = 1, "(u, x, L_k x) arrays sampled from a catalog family");

    m.def(
        "identity_suite_json",
        [](int n_max, int trials, std::uint64_t seed) {
            const auto res = run_identity_suite({n_max, trials, seed});
            return dump_json(res.report);
        },
        py::arg("n_max") = 8, py::arg("trials") = 100, py::arg("seed") = 42);
    m.def(
        "verify_example_json",
        [](const std::string& family, int n, int c, double tau, double r, int mm, const std::string& axis, int k,
           int samples, std::uint64_t seed, double tol_class, bool constrain) {
            VerifyConfig cfg;
            cfg.family = make_family(family, n, c, tau, r, mm, axis).params();
            cfg.k = k;
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.tol_class = tol_class;
            cfg.constrain_selfadjoint = constrain;
            py::gil_scoped_release release;
            return dump_json(run_verify_example(cfg).report);
        },
        py::arg("family"), py::arg("n") = 2, py::arg("c") = 1, py::arg("tau") = 0.0, py::arg("r") = 0.5,
        py::arg("m") = 1, py::arg("axis") = "spacelike", py::arg("k") = 0, py::arg("samples") = 200,
        py::arg("seed") = 1, py::arg("tol_class") = 1e-4, py::arg("constrain_selfadjoint") = false);
    m.def(
        "fit_csv_json",
        [](const std::string& csv_text, int k, int c, bool constrain, double tol_class) {
            FitConfig cfg;
            cfg.k = k;
            cfg.c = c;
            cfg.constrain_selfadjoint = constrain;
            cfg.tol_class = tol_class;
            cfg.source = "<python>";
            const SampleSet samples = read_samples_csv(csv_text, k, c);
            return dump_json(run_fit(samples, cfg).report);
        },
        py::arg("csv_text"), py::arg("k"), py::arg("c"), py::arg("constrain_selfadjoint") = false,
        py::arg("tol_class") = 1e-4);

    m.attr("SCHEMA_VERSION") = kSchemaVersion;
}
