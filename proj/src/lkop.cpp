#include "newtonlk/lkop.hpp"

#include <cmath>
#include <string>

namespace newtonlk {

namespace {

void check_k(int k, int n) {
    if (k < 0 || k > n - 1) {
        throw DomainError("L_k: order k=" + std::to_string(k) + " outside [0, " + std::to_string(n - 1) + "]");
    }
}

double relative_gap(const Vec& a, const Vec& b) { return max_abs(Vec(a - b)) / std::max(1.0, max_abs(b)); }

double mean_curvature_at(const Chart& chart, const Vec& u, int j) { return frame(chart, u).profile().H_at(j); }

}  // namespace

Mat newton_endomorphism(const FrameData& frame, int k) {
    check_k(k, frame.n());
    const auto mu = newton_eigenvalues(frame.kappa, k);
    const Vec muv = Eigen::Map<const Vec>(mu.data(), static_cast<Eigen::Index>(mu.size()));
    const Mat& E = frame.eigenframe;
    return E * muv.asDiagonal() * E.transpose() * frame.g;
}

double lk_apply(const FrameData& frame, const Hessian& hess, int k) {
    return (newton_endomorphism(frame, k) * hess.endomorphism).trace();
}

LkEvaluation lk_scalar(const Chart& chart, const Vec& u, const ScalarField& f, int k) {
    check_k(k, chart.n());
    const FrameData fr = frame(chart, u);
    LkEvaluation out;
    out.k = k;
    out.value_numeric = lk_apply(fr, hessian(fr, chart, f), k);
    return out;
}

LkEvaluation lk_linear(const Chart& chart, const Vec& u, const Vec& a, int k) {
    check_k(k, chart.n());
    const AmbientSpace& space = chart.space();
    const ChartJet jet = chart.jet(u);
    const FrameData fr = frame(chart, u);
    const auto prof = fr.profile();
    const double ck = prof.c[k];

    LkEvaluation out;
    out.k = k;
    out.value_numeric = lk_apply(fr, hessian_linear(fr, jet, a, space), k);
    const double closed =
        ck * prof.H_at(k + 1) * space.inner(a, fr.N) - space.c() * ck * prof.H_at(k) * space.inner(a, fr.x);
    out.value_closed_form = closed;
    out.discrepancy = std::abs(out.value_numeric - closed) / std::max(1.0, std::abs(closed));
    return out;
}

LkVectorEvaluation lk_position(const FrameData& fr, const ChartJet& jet, int k) {
    const int n = fr.n();
    check_k(k, n);
    const int d = static_cast<int>(fr.x.size());
    const Mat P = newton_endomorphism(fr, k);

    LkVectorEvaluation out;
    out.k = k;
    out.componentwise.resize(d);
    for (int r = 0; r < d; ++r) {
        Mat ddf(n, n);
        for (int i = 0; i < n; ++i) ddf.row(i) = jet.ddx[i].row(r);
        const Hessian hs = hessian_from_partials(fr, jet.dx.row(r).transpose(), ddf);
        out.componentwise(r) = (P * hs.endomorphism).trace();
    }
    const auto prof = fr.profile();
    const double ck = prof.c[k];
    out.closed_form = ck * prof.H_at(k + 1) * fr.N - fr.c * ck * prof.H_at(k) * fr.x;
    out.discrepancy = relative_gap(out.componentwise, out.closed_form);
    return out;
}

LkVectorEvaluation lk_position(const Chart& chart, const Vec& u, int k) {
    check_k(k, chart.n());
    return lk_position(frame(chart, u), chart.jet(u), k);
}

Vec mean_curvature_partials(const Chart& chart, const Vec& u, int j) {
    if (j > chart.n()) return Vec::Zero(chart.n());
    const auto& steps = chart.steps();
    auto field = [&](const Vec& p) { return Vec::Constant(1, mean_curvature_at(chart, p, j)); };
    return central_jacobian(field, u, steps.second_step(u), steps.richardson).row(0).transpose();
}

LkVectorEvaluation lk_gauss(const Chart& chart, const Vec& u, int k) {
    const int n = chart.n();
    check_k(k, n);
    const AmbientSpace& space = chart.space();
    const FrameData fr = frame(chart, u);
    const Mat P = newton_endomorphism(fr, k);
    const auto& steps = chart.steps();
    const int d = space.dim();

    // N already carries one difference quotient of x in numeric mode. Differencing it twice more amplifies
    // its rounding noise by ~1/h^2, so N itself is evaluated with the larger second-derivative step: its
    // (smooth) truncation error survives the outer stencil, its noise would not.
    const Chart inner = chart.mode() == DerivativeMode::Numeric
                            ? chart.numeric(DifferenceSteps{steps.second, steps.second, steps.richardson})
                            : chart;
    auto normal = [&](const Vec& p) { return gauss_map(inner, p); };
    const Mat dN = central_jacobian(normal, u, steps.first_step(u), steps.richardson);
    const auto ddN = central_hessian(normal, u, steps.second_step(u), steps.richardson);

    LkVectorEvaluation out;
    out.k = k;
    out.componentwise.resize(d);
    for (int r = 0; r < d; ++r) {
        Mat ddf(n, n);
        for (int i = 0; i < n; ++i) ddf.row(i) = ddN[i].row(r);
        const Hessian hs = hessian_from_partials(fr, dN.row(r).transpose(), ddf);
        out.componentwise(r) = (P * hs.endomorphism).trace();
    }

    const auto prof = fr.profile();
    const double bk = binomial(n, k + 1);
    const Vec grad = gradient_vector(fr, mean_curvature_partials(chart, u, k + 1));
    out.closed_form = -bk * grad -
                      bk * (n * prof.H_at(1) * prof.H_at(k + 1) - (n - k - 1) * prof.H_at(k + 2)) * fr.N +
                      space.c() * (k + 1) * bk * prof.H_at(k + 1) * fr.x;
    out.discrepancy = relative_gap(out.componentwise, out.closed_form);
    return out;
}

LkHkCheck lk_Hk(const Chart& chart, const Vec& u, int k, const Vec& b, double precondition_tol) {
    const int n = chart.n();
    check_k(k, n);
    const AmbientSpace& space = chart.space();
    const FrameData fr = frame(chart, u);
    const auto prof = fr.profile();
    const double ck = prof.c[k];

    LkHkCheck out;
    const Vec btop = tangential_projection(fr, b, space);
    const Vec grad = gradient_vector(fr, mean_curvature_partials(chart, u, k));
    out.precondition_defect = max_abs(Vec(btop - ck * grad)) / (1.0 + max_abs(b));
    out.applicable = out.precondition_defect <= precondition_tol;

    const ScalarField Hk = [&chart, k](const Vec& p) { return frame(chart, p).profile().H_at(k); };
    out.lhs = lk_apply(fr, hessian(fr, chart, Hk), k);
    out.rhs = prof.H_at(k + 1) * space.inner(b, fr.N) - space.c() * prof.H_at(k) * space.inner(b, fr.x);
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

}  // namespace newtonlk
