#pragma once

// The linearized operators L_k f = tr(P_k o nabla^2 f) on a chart, and the
// closed forms of L_k applied to the position vector and the Gauss map.

#include "newtonlk/chart.hpp"

#include <optional>

namespace newtonlk {

/// Tolerances for comparing the componentwise and closed-form routes.
struct LkTolerances {
    double position = 1e-5;
    double gauss = 1e-4;
    double precondition = 1e-6;
};

struct LkEvaluation {
    int k = 0;
    double value_numeric = 0;
    std::optional<double> value_closed_form;
    double discrepancy = 0;  ///< |numeric - closed| / max(1, |closed|), 0 without a closed form
};

struct LkVectorEvaluation {
    int k = 0;
    Vec componentwise;  ///< L_k applied to each ambient coordinate
    Vec closed_form;
    double discrepancy = 0;  ///< max|componentwise - closed| / max(1, max|closed|)
};

/// Newton transformation P_k as an endomorphism in chart coordinates,
/// assembled on the principal directions: E diag(mu_k) E^T g.
Mat newton_endomorphism(const FrameData& frame, int k);

/// tr(P_k g^{-1} nabla^2 f) from an already computed Hessian.
double lk_apply(const FrameData& frame, const Hessian& hess, int k);

/// L_k f for a chart-composed scalar field (numeric Hessian).
LkEvaluation lk_scalar(const Chart& chart, const Vec& u, const ScalarField& f, int k);

/// L_k <a, x> with exact derivatives, compared with
/// c_k H_{k+1} <a,N> - c c_k H_k <a,x>.
LkEvaluation lk_linear(const Chart& chart, const Vec& u, const Vec& a, int k);

/// L_k x: componentwise on the coordinate functions vs c_k H_{k+1} N - c c_k H_k x.
LkVectorEvaluation lk_position(const Chart& chart, const Vec& u, int k);
LkVectorEvaluation lk_position(const FrameData& frame, const ChartJet& jet, int k);

/// Chart partials of H_j by central differences (H_j evaluated from exact frames).
Vec mean_curvature_partials(const Chart& chart, const Vec& u, int j);

/// L_k N: componentwise on the coordinates of N vs
/// -b (grad H_{k+1}) - b (n H_1 H_{k+1} - (n-k-1) H_{k+2}) N + c (k+1) b H_{k+1} x,
/// b = binom(n, k+1).
LkVectorEvaluation lk_gauss(const Chart& chart, const Vec& u, int k);

struct LkHkCheck {
    bool applicable = false;
    double precondition_defect = 0;  ///< max|b^T - c_k grad H_k| / (1 + max|b|)
    double lhs = 0;                  ///< L_k H_k
    double rhs = 0;                  ///< H_{k+1} <b,N> - c H_k <b,x>
    double residual = 0;
};

/// Checks L_k H_k = H_{k+1}<b,N> - c H_k <b,x>, which holds wherever b^T = c_k grad H_k.
LkHkCheck lk_Hk(const Chart& chart, const Vec& u, int k, const Vec& b, double precondition_tol = 1e-6);

}  // namespace newtonlk
