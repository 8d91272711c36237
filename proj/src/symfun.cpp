#include "newtonlk/symfun.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace newtonlk {

namespace {

void check_order(int k, int lo, int hi, const char* op) {
    if (k < lo || k > hi) {
        throw DomainError(std::string(op) + ": order k=" + std::to_string(k) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

std::vector<double> eigenvalues_of(const Mat& s) {
    Eigen::SelfAdjointEigenSolver<Mat> es(s, Eigen::EigenvaluesOnly);
    const Vec& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

PrincipalCurvatures::PrincipalCurvatures(std::vector<double> kappa) : kappa_(std::move(kappa)) {
    if (kappa_.empty()) throw DomainError("PrincipalCurvatures: dimension must be >= 1");
    std::sort(kappa_.begin(), kappa_.end());
}

PrincipalCurvatures PrincipalCurvatures::flipped() const {
    std::vector<double> neg(kappa_.size());
    std::transform(kappa_.begin(), kappa_.end(), neg.begin(), [](double v) { return -v; });
    return PrincipalCurvatures(std::move(neg));
}

ShapeMatrix::ShapeMatrix(const Mat& entries) {
    if (entries.rows() != entries.cols() || entries.rows() == 0) {
        throw DomainError("ShapeMatrix: expected a non-empty square matrix");
    }
    const double asym = max_abs(Mat(entries - entries.transpose()));
    if (asym > 1e-12 * max_abs(entries)) {
        throw DomainError("ShapeMatrix: matrix is not symmetric (asymmetry " + std::to_string(asym) + ")");
    }
    s_ = 0.5 * (entries + entries.transpose());
}

PrincipalCurvatures ShapeMatrix::curvatures() const { return PrincipalCurvatures(eigenvalues_of(s_)); }

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

double newton_constant(int n, int k) { return (n - k) * binomial(n, k); }

std::vector<double> elementary_symmetric(std::span<const double> kappa) {
    const std::size_t n = kappa.size();
    std::vector<double> e(n + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k >= 1; --k) e[k] += kappa[i] * e[k - 1];
    }
    return e;
}

std::vector<double> mean_curvatures(std::span<const double> s, int n) {
    if (static_cast<int>(s.size()) != n + 1) {
        throw DomainError("mean_curvatures: expected n+1 symmetric functions");
    }
    std::vector<double> h(s.size());
    for (int k = 0; k <= n; ++k) h[k] = s[k] / binomial(n, k);
    return h;
}

CurvatureProfile CurvatureProfile::from(const PrincipalCurvatures& kappa) {
    CurvatureProfile p;
    p.n = kappa.n();
    p.s = elementary_symmetric(kappa.values());
    p.H = mean_curvatures(p.s, p.n);
    p.c.resize(static_cast<std::size_t>(p.n));
    for (int k = 0; k < p.n; ++k) p.c[k] = newton_constant(p.n, k);
    return p;
}

double CurvatureProfile::H_at(int j) const { return (j >= 0 && j <= n) ? H[j] : 0.0; }
double CurvatureProfile::s_at(int j) const { return (j >= 0 && j <= n) ? s[j] : 0.0; }

Mat newton_matrix(const ShapeMatrix& S, int k) {
    const int n = S.n();
    check_order(k, 0, n, "newton_matrix");
    const auto s = elementary_symmetric(eigenvalues_of(S.matrix()));
    Mat p = Mat::Identity(n, n);
    for (int j = 1; j <= k; ++j) {
        Mat next = -S.matrix() * p;
        next.diagonal().array() += s[j];
        p = std::move(next);
    }
    return p;
}

Mat newton_matrix_sum(const ShapeMatrix& S, int k) {
    const int n = S.n();
    check_order(k, 0, n, "newton_matrix_sum");
    const auto s = elementary_symmetric(eigenvalues_of(S.matrix()));
    Mat p = Mat::Zero(n, n);
    Mat power = Mat::Identity(n, n);
    for (int j = 0; j <= k; ++j) {
        p += ((j % 2 == 0) ? 1.0 : -1.0) * s[k - j] * power;
        power = power * S.matrix();
    }
    return p;
}

std::vector<double> newton_eigenvalues(const PrincipalCurvatures& kappa, int k) {
    const int n = kappa.n();
    check_order(k, 0, n - 1, "newton_eigenvalues");
    std::vector<double> mu(static_cast<std::size_t>(n));
    std::vector<double> rest;
    rest.reserve(static_cast<std::size_t>(n - 1));
    for (int i = 0; i < n; ++i) {
        rest.clear();
        for (int j = 0; j < n; ++j) {
            if (j != i) rest.push_back(kappa[j]);
        }
        mu[i] = elementary_symmetric(rest)[k];
    }
    return mu;
}

TraceIdentities trace_identities(const ShapeMatrix& S, int k) {
    const int n = S.n();
    check_order(k, 0, n - 1, "trace_identities");
    const auto prof = CurvatureProfile::from(S.curvatures());
    const Mat p = newton_matrix(S, k);
    const Mat sp = S.matrix() * p;
    const double ck = prof.c[k];

    TraceIdentities t;
    t.trace_p = p.trace();
    t.trace_sp = sp.trace();
    t.trace_s2p = (S.matrix() * sp).trace();
    t.residual_p = std::abs(t.trace_p - ck * prof.H_at(k));
    t.residual_sp = std::abs(t.trace_sp - ck * prof.H_at(k + 1));
    const double rhs = binomial(n, k + 1) * (n * prof.H_at(1) * prof.H_at(k + 1) - (n - k - 1) * prof.H_at(k + 2));
    t.residual_s2p = std::abs(t.trace_s2p - rhs);
    return t;
}

double scalar_curvature_residual(const ShapeMatrix& S, int c) {
    const int n = S.n();
    const auto prof = CurvatureProfile::from(S.curvatures());
    const double lhs = n * (n - 1) * c + n * n * prof.H_at(1) * prof.H_at(1) - (S.matrix() * S.matrix()).trace();
    const double rhs = n * (n - 1) * (c + prof.H_at(2));
    return std::abs(lhs - rhs);
}

std::vector<double> characteristic_polynomial(const ShapeMatrix& S) {
    auto s = elementary_symmetric(eigenvalues_of(S.matrix()));
    for (std::size_t k = 1; k < s.size(); k += 2) s[k] = -s[k];
    return s;
}

double evaluate_polynomial(std::span<const double> coefficients, double t) {
    double acc = 0.0;
    for (double a : coefficients) acc = acc * t + a;
    return acc;
}

}  // namespace newtonlk
