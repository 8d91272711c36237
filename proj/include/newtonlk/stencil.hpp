#pragma once

// Central-difference stencils with one level of Richardson extrapolation.

#include "newtonlk/core.hpp"

#include <cmath>
#include <string>

namespace newtonlk {

struct DifferenceSteps {
    double first = 1e-4;   ///< relative: h = first * max(1, |u|)
    double second = 1e-3;  ///< relative: h = second * max(1, |u|)
    bool richardson = true;

    double first_step(const Vec& u) const { return first * std::max(1.0, u.norm()); }
    double second_step(const Vec& u) const { return second * std::max(1.0, u.norm()); }
};

namespace detail {

void check_step(double h, const Vec& u);
void check_finite(const Vec& v);

}  // namespace detail

/// Jacobian of f: R^n -> R^m at u, m x n.
template <class F>
Mat central_jacobian(const F& f, const Vec& u, double h, bool richardson) {
    detail::check_step(h, u);
    const int n = static_cast<int>(u.size());
    auto diff = [&](int i, double step) {
        Vec up = u, dn = u;
        up(i) += step;
        dn(i) -= step;
        Vec fu = f(up), fd = f(dn);
        detail::check_finite(fu);
        detail::check_finite(fd);
        return Vec((fu - fd) / (2.0 * step));
    };
    Mat jac;
    for (int i = 0; i < n; ++i) {
        Vec d = diff(i, h);
        if (richardson) d = (4.0 * diff(i, 0.5 * h) - d) / 3.0;
        if (i == 0) jac.resize(d.size(), n);
        jac.col(i) = d;
    }
    return jac;
}

/// Second partials of f: R^n -> R^m at u. Entry i is m x n with column j
/// holding d_i d_j f.
template <class F>
std::vector<Mat> central_hessian(const F& f, const Vec& u, double h, bool richardson) {
    detail::check_step(h, u);
    const int n = static_cast<int>(u.size());
    const Vec f0 = f(u);
    detail::check_finite(f0);
    const auto m = f0.size();
    auto eval = [&](int i, double si, int j, double sj) {
        Vec p = u;
        p(i) += si;
        p(j) += sj;
        Vec v = f(p);
        detail::check_finite(v);
        return v;
    };
    auto diag = [&](int i, double s) { return Vec((eval(i, s, i, 0.0) - 2.0 * f0 + eval(i, -s, i, 0.0)) / (s * s)); };
    auto mixed = [&](int i, int j, double s) {
        return Vec((eval(i, s, j, s) - eval(i, s, j, -s) - eval(i, -s, j, s) + eval(i, -s, j, -s)) / (4.0 * s * s));
    };
    std::vector<Mat> out(static_cast<std::size_t>(n), Mat(m, n));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Vec d = (i == j) ? diag(i, h) : mixed(i, j, h);
            if (richardson) d = (4.0 * ((i == j) ? diag(i, 0.5 * h) : mixed(i, j, 0.5 * h)) - d) / 3.0;
            out[i].col(j) = d;
            out[j].col(i) = d;
        }
    }
    return out;
}

}  // namespace newtonlk
