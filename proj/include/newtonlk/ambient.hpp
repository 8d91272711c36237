#pragma once

#include "newtonlk/core.hpp"

namespace newtonlk {

/// The space form M^{n+1}_c realized as the quadric <x,x> = c in R^{n+2}_q.
/// c = +1: unit sphere in Euclidean R^{n+2}.
/// c = -1: upper sheet (x_0 > 0) of the hyperboloid in Minkowski space with
///         signature (-, +, ..., +).
class AmbientSpace {
public:
    AmbientSpace(int c, int n);

    int c() const noexcept { return c_; }
    int n() const noexcept { return n_; }
    int dim() const noexcept { return n_ + 2; }
    bool lorentzian() const noexcept { return c_ == -1; }

    /// Diagonal signature matrix G.
    Mat metric() const;
    double inner(const Vec& a, const Vec& b) const;
    /// G v.
    Vec lower(const Vec& v) const;

    /// |<x,x> - c| <= tol, plus x_0 > 0 in the hyperbolic case.
    bool contains(const Vec& x, double tol = 1e-10) const;

private:
    int c_;
    int n_;
};

}  // namespace newtonlk
