#pragma once

// Parametrized hypersurfaces x: U subset R^n -> M^{n+1}_c and their extrinsic
// geometry at a point.

#include "newtonlk/ambient.hpp"
#include "newtonlk/stencil.hpp"
#include "newtonlk/symfun.hpp"

#include <unsupported/Eigen/AutoDiff>

#include <cstdint>
#include <functional>
#include <memory>
#include <random>

namespace newtonlk {

using Jet1 = Eigen::AutoDiffScalar<Vec>;
using Jet2 = Eigen::AutoDiffScalar<Eigen::Matrix<Jet1, Eigen::Dynamic, 1>>;
template <class T>
using VecT = Eigen::Matrix<T, Eigen::Dynamic, 1>;

/// Position and partial derivatives of a chart at one parameter point.
struct ChartJet {
    Vec x;                 ///< x(u), n+2
    Mat dx;                ///< (n+2) x n, column i = d_i x
    std::vector<Mat> ddx;  ///< ddx[i].col(j) = d_i d_j x
};

/// Axis-aligned sampling box in parameter space.
struct Box {
    Vec lower;
    Vec upper;

    Vec center() const { return 0.5 * (lower + upper); }
    /// Uniform draw. Uses the raw 64-bit stream so the sequence is the same
    /// for every standard library.
    Vec sample(std::mt19937_64& rng) const;
};

enum class DerivativeMode { ClosedForm, Numeric };

/// Immutable parametrization of a hypersurface in a space form.
///
/// Charts either evaluate derivatives exactly (constructed from a functor
/// templated on the scalar type, differentiated by nested forward-mode
/// automatic differentiation) or by central differences of the position map.
class Chart {
public:
    using PositionFn = std::function<Vec(const Vec&)>;
    using JetFn = std::function<ChartJet(const Vec&)>;
    using FirstJetFn = std::function<std::pair<Vec, Mat>(const Vec&)>;

    /// Numeric-derivative chart.
    Chart(AmbientSpace space, PositionFn position, Box domain, DifferenceSteps steps = {});

    /// Closed-form chart. `first` and `second` must agree with `position`.
    Chart(AmbientSpace space, PositionFn position, FirstJetFn first, JetFn second, Box domain);

    /// Closed-form chart from a functor `template <class T> VecT<T> operator()(const VecT<T>&) const`.
    /// Constants that enter arithmetic inside the functor must be built with constant_like(u(0), value):
    /// Eigen's AutoDiffScalar does not reconcile an empty derivative vector with a sized one in every
    /// expression, and release builds then return wrong derivatives instead of asserting.
    template <class F>
    static Chart from_functor(AmbientSpace space, F f, Box domain);

    const AmbientSpace& space() const noexcept { return impl_->space; }
    int n() const noexcept { return impl_->space.n(); }
    DerivativeMode mode() const noexcept { return impl_->mode; }
    const Box& domain() const noexcept { return impl_->domain; }
    const DifferenceSteps& steps() const noexcept { return impl_->steps; }
    int orientation() const noexcept { return orientation_; }

    Vec position(const Vec& u) const;
    std::pair<Vec, Mat> first_jet(const Vec& u) const;
    ChartJet jet(const Vec& u) const;

    Chart with_orientation(int sign) const;
    /// Fixes the orientation so that <N(u), reference> > 0.
    Chart oriented_toward(const Vec& u, const Vec& reference) const;
    /// The chart v -> x(L v + shift). Sampling still draws from the original
    /// box and maps back through the inverse reparametrization.
    Chart reparametrized(const Mat& L, const Vec& shift) const;
    /// Same position map with derivatives forced to central differences.
    Chart numeric(DifferenceSteps steps = {}) const;

    Vec sample(std::mt19937_64& rng) const;

private:
    struct Impl {
        AmbientSpace space;
        DerivativeMode mode;
        PositionFn position;
        FirstJetFn first;
        JetFn second;
        Box domain;
        DifferenceSteps steps;
        Mat sample_linear;  // parameter = sample_linear * box_draw + sample_shift
        Vec sample_shift;
    };

    explicit Chart(std::shared_ptr<const Impl> impl, int orientation) : impl_(std::move(impl)), orientation_(orientation) {}
    void check_dimension(const Vec& u) const;

    std::shared_ptr<const Impl> impl_;
    int orientation_ = 1;
};

/// Geometry of the hypersurface at one chart point.
struct FrameData {
    Vec u;
    Vec x;
    Mat tangents;  ///< (n+2) x n
    Mat g;
    Mat g_inv;
    Vec N;
    Mat h;        ///< h_ij = <d_i d_j x, N>
    Mat S_chart;  ///< g^{-1} h; column i = coordinates of S(d_i x)
    PrincipalCurvatures kappa{std::vector<double>{0.0}};
    /// Columns: principal directions in chart coordinates with E^T g E = I,
    /// ordered like kappa.
    Mat eigenframe;
    std::vector<Mat> gamma;  ///< gamma[k](i, j) = Gamma^k_ij
    int orientation_sign = 1;
    int c = 1;

    int n() const { return static_cast<int>(g.rows()); }
    /// Shape operator in the g-orthonormal frame given by the Cholesky factor of g.
    ShapeMatrix shape() const;
    CurvatureProfile profile() const { return CurvatureProfile::from(kappa); }
    /// Ambient tangent vector sum_i v^i d_i x.
    Vec push_forward(const Vec& chart_vector) const { return tangents * chart_vector; }
};

/// Throws GeometryError for off-manifold points, degenerate tangent frames
/// (cond(g) > 1e12) and non-Riemannian induced metrics.
FrameData frame(const Chart& chart, const Vec& u);

/// Unit normal at u using first derivatives only.
Vec gauss_map(const Chart& chart, const Vec& u);

/// Eigenvalues of the pencil (h, g), ascending.
PrincipalCurvatures principal_curvatures(const FrameData& frame);

using ScalarField = std::function<double(const Vec& u)>;

struct Hessian {
    Vec gradient;      ///< d_i f
    Mat covariant;     ///< (nabla^2 f)_ij = d_i d_j f - Gamma^k_ij d_k f
    Mat endomorphism;  ///< g^{-1} covariant
};

/// Hessian of a chart-composed scalar field by central differences.
Hessian hessian(const Chart& chart, const Vec& u, const ScalarField& f);
Hessian hessian(const FrameData& frame, const Chart& chart, const ScalarField& f);
/// Hessian from supplied partial derivatives.
Hessian hessian_from_partials(const FrameData& frame, const Vec& df, const Mat& ddf);
/// Exact Hessian of the restriction of <a, x> (ambient inner product).
Hessian hessian_linear(const FrameData& frame, const ChartJet& jet, const Vec& a, const AmbientSpace& space);

/// u -> F(x(u)).
ScalarField ambient_field(const Chart& chart, std::function<double(const Vec& x)> F);

/// v - <v,N> N - c <v,x> x.
Vec tangential_projection(const FrameData& frame, const Vec& v, const AmbientSpace& space);

/// Ambient gradient vector of a function with chart partials df.
Vec gradient_vector(const FrameData& frame, const Vec& df);

// ---------------------------------------------------------------------------

/// A constant of the same (possibly nested autodiff) type as `ref`, with zero derivatives of matching size.
template <class T>
T constant_like(const T& ref, double value) {
    return T(ref * 0.0 + value);
}

namespace detail {

template <class F>
std::pair<Vec, Mat> autodiff_first(const F& f, const Vec& u) {
    const auto n = u.size();
    VecT<Jet1> uj(n);
    for (Eigen::Index i = 0; i < n; ++i) uj(i) = Jet1(u(i), n, i);
    const VecT<Jet1> y = f(uj);
    Vec x(y.size());
    Mat dx = Mat::Zero(y.size(), n);
    for (Eigen::Index r = 0; r < y.size(); ++r) {
        x(r) = y(r).value();
        if (y(r).derivatives().size() == n) dx.row(r) = y(r).derivatives().transpose();
    }
    return {x, dx};
}

template <class F>
ChartJet autodiff_second(const F& f, const Vec& u) {
    const auto n = u.size();
    VecT<Jet2> uj(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        uj(i) = Jet2(Jet1(u(i), n, i), n, i);
        for (Eigen::Index j = 0; j < n; ++j) uj(i).derivatives()(j).derivatives() = Vec::Zero(n);
    }
    const VecT<Jet2> y = f(uj);
    const auto m = y.size();
    ChartJet jet{Vec(m), Mat::Zero(m, n), std::vector<Mat>(static_cast<std::size_t>(n), Mat::Zero(m, n))};
    for (Eigen::Index r = 0; r < m; ++r) {
        jet.x(r) = y(r).value().value();
        const auto& d = y(r).derivatives();
        if (d.size() != n) continue;
        for (Eigen::Index i = 0; i < n; ++i) {
            jet.dx(r, i) = d(i).value();
            if (d(i).derivatives().size() == n) jet.ddx[i].row(r) = d(i).derivatives().transpose();
        }
    }
    return jet;
}

}  // namespace detail

template <class F>
Chart Chart::from_functor(AmbientSpace space, F f, Box domain) {
    PositionFn position = [f](const Vec& u) { return Vec(f(u)); };
    FirstJetFn first = [f](const Vec& u) { return detail::autodiff_first(f, u); };
    JetFn second = [f](const Vec& u) { return detail::autodiff_second(f, u); };
    return Chart(space, std::move(position), std::move(first), std::move(second), std::move(domain));
}

}  // namespace newtonlk
