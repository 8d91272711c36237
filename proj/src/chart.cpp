#include "newtonlk/chart.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <sstream>

namespace newtonlk {

namespace detail {

void check_step(double h, const Vec& u) {
    if (!std::isfinite(h) || h <= 0.0 || h < 1e-12 * std::max(1.0, u.norm()) || h > 1e3) {
        std::ostringstream os;
        os << "difference step " << h << " outside the usable range";
        throw GeometryError(GeometryError::Kind::StepGuard, os.str());
    }
}

void check_finite(const Vec& v) {
    if (!v.allFinite()) throw GeometryError(GeometryError::Kind::StepGuard, "non-finite value inside difference stencil");
}

}  // namespace detail

namespace {

constexpr double kConstraintTol = 1e-10;
constexpr double kMaxMetricCondition = 1e12;

std::uint64_t draw(std::mt19937_64& rng) { return rng(); }

Vec unit_normal(const AmbientSpace& space, const Vec& x, const Mat& dx, int orientation) {
    const int n = static_cast<int>(dx.cols());
    const int d = space.dim();
    Mat pairing(n + 1, d);
    for (int i = 0; i < n; ++i) pairing.row(i) = space.lower(dx.col(i)).transpose();
    pairing.row(n) = space.lower(x).transpose();
    Eigen::JacobiSVD<Mat> svd(pairing, Eigen::ComputeFullV);
    Vec N = svd.matrixV().col(d - 1);
    const double nn = space.inner(N, N);
    if (!(nn > 0.0)) {
        throw GeometryError(GeometryError::Kind::MetricSignature, "normal direction is not spacelike");
    }
    N /= std::sqrt(nn);

    Mat basis(d, d);
    basis.col(0) = x;
    basis.middleCols(1, n) = dx;
    basis.col(d - 1) = N;
    if (basis.determinant() * orientation < 0.0) N = -N;
    return N;
}

void check_point(const AmbientSpace& space, const Vec& x) {
    if (x.size() != space.dim() || !x.allFinite()) {
        throw GeometryError(GeometryError::Kind::OffManifold, "chart returned a point of the wrong dimension");
    }
    const double defect = std::abs(space.inner(x, x) - space.c());
    if (defect > kConstraintTol) {
        std::ostringstream os;
        os << "point off the space form: |<x,x> - c| = " << defect;
        throw GeometryError(GeometryError::Kind::OffManifold, os.str());
    }
    if (space.lorentzian() && x(0) <= 0.0) {
        throw GeometryError(GeometryError::Kind::OffManifold, "point on the lower sheet of the hyperboloid");
    }
}

}  // namespace

Vec Box::sample(std::mt19937_64& rng) const {
    Vec u(lower.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        const double t = static_cast<double>(draw(rng) >> 11) * 0x1.0p-53;
        u(i) = lower(i) + t * (upper(i) - lower(i));
    }
    return u;
}

Chart::Chart(AmbientSpace space, PositionFn position, Box domain, DifferenceSteps steps) {
    const int n = space.n();
    auto impl = std::make_shared<Impl>(Impl{space, DerivativeMode::Numeric, std::move(position), nullptr, nullptr,
                                            std::move(domain), steps, Mat::Identity(n, n), Vec::Zero(n)});
    const PositionFn pos = impl->position;
    impl->first = [pos, steps](const Vec& u) {
        return std::pair<Vec, Mat>{pos(u), central_jacobian(pos, u, steps.first_step(u), steps.richardson)};
    };
    impl->second = [pos, steps](const Vec& u) {
        return ChartJet{pos(u), central_jacobian(pos, u, steps.first_step(u), steps.richardson),
                        central_hessian(pos, u, steps.second_step(u), steps.richardson)};
    };
    impl_ = std::move(impl);
}

Chart::Chart(AmbientSpace space, PositionFn position, FirstJetFn first, JetFn second, Box domain) {
    const int n = space.n();
    impl_ = std::make_shared<Impl>(Impl{space, DerivativeMode::ClosedForm, std::move(position), std::move(first),
                                        std::move(second), std::move(domain), DifferenceSteps{}, Mat::Identity(n, n),
                                        Vec::Zero(n)});
}

void Chart::check_dimension(const Vec& u) const {
    if (u.size() != n()) {
        throw DomainError("chart point has dimension " + std::to_string(u.size()) + ", expected " + std::to_string(n()));
    }
}

Vec Chart::position(const Vec& u) const {
    check_dimension(u);
    return impl_->position(u);
}

std::pair<Vec, Mat> Chart::first_jet(const Vec& u) const {
    check_dimension(u);
    return impl_->first(u);
}

ChartJet Chart::jet(const Vec& u) const {
    check_dimension(u);
    return impl_->second(u);
}

Chart Chart::with_orientation(int sign) const {
    if (sign != 1 && sign != -1) throw DomainError("orientation sign must be +1 or -1");
    return Chart(impl_, sign);
}

Chart Chart::oriented_toward(const Vec& u, const Vec& reference) const {
    const Chart positive = with_orientation(1);
    const Vec N = gauss_map(positive, u);
    return with_orientation(space().inner(N, reference) >= 0.0 ? 1 : -1);
}

Chart Chart::reparametrized(const Mat& L, const Vec& shift) const {
    const int n = this->n();
    if (L.rows() != n || L.cols() != n || shift.size() != n) throw DomainError("reparametrization has wrong shape");
    Eigen::FullPivLU<Mat> lu(L);
    if (!lu.isInvertible()) throw DomainError("reparametrization matrix is singular");
    const Mat Linv = lu.inverse();

    const auto base = impl_;
    auto impl = std::make_shared<Impl>(*base);
    impl->position = [base, L, shift](const Vec& v) { return base->position(L * v + shift); };
    impl->first = [base, L, shift](const Vec& v) {
        auto [x, dx] = base->first(L * v + shift);
        return std::pair<Vec, Mat>{x, dx * L};
    };
    impl->second = [base, L, shift, n](const Vec& v) {
        const ChartJet j = base->second(L * v + shift);
        ChartJet out{j.x, j.dx * L, std::vector<Mat>(static_cast<std::size_t>(n), Mat::Zero(j.x.size(), n))};
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                for (int i = 0; i < n; ++i) {
                    for (int k = 0; k < n; ++k) out.ddx[a].col(b) += L(i, a) * L(k, b) * j.ddx[i].col(k);
                }
            }
        }
        return out;
    };
    impl->sample_linear = Linv * base->sample_linear;
    impl->sample_shift = Linv * (base->sample_shift - shift);
    return Chart(std::move(impl), orientation_);
}

Chart Chart::numeric(DifferenceSteps steps) const {
    return Chart(space(), impl_->position, impl_->domain, steps).with_orientation(orientation_);
}

Vec Chart::sample(std::mt19937_64& rng) const {
    return impl_->sample_linear * impl_->domain.sample(rng) + impl_->sample_shift;
}

ShapeMatrix FrameData::shape() const {
    Eigen::LLT<Mat> llt(g);
    const Mat Linv = llt.matrixL().solve(Mat::Identity(n(), n()));
    return ShapeMatrix(Linv * h * Linv.transpose());
}

Vec gauss_map(const Chart& chart, const Vec& u) {
    const auto [x, dx] = chart.first_jet(u);
    check_point(chart.space(), x);
    return unit_normal(chart.space(), x, dx, chart.orientation());
}

FrameData frame(const Chart& chart, const Vec& u) {
    const AmbientSpace& space = chart.space();
    const int n = chart.n();
    const ChartJet jet = chart.jet(u);
    check_point(space, jet.x);

    Eigen::JacobiSVD<Mat> svd_dx(jet.dx);
    const Vec& sv = svd_dx.singularValues();
    if (sv(n - 1) <= 1e-12 * sv(0)) {
        throw GeometryError(GeometryError::Kind::ImmersionFailure, "tangent vectors are linearly dependent");
    }

    FrameData f;
    f.u = u;
    f.x = jet.x;
    f.tangents = jet.dx;
    f.c = space.c();
    f.orientation_sign = chart.orientation();
    f.g = jet.dx.transpose() * space.metric() * jet.dx;
    f.g = 0.5 * (f.g + f.g.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Mat> metric_eig(f.g, Eigen::EigenvaluesOnly);
    const double lo = metric_eig.eigenvalues()(0);
    const double hi = metric_eig.eigenvalues()(n - 1);
    if (!(lo > 0.0)) {
        throw GeometryError(GeometryError::Kind::MetricSignature, "induced metric is not positive definite");
    }
    if (hi / lo > kMaxMetricCondition) {
        throw GeometryError(GeometryError::Kind::ImmersionFailure, "induced metric is numerically degenerate");
    }
    f.g_inv = f.g.llt().solve(Mat::Identity(n, n));

    f.N = unit_normal(space, jet.x, jet.dx, chart.orientation());

    f.h.resize(n, n);
    const Vec GN = space.lower(f.N);
    for (int i = 0; i < n; ++i) f.h.row(i) = (jet.ddx[i].transpose() * GN).transpose();
    f.h = 0.5 * (f.h + f.h.transpose()).eval();
    f.S_chart = f.g_inv * f.h;

    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> pencil(f.h, f.g, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    const Vec& ev = pencil.eigenvalues();
    f.kappa = PrincipalCurvatures(std::vector<double>(ev.data(), ev.data() + n));
    f.eigenframe = pencil.eigenvectors();

    // Gamma^k_ij = g^{kl} <d_i d_j x, d_l x>
    const Mat Gdx = space.metric() * jet.dx;
    f.gamma.assign(static_cast<std::size_t>(n), Mat::Zero(n, n));
    for (int i = 0; i < n; ++i) {
        const Mat lowered = jet.ddx[i].transpose() * Gdx;  // (j, l)
        const Mat raised = lowered * f.g_inv;              // (j, k)
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) f.gamma[k](i, j) = raised(j, k);
        }
    }
    return f;
}

PrincipalCurvatures principal_curvatures(const FrameData& frame) {
    Eigen::LLT<Mat> llt(frame.g);
    if (llt.info() != Eigen::Success) {
        throw GeometryError(GeometryError::Kind::MetricSignature, "induced metric is not positive definite");
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> pencil(frame.h, frame.g, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    const Vec& ev = pencil.eigenvalues();
    return PrincipalCurvatures(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

Hessian hessian_from_partials(const FrameData& frame, const Vec& df, const Mat& ddf) {
    const int n = frame.n();
    Hessian out;
    out.gradient = df;
    out.covariant = ddf;
    for (int k = 0; k < n; ++k) out.covariant -= frame.gamma[k] * df(k);
    out.covariant = 0.5 * (out.covariant + out.covariant.transpose()).eval();
    out.endomorphism = frame.g_inv * out.covariant;
    return out;
}

Hessian hessian(const FrameData& frame, const Chart& chart, const ScalarField& f) {
    const int n = frame.n();
    const Vec& u = frame.u;
    const auto& steps = chart.steps();
    auto vf = [&f](const Vec& p) { return Vec::Constant(1, f(p)); };
    const Mat jac = central_jacobian(vf, u, steps.first_step(u), steps.richardson);
    const auto hs = central_hessian(vf, u, steps.second_step(u), steps.richardson);
    Mat ddf(n, n);
    for (int i = 0; i < n; ++i) ddf.row(i) = hs[i].row(0);
    return hessian_from_partials(frame, jac.row(0).transpose(), ddf);
}

Hessian hessian(const Chart& chart, const Vec& u, const ScalarField& f) { return hessian(frame(chart, u), chart, f); }

Hessian hessian_linear(const FrameData& frame, const ChartJet& jet, const Vec& a, const AmbientSpace& space) {
    const int n = frame.n();
    const Vec Ga = space.lower(a);
    const Vec df = jet.dx.transpose() * Ga;
    Mat ddf(n, n);
    for (int i = 0; i < n; ++i) ddf.row(i) = (jet.ddx[i].transpose() * Ga).transpose();
    return hessian_from_partials(frame, df, ddf);
}

ScalarField ambient_field(const Chart& chart, std::function<double(const Vec& x)> F) {
    return [chart, F = std::move(F)](const Vec& u) { return F(chart.position(u)); };
}

Vec tangential_projection(const FrameData& frame, const Vec& v, const AmbientSpace& space) {
    return v - space.inner(v, frame.N) * frame.N - space.c() * space.inner(v, frame.x) * frame.x;
}

Vec gradient_vector(const FrameData& frame, const Vec& df) { return frame.tangents * (frame.g_inv * df); }

}  // namespace newtonlk
