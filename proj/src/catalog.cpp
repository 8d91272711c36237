#include "newtonlk/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace newtonlk {

namespace {

using std::cos;
using std::sin;
using std::sqrt;

constexpr double kPi = std::numbers::pi;

/// Unit vector of S^d in R^{d+1} from d hyperspherical angles starting at u(offset).
template <class T>
void hyperspherical(const VecT<T>& u, int offset, int d, VecT<T>& out, int out_offset, double radius) {
    T prod = constant_like(u(0), radius);
    for (int i = 0; i < d; ++i) {
        const T& angle = u(offset + i);
        out(out_offset + i) = prod * cos(angle);
        prod = prod * sin(angle);
    }
    out(out_offset + d) = prod;
}

void angle_box(Box& box, int offset, int d) {
    for (int i = 0; i < d; ++i) {
        const bool last = (i == d - 1);
        box.lower(offset + i) = last ? 0.2 : 0.35;
        box.upper(offset + i) = last ? 2.0 * kPi - 0.2 : kPi - 0.35;
    }
}

struct SphereCapMap {
    int n;
    double tau;
    template <class T>
    VecT<T> operator()(const VecT<T>& u) const {
        VecT<T> x(n + 2);
        hyperspherical(u, 0, n, x, 0, std::sqrt(1.0 - tau * tau));
        x(n + 1) = constant_like(u(0), tau);
        return x;
    }
};

struct HyperbolicSpacelikeMap {
    int n;
    double tau;
    template <class T>
    VecT<T> operator()(const VecT<T>& u) const {
        VecT<T> x(n + 2);
        T sq = constant_like(u(0), 1.0 + tau * tau);
        for (int i = 0; i < n; ++i) {
            x(i + 1) = u(i);
            sq = sq + u(i) * u(i);
        }
        x(0) = sqrt(sq);
        x(n + 1) = constant_like(u(0), tau);
        return x;
    }
};

struct HyperbolicTimelikeMap {
    int n;
    double tau;
    template <class T>
    VecT<T> operator()(const VecT<T>& u) const {
        VecT<T> x(n + 2);
        x(0) = constant_like(u(0), -tau);
        hyperspherical(u, 0, n, x, 1, std::sqrt(tau * tau - 1.0));
        return x;
    }
};

struct HyperbolicLightlikeMap {
    int n;
    double tau;
    template <class T>
    VecT<T> operator()(const VecT<T>& u) const {
        VecT<T> x(n + 2);
        T sq = constant_like(u(0), 1.0 + tau * tau);
        for (int i = 0; i < n; ++i) {
            x(i + 1) = u(i);
            sq = sq + u(i) * u(i);
        }
        x(0) = sq * (-0.5 / tau);
        x(n + 1) = x(0) + tau;
        return x;
    }
};

struct SphereProductMap {
    int n, m;
    double r;
    template <class T>
    VecT<T> operator()(const VecT<T>& u) const {
        VecT<T> x(n + 2);
        hyperspherical(u, 0, m, x, 0, std::sqrt(1.0 - r * r));
        hyperspherical(u, m, n - m, x, m + 1, r);
        return x;
    }
};

struct HyperbolicProductMap {
    int n, m;
    double r;
    template <class T>
    VecT<T> operator()(const VecT<T>& u) const {
        VecT<T> x(n + 2);
        const double scale = std::sqrt(1.0 + r * r);
        T sq = constant_like(u(0), 1.0);
        for (int i = 0; i < m; ++i) {
            x(i + 1) = u(i) * scale;
            sq = sq + u(i) * u(i);
        }
        x(0) = sqrt(sq) * scale;
        hyperspherical(u, m, n - m, x, m + 1, r);
        return x;
    }
};

struct ControlMap {
    int n, c;
    template <class T>
    VecT<T> operator()(const VecT<T>& u) const {
        VecT<T> y(n + 2);
        const T bump = 0.3 + 0.5 * u(0) * u(0) + 0.4 * u(0) * u(n - 1) + 0.3 * u(n - 1) * u(n - 1) * u(n - 1);
        if (c == 1) {
            for (int i = 0; i < n; ++i) y(i) = u(i);
            y(n) = constant_like(u(0), 1.0);
            y(n + 1) = bump;
            T sq = constant_like(u(0), 0.0);
            for (int i = 0; i < n + 2; ++i) sq = sq + y(i) * y(i);
            const T len = sqrt(sq);
            for (int i = 0; i < n + 2; ++i) y(i) = y(i) / len;
        } else {
            y(0) = 2.0 + 0.5 * u(0) * u(0);
            for (int i = 0; i < n; ++i) y(i + 1) = u(i);
            y(n + 1) = bump;
            T sq = -y(0) * y(0);
            for (int i = 1; i < n + 2; ++i) sq = sq + y(i) * y(i);
            const T len = sqrt(-sq);
            for (int i = 0; i < n + 2; ++i) y(i) = y(i) / len;
        }
        return y;
    }
};

Box make_box(int n) { return Box{Vec::Zero(n), Vec::Zero(n)}; }

void fill_box(Box& box, int offset, int count, double half_width) {
    for (int i = 0; i < count; ++i) {
        box.lower(offset + i) = -half_width;
        box.upper(offset + i) = half_width;
    }
}

void fail(const std::string& msg) { throw DomainError(msg); }

}  // namespace

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::UmbilicSphereCap: return "umbilic_sphere_cap";
        case FamilyKind::UmbilicHyperbolic: return "umbilic_hyperbolic";
        case FamilyKind::RiemannianProduct: return "riemannian_product";
    }
    return "unknown";
}

std::string to_string(AxisType axis) {
    switch (axis) {
        case AxisType::Spacelike: return "spacelike";
        case AxisType::Timelike: return "timelike";
        case AxisType::Lightlike: return "lightlike";
    }
    return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
    for (auto k : {FamilyKind::UmbilicSphereCap, FamilyKind::UmbilicHyperbolic, FamilyKind::RiemannianProduct}) {
        if (to_string(k) == name) return k;
    }
    throw DomainError("unknown family '" + std::string(name) + "'");
}

AxisType parse_axis_type(std::string_view name) {
    for (auto a : {AxisType::Spacelike, AxisType::Timelike, AxisType::Lightlike}) {
        if (to_string(a) == name) return a;
    }
    throw DomainError("unknown axis type '" + std::string(name) + "'");
}

ExampleFamily::ExampleFamily(FamilyParams params) : p_(params) {
    if (p_.n < 1) fail("family dimension n must be >= 1");
    if (!std::isfinite(p_.tau) || !std::isfinite(p_.r)) fail("family parameters must be finite");
    switch (p_.kind) {
        case FamilyKind::UmbilicSphereCap:
            if (p_.c != 1) fail("umbilic_sphere_cap lives in the sphere (c = 1)");
            if (!(std::abs(p_.tau) < 1.0)) fail("umbilic_sphere_cap needs |tau| < 1");
            break;
        case FamilyKind::UmbilicHyperbolic: {
            if (p_.c != -1) fail("umbilic_hyperbolic lives in hyperbolic space (c = -1)");
            const double an = axis_norm();
            if (!(an + p_.tau * p_.tau > 0.0)) fail("umbilic_hyperbolic needs <a,a> + tau^2 > 0");
            if (p_.axis == AxisType::Timelike && !(p_.tau < -1.0)) {
                fail("timelike axis e_0 needs tau < -1 (|tau| > 1 on the upper sheet)");
            }
            if (p_.axis == AxisType::Lightlike && !(p_.tau < 0.0)) {
                fail("lightlike axis e_0 + e_{n+1} needs tau < 0 (tau != 0 on the upper sheet)");
            }
            break;
        }
        case FamilyKind::RiemannianProduct:
            if (p_.n < 2) fail("riemannian_product needs n >= 2");
            if (p_.m < 1 || p_.m > p_.n - 1) fail("riemannian_product needs 1 <= m <= n-1");
            if (p_.c == 1 && !(p_.r > 0.0 && p_.r < 1.0)) fail("riemannian_product in the sphere needs 0 < r < 1");
            if (p_.c == -1 && !(p_.r > 0.0)) fail("riemannian_product in hyperbolic space needs r > 0");
            if (p_.c != 1 && p_.c != -1) fail("c must be +1 or -1");
            break;
    }
}

Vec ExampleFamily::axis() const {
    const int d = p_.n + 2;
    Vec a = Vec::Zero(d);
    switch (p_.kind) {
        case FamilyKind::UmbilicSphereCap: a(d - 1) = 1.0; break;
        case FamilyKind::UmbilicHyperbolic:
            if (p_.axis != AxisType::Timelike) a(d - 1) = 1.0;
            if (p_.axis != AxisType::Spacelike) a(0) = 1.0;
            break;
        case FamilyKind::RiemannianProduct: break;
    }
    return a;
}

double ExampleFamily::axis_norm() const {
    const Vec a = axis();
    return space().inner(a, a);
}

Vec ExampleFamily::normal_at(const Vec& x) const {
    const double tau = p_.tau;
    switch (p_.kind) {
        case FamilyKind::UmbilicSphereCap: return (axis() - tau * x) / std::sqrt(1.0 - tau * tau);
        case FamilyKind::UmbilicHyperbolic: return (axis() + tau * x) / std::sqrt(axis_norm() + tau * tau);
        case FamilyKind::RiemannianProduct: {
            const double c = p_.c;
            const double r = p_.r;
            const double w = std::sqrt(1.0 - c * r * r);
            Vec N = x;
            N.head(p_.m + 1) *= -c * r / w;
            N.tail(p_.n - p_.m + 1) *= w / r;
            return N;
        }
    }
    return x;
}

PrincipalCurvatures ExampleFamily::curvatures() const {
    const double tau = p_.tau;
    switch (p_.kind) {
        case FamilyKind::UmbilicSphereCap:
            return PrincipalCurvatures(std::vector<double>(p_.n, tau / std::sqrt(1.0 - tau * tau)));
        case FamilyKind::UmbilicHyperbolic:
            return PrincipalCurvatures(std::vector<double>(p_.n, -tau / std::sqrt(axis_norm() + tau * tau)));
        case FamilyKind::RiemannianProduct: {
            const double c = p_.c;
            const double r = p_.r;
            const double w = std::sqrt(1.0 - c * r * r);
            std::vector<double> k(static_cast<std::size_t>(p_.m), c * r / w);
            k.insert(k.end(), static_cast<std::size_t>(p_.n - p_.m), -w / r);
            return PrincipalCurvatures(std::move(k));
        }
    }
    return PrincipalCurvatures(std::vector<double>(p_.n, 0.0));
}

Chart ExampleFamily::chart() const {
    const int n = p_.n;
    const AmbientSpace sp = space();
    Box box = make_box(n);
    auto build = [&](auto functor) {
        Chart ch = Chart::from_functor(sp, functor, box);
        const Vec u0 = box.center();
        return ch.oriented_toward(u0, normal_at(ch.position(u0)));
    };
    switch (p_.kind) {
        case FamilyKind::UmbilicSphereCap:
            angle_box(box, 0, n);
            return build(SphereCapMap{n, p_.tau});
        case FamilyKind::UmbilicHyperbolic:
            switch (p_.axis) {
                case AxisType::Spacelike:
                    fill_box(box, 0, n, 0.8);
                    return build(HyperbolicSpacelikeMap{n, p_.tau});
                case AxisType::Timelike:
                    angle_box(box, 0, n);
                    return build(HyperbolicTimelikeMap{n, p_.tau});
                case AxisType::Lightlike:
                    fill_box(box, 0, n, 0.8);
                    return build(HyperbolicLightlikeMap{n, p_.tau});
            }
            break;
        case FamilyKind::RiemannianProduct:
            if (p_.c == 1) {
                angle_box(box, 0, p_.m);
                angle_box(box, p_.m, n - p_.m);
                return build(SphereProductMap{n, p_.m, p_.r});
            }
            fill_box(box, 0, p_.m, 0.8);
            angle_box(box, p_.m, n - p_.m);
            return build(HyperbolicProductMap{n, p_.m, p_.r});
    }
    throw DomainError("no chart for family");
}

std::string ExampleFamily::name() const {
    std::ostringstream os;
    os << to_string(p_.kind) << "(n=" << p_.n << ", c=" << p_.c;
    if (p_.kind == FamilyKind::RiemannianProduct) {
        os << ", m=" << p_.m << ", r=" << p_.r;
    } else {
        os << ", tau=" << p_.tau;
        if (p_.kind == FamilyKind::UmbilicHyperbolic) os << ", axis=" << to_string(p_.axis);
    }
    os << ")";
    return os.str();
}

PredictedAffine predicted_affine(const ExampleFamily& family, int k) {
    const auto& p = family.params();
    const int n = p.n;
    const int d = n + 2;
    if (k < 0 || k > n - 1) fail("predicted_affine: k outside [0, n-1]");
    const double ck = newton_constant(n, k);
    const double tau = p.tau;

    PredictedAffine out{Mat::Zero(d, d), Vec::Zero(d), k};
    switch (p.kind) {
        case FamilyKind::UmbilicSphereCap: {
            const double den = std::pow(1.0 - tau * tau, (k + 2) / 2.0);
            out.A = Mat::Identity(d, d) * (-ck * std::pow(tau, k) / den);
            out.b = family.axis() * (ck * std::pow(tau, k + 1) / den);
            break;
        }
        case FamilyKind::UmbilicHyperbolic: {
            const double an = family.axis_norm();
            const double den = std::pow(an + tau * tau, (k + 2) / 2.0);
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            out.A = Mat::Identity(d, d) * (sign * ck * an * std::pow(tau, k) / den);
            out.b = family.axis() * (-sign * ck * std::pow(tau, k + 1) / den);
            break;
        }
        case FamilyKind::RiemannianProduct: {
            const double c = p.c;
            const double r = p.r;
            const double w = std::sqrt(1.0 - c * r * r);
            const auto prof = CurvatureProfile::from(family.curvatures());
            const double lambda = -c * ck * prof.H_at(k + 1) * r / w - c * ck * prof.H_at(k);
            const double mu = ck * prof.H_at(k + 1) * w / r - c * ck * prof.H_at(k);
            for (int i = 0; i < d; ++i) out.A(i, i) = (i <= p.m) ? lambda : mu;
            break;
        }
    }
    return out;
}

PredictedAffine zero_Hk1_affine(int n, int c, int k, double Hk) {
    if (k < 0 || k > n - 1) fail("zero_Hk1_affine: k outside [0, n-1]");
    const int d = n + 2;
    return {Mat::Identity(d, d) * (-c * newton_constant(n, k) * Hk), Vec::Zero(d), k};
}

double predicted_Hk(const ExampleFamily& family, int k) {
    const auto& p = family.params();
    if (k < 0 || k > p.n) fail("predicted_Hk: k outside [0, n]");
    const double tau = p.tau;
    switch (p.kind) {
        case FamilyKind::UmbilicSphereCap: return std::pow(tau, k) / std::pow(1.0 - tau * tau, k / 2.0);
        case FamilyKind::UmbilicHyperbolic:
            return ((k % 2 == 0) ? 1.0 : -1.0) * std::pow(tau, k) / std::pow(family.axis_norm() + tau * tau, k / 2.0);
        case FamilyKind::RiemannianProduct: return CurvatureProfile::from(family.curvatures()).H_at(k);
    }
    return 0.0;
}

Example3Surface classify_example3(double axis_norm, double tau) {
    if (!(axis_norm + tau * tau > 0.0)) fail("classify_example3: needs <a,a> + tau^2 > 0");
    if (axis_norm == 1.0) return {Example3Shape::HyperbolicSpace, -std::sqrt(1.0 + tau * tau)};
    if (axis_norm == -1.0) {
        if (!(std::abs(tau) > 1.0)) fail("classify_example3: timelike axis needs |tau| > 1");
        return {Example3Shape::Sphere, std::sqrt(tau * tau - 1.0)};
    }
    if (axis_norm == 0.0) {
        if (tau == 0.0) fail("classify_example3: lightlike axis needs tau != 0");
        return {Example3Shape::EuclideanSpace, 0.0};
    }
    fail("classify_example3: <a,a> must be 1, 0 or -1");
    return {};
}

std::string to_string(Example3Shape shape) {
    switch (shape) {
        case Example3Shape::HyperbolicSpace: return "hyperbolic_space";
        case Example3Shape::Sphere: return "sphere";
        case Example3Shape::EuclideanSpace: return "euclidean_space";
    }
    return "unknown";
}

Chart non_example_chart(int n, int c) {
    if (n < 2) fail("non_example_chart needs n >= 2");
    const AmbientSpace sp(c, n);
    Box box = make_box(n);
    fill_box(box, 0, n, 0.5);
    return Chart::from_functor(sp, ControlMap{n, c}, box);
}

}  // namespace newtonlk
