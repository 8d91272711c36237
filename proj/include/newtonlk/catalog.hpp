#pragma once

// Closed-form hypersurface families satisfying L_k x = A x + b, with their
// predicted (A, b) and curvatures.

#include "newtonlk/chart.hpp"

#include <string>
#include <string_view>

namespace newtonlk {

enum class FamilyKind {
    UmbilicSphereCap,   ///< {x in S^{n+1} : <a,x> = tau}, |tau| < 1
    UmbilicHyperbolic,  ///< {x in H^{n+1} : <a,x> = tau}
    RiemannianProduct,  ///< {x : x_{m+1}^2 + ... + x_{n+1}^2 = r^2}
};

/// Causal character of the axis a of an umbilic hypersurface in H^{n+1}.
enum class AxisType { Spacelike, Timelike, Lightlike };

std::string to_string(FamilyKind kind);
std::string to_string(AxisType axis);
FamilyKind parse_family_kind(std::string_view name);
AxisType parse_axis_type(std::string_view name);

struct FamilyParams {
    FamilyKind kind = FamilyKind::UmbilicSphereCap;
    int n = 2;
    int c = 1;
    double tau = 0.0;
    double r = 0.5;
    int m = 1;
    AxisType axis = AxisType::Spacelike;
};

/// An admissible member of one of the example families. Construction
/// validates the parameters and throws DomainError otherwise.
///
/// Default axes: a = e_{n+1} on the sphere; on the hyperboloid
/// e_{n+1} (spacelike), e_0 (timelike), e_0 + e_{n+1} (lightlike). Since
/// <e_0, x> = -x_0 < -1 and <e_0 + e_{n+1}, x> < 0 on the upper sheet, the
/// timelike family needs tau < -1 and the lightlike one tau < 0.
class ExampleFamily {
public:
    explicit ExampleFamily(FamilyParams params);

    const FamilyParams& params() const noexcept { return p_; }
    int n() const noexcept { return p_.n; }
    int c() const noexcept { return p_.c; }
    AmbientSpace space() const { return AmbientSpace(p_.c, p_.n); }

    /// Axis vector a (zero for products).
    Vec axis() const;
    /// <a, a> in the ambient metric.
    double axis_norm() const;

    /// Unit normal of the closed-form description at an ambient point x.
    Vec normal_at(const Vec& x) const;
    /// Constant principal curvatures, ascending.
    PrincipalCurvatures curvatures() const;

    /// Closed-form chart, oriented to agree with normal_at.
    Chart chart() const;

    std::string name() const;

private:
    FamilyParams p_;
};

struct PredictedAffine {
    Mat A;
    Vec b;
    int k = 0;
};

PredictedAffine predicted_affine(const ExampleFamily& family, int k);

/// Hypersurfaces with H_{k+1} = 0 and H_k constant: A = -c c_k H_k I, b = 0.
PredictedAffine zero_Hk1_affine(int n, int c, int k, double Hk);

double predicted_Hk(const ExampleFamily& family, int k);

enum class Example3Shape { HyperbolicSpace, Sphere, EuclideanSpace };

struct Example3Surface {
    Example3Shape shape;
    double radius = 0;  ///< signed radius; -sqrt(1+tau^2) for H^n, sqrt(tau^2-1) for S^n, 0 for R^n
};

/// Type of {x in H^{n+1} : <a,x> = tau} from <a,a> in {1, 0, -1}.
Example3Surface classify_example3(double axis_norm, double tau);
std::string to_string(Example3Shape shape);

/// A hypersurface with non-constant, non-umbilic curvature; used as a
/// negative control for fitting and classification. n >= 2.
Chart non_example_chart(int n, int c);

}  // namespace newtonlk
