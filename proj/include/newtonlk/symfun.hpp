#pragma once

// Elementary symmetric functions, higher order mean curvatures and Newton
// transformations of a shape operator.

#include "newtonlk/core.hpp"

#include <vector>

namespace newtonlk {

/// Eigenvalues of the shape operator, stored in ascending order.
class PrincipalCurvatures {
public:
    explicit PrincipalCurvatures(std::vector<double> kappa);

    int n() const noexcept { return static_cast<int>(kappa_.size()); }
    std::span<const double> values() const noexcept { return kappa_; }
    double operator[](int i) const { return kappa_[static_cast<std::size_t>(i)]; }

    /// Curvatures of the opposite orientation (-N).
    PrincipalCurvatures flipped() const;

private:
    std::vector<double> kappa_;
};

/// Real symmetric n x n matrix of the shape operator in an orthonormal
/// tangent frame. Construction rejects matrices whose asymmetry exceeds
/// 1e-12 * max|S| and stores the symmetrized part.
class ShapeMatrix {
public:
    explicit ShapeMatrix(const Mat& entries);

    int n() const noexcept { return static_cast<int>(s_.rows()); }
    const Mat& matrix() const noexcept { return s_; }

    /// Eigenvalues, ascending.
    PrincipalCurvatures curvatures() const;

private:
    Mat s_;
};

/// binom(n, k) as a double; zero outside 0 <= k <= n.
double binomial(int n, int k);

/// c_k = (n - k) binom(n, k).
double newton_constant(int n, int k);

/// s_0..s_n with s_k = sigma_k(kappa), by expanding prod(1 + kappa_i t)
/// one factor at a time.
std::vector<double> elementary_symmetric(std::span<const double> kappa);

/// H_k = s_k / binom(n, k).
std::vector<double> mean_curvatures(std::span<const double> s, int n);

struct CurvatureProfile {
    int n = 0;
    std::vector<double> s;  ///< s_0..s_n
    std::vector<double> H;  ///< H_0..H_n
    std::vector<double> c;  ///< c_0..c_{n-1}

    static CurvatureProfile from(const PrincipalCurvatures& kappa);

    /// H_j, extended by zero for j > n.
    double H_at(int j) const;
    double s_at(int j) const;
};

/// P_k by the recursion P_0 = I, P_k = s_k I - S P_{k-1}.
Mat newton_matrix(const ShapeMatrix& S, int k);

/// P_k = sum_j (-1)^j s_{k-j} S^j. Independent route used to cross-check
/// the recursion.
Mat newton_matrix_sum(const ShapeMatrix& S, int k);

/// Eigenvalues mu_{i,k} of P_k on the principal directions: sigma_k of the
/// curvatures with kappa_i removed. Same order as `kappa`.
std::vector<double> newton_eigenvalues(const PrincipalCurvatures& kappa, int k);

struct TraceIdentities {
    double trace_p = 0;     ///< tr(P_k)
    double trace_sp = 0;    ///< tr(S P_k)
    double trace_s2p = 0;   ///< tr(S^2 P_k)
    double residual_p = 0;  ///< |tr(P_k) - c_k H_k|
    double residual_sp = 0;
    double residual_s2p = 0;
};

TraceIdentities trace_identities(const ShapeMatrix& S, int k);

/// |n(n-1)c + n^2 H_1^2 - tr(S^2) - n(n-1)(c + H_2)|
double scalar_curvature_residual(const ShapeMatrix& S, int c);

/// Coefficients of det(tI - S), highest power first: (1, -s_1, s_2, ...).
std::vector<double> characteristic_polynomial(const ShapeMatrix& S);

/// Horner evaluation of a highest-power-first coefficient list.
double evaluate_polynomial(std::span<const double> coefficients, double t);

}  // namespace newtonlk
