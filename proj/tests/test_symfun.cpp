#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "newtonlk/symfun.hpp"
#include "oracle.hpp"

#include <cmath>

using namespace newtonlk;

namespace {

Mat diag(std::initializer_list<double> values) {
    Vec v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v(i++) = x;
    return v.asDiagonal();
}

double max_abs_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("elementary symmetric functions of worked curvature vectors") {
    const std::vector<double> k123{1, 2, 3};
    const auto s = elementary_symmetric(k123);
    REQUIRE(s.size() == 4);
    CHECK(s[0] == 1.0);
    CHECK(s[1] == 6.0);
    CHECK(s[2] == 11.0);
    CHECK(s[3] == 6.0);
    for (int k = 0; k <= 3; ++k) CHECK(s[static_cast<std::size_t>(k)] == oracle::sigma_subsets(k123, k));

    const std::vector<double> zero{0, 0, 0};
    CHECK(elementary_symmetric(zero) == std::vector<double>{1, 0, 0, 0});

    const double lambda = -0.75;
    const std::vector<double> umbilic{lambda, lambda};
    const auto su = elementary_symmetric(umbilic);
    CHECK(su[1] == doctest::Approx(2 * lambda));
    CHECK(su[2] == doctest::Approx(lambda * lambda));
}

TEST_CASE("elementary symmetric functions agree with subset enumeration") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-2, 2);
    for (int n = 1; n <= 9; ++n) {
        std::vector<double> kappa(static_cast<std::size_t>(n));
        for (auto& v : kappa) v = U(rng);
        const auto s = elementary_symmetric(kappa);
        for (int k = 0; k <= n; ++k)
            CHECK(s[static_cast<std::size_t>(k)] == doctest::Approx(oracle::sigma_subsets(kappa, k)).epsilon(1e-12));
    }
}

TEST_CASE("normalized mean curvatures") {
    const auto H = mean_curvatures(std::vector<double>{1, 6, 11, 6}, 3);
    CHECK(H[0] == 1.0);
    CHECK(H[1] == doctest::Approx(2.0));
    CHECK(H[2] == doctest::Approx(11.0 / 3.0));
    CHECK(H[3] == doctest::Approx(6.0));

    const double lambda = 1.3;
    const std::vector<double> umbilic(4, lambda);
    const auto Hu = mean_curvatures(elementary_symmetric(umbilic), 4);
    for (int k = 0; k <= 4; ++k) CHECK(Hu[static_cast<std::size_t>(k)] == doctest::Approx(std::pow(lambda, k)));

    const auto profile = CurvatureProfile::from(PrincipalCurvatures({1.0, -1.0}));
    CHECK(profile.H[1] == doctest::Approx(0.0));
    CHECK(profile.H[2] == doctest::Approx(-1.0));
    CHECK(profile.H_at(3) == 0.0);
    CHECK(profile.c[0] == 2.0);
    CHECK(profile.c[1] == 2.0);
}

TEST_CASE("binomials and Newton constants") {
    CHECK(binomial(5, 2) == 10.0);
    CHECK(binomial(3, 0) == 1.0);
    CHECK(binomial(3, 4) == 0.0);
    CHECK(newton_constant(3, 1) == 6.0);  // (3-1) * C(3,1)
    CHECK(newton_constant(2, 0) == 2.0);
}

TEST_CASE("Newton matrices of worked shape operators") {
    const ShapeMatrix S(diag({1, 2, 3}));
    CHECK(max_abs_diff(newton_matrix(S, 0), Mat::Identity(3, 3)) == 0.0);
    CHECK(max_abs_diff(newton_matrix(S, 1), diag({5, 4, 3})) < 1e-15);
    CHECK(newton_matrix(S, 3).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(max_abs_diff(newton_matrix_sum(S, 1), diag({5, 4, 3})) < 1e-15);

    const ShapeMatrix zero(Mat::Zero(4, 4));
    for (int k = 1; k <= 4; ++k) CHECK(newton_matrix(zero, k).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(newton_matrix(S, -1), DomainError);
    CHECK_THROWS_AS(newton_matrix(S, 4), DomainError);
    CHECK_THROWS_AS(newton_matrix_sum(S, 4), DomainError);
}

TEST_CASE("Newton eigenvalues from complementary subsets") {
    const PrincipalCurvatures kappa({1, 2, 3});
    const auto mu1 = newton_eigenvalues(kappa, 1);
    CHECK(mu1 == std::vector<double>{5, 4, 3});
    const auto mu2 = newton_eigenvalues(kappa, 2);
    CHECK(mu2 == std::vector<double>{6, 3, 2});
    const auto mu0 = newton_eigenvalues(kappa, 0);
    CHECK(mu0 == std::vector<double>{1, 1, 1});
    CHECK_THROWS_AS(newton_eigenvalues(kappa, 3), DomainError);
    CHECK_THROWS_AS(newton_eigenvalues(kappa, -1), DomainError);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1, 1);
    std::vector<double> v(6);
    for (auto& x : v) x = U(rng);
    const PrincipalCurvatures random(v);
    const std::vector<double> sorted(random.values().begin(), random.values().end());
    for (int k = 0; k < 6; ++k) {
        const auto mu = newton_eigenvalues(random, k);
        for (int i = 0; i < 6; ++i)
            CHECK(mu[static_cast<std::size_t>(i)] == doctest::Approx(oracle::sigma_without(sorted, i, k)).epsilon(1e-12));
    }
}

TEST_CASE("Newton matrices match the eigendecomposition oracle") {
    std::mt19937_64 rng(3);
    for (int n = 2; n <= 7; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            const Mat M = oracle::random_symmetric(n, rng);
            const ShapeMatrix S(M);
            for (int k = 0; k <= n; ++k) {
                const Mat expected = oracle::newton_from_eigen(M, k);
                const double scale = 1.0 + expected.cwiseAbs().maxCoeff();
                CHECK(max_abs_diff(newton_matrix(S, k), expected) / scale < 1e-12);
                CHECK(max_abs_diff(newton_matrix_sum(S, k), expected) / scale < 1e-12);
            }
        }
    }
}

TEST_CASE("trace identities") {
    SUBCASE("worked diagonal example") {
        const auto t = trace_identities(ShapeMatrix(diag({1, 2, 3})), 1);
        CHECK(t.trace_p == 12.0);
        CHECK(t.trace_sp == 22.0);
        CHECK(t.trace_s2p == 48.0);
        CHECK(t.residual_p == 0.0);
        CHECK(t.residual_sp == 0.0);
        CHECK(t.residual_s2p == 0.0);
    }
    SUBCASE("umbilic n = 3") {
        const double lambda = 0.4;
        const auto t = trace_identities(ShapeMatrix(lambda * Mat::Identity(3, 3)), 1);
        CHECK(t.trace_p == doctest::Approx(6 * lambda));  // c_1 H_1 = 6 lambda
        CHECK(t.trace_sp == doctest::Approx(6 * lambda * lambda));
        CHECK(t.residual_p < 1e-15);
        CHECK(t.residual_sp < 1e-15);
        CHECK(t.residual_s2p < 1e-15);
    }
    SUBCASE("random n = 6 against brute-force traces") {
        std::mt19937_64 rng(5);
        const Mat M = oracle::random_symmetric(6, rng);
        const auto kappa = oracle::eigenvalues(M);
        for (int k = 0; k < 6; ++k) {
            const auto t = trace_identities(ShapeMatrix(M), k);
            CHECK(t.residual_p < 1e-12);
            CHECK(t.residual_sp < 1e-12);
            CHECK(t.residual_s2p < 1e-12);
            const double s1 = oracle::sigma_subsets(kappa, 1);
            const double expect_sp = (k + 1) * oracle::sigma_subsets(kappa, k + 1);
            const double expect_s2p = s1 * oracle::sigma_subsets(kappa, k + 1) - (k + 2) * oracle::sigma_subsets(kappa, k + 2);
            CHECK(t.trace_p == doctest::Approx((6 - k) * oracle::sigma_subsets(kappa, k)).epsilon(1e-12));
            CHECK(t.trace_sp == doctest::Approx(expect_sp).epsilon(1e-12));
            CHECK(t.trace_s2p == doctest::Approx(expect_s2p).epsilon(1e-12));
        }
    }
}

TEST_CASE("scalar curvature identity") {
    CHECK(scalar_curvature_residual(ShapeMatrix(diag({1, 2, 3})), 1) < 1e-13);
    CHECK(scalar_curvature_residual(ShapeMatrix(Mat::Zero(4, 4)), 1) == 0.0);
    CHECK(scalar_curvature_residual(ShapeMatrix(Mat::Zero(4, 4)), -1) == 0.0);
    std::mt19937_64 rng(9);
    CHECK(scalar_curvature_residual(ShapeMatrix(oracle::random_symmetric(5, rng)), -1) < 1e-12);
}

TEST_CASE("characteristic polynomial") {
    const auto p = characteristic_polynomial(ShapeMatrix(diag({1, 2, 3})));
    CHECK(p == std::vector<double>{1, -6, 11, -6});
    CHECK(characteristic_polynomial(ShapeMatrix(Mat::Zero(2, 2))) == std::vector<double>{1, 0, 0});
    const auto q = characteristic_polynomial(ShapeMatrix(diag({1, -1})));
    CHECK(q[0] == 1.0);
    CHECK(q[1] == doctest::Approx(0.0));
    CHECK(q[2] == doctest::Approx(-1.0));
    for (double root : {1.0, 2.0, 3.0}) CHECK(evaluate_polynomial(p, root) == doctest::Approx(0.0));
    CHECK(evaluate_polynomial(p, 0.0) == -6.0);
}

TEST_CASE("shape matrix validation and curvature ordering") {
    Mat asym = diag({1, 2});
    asym(0, 1) = 0.5;
    CHECK_THROWS_AS(ShapeMatrix{asym}, DomainError);
    CHECK_THROWS_AS(ShapeMatrix{Mat::Zero(2, 3)}, DomainError);

    const auto kappa = ShapeMatrix(diag({3, -1, 2})).curvatures();
    CHECK(kappa[0] == doctest::Approx(-1));
    CHECK(kappa[1] == doctest::Approx(2));
    CHECK(kappa[2] == doctest::Approx(3));
    const auto flipped = kappa.flipped();
    CHECK(flipped[0] == doctest::Approx(-3));
    CHECK(flipped[2] == doctest::Approx(1));
}

TEST_CASE("orientation flip changes H_k by (-1)^k") {
    const PrincipalCurvatures kappa({0.3, -1.2, 2.0, 0.7});
    const auto a = CurvatureProfile::from(kappa);
    const auto b = CurvatureProfile::from(kappa.flipped());
    for (int k = 0; k <= 4; ++k) CHECK(b.H[static_cast<std::size_t>(k)] == doctest::Approx((k % 2 ? -1 : 1) * a.H[static_cast<std::size_t>(k)]));
}
