#pragma once

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace newtonlk {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (order k out of
/// range, inadmissible family parameters, dimension mismatch).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A chart point where the geometry cannot be evaluated.
class GeometryError : public Error {
public:
    enum class Kind { ImmersionFailure, OffManifold, MetricSignature, StepGuard };

    GeometryError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Malformed external data (CSV rows, config fields).
class SchemaError : public Error {
public:
    using Error::Error;
};

inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

/// Pairwise summation; the reduction tree depends only on the length, so
/// results are reproducible regardless of how the inputs were produced.
double pairwise_sum(std::span<const double> values);

double mean(std::span<const double> values);

/// Population standard deviation (zero for fewer than two values).
double stddev(std::span<const double> values);

}  // namespace newtonlk
