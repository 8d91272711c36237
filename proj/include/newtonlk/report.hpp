#pragma once

// Batch commands behind the command line tool and the Python module. Each
// returns a JSON report and whether every check passed.

#include "newtonlk/io.hpp"

#include <cstdint>
#include <optional>

namespace newtonlk {

enum ExitCode : int { kExitOk = 0, kExitChecksFailed = 1, kExitUsage = 2, kExitIo = 3 };

constexpr int kSchemaVersion = 1;

struct IdentitySuiteConfig {
    int n_max = 8;
    int trials = 100;
    std::uint64_t seed = 42;
};

struct VerifyConfig {
    FamilyParams family;
    int k = 0;
    int samples = 200;
    std::uint64_t seed = 1;
    double tol_class = 1e-4;
    bool constrain_selfadjoint = false;
    int dual_path_points = 50;
};

struct FitConfig {
    int k = 0;
    int c = 1;
    bool constrain_selfadjoint = false;
    double tol_class = 1e-4;
    std::string source;  ///< echoed only
};

struct CommandResult {
    Json report;
    bool pass = false;
    std::optional<SampleSet> samples;  ///< set by verify-example
};

/// Tolerances pinned for the identity suite.
struct IdentityTolerances {
    double algebraic = 1e-12;     ///< trace identities, recursion vs sum, commutation, Cayley-Hamilton, scalar
    double eigenstructure = 1e-10;
};

/// Random symmetric matrices with entries uniform in [-1, 1].
Mat random_symmetric(int n, std::mt19937_64& rng);

/// Throws DomainError when n_max < 2 or trials < 1.
CommandResult run_identity_suite(const IdentitySuiteConfig& config);

/// Throws DomainError for inadmissible family parameters or k.
CommandResult run_verify_example(const VerifyConfig& config);

CommandResult run_fit(const SampleSet& samples, const FitConfig& config);

/// Verdict the classifier must produce for a catalog family at order k.
Verdict expected_verdict(const ExampleFamily& family, int k);

}  // namespace newtonlk
