#pragma once

// Fitting L_k x = A x + b from samples, self-adjointness in the ambient
// metric, the structural relations that follow from the condition, and the
// classification cascade.

#include "newtonlk/catalog.hpp"
#include "newtonlk/lkop.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace newtonlk {

struct SamplePoint {
    Vec u;
    Vec x;
    Vec lkx;
};

struct SampleSet {
    int n = 0;
    int c = 1;
    int k = 0;
    std::vector<SamplePoint> points;

    AmbientSpace space() const { return AmbientSpace(c, n); }
    /// Throws SchemaError unless there are >= 2 points of consistent dimension.
    void validate() const;
};

/// Reads NEWTONLK_THREADS; defaults to the hardware concurrency, at least 1.
int worker_threads();

/// Draws `count` seeded chart points and evaluates L_k x componentwise. Work
/// is split across threads but every point is written to a fixed slot, so
/// the result does not depend on the thread count.
SampleSet generate_samples(const Chart& chart, int k, int count, std::uint64_t seed);

struct RankInfo {
    int rank = 0;
    int unknowns = 0;  ///< columns of the design (n+3 unconstrained per row)
    bool deficient = false;
    double tolerance = 0;  ///< relative singular value cutoff
    /// Orthonormal basis (columns) of the null space of the design [x^T 1].
    /// Each row of [A | b] is only determined modulo this span.
    Mat null_space;
};

struct AffineFit {
    Mat A;
    Vec b;
    bool constrained = false;
    double rms_residual = 0;
    double selfadjoint_defect = 0;
    RankInfo rank_info;
};

/// Least squares min sum |L_k x_i - A x_i - b|^2 (coordinate-Euclidean norm),
/// minimum-norm solution. With `constrain_selfadjoint`, A = G M with M
/// symmetric, so A^T G = G A holds exactly.
AffineFit fit_affine(const SampleSet& samples, bool constrain_selfadjoint, double rank_tol = 1e-9);

/// |A^T G - G A|_max / (1 + |A|_max).
double selfadjoint_defect(const Mat& A, const Mat& G);

struct AffineComparison {
    double raw_max_error = 0;           ///< max entry of [A_fit - A_pred | b_fit - b_pred]
    double identifiable_max_error = 0;  ///< same after removing components along the design null space
    double tolerance = 0;               ///< 1e-4 (1 + |A_pred|_max)
    bool within_tolerance = false;
};

AffineComparison compare_affine(const AffineFit& fit, const PredictedAffine& predicted, double rel_tol = 1e-4);

struct StructuralReport {
    double ax_residual = 0;          ///< max over samples/tangents of the A X relation
    double eq1bis_stddev = 0;        ///< stddev of <b,x> - c_k H_k
    double ax_decomposition = 0;     ///< max |A x - (-b^T + (c_k H_{k+1} - <b,N>) N - c (c_k H_k + <b,x>) x)|
    double eq2bis_residual = 0;      ///< diagnostic, only where |H_{k+1}| > 1e-8
    int eq2bis_points = 0;
};

StructuralReport structural_checks(const Chart& chart, const SampleSet& samples, const AffineFit& fit);

struct QuadraticCheck {
    double lambda = 0;  ///< argmin of sum |S^2 + lambda S - c I|_F^2
    double defect = 0;  ///< max over frames of |S^2 + lambda S - c I|_max
};

QuadraticCheck quadratic_shape_check(std::span<const FrameData> frames, int c);

enum class Verdict { ZeroHk1ConstHk, TotallyUmbilical, IsoparametricProduct, NoMatch };
std::string to_string(Verdict v);

struct ClassificationThresholds {
    double tol_class = 1e-4;
    double cluster_gap = 1e-3;
};

struct ClassificationEvidence {
    bool frames_available = false;
    double hk1_mean_abs = 0;
    double hk1_mean = 0;
    double hk1_stddev = 0;
    double hk_mean = 0;
    double hk_stddev = 0;
    double umbilicity_defect = 0;  ///< max |S - H_1 I|_max / (1 + |S|_max)
    QuadraticCheck quadratic;
    double quadratic_defect_normalized = 0;  ///< defect / (1 + max|S|^2)
    int curvature_clusters = 0;              ///< max over frames
    double alpha_mean = 0;
    double alpha_stddev = 0;
    double b_norm = 0;
    double affine_rms_relative = 0;  ///< rms_residual / (1 + max|A|); every verdict requires <= tol_class
    double isotropy_defect = 0;      ///< max|A - (tr A / (n+2)) I| / (1 + max|A|)
    int affine_eigen_clusters = 0;   ///< clusters of the eigenvalues of A (-1 if complex)
    std::vector<Verdict> also_matches;  ///< later branches that would also accept
};

struct ClassificationReport {
    Verdict verdict = Verdict::NoMatch;
    ClassificationEvidence evidence;
    ClassificationThresholds thresholds;
};

/// Decision cascade: isoparametric_product (quadratic holds, two curvature
/// clusters) -> zero_Hk1_const_Hk -> totally_umbilical -> no_match. Without
/// frames the curvature branches cannot be evaluated; H_k and |H_{k+1}| are
/// then recovered from the samples (<L_k x, x> = -c_k H_k).
ClassificationReport classify(const SampleSet& samples, const AffineFit& fit, std::span<const FrameData> frames,
                              ClassificationThresholds thresholds = {});

/// Number of clusters in sorted values separated by gaps > gap.
int count_clusters(std::span<const double> sorted_values, double gap);

}  // namespace newtonlk
