#include "newtonlk/verify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>

namespace newtonlk {

namespace {

struct MinNormSolve {
    Mat solution;
    int rank = 0;
    Mat null_space;
};

MinNormSolve min_norm_solve(const Mat& design, const Mat& rhs, double rel_tol) {
    Eigen::JacobiSVD<Mat> svd(design, Eigen::ComputeThinU | Eigen::ComputeFullV);
    const Vec& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? rel_tol * sv(0) : 0.0;
    int rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;

    const Mat& U = svd.matrixU();
    const Mat& V = svd.matrixV();
    MinNormSolve out;
    out.rank = rank;
    out.solution = Mat::Zero(design.cols(), rhs.cols());
    for (int i = 0; i < rank; ++i) {
        out.solution += V.col(i) * (U.col(i).transpose() * rhs) / sv(i);
    }
    out.null_space = V.rightCols(design.cols() - rank);
    return out;
}

// Among all parameter vectors theta0 + N y that fit the samples equally well,
// pick the one whose A has the smallest trace-free part. When the samples lie
// in a hyperplane the data cannot separate A from b along that hyperplane's
// normal; this prefers the isotropic representative A = lambda I whenever one
// is consistent with the data, and leaves full-rank fits untouched.
Vec isotropic_gauge(const Vec& theta0, const Mat& null_basis, const std::function<Mat(const Vec&)>& to_A) {
    if (null_basis.cols() == 0) return theta0;
    const auto deviator = [&](const Vec& theta) {
        const Mat A = to_A(theta);
        const Mat dev = A - (A.trace() / static_cast<double>(A.rows())) * Mat::Identity(A.rows(), A.cols());
        return Vec(Eigen::Map<const Vec>(dev.data(), dev.size()));
    };
    const Vec base = deviator(theta0);
    Mat J(base.size(), null_basis.cols());
    for (Eigen::Index j = 0; j < null_basis.cols(); ++j) J.col(j) = deviator(null_basis.col(j));
    const Vec y = J.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(Vec(-base));
    return theta0 + null_basis * y;
}

Mat affine_design(const SampleSet& s) {
    const int d = s.n + 2;
    Mat D(static_cast<Eigen::Index>(s.points.size()), d + 1);
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        D.row(static_cast<Eigen::Index>(i)).head(d) = s.points[i].x.transpose();
        D(static_cast<Eigen::Index>(i), d) = 1.0;
    }
    return D;
}

double rms(const SampleSet& s, const Mat& A, const Vec& b) {
    std::vector<double> sq(s.points.size());
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        sq[i] = (s.points[i].lkx - A * s.points[i].x - b).squaredNorm();
    }
    return std::sqrt(mean(sq));
}

}  // namespace

void SampleSet::validate() const {
    if (points.size() < 2) throw SchemaError("sample set needs at least 2 points, got " + std::to_string(points.size()));
    if (c != 1 && c != -1) throw SchemaError("sample set: c must be +1 or -1");
    if (k < 0 || k > n - 1) throw SchemaError("sample set: k outside [0, n-1]");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (p.u.size() != n || p.x.size() != n + 2 || p.lkx.size() != n + 2) {
            throw SchemaError("sample " + std::to_string(i) + " has inconsistent dimensions");
        }
    }
}

int worker_threads() {
    if (const char* env = std::getenv("NEWTONLK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SampleSet generate_samples(const Chart& chart, int k, int count, std::uint64_t seed) {
    if (count < 1) throw DomainError("generate_samples: count must be >= 1");
    if (k < 0 || k > chart.n() - 1) throw DomainError("generate_samples: k outside [0, n-1]");
    SampleSet out;
    out.n = chart.n();
    out.c = chart.space().c();
    out.k = k;
    out.points.resize(static_cast<std::size_t>(count));

    std::mt19937_64 rng(seed);
    for (auto& p : out.points) p.u = chart.sample(rng);

    const int threads = std::min(worker_threads(), count);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&](int t) {
        try {
            for (int i = t; i < count; i += threads) {
                auto& p = out.points[static_cast<std::size_t>(i)];
                const ChartJet jet = chart.jet(p.u);
                p.x = jet.x;
                p.lkx = lk_position(frame(chart, p.u), jet, k).componentwise;
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

AffineFit fit_affine(const SampleSet& samples, bool constrain_selfadjoint, double rank_tol) {
    samples.validate();
    const int d = samples.n + 2;
    const auto count = static_cast<Eigen::Index>(samples.points.size());
    const Mat G = samples.space().metric();

    const Mat D = affine_design(samples);
    Mat Y(count, d);
    for (Eigen::Index i = 0; i < count; ++i) Y.row(i) = samples.points[static_cast<std::size_t>(i)].lkx.transpose();
    const MinNormSolve plain = min_norm_solve(D, Y, rank_tol);

    AffineFit fit;
    fit.constrained = constrain_selfadjoint;
    fit.rank_info.rank = plain.rank;
    fit.rank_info.unknowns = d + 1;
    fit.rank_info.deficient = plain.rank < d + 1;
    fit.rank_info.tolerance = rank_tol;
    fit.rank_info.null_space = plain.null_space;

    if (!constrain_selfadjoint) {
        // theta stacks the columns of the (d+1) x d solution; the null space acts on each column independently.
        const Eigen::Index rows = d + 1;
        const Eigen::Index r = plain.null_space.cols();
        const Vec theta0 = Eigen::Map<const Vec>(plain.solution.data(), plain.solution.size());
        Mat basis = Mat::Zero(rows * d, r * d);
        for (int col = 0; col < d; ++col) basis.block(col * rows, col * r, rows, r) = plain.null_space;
        const auto to_A = [rows, d](const Vec& theta) {
            return Mat(Eigen::Map<const Mat>(theta.data(), rows, d).topRows(d).transpose());
        };
        const Vec theta = isotropic_gauge(theta0, basis, to_A);
        const Eigen::Map<const Mat> X(theta.data(), rows, d);
        fit.A = X.topRows(d).transpose();
        fit.b = X.row(d).transpose();
    } else {
        // Unknowns: upper triangle of symmetric M, then b. A = G M.
        Eigen::MatrixXi index(d, d);
        int next = 0;
        for (int i = 0; i < d; ++i) {
            for (int j = i; j < d; ++j) index(i, j) = index(j, i) = next++;
        }
        const int unknowns = next + d;
        Mat sys = Mat::Zero(count * d, unknowns);
        Vec rhs(count * d);
        for (Eigen::Index s = 0; s < count; ++s) {
            const auto& p = samples.points[static_cast<std::size_t>(s)];
            for (int r = 0; r < d; ++r) {
                const Eigen::Index row = s * d + r;
                for (int j = 0; j < d; ++j) sys(row, index(r, j)) += G(r, r) * p.x(j);
                sys(row, next + r) = 1.0;
                rhs(row) = p.lkx(r);
            }
        }
        const MinNormSolve con = min_norm_solve(sys, rhs, rank_tol);
        const auto to_A = [&index, &G, d](const Vec& theta) {
            Mat M(d, d);
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) M(i, j) = theta(index(i, j));
            }
            return Mat(G * M);
        };
        const Vec theta = isotropic_gauge(con.solution.col(0), con.null_space, to_A);
        fit.A = to_A(theta);
        fit.b = theta.tail(d);
    }
    fit.rms_residual = rms(samples, fit.A, fit.b);
    fit.selfadjoint_defect = selfadjoint_defect(fit.A, G);
    return fit;
}

double selfadjoint_defect(const Mat& A, const Mat& G) {
    if (A.rows() != A.cols() || G.rows() != G.cols() || A.rows() != G.rows()) {
        throw DomainError("selfadjoint_defect: dimension mismatch");
    }
    return max_abs(Mat(A.transpose() * G - G * A)) / (1.0 + max_abs(A));
}

AffineComparison compare_affine(const AffineFit& fit, const PredictedAffine& predicted, double rel_tol) {
    const auto d = fit.A.rows();
    if (predicted.A.rows() != d || predicted.b.size() != d) throw DomainError("compare_affine: dimension mismatch");
    Mat delta(d, d + 1);
    delta.leftCols(d) = fit.A - predicted.A;
    delta.col(d) = fit.b - predicted.b;

    AffineComparison out;
    out.raw_max_error = max_abs(delta);
    const Mat& W = fit.rank_info.null_space;
    const Mat identifiable = W.cols() > 0 ? Mat(delta - delta * W * W.transpose()) : delta;
    out.identifiable_max_error = max_abs(identifiable);
    out.tolerance = rel_tol * (1.0 + max_abs(predicted.A));
    out.within_tolerance = out.raw_max_error <= out.tolerance;
    return out;
}

StructuralReport structural_checks(const Chart& chart, const SampleSet& samples, const AffineFit& fit) {
    samples.validate();
    const AmbientSpace space = samples.space();
    const int n = samples.n;
    const int k = samples.k;
    const double c = space.c();
    const double ck = newton_constant(n, k);
    const double bk = binomial(n, k + 1);

    StructuralReport out;
    std::vector<double> eq1;
    eq1.reserve(samples.points.size());
    for (const auto& p : samples.points) {
        const FrameData fr = frame(chart, p.u);
        const auto prof = fr.profile();
        const double Hk = prof.H_at(k);
        const double Hk1 = prof.H_at(k + 1);
        const Vec dHk = mean_curvature_partials(chart, p.u, k);
        const Vec dHk1 = mean_curvature_partials(chart, p.u, k + 1);

        for (int i = 0; i < n; ++i) {
            const Vec X = fr.tangents.col(i);
            const Vec SX = fr.tangents * fr.S_chart.col(i);
            const Vec res = fit.A * X + ck * Hk1 * SX + c * ck * Hk * X - ck * dHk1(i) * fr.N + c * ck * dHk(i) * fr.x;
            out.ax_residual = std::max(out.ax_residual, max_abs(res));
        }

        eq1.push_back(space.inner(fit.b, fr.x) - ck * Hk);

        const Vec btop = tangential_projection(fr, fit.b, space);
        const Vec rhs = -btop + (ck * Hk1 - space.inner(fit.b, fr.N)) * fr.N -
                        c * (ck * Hk + space.inner(fit.b, fr.x)) * fr.x;
        out.ax_decomposition = std::max(out.ax_decomposition, max_abs(Vec(fit.A * fr.x - rhs)));

        if (std::abs(Hk1) > 1e-8) {
            const Mat P = newton_endomorphism(fr, k);
            const Vec gradHk1 = fr.g_inv * dHk1;
            const Vec gradHk = fr.g_inv * dHk;
            const Vec lhs = (2.0 / Hk1) * (fr.S_chart * (P * gradHk1)) + (k + 2) * bk * gradHk1;
            const Vec rhs2 = -(c / Hk1) * (2.0 * (P * gradHk) + ck * Hk * gradHk);
            out.eq2bis_residual = std::max(out.eq2bis_residual, max_abs(Vec(fr.tangents * (lhs - rhs2))));
            ++out.eq2bis_points;
        }
    }
    out.eq1bis_stddev = stddev(eq1);
    return out;
}

QuadraticCheck quadratic_shape_check(std::span<const FrameData> frames, int c) {
    if (frames.empty()) throw DomainError("quadratic_shape_check: needs at least one frame");
    std::vector<Mat> shapes;
    shapes.reserve(frames.size());
    std::vector<double> num, den;
    for (const auto& f : frames) {
        const Mat S = f.shape().matrix();
        const Mat Q = S * S - c * Mat::Identity(S.rows(), S.cols());
        num.push_back((S.array() * Q.array()).sum());
        den.push_back(S.squaredNorm());
        shapes.push_back(S);
    }
    QuadraticCheck out;
    const double dsum = pairwise_sum(den);
    out.lambda = dsum > 0.0 ? -pairwise_sum(num) / dsum : 0.0;
    for (const auto& S : shapes) {
        const Mat R = S * S + out.lambda * S - c * Mat::Identity(S.rows(), S.cols());
        out.defect = std::max(out.defect, max_abs(R));
    }
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::ZeroHk1ConstHk: return "zero_Hk1_const_Hk";
        case Verdict::TotallyUmbilical: return "totally_umbilical";
        case Verdict::IsoparametricProduct: return "isoparametric_product";
        case Verdict::NoMatch: return "no_match";
    }
    return "no_match";
}

int count_clusters(std::span<const double> sorted_values, double gap) {
    if (sorted_values.empty()) return 0;
    int clusters = 1;
    for (std::size_t i = 1; i < sorted_values.size(); ++i) {
        if (sorted_values[i] - sorted_values[i - 1] > gap) ++clusters;
    }
    return clusters;
}

ClassificationReport classify(const SampleSet& samples, const AffineFit& fit, std::span<const FrameData> frames,
                              ClassificationThresholds thresholds) {
    samples.validate();
    const int n = samples.n;
    const int k = samples.k;
    const int c = samples.c;
    const double ck = newton_constant(n, k);
    const AmbientSpace space = samples.space();

    ClassificationReport rep;
    rep.thresholds = thresholds;
    auto& ev = rep.evidence;
    ev.frames_available = !frames.empty();
    ev.b_norm = max_abs(fit.b);

    std::vector<double> hk, hk1, hk1_abs;
    if (ev.frames_available) {
        std::vector<double> alpha;
        int clusters_min = n + 1;
        for (const auto& f : frames) {
            const auto prof = f.profile();
            hk.push_back(prof.H_at(k));
            hk1.push_back(prof.H_at(k + 1));
            hk1_abs.push_back(std::abs(prof.H_at(k + 1)));
            alpha.push_back(-binomial(n, k + 1) * (n * prof.H_at(1) * prof.H_at(k + 1) - (n - k - 1) * prof.H_at(k + 2)) -
                            c * ck * prof.H_at(k));
            const Mat S = f.shape().matrix();
            const Mat dev = S - prof.H_at(1) * Mat::Identity(n, n);
            ev.umbilicity_defect = std::max(ev.umbilicity_defect, max_abs(dev) / (1.0 + max_abs(S)));
            const int cl = count_clusters(f.kappa.values(), thresholds.cluster_gap);
            ev.curvature_clusters = std::max(ev.curvature_clusters, cl);
            clusters_min = std::min(clusters_min, cl);
        }
        ev.quadratic = quadratic_shape_check(frames, c);
        double smax = 0.0;
        for (const auto& f : frames) smax = std::max(smax, max_abs(f.shape().matrix()));
        ev.quadratic_defect_normalized = ev.quadratic.defect / (1.0 + smax * smax);
        ev.alpha_mean = mean(alpha);
        ev.alpha_stddev = stddev(alpha);
        if (clusters_min != ev.curvature_clusters) ev.curvature_clusters = -1;  // varies between frames
    } else {
        for (const auto& p : samples.points) {
            const double h = -space.inner(p.lkx, p.x) / ck;
            const Vec v = p.lkx + c * ck * h * p.x;
            const double a = std::sqrt(std::max(0.0, space.inner(v, v))) / ck;
            hk.push_back(h);
            hk1.push_back(a);
            hk1_abs.push_back(a);
        }
    }
    ev.hk_mean = mean(hk);
    ev.hk_stddev = stddev(hk);
    ev.hk1_mean = mean(hk1);
    ev.hk1_mean_abs = mean(hk1_abs);
    ev.hk1_stddev = stddev(hk1);

    const double tol = thresholds.tol_class;
    const double a_scale = 1.0 + max_abs(fit.A);
    ev.affine_rms_relative = fit.rms_residual / a_scale;
    const Mat A_dev = fit.A - (fit.A.trace() / static_cast<double>(fit.A.rows())) * Mat::Identity(fit.A.rows(), fit.A.cols());
    ev.isotropy_defect = max_abs(A_dev) / a_scale;
    {
        const Eigen::VectorXcd eig = Eigen::EigenSolver<Mat>(fit.A, false).eigenvalues();
        std::vector<double> re(static_cast<std::size_t>(eig.size()));
        double imag = 0.0;
        for (Eigen::Index i = 0; i < eig.size(); ++i) {
            re[static_cast<std::size_t>(i)] = eig(i).real();
            imag = std::max(imag, std::abs(eig(i).imag()));
        }
        std::sort(re.begin(), re.end());
        ev.affine_eigen_clusters = imag <= tol * a_scale ? count_clusters(re, thresholds.cluster_gap * a_scale) : -1;
    }

    // Every branch presupposes the affine law L_k x = A x + b itself.
    const bool affine = ev.affine_rms_relative <= tol;
    const bool const_hk = ev.hk_stddev <= tol;
    bool product = false;
    bool umbilic = false;
    if (ev.frames_available) {
        product = ev.quadratic_defect_normalized <= tol && ev.curvature_clusters == 2;
        umbilic = ev.umbilicity_defect <= tol;
    } else {
        // From samples alone: an isoparametric product has b = 0 and A with exactly two eigenvalue blocks;
        // a totally umbilical hypersurface has A = lambda I.
        product = ev.b_norm <= tol * a_scale && ev.affine_eigen_clusters == 2 && const_hk;
        umbilic = ev.isotropy_defect <= tol && const_hk;
    }
    product = product && affine;
    umbilic = umbilic && affine;
    const bool zero = affine && ev.hk1_mean_abs <= tol && const_hk;

    std::vector<Verdict> accepted;
    if (product) accepted.push_back(Verdict::IsoparametricProduct);
    if (zero) accepted.push_back(Verdict::ZeroHk1ConstHk);
    if (umbilic) accepted.push_back(Verdict::TotallyUmbilical);
    if (!accepted.empty()) {
        rep.verdict = accepted.front();
        ev.also_matches.assign(accepted.begin() + 1, accepted.end());
    }
    return rep;
}

}  // namespace newtonlk
