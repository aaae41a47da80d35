#pragma once

// Gabor systems on Z_L: analysis/synthesis, frame operator, frame bounds,
// operator powers of S (dual and tight windows), Wexler-Raz biorthogonality
// and the fundamental identity of Gabor analysis.
//
// Finite normalization: the continuous constant (alpha*beta)^{-1} becomes
// C = L/(a*b) = redundancy. The calibration test pins this by brute force
// before anything else relies on it.

#include <algorithm>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "nct/parallel.hpp"
#include "nct/tf.hpp"

namespace nct {

struct GaborSystem {
    Vec window;
    LatticeSpec spec;

    GaborSystem(Vec g, LatticeSpec s) : window(std::move(g)), spec(s) {
        require_length(window, spec.L, "GaborSystem");
        if (window.norm() <= 0.0)
            throw ParameterError("GaborSystem: window must be nonzero");
    }
};

// Coefficients <f, pi(ak, bl) g>, indexed (k, l) with k in [0,L/a), l in [0,L/b).
using CoefGrid = Mat;

inline CoefGrid analysis(const GaborSystem& sys, const Vec& f) {
    require_length(f, sys.spec.L, "analysis");
    const long K = sys.spec.points_time();
    const long Lf = sys.spec.points_freq();
    CoefGrid grid(K, Lf);
    for (long k = 0; k < K; ++k)
        for (long l = 0; l < Lf; ++l)
            grid(k, l) = inner(f, tf_shift(sys.window, {sys.spec.a * k, sys.spec.b * l}));
    return grid;
}

inline Vec synthesis(const GaborSystem& sys, const CoefGrid& c) {
    if (c.rows() != sys.spec.points_time() || c.cols() != sys.spec.points_freq())
        throw DimensionError("synthesis: coefficient grid shape mismatch");
    Vec out = Vec::Zero(sys.spec.L);
    for (long k = 0; k < c.rows(); ++k)
        for (long l = 0; l < c.cols(); ++l)
            out += c(k, l) * tf_shift(sys.window, {sys.spec.a * k, sys.spec.b * l});
    return out;
}

// Dense matrix of f -> sum_lambda <f, pi(lambda) gamma> pi(lambda) g.
// Hermitian PSD when gamma == g. Lattice points are split into fixed-size
// chunks; chunk partials are combined in index order (thread-count neutral).
inline Mat frame_operator_matrix(const Vec& g, const Vec& gamma, const LatticeSpec& spec) {
    require_length(g, spec.L, "frame_operator_matrix");
    require_length(gamma, spec.L, "frame_operator_matrix");
    const auto pts = spec.points();
    constexpr std::size_t kChunk = 16;
    const std::size_t nchunks = (pts.size() + kChunk - 1) / kChunk;
    std::vector<Mat> partial(nchunks);
    run_chunks(nchunks, [&](std::size_t ci) {
        Mat acc = Mat::Zero(spec.L, spec.L);
        const std::size_t lo = ci * kChunk;
        const std::size_t hi = std::min(lo + kChunk, pts.size());
        for (std::size_t i = lo; i < hi; ++i) {
            const Vec sg = tf_shift(g, pts[i]);
            const Vec sgam = tf_shift(gamma, pts[i]);
            acc.noalias() += sg * sgam.adjoint();
        }
        partial[ci] = std::move(acc);
    });
    Mat s = Mat::Zero(spec.L, spec.L);
    for (const Mat& p : partial) s += p;
    return s;
}

struct FrameBounds {
    double A = 0.0;  // min eigenvalue of S
    double B = 0.0;  // max eigenvalue of S
    double cond() const {
        return A > 0.0 ? B / A : std::numeric_limits<double>::infinity();
    }
    // Relative tolerance: eigenvalues below 1e-10*B count as zero.
    bool is_frame() const { return A > 1e-10 * B; }
};

inline FrameBounds frame_bounds(const Vec& g, const LatticeSpec& spec) {
    const Mat s = frame_operator_matrix(g, g, spec);
    Eigen::SelfAdjointEigenSolver<Mat> es(s);
    if (es.info() != Eigen::Success)
        throw NumericalError("frame_bounds: eigen solver failed");
    return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

// S^nu g via Hermitian eigendecomposition of S = S_{g,g,spec}.
// nu = -1 gives the canonical dual window, nu = -1/2 the canonical tight one.
inline Vec power_window(const Vec& g, const LatticeSpec& spec, double nu) {
    const Mat s = frame_operator_matrix(g, g, spec);
    Eigen::SelfAdjointEigenSolver<Mat> es(s);
    if (es.info() != Eigen::Success)
        throw NumericalError("power_window: eigen solver failed");
    const auto& ev = es.eigenvalues();
    const double B = ev.maxCoeff();
    if (nu < 0.0 && ev.minCoeff() <= 1e-10 * B)
        throw NotAFrameError("power_window: system is not a frame (A ~ 0)");
    Eigen::VectorXd powered(ev.size());
    for (long i = 0; i < ev.size(); ++i) powered[i] = std::pow(ev[i], nu);
    return es.eigenvectors() * powered.asDiagonal() *
           es.eigenvectors().adjoint() * g;
}

struct WexlerRazReport {
    Mat grid;                    // C <pi(mu) gamma, pi(mu') g> over adjoint pairs
    double max_deviation = 0.0;  // max |grid - identity|
};

// Biorthogonality over the adjoint lattice: (g,gamma) is a dual pair iff the
// matrix C <pi(mu) gamma, pi(mu') g> is the identity, C = L/(a*b).
inline WexlerRazReport wexler_raz_check(const Vec& g, const Vec& gamma,
                                        const LatticeSpec& spec) {
    require_length(g, spec.L, "wexler_raz_check");
    require_length(gamma, spec.L, "wexler_raz_check");
    const auto mus = adjoint_lattice(spec).points();
    const double C = spec.redundancy();
    const long n = static_cast<long>(mus.size());
    WexlerRazReport rep;
    rep.grid.resize(n, n);
    std::vector<Vec> sg(mus.size()), sgam(mus.size());
    for (std::size_t i = 0; i < mus.size(); ++i) {
        sg[i] = tf_shift(g, mus[i]);
        sgam[i] = tf_shift(gamma, mus[i]);
    }
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            rep.grid(i, j) = C * inner(sgam[static_cast<std::size_t>(i)],
                                       sg[static_cast<std::size_t>(j)]);
            const cplx dev = rep.grid(i, j) - (i == j ? cplx{1.0, 0.0} : cplx{0.0, 0.0});
            rep.max_deviation = std::max(rep.max_deviation, std::abs(dev));
        }
    return rep;
}

// |LHS - C*RHS| for the fundamental identity:
//   sum_Lambda <f1,pi(la)g1><pi(la)g2,f2>
//     = C * sum_Lambda0 <g2,pi(mu)g1><pi(mu)f1,f2>,  C = L/(a*b).
inline double figa_residual(const Vec& f1, const Vec& f2, const Vec& g1,
                            const Vec& g2, const LatticeSpec& spec) {
    require_length(f1, spec.L, "figa_residual");
    require_length(f2, spec.L, "figa_residual");
    require_length(g1, spec.L, "figa_residual");
    require_length(g2, spec.L, "figa_residual");
    cplx lhs = 0.0;
    for (const TFPoint& la : spec.points())
        lhs += inner(f1, tf_shift(g1, la)) * inner(tf_shift(g2, la), f2);
    cplx rhs = 0.0;
    for (const TFPoint& mu : adjoint_lattice(spec).points())
        rhs += inner(g2, tf_shift(g1, mu)) * inner(tf_shift(f1, mu), f2);
    return std::abs(lhs - spec.redundancy() * rhs);
}

}  // namespace nct
