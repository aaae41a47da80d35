#pragma once

// Window construction, the short-time Fourier transform on Z_L, a discrete
// modulation-norm proxy, and the condition (A)/(A') correlation sums.
//
// The Gaussian is the sampled periodization of e^{-pi t^2 / (sigma^2 L)} with
// 13 wraps (|j| <= 6); further wraps are below 1e-20 at default sigma. The
// discrete modulation norm carries an explicit 1/L normalization and symmetric
// index mapping; it is a proxy for the continuous norm, not an exact analog.

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "nct/parallel.hpp"
#include "nct/tf.hpp"
#include "nct/twisted.hpp"

namespace nct {

enum class WindowKind { gaussian, boxcar, hann, point_mass };

struct WindowFamily {
    WindowKind kind = WindowKind::gaussian;
    long L = 0;
    double sigma = 1.0;  // gaussian width parameter
    long width = 2;      // boxcar support length
};

inline Vec make_window(const WindowFamily& fam) {
    if (fam.L < 2) throw ParameterError("make_window: L must be >= 2");
    Vec g = Vec::Zero(fam.L);
    switch (fam.kind) {
        case WindowKind::gaussian: {
            if (fam.sigma <= 0.0) throw ParameterError("make_window: sigma must be > 0");
            const double denom = fam.sigma * fam.sigma * static_cast<double>(fam.L);
            for (long t = 0; t < fam.L; ++t) {
                double v = 0.0;
                for (long j = -6; j <= 6; ++j) {
                    const double u = static_cast<double>(t - j * fam.L);
                    v += std::exp(-std::numbers::pi * u * u / denom);
                }
                g[t] = v;
            }
            break;
        }
        case WindowKind::boxcar: {
            if (fam.width < 1 || fam.width > fam.L)
                throw ParameterError("make_window: boxcar width out of range");
            for (long t = 0; t < fam.width; ++t) g[t] = 1.0;
            break;
        }
        case WindowKind::hann: {
            for (long t = 0; t < fam.L; ++t)
                g[t] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                             static_cast<double>(t) / fam.L));
            break;
        }
        case WindowKind::point_mass:
            g[0] = 1.0;
            break;
    }
    return g / g.norm();
}

// Full L x L grid V_g f(x,w) = <f, pi(x,w) g>, stored with row x, column w.
struct STFTGrid {
    Mat v;
};

// Column x is the DFT of t -> f(t) conj(g(t-x)); columns are independent so
// they are farmed out in fixed chunks.
inline STFTGrid stft(const Vec& f, const Vec& g) {
    const long L = static_cast<long>(f.size());
    if (g.size() != L) throw DimensionError("stft: window length mismatch");
    STFTGrid grid;
    grid.v.resize(L, L);
    constexpr std::size_t kChunk = 8;
    const std::size_t nchunks =
        (static_cast<std::size_t>(L) + kChunk - 1) / kChunk;
    run_chunks(nchunks, [&](std::size_t ci) {
        Eigen::FFT<double> fft;
        Vec h(L), spec(L);
        const long lo = static_cast<long>(ci * kChunk);
        const long hi = std::min(lo + static_cast<long>(kChunk), L);
        for (long x = lo; x < hi; ++x) {
            for (long t = 0; t < L; ++t) h[t] = f[t] * std::conj(g[mod_l(t - x, L)]);
            fft.fwd(spec, h);
            grid.v.row(x) = spec.transpose();
        }
    });
    return grid;
}

// Direct double-sum evaluation; the oracle for the FFT path.
inline STFTGrid stft_direct(const Vec& f, const Vec& g) {
    const long L = static_cast<long>(f.size());
    if (g.size() != L) throw DimensionError("stft_direct: window length mismatch");
    STFTGrid grid;
    grid.v.resize(L, L);
    for (long x = 0; x < L; ++x)
        for (long w = 0; w < L; ++w)
            grid.v(x, w) = inner(f, tf_shift(g, {x, w}));
    return grid;
}

inline long symmetric_rep(long v, long L) {
    const long r = mod_l(v, L);
    return r >= (L + 1) / 2 ? r - L : r;
}

// (1/L) sum_{x,w} |V_g f(x,w)| (1 + x^2 + w^2)^{s/2} over symmetric indices.
inline double modulation_norm(const Vec& f, const Vec& g, const WeightSpec& w) {
    const long L = static_cast<long>(f.size());
    const STFTGrid grid = stft(f, g);
    double total = 0.0;
    for (long x = 0; x < L; ++x)
        for (long om = 0; om < L; ++om)
            total += std::abs(grid.v(x, om)) *
                     w(static_cast<double>(symmetric_rep(x, L)),
                       static_cast<double>(symmetric_rep(om, L)));
    return total / static_cast<double>(L);
}

// sum over adjoint-lattice points mu_{mn} of |<gamma, pi(mu) g>| v_s(m,n),
// with (m,n) the adjoint indices in symmetric representatives.
inline double condition_a_sum(const Vec& g, const Vec& gamma,
                              const LatticeSpec& spec, double s) {
    require_length(g, spec.L, "condition_a_sum");
    require_length(gamma, spec.L, "condition_a_sum");
    const AdjointLatticeSpec adj = adjoint_lattice(spec);
    const WeightSpec w{s, 1.0, 1.0};
    const long P = spec.L / adj.astep;
    const long Q = spec.L / adj.bstep;
    double total = 0.0;
    for (long m = 0; m < P; ++m)
        for (long n = 0; n < Q; ++n) {
            const TFPoint mu{adj.astep * m, adj.bstep * n};
            total += std::abs(inner(gamma, tf_shift(g, mu))) *
                     w(static_cast<double>(m >= (P + 1) / 2 ? m - P : m),
                       static_cast<double>(n >= (Q + 1) / 2 ? n - Q : n));
        }
    return total;
}

// Closed-form ambiguity function of the normalized continuous Gaussian
// phi(t) = 2^{1/4} e^{-pi t^2}:
//   <phi, pi(x,w) phi> = e^{-pi (x^2 + w^2)/2} e^{-i pi x w}.
inline cplx gaussian_ambiguity(double x, double w) {
    const double mag = std::exp(-std::numbers::pi * (x * x + w * w) / 2.0);
    const double ang = -std::numbers::pi * x * w;
    return {mag * std::cos(ang), mag * std::sin(ang)};
}

}  // namespace nct
