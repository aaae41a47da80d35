#pragma once

// Spectra, Riesz-Dunford contour calculus, inversion inside the twisted
// algebra with decay profiling, spectral-radius comparison and the symmetry
// probe. This layer is the desk-scale demonstration of Wiener-pair behavior:
// finite matrices cannot distinguish the weighted subalgebra from B(H), so the
// experiments report decay profiles and rate stability rather than theorems.

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nct/twisted.hpp"

namespace nct {

struct SpectrumReport {
    std::vector<cplx> eigenvalues;
    double spectral_radius = 0.0;
    double min_real_part = 0.0;
    bool is_hermitian = false;
};

inline SpectrumReport operator_spectrum(const Mat& m) {
    if (m.rows() != m.cols()) throw DimensionError("operator_spectrum: matrix not square");
    SpectrumReport rep;
    const double scale = std::max(1.0, m.norm());
    rep.is_hermitian = (m - m.adjoint()).norm() < 1e-12 * scale;
    if (rep.is_hermitian) {
        Eigen::SelfAdjointEigenSolver<Mat> es(m);
        if (es.info() != Eigen::Success)
            throw NumericalError("operator_spectrum: eigen solver failed");
        for (long i = 0; i < es.eigenvalues().size(); ++i)
            rep.eigenvalues.emplace_back(es.eigenvalues()[i], 0.0);
    } else {
        Eigen::ComplexEigenSolver<Mat> es(m, false);
        if (es.info() != Eigen::Success)
            throw NumericalError("operator_spectrum: eigen solver failed");
        for (long i = 0; i < es.eigenvalues().size(); ++i)
            rep.eigenvalues.push_back(es.eigenvalues()[i]);
    }
    rep.min_real_part = std::numeric_limits<double>::infinity();
    for (const cplx& z : rep.eigenvalues) {
        rep.spectral_radius = std::max(rep.spectral_radius, std::abs(z));
        rep.min_real_part = std::min(rep.min_real_part, z.real());
    }
    return rep;
}

struct ContourSpec {
    cplx center;
    double radius = 0.0;
    long nodes = 256;
};

// Circle centered at the middle of the (real) spectrum, padded so the margin
// requirement below holds for well-behaved Hermitian inputs.
inline ContourSpec default_contour(const Mat& m, long nodes = 256) {
    const SpectrumReport sp = operator_spectrum(m);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const cplx& z : sp.eigenvalues) {
        lo = std::min(lo, z.real());
        hi = std::max(hi, z.real());
    }
    ContourSpec c;
    c.center = cplx{(lo + hi) / 2.0, 0.0};
    c.radius = 0.5 * (hi - lo) + 0.1 * std::max(1.0, hi);
    c.nodes = nodes;
    return c;
}

enum class HoloFn { inverse, inverse_sqrt, exp, power };

// (1/2 pi i) oint f(z) (zI - M)^{-1} dz via the trapezoid rule on the circle
// (spectrally accurate for periodic analytic integrands). inverse and the
// fractional powers use the principal branch with cut on (-inf, 0], so the
// contour must stay in the right half plane for those.
inline Mat riesz_dunford(const Mat& m, HoloFn fn, const ContourSpec& c,
                         double nu = 0.0) {
    if (m.rows() != m.cols()) throw DimensionError("riesz_dunford: matrix not square");
    if (c.nodes < 16) throw ParameterError("riesz_dunford: need at least 16 nodes");
    const SpectrumReport sp = operator_spectrum(m);
    for (const cplx& z : sp.eigenvalues)
        if (std::abs(z - c.center) > c.radius * (1.0 - 0.05))
            throw ContourError("riesz_dunford: contour does not enclose the spectrum "
                               "with the required margin");
    const bool needs_cut =
        fn == HoloFn::inverse || fn == HoloFn::inverse_sqrt || fn == HoloFn::power;
    if (needs_cut && c.center.real() - c.radius <= 0.0)
        throw ContourError("riesz_dunford: contour touches the branch cut / pole at 0");

    auto eval = [&](cplx z) -> cplx {
        switch (fn) {
            case HoloFn::inverse: return 1.0 / z;
            case HoloFn::inverse_sqrt: return 1.0 / std::sqrt(z);
            case HoloFn::exp: return std::exp(z);
            case HoloFn::power: return std::pow(z, nu);
        }
        return {};
    };

    const long L = m.rows();
    const Mat eye = Mat::Identity(L, L);
    Mat acc = Mat::Zero(L, L);
    for (long j = 0; j < c.nodes; ++j) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(c.nodes);
        const cplx e{std::cos(phi), std::sin(phi)};
        const cplx z = c.center + c.radius * e;
        Eigen::PartialPivLU<Mat> lu(z * eye - m);
        // dz = i r e^{i phi} d phi; the 1/(2 pi i) and trapezoid weight fold
        // into r/nodes.
        acc += (eval(z) * e) * lu.solve(eye);
    }
    return (c.radius / static_cast<double>(c.nodes)) * acc;
}

// Inverse inside the twisted algebra: pull back represent(a)^{-1} through the
// trace pairing. Throws when the representation is numerically singular.
inline TwistedSeq invert_in_algebra(const TwistedSeq& a, const LatticeSpec& spec) {
    const Mat m = represent(a, spec);
    Eigen::JacobiSVD<Mat> svd(m);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= 1e-12 * std::max(1.0, smax))
        throw NotInvertibleError("invert_in_algebra: representation is singular", smin);
    Eigen::PartialPivLU<Mat> lu(m);
    const Mat inv = lu.solve(Mat::Identity(spec.L, spec.L));
    TwistedSeq out = coefficients_from_operator(inv, spec);
    out.alpha = a.alpha;
    out.beta = a.beta;
    return out;
}

struct DecayProfile {
    std::vector<double> shell_mass;   // m_r = sum_{max(|k|,|l|)=r} |a_{kl}|
    double exp_rate = std::numeric_limits<double>::quiet_NaN();   // log m_r ~ -rate*r
    double poly_order = std::numeric_limits<double>::quiet_NaN(); // log m_r ~ -p*log r
    long fit_lo = 0, fit_hi = 0;      // shell range used by the fits
    std::vector<double> s_ladder;     // ||a||_{1,s} for s in {0,1,2,4,8}
};

inline const std::vector<double>& decay_s_grid() {
    static const std::vector<double> s{0.0, 1.0, 2.0, 4.0, 8.0};
    return s;
}

// Shell masses plus least-squares decay fits. The preferred fit window is
// shells [2, max(3, r_max/2)] (skipping transients and the truncation tail);
// short profiles fall back to every nonzero shell with r >= 1.
inline DecayProfile decay_profile(const TwistedSeq& a) {
    DecayProfile prof;
    const long rmax = a.support_radius();
    prof.shell_mass.assign(static_cast<std::size_t>(rmax) + 1, 0.0);
    for (const auto& [idx, v] : a.coeffs) {
        const long r = std::max(std::labs(idx.first), std::labs(idx.second));
        prof.shell_mass[static_cast<std::size_t>(r)] += std::abs(v);
    }
    for (double s : decay_s_grid())
        prof.s_ladder.push_back(weighted_norm(a, WeightSpec{s, a.alpha, a.beta}));

    auto nonzero_in = [&](long lo, long hi) {
        std::vector<std::pair<double, double>> pts;  // (r, log m_r)
        for (long r = lo; r <= hi && r <= rmax; ++r)
            if (prof.shell_mass[static_cast<std::size_t>(r)] > 0.0)
                pts.emplace_back(static_cast<double>(r),
                                 std::log(prof.shell_mass[static_cast<std::size_t>(r)]));
        return pts;
    };
    long lo = 2, hi = std::max<long>(3, rmax / 2);
    auto pts = nonzero_in(lo, hi);
    if (pts.size() < 2) {
        lo = 1;
        hi = rmax;
        pts = nonzero_in(lo, hi);
    }
    prof.fit_lo = lo;
    prof.fit_hi = hi;
    if (pts.size() >= 2) {
        auto slope = [](const std::vector<std::pair<double, double>>& p) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (auto [x, y] : p) { sx += x; sy += y; sxx += x * x; sxy += x * y; }
            const double n = static_cast<double>(p.size());
            return (n * sxy - sx * sy) / (n * sxx - sx * sx);
        };
        prof.exp_rate = -slope(pts);
        std::vector<std::pair<double, double>> logpts;
        for (auto [x, y] : pts)
            if (x > 0.0) logpts.emplace_back(std::log(x), y);
        if (logpts.size() >= 2) prof.poly_order = -slope(logpts);
    }
    return prof;
}

struct RadiusCompareReport {
    std::vector<double> r_seq;  // r_j = ||a^{2^j}||_{1,0}^{1/2^j}, j = 0..jmax
    std::optional<double> r_op; // spectral radius of represent(a), when available
    double gap = std::numeric_limits<double>::quiet_NaN();
};

// Hulanicki-style comparison of the algebra-side radius estimate against the
// operator spectral radius. The algebra side works for any real theta; the
// operator side exists only when theta is representable on the given lattice.
inline RadiusCompareReport spectral_radius_compare(
    const TwistedSeq& a, const std::optional<LatticeSpec>& spec, int jmax) {
    if (jmax < 0 || jmax > 8)
        throw ParameterError("spectral_radius_compare: jmax must be in [0, 8]");
    const WeightSpec l1{0.0, 1.0, 1.0};
    RadiusCompareReport rep;
    TwistedSeq p = a;
    rep.r_seq.push_back(weighted_norm(p, l1));
    for (int j = 1; j <= jmax; ++j) {
        p = twisted_product(p, p);
        rep.r_seq.push_back(
            std::pow(weighted_norm(p, l1), 1.0 / std::pow(2.0, j)));
    }
    if (spec) {
        rep.r_op = operator_spectrum(represent(a, *spec)).spectral_radius;
        rep.gap = std::abs(rep.r_seq.back() - *rep.r_op);
    }
    return rep;
}

// Spectrum of represent(a # a*); symmetric algebras put it on [0, inf).
inline SpectrumReport symmetry_probe(const TwistedSeq& a, const LatticeSpec& spec) {
    return operator_spectrum(represent(twisted_product(a, twisted_involution(a)), spec));
}

}  // namespace nct
