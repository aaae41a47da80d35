#pragma once

// Finite time-frequency shifts on Z_L and lattice bookkeeping.
//
// Conventions (used consistently across the library):
//   pi(x,w) f[t]   = e^{2 pi i w t / L} f[(t-x) mod L]        (modulation first)
//   pi(x,w) pi(y,e) = e^{-2 pi i x e / L} pi(x+y, w+e)
// Phases are built from reduced rational multiples of 2 pi, so long cascades
// of shifts stay exact up to one complex exponential evaluation.

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "nct/errors.hpp"

namespace nct {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline long mod_l(long v, long m) {
    long r = v % m;
    return r < 0 ? r + m : r;
}

// e^{2 pi i num/den}, with num reduced mod den first.
inline cplx unit_phase(long long num, long long den) {
    long long r = num % den;
    if (r < 0) r += den;
    if (r == 0) return {1.0, 0.0};
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(r) /
                       static_cast<double>(den);
    return {std::cos(ang), std::sin(ang)};
}

struct TFPoint {
    long x = 0;  // time shift
    long w = 0;  // frequency shift

    TFPoint reduced(long L) const { return {mod_l(x, L), mod_l(w, L)}; }
    TFPoint negated() const { return {-x, -w}; }
    TFPoint operator+(const TFPoint& o) const { return {x + o.x, w + o.w}; }
    bool operator==(const TFPoint& o) const = default;
};

struct AdjointLatticeSpec {
    long L = 0;
    long astep = 0;  // time step of the adjoint lattice, L/b
    long bstep = 0;  // frequency step, L/a

    long points_time() const { return L / astep; }
    long points_freq() const { return L / bstep; }

    std::vector<TFPoint> points() const {
        std::vector<TFPoint> pts;
        pts.reserve(static_cast<std::size_t>(points_time() * points_freq()));
        for (long m = 0; m < points_time(); ++m)
            for (long n = 0; n < points_freq(); ++n)
                pts.push_back({astep * m, bstep * n});
        return pts;
    }
};

struct LatticeSpec {
    long L = 0;
    long a = 0;  // time step
    long b = 0;  // frequency step

    LatticeSpec() = default;
    LatticeSpec(long L_, long a_, long b_) : L(L_), a(a_), b(b_) {
        if (L < 2) throw ParameterError("lattice: L must be >= 2");
        if (a <= 0 || b <= 0) throw ParameterError("lattice: steps must be positive");
        if (L % a != 0) throw ParameterError("lattice: a must divide L");
        if (L % b != 0) throw ParameterError("lattice: b must divide L");
    }

    long points_time() const { return L / a; }
    long points_freq() const { return L / b; }
    long point_count() const { return points_time() * points_freq(); }

    // red = L/(a*b); systems need red >= 1 to have a chance of being a frame.
    double redundancy() const {
        return static_cast<double>(L) / static_cast<double>(a * b);
    }

    // theta = a*b/L as a reduced fraction.
    std::pair<long long, long long> theta_rational() const {
        const long long p = static_cast<long long>(a) * b;
        const long long q = L;
        const long long g = std::gcd(p, q);
        return {p / g, q / g};
    }
    double theta() const { return static_cast<double>(a * b) / static_cast<double>(L); }

    std::vector<TFPoint> points() const {
        std::vector<TFPoint> pts;
        pts.reserve(static_cast<std::size_t>(point_count()));
        for (long k = 0; k < points_time(); ++k)
            for (long l = 0; l < points_freq(); ++l) pts.push_back({a * k, b * l});
        return pts;
    }
};

inline AdjointLatticeSpec adjoint_lattice(const LatticeSpec& spec) {
    return {spec.L, spec.L / spec.b, spec.L / spec.a};
}

inline void require_length(const Vec& f, long L, const char* where) {
    if (f.size() != L)
        throw DimensionError(std::string(where) + ": signal length mismatch");
}

// pi(x,w) f
inline Vec tf_shift(const Vec& f, TFPoint p) {
    const long L = static_cast<long>(f.size());
    if (L < 2) throw DimensionError("tf_shift: signal too short");
    const TFPoint r = p.reduced(L);
    Vec out(L);
    for (long t = 0; t < L; ++t)
        out[t] = unit_phase(static_cast<long long>(r.w) * t, L) * f[mod_l(t - r.x, L)];
    return out;
}

// Dense unitary matrix of pi(x,w): entry ((t+x) mod L, t) = e^{2 pi i w (t+x)/L}.
inline Mat tf_shift_matrix(long L, TFPoint p) {
    if (L < 2) throw ParameterError("tf_shift_matrix: L must be >= 2");
    const TFPoint r = p.reduced(L);
    Mat m = Mat::Zero(L, L);
    for (long t = 0; t < L; ++t) {
        const long s = mod_l(t + r.x, L);
        m(s, t) = unit_phase(static_cast<long long>(r.w) * s, L);
    }
    return m;
}

// Scalar c with pi(p) pi(q) = c * pi(p+q):  c = e^{-2 pi i p.x q.w / L}.
inline cplx composition_phase(TFPoint p, TFPoint q, long L) {
    const TFPoint rp = p.reduced(L);
    const TFPoint rq = q.reduced(L);
    return unit_phase(-static_cast<long long>(rp.x) * rq.w, L);
}

// Translation-first shift pi'(x,w) = T_x M_w = e^{-2 pi i w x / L} pi(x,w).
// This is the realization the twisted-convolution layer represents into; its
// composition phase e^{2 pi i w y / L} matches the twisted-product phase.
inline Mat tf_shift_matrix_tm(long L, TFPoint p) {
    const TFPoint r = p.reduced(L);
    Mat m = Mat::Zero(L, L);
    for (long t = 0; t < L; ++t)
        m(mod_l(t + r.x, L), t) = unit_phase(static_cast<long long>(r.w) * t, L);
    return m;
}

inline cplx inner(const Vec& f, const Vec& g) {
    // Conjugate-linear in the second slot: <f,g> = sum f conj(g).
    return (g.conjugate().array() * f.array()).sum();
}

}  // namespace nct
