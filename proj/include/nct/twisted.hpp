#pragma once

// The twisted convolution algebra on finitely supported sequences over Z^2:
//   (a # b)(m,n) = sum_{k,l} a_{kl} b_{m-k,n-l} e^{2 pi i theta (m-k) l}
//   a*(k,l)      = conj(a(-k,-l)) e^{2 pi i theta k l}
// together with weighted l1 norms, derivations, and the representation by
// time-frequency shifts.
//
// Phase bookkeeping: with the product above, the homomorphism property holds
// for the translation-first shifts pi'(x,w) = T_x M_w (see tf.hpp), i.e.
//   represent(a) = sum a_{kl} pi'(ak, bl),   theta = a*b/L,
// and represent(a*) = represent(a)^dagger. This is the sign choice that makes
// the matrix oracle pass; the modulation-first convention of tf_shift differs
// from pi' by the scalar e^{-2 pi i theta k l}.
//
// theta is kept as a reduced fraction whenever it comes from a lattice, so
// product phases are computed from exact rational multiples of 2 pi.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <utility>

#include "nct/tf.hpp"

namespace nct {

struct Theta {
    bool rational = true;
    long long p = 0;
    long long q = 1;
    double value = 0.0;  // used when !rational

    static Theta from_rational(long long p, long long q) {
        if (q <= 0) throw ParameterError("Theta: denominator must be positive");
        long long g = std::gcd(p < 0 ? -p : p, q);
        if (g == 0) g = 1;
        Theta t;
        t.rational = true;
        t.p = p / g;
        t.q = q / g;
        t.value = static_cast<double>(t.p) / static_cast<double>(t.q);
        return t;
    }
    static Theta from_real(double v) {
        Theta t;
        t.rational = false;
        t.value = v;
        return t;
    }
    static Theta from_lattice(const LatticeSpec& spec) {
        return from_rational(static_cast<long long>(spec.a) * spec.b, spec.L);
    }

    bool operator==(const Theta& o) const {
        if (rational != o.rational) return false;
        return rational ? (p == o.p && q == o.q) : (value == o.value);
    }

    // e^{2 pi i theta m}
    cplx phase(long long m) const {
        if (rational) return unit_phase(p * m, q);
        const double frac = value * static_cast<double>(m);
        const double ang = 2.0 * std::numbers::pi * (frac - std::floor(frac));
        return {std::cos(ang), std::sin(ang)};
    }
};

struct WeightSpec {
    double s = 0.0;
    double alpha = 1.0;
    double beta = 1.0;

    // v_s(k,l) = (1 + alpha^2 k^2 + beta^2 l^2)^{s/2}
    double operator()(double k, double l) const {
        return std::pow(1.0 + alpha * alpha * k * k + beta * beta * l * l, s / 2.0);
    }
};

struct TwistedSeq {
    using Index = std::pair<long, long>;

    Theta theta;
    double alpha = 1.0;  // lattice scale metadata, consumed by weights only
    double beta = 1.0;
    std::map<Index, cplx> coeffs;  // ordered: deterministic iteration

    static constexpr double kPrune = 1e-15;
    static constexpr long kSupportCap = 512;

    static TwistedSeq unit(Theta th) { return basis(0, 0, th); }
    static TwistedSeq basis(long k, long l, Theta th) {
        TwistedSeq s;
        s.theta = th;
        s.coeffs[{k, l}] = 1.0;
        return s;
    }

    cplx at(long k, long l) const {
        auto it = coeffs.find({k, l});
        return it == coeffs.end() ? cplx{0.0, 0.0} : it->second;
    }

    void set(long k, long l, cplx v) {
        if (std::abs(v) < kPrune)
            coeffs.erase({k, l});
        else
            coeffs[{k, l}] = v;
    }

    long support_radius() const {
        long r = 0;
        for (const auto& [idx, v] : coeffs)
            r = std::max(r, std::max(std::labs(idx.first), std::labs(idx.second)));
        return r;
    }

    TwistedSeq& prune(double eps = kPrune) {
        for (auto it = coeffs.begin(); it != coeffs.end();)
            it = std::abs(it->second) < eps ? coeffs.erase(it) : std::next(it);
        return *this;
    }

    TwistedSeq scaled(cplx z) const {
        TwistedSeq out = *this;
        for (auto& [idx, v] : out.coeffs) v *= z;
        return out.prune();
    }

    TwistedSeq operator+(const TwistedSeq& o) const {
        if (!(theta == o.theta))
            throw ThetaMismatchError("TwistedSeq: theta mismatch in sum");
        TwistedSeq out = *this;
        for (const auto& [idx, v] : o.coeffs) out.set(idx.first, idx.second, out.at(idx.first, idx.second) + v);
        return out;
    }
    TwistedSeq operator-(const TwistedSeq& o) const { return *this + o.scaled(-1.0); }
};

inline TwistedSeq twisted_product(const TwistedSeq& a, const TwistedSeq& b) {
    if (!(a.theta == b.theta))
        throw ThetaMismatchError("twisted_product: incompatible deformation parameters");
    TwistedSeq out;
    out.theta = a.theta;
    out.alpha = a.alpha;
    out.beta = a.beta;
    for (const auto& [ia, va] : a.coeffs) {
        const auto [k, l] = ia;
        for (const auto& [ib, vb] : b.coeffs) {
            const auto [k2, l2] = ib;
            // phase e^{2 pi i theta (m-k) l} with (m,n) = (k+k2, l+l2)
            const cplx term =
                va * vb * a.theta.phase(static_cast<long long>(k2) * l);
            const TwistedSeq::Index idx{k + k2, l + l2};
            auto [it, fresh] = out.coeffs.try_emplace(idx, term);
            if (!fresh) it->second += term;
        }
    }
    out.prune();
    if (out.support_radius() > TwistedSeq::kSupportCap)
        throw ResourceError("twisted_product: support exceeds configured cap");
    return out;
}

inline TwistedSeq twisted_involution(const TwistedSeq& a) {
    TwistedSeq out;
    out.theta = a.theta;
    out.alpha = a.alpha;
    out.beta = a.beta;
    for (const auto& [idx, v] : a.coeffs) {
        const auto [k, l] = idx;
        // a*(-k,-l) slot receives conj(a(k,l)) e^{2 pi i theta k l}, matching
        // pi'(x,w)^dagger = e^{2 pi i w x / L} pi'(-x,-w)
        out.coeffs[{-k, -l}] =
            std::conj(v) * a.theta.phase(static_cast<long long>(k) * l);
    }
    return out;
}

inline TwistedSeq twisted_power(const TwistedSeq& a, unsigned n) {
    if (n == 0) throw ParameterError("twisted_power: n must be >= 1");
    TwistedSeq base = a;
    TwistedSeq acc = TwistedSeq::unit(a.theta);
    acc.alpha = a.alpha;
    acc.beta = a.beta;
    bool acc_used = false;
    while (n > 0) {
        if (n & 1u) {
            acc = acc_used ? twisted_product(acc, base) : base;
            acc_used = true;
        }
        n >>= 1u;
        if (n > 0) base = twisted_product(base, base);
    }
    return acc;
}

inline double weighted_norm(const TwistedSeq& a, const WeightSpec& w) {
    double total = 0.0;
    for (const auto& [idx, v] : a.coeffs)
        total += std::abs(v) * w(static_cast<double>(idx.first),
                                 static_cast<double>(idx.second));
    return total;
}

enum class Derivation { delta1, delta2, laplacian, potential_power };

// delta1: 2 pi i k, delta2: 2 pi i l, laplacian: -4 pi^2 (k^2+l^2),
// potential_power(s): (1 + k^2 + l^2)^{s/2}.
inline TwistedSeq apply_derivation(const TwistedSeq& a, Derivation kind,
                                   double s = 0.0) {
    TwistedSeq out = a;
    for (auto& [idx, v] : out.coeffs) {
        const double k = static_cast<double>(idx.first);
        const double l = static_cast<double>(idx.second);
        switch (kind) {
            case Derivation::delta1:
                v *= cplx{0.0, 2.0 * std::numbers::pi * k};
                break;
            case Derivation::delta2:
                v *= cplx{0.0, 2.0 * std::numbers::pi * l};
                break;
            case Derivation::laplacian:
                v *= -4.0 * std::numbers::pi * std::numbers::pi * (k * k + l * l);
                break;
            case Derivation::potential_power:
                v *= std::pow(1.0 + k * k + l * l, s / 2.0);
                break;
        }
    }
    return out.prune();
}

// sum a_{kl} pi'(a k mod L, b l mod L); requires theta == a*b/L.
inline Mat represent(const TwistedSeq& seq, const LatticeSpec& spec) {
    if (!(seq.theta == Theta::from_lattice(spec)))
        throw ThetaMismatchError(
            "represent: theta has no finite matrix model on this lattice");
    const long L = spec.L;
    Mat m = Mat::Zero(L, L);
    for (const auto& [idx, v] : seq.coeffs) {
        const long x = mod_l(idx.first * spec.a, L);
        const long w = mod_l(idx.second * spec.b, L);
        for (long t = 0; t < L; ++t)
            m(mod_l(t + x, L), t) += v * unit_phase(static_cast<long long>(w) * t, L);
    }
    return m;
}

// Trace-pairing inverse of represent: a_{kl} = (1/L) tr(pi'(ak,bl)^dagger M),
// extracted over the fundamental range and mapped to symmetric representatives
// k in [-P/2, P/2), l in [-Q/2, Q/2) with P = L/a, Q = L/b.
inline TwistedSeq coefficients_from_operator(const Mat& m, const LatticeSpec& spec) {
    const long L = spec.L;
    if (m.rows() != L || m.cols() != L)
        throw DimensionError("coefficients_from_operator: matrix size mismatch");
    const long P = spec.points_time();
    const long Q = spec.points_freq();
    TwistedSeq out;
    out.theta = Theta::from_lattice(spec);
    for (long k = 0; k < P; ++k) {
        for (long l = 0; l < Q; ++l) {
            const long x = mod_l(k * spec.a, L);
            const long w = mod_l(l * spec.b, L);
            cplx tr = 0.0;
            for (long t = 0; t < L; ++t)
                tr += std::conj(unit_phase(static_cast<long long>(w) * t, L)) *
                      m(mod_l(t + x, L), t);
            const long ks = k >= (P + 1) / 2 ? k - P : k;
            const long ls = l >= (Q + 1) / 2 ? l - Q : l;
            out.set(ks, ls, tr / static_cast<double>(L));
        }
    }
    return out;
}

struct JanssenResult {
    TwistedSeq coefficients;  // c_{mn} = C <gamma, pi(mu_mn) g> over Lambda0
    Mat rebuilt;              // sum c_{mn} pi(mu_mn)
};

// Janssen representation: S_{g,gamma} = C sum_{mu in Lambda0} <gamma,pi(mu)g> pi(mu),
// C = L/(a*b). Coefficient indices (m,n) are the adjoint-lattice indices in
// symmetric representatives; theta of the sequence is the adjoint lattice's.
inline JanssenResult janssen_coefficients(const Vec& g, const Vec& gamma,
                                          const LatticeSpec& spec) {
    require_length(g, spec.L, "janssen_coefficients");
    require_length(gamma, spec.L, "janssen_coefficients");
    const AdjointLatticeSpec adj = adjoint_lattice(spec);
    const LatticeSpec adj_spec(spec.L, adj.astep, adj.bstep);
    const double C = spec.redundancy();
    JanssenResult res;
    res.coefficients.theta = Theta::from_lattice(adj_spec);
    res.rebuilt = Mat::Zero(spec.L, spec.L);
    const long P = adj_spec.points_time();
    const long Q = adj_spec.points_freq();
    for (long m = 0; m < P; ++m) {
        for (long n = 0; n < Q; ++n) {
            const TFPoint mu{adj.astep * m, adj.bstep * n};
            const cplx c = C * inner(gamma, tf_shift(g, mu));
            const long ms = m >= (P + 1) / 2 ? m - P : m;
            const long ns = n >= (Q + 1) / 2 ? n - Q : n;
            res.coefficients.set(ms, ns, c);
            res.rebuilt += c * tf_shift_matrix(spec.L, mu);
        }
    }
    return res;
}

}  // namespace nct
