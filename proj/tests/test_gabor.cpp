#include <catch2/catch_amalgamated.hpp>

#include "nct/gabor.hpp"
#include "nct/rng.hpp"
#include "nct/windows.hpp"

using namespace nct;

namespace {

Vec delta(long L, long t) {
    Vec v = Vec::Zero(L);
    v[t] = 1.0;
    return v;
}

Vec boxcar2(long L) {
    Vec g = Vec::Zero(L);
    g[0] = g[1] = 1.0 / std::numbers::sqrt2;
    return g;
}

Vec gaussian(long L) { return make_window({WindowKind::gaussian, L, 1.0}); }

cplx grid_inner(const Mat& x, const Mat& y) {
    return (y.conjugate().array() * x.array()).sum();
}

}  // namespace

TEST_CASE("analysis point evaluations") {
    const LatticeSpec spec(4, 2, 2);
    const GaborSystem sys(delta(4, 0), spec);

    // V_g g(0,0) = ||g||^2
    CHECK(std::abs(analysis(sys, delta(4, 0))(0, 0) - 1.0) < 1e-15);

    const CoefGrid grid = analysis(sys, delta(4, 2));
    CHECK(std::abs(grid(1, 0) - 1.0) < 1e-15);
    CHECK(std::abs(grid(1, 1) - 1.0) < 1e-15);
    CHECK(std::abs(grid(0, 0)) < 1e-15);
    CHECK(std::abs(grid(0, 1)) < 1e-15);
}

TEST_CASE("analysis energy lies within the frame bounds") {
    const LatticeSpec spec(8, 2, 2);
    const Vec g = gaussian(8);
    const GaborSystem sys(g, spec);
    const FrameBounds fb = frame_bounds(g, spec);
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const Vec f = rng.signal(8);
        const double energy = analysis(sys, f).squaredNorm();
        CHECK(energy >= fb.A * f.squaredNorm() - 1e-10);
        CHECK(energy <= fb.B * f.squaredNorm() + 1e-10);
    }
}

TEST_CASE("synthesis is the adjoint of analysis") {
    const LatticeSpec spec(8, 2, 4);
    const Vec g = gaussian(8);
    const GaborSystem sys(g, spec);

    // a single coefficient at (0,0) reproduces the window
    CoefGrid c = CoefGrid::Zero(spec.points_time(), spec.points_freq());
    c(0, 0) = 1.0;
    CHECK((synthesis(sys, c) - g).norm() < 1e-15);

    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const Vec f = rng.signal(8);
        CoefGrid rc(spec.points_time(), spec.points_freq());
        for (long k = 0; k < rc.rows(); ++k)
            for (long l = 0; l < rc.cols(); ++l) rc(k, l) = rng.cnormal();
        const cplx lhs = inner(synthesis(sys, rc), f);
        const cplx rhs = grid_inner(rc, analysis(sys, f));
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("frame operator closed forms at L=4") {
    // full lattice: resolution of the identity, S = L*I
    const Mat s_full = frame_operator_matrix(delta(4, 0), delta(4, 0), LatticeSpec(4, 1, 1));
    CHECK((s_full - 4.0 * Mat::Identity(4, 4)).norm() < 1e-13);

    // boxcar pair at a=2, b=1: tight frame with S = 2I
    const Mat s_tight = frame_operator_matrix(boxcar2(4), boxcar2(4), LatticeSpec(4, 2, 1));
    CHECK((s_tight - 2.0 * Mat::Identity(4, 4)).norm() < 1e-13);

    // point mass at a=2, b=1: not a frame, S = diag(4,0,4,0)
    const Mat s_bad = frame_operator_matrix(delta(4, 0), delta(4, 0), LatticeSpec(4, 2, 1));
    Mat expect = Mat::Zero(4, 4);
    expect(0, 0) = expect(2, 2) = 4.0;
    CHECK((s_bad - expect).norm() < 1e-13);
}

TEST_CASE("frame bounds and the frame predicate") {
    const FrameBounds tight = frame_bounds(boxcar2(4), LatticeSpec(4, 2, 1));
    CHECK(std::abs(tight.A - 2.0) < 1e-12);
    CHECK(std::abs(tight.B - 2.0) < 1e-12);
    CHECK(tight.is_frame());

    const FrameBounds bad = frame_bounds(delta(4, 0), LatticeSpec(4, 2, 1));
    CHECK(std::abs(bad.A) < 1e-12);
    CHECK(std::abs(bad.B - 4.0) < 1e-12);
    CHECK_FALSE(bad.is_frame());
    CHECK(std::isinf(bad.cond()));
}

TEST_CASE("condition number blows up at critical density (Balian-Low scan)") {
    const Vec g = gaussian(144);
    const FrameBounds critical = frame_bounds(g, LatticeSpec(144, 12, 12));
    const FrameBounds redundant = frame_bounds(g, LatticeSpec(144, 8, 8));
    CHECK(critical.cond() > 50.0 * redundant.cond());
    CHECK(redundant.cond() < 10.0);
}

TEST_CASE("frame predicate matches invertibility") {
    const Vec g = gaussian(16);
    const LatticeSpec spec(16, 4, 2);
    CHECK(frame_bounds(g, spec).is_frame());
    const Mat s = frame_operator_matrix(g, g, spec);
    const Mat sinv = s.partialPivLu().solve(Mat::Identity(16, 16));
    CHECK((s * sinv - Mat::Identity(16, 16)).norm() < 1e-8);
}

TEST_CASE("power_window: scalar frame operator cases") {
    const Vec g = boxcar2(4);
    const LatticeSpec spec(4, 2, 1);  // S = 2I
    CHECK((power_window(g, spec, -1.0) - 0.5 * g).norm() < 1e-12);
    const Vec tight = power_window(g, spec, -0.5);
    CHECK((tight - g / std::numbers::sqrt2).norm() < 1e-12);
    const FrameBounds fb = frame_bounds(tight, spec);
    CHECK(std::abs(fb.A - 1.0) < 1e-10);
    CHECK(std::abs(fb.B - 1.0) < 1e-10);
}

TEST_CASE("power_window rejects non-frames") {
    CHECK_THROWS_AS(power_window(delta(4, 0), LatticeSpec(4, 2, 1), -1.0),
                    NotAFrameError);
}

TEST_CASE("canonical dual reconstructs (Gaussian, L=64)") {
    const long L = 64;
    const Vec g = gaussian(L);
    const LatticeSpec spec(L, 4, 4);
    const Vec dual = power_window(g, spec, -1.0);
    const Mat s = frame_operator_matrix(g, g, spec);
    CHECK((s * dual - g).norm() < 1e-10);

    const GaborSystem sys_g(g, spec), sys_d(dual, spec);
    Rng rng(9);
    const Vec f = rng.signal(L);
    // both orderings of the reconstruction formula
    CHECK((synthesis(sys_d, analysis(sys_g, f)) - f).norm() < 1e-8);
    CHECK((synthesis(sys_g, analysis(sys_d, f)) - f).norm() < 1e-8);
}

TEST_CASE("frame operator commutes with lattice shifts") {
    const Vec g = gaussian(16);
    const LatticeSpec spec(16, 4, 4);
    const Mat s = frame_operator_matrix(g, g, spec);
    for (const TFPoint& la : spec.points()) {
        const Mat p = tf_shift_matrix(16, la);
        CHECK((s * p - p * s).norm() < 1e-10);
    }
}

TEST_CASE("Parseval promotion via nu = -1/2") {
    const Vec g = gaussian(32);
    const LatticeSpec spec(32, 4, 4);
    const FrameBounds fb = frame_bounds(power_window(g, spec, -0.5), spec);
    CHECK(std::abs(fb.A - 1.0) < 1e-8);
    CHECK(std::abs(fb.B - 1.0) < 1e-8);
}

TEST_CASE("Wexler-Raz biorthogonality") {
    // tight system at L=4: gamma = g/2, diagonal value C<gamma,g> = (4/2)(1/2) = 1
    const Vec g = boxcar2(4);
    const LatticeSpec spec(4, 2, 1);
    const WexlerRazReport rep = wexler_raz_check(g, (0.5 * g).eval(), spec);
    CHECK(std::abs(rep.grid(0, 0) - 1.0) < 1e-13);
    CHECK(rep.max_deviation < 1e-12);

    // canonical dual of the Gaussian system
    const Vec gg = gaussian(64);
    const LatticeSpec gspec(64, 4, 4);
    const Vec dual = power_window(gg, gspec, -1.0);
    CHECK(wexler_raz_check(gg, dual, gspec).max_deviation < 1e-8);

    // negative control: gamma = g is not a dual at redundancy 4
    CHECK(wexler_raz_check(gg, gg, gspec).max_deviation > 0.1);
}

TEST_CASE("Wexler-Raz deviation tracks S = I (cross validation)") {
    const Vec g = gaussian(16);
    const LatticeSpec spec(16, 2, 2);
    const Vec dual = power_window(g, spec, -1.0);
    const Mat s_mixed = frame_operator_matrix(g, dual, spec);
    const double op_dev = (s_mixed - Mat::Identity(16, 16)).norm();
    const double wr_dev = wexler_raz_check(g, dual, spec).max_deviation;
    CHECK(op_dev < 1e-10);
    CHECK(wr_dev < 1e-10);
}

TEST_CASE("FIGA constant calibration (brute force ratio at L=8)") {
    Rng rng(13);
    for (const LatticeSpec& spec : {LatticeSpec(8, 2, 4), LatticeSpec(8, 2, 2), LatticeSpec(8, 4, 2)}) {
        for (int trial = 0; trial < 10; ++trial) {
            const Vec f1 = rng.signal(8), f2 = rng.signal(8);
            const Vec g1 = rng.signal(8), g2 = rng.signal(8);
            cplx lhs = 0.0, rhs = 0.0;
            for (const TFPoint& la : spec.points())
                lhs += inner(f1, tf_shift(g1, la)) * inner(tf_shift(g2, la), f2);
            for (const TFPoint& mu : adjoint_lattice(spec).points())
                rhs += inner(g2, tf_shift(g1, mu)) * inner(tf_shift(f1, mu), f2);
            // the finite constant is C = L/(a*b), exactly
            CHECK(std::abs(lhs - spec.redundancy() * rhs) < 1e-12 * std::abs(lhs));
        }
    }
}

TEST_CASE("FIGA residual") {
    const LatticeSpec small(4, 2, 2);
    const Vec d0 = delta(4, 0);
    CHECK(figa_residual(d0, d0, d0, d0, small) < 1e-14);

    Rng rng(17);
    const LatticeSpec spec(8, 2, 4);
    for (int trial = 0; trial < 10; ++trial) {
        const Vec f1 = rng.signal(8), f2 = rng.signal(8);
        const Vec g1 = rng.signal(8), g2 = rng.signal(8);
        CHECK(figa_residual(f1, f2, g1, g2, spec) < 1e-12);
    }

    // degenerate window: both sides vanish
    CHECK(figa_residual(rng.signal(8), rng.signal(8), Vec::Zero(8), rng.signal(8), spec) == 0.0);
}
