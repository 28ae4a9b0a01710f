#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ribbon_klein/barrier.hpp"

using namespace rk;

namespace {

constexpr double kA0 = 2.46;

BarrierSpec default_barrier(double theta = 0.0) {
  return {0.5, 60.0 * kA0, 30.0 * kA0, theta};
}

// Independent per-pair trapezoid projection (no Toeplitz factorization).
std::vector<double> project_reference(double y, const ModeSpace& space, const BarrierSpec& spec,
                                      const RibbonGeometry& geom, int quad_pts) {
  const double Wt = geom.W + kA0 / 2.0;
  const int panels = std::max<int>(2, (int)std::llround(quad_pts * Wt / kA0));
  const double h = Wt / panels;
  const int nm = space.n_modes;
  std::vector<double> out(nm * nm);
  for (int i = 0; i < nm; ++i)
    for (int j = 0; j < nm; ++j) {
      const double dq = space.q[i] - space.q[j];
      double acc = 0.0;
      for (int p = 0; p <= panels; ++p) {
        const double x = p * h;
        const double w = (p == 0 || p == panels) ? 0.5 * h : h;
        acc += w * oblique_value(x, y, spec, geom.W) * std::cos(dq * x);
      }
      out[i * nm + j] = acc / Wt;
    }
  return out;
}

}  // namespace

TEST_CASE("profile shape") {
  const BarrierSpec b = default_barrier();
  CHECK(profile_1d(0.0, b) == b.V0);
  CHECK(profile_1d(0.5 * (b.D + b.d), b) == 0.0);
  CHECK(profile_1d(-0.5 * (b.D + b.d) - 3.0, b) == 0.0);
  CHECK(profile_1d(0.5 * b.D, b) == doctest::Approx(0.5 * b.V0));
  CHECK(profile_1d(-0.5 * b.D, b) == doctest::Approx(0.5 * b.V0));

  // continuity across the region boundaries
  for (double y0 : {0.5 * (b.D - b.d), 0.5 * (b.D + b.d)}) {
    const double lo = profile_1d(y0 - 1e-9, b);
    const double hi = profile_1d(y0 + 1e-9, b);
    CHECK(std::abs(hi - lo) < 1e-7 * b.V0);
  }

  const BarrierSpec step{0.5, 100.0, 0.0, 0.0};  // d = 0 degenerates to a step
  CHECK(profile_1d(49.9, step) == step.V0);
  CHECK(profile_1d(50.0, step) == step.V0);
  CHECK(profile_1d(50.1, step) == 0.0);
}

TEST_CASE("barrier spec validation") {
  CHECK_THROWS_AS((BarrierSpec{0.5, 10.0, -1.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BarrierSpec{0.5, -10.0, 1.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BarrierSpec{0.5, 10.0, 1.0, 1.6}.validate()), std::invalid_argument);
}

TEST_CASE("oblique evaluation") {
  const double W = 197 * kA0 / 2.0;
  const BarrierSpec b0 = default_barrier(0.0);
  for (double x : {0.0, 0.3 * W, W}) CHECK(oblique_value(x, 10.0, b0, W) == profile_1d(10.0, b0));

  const BarrierSpec b45 = default_barrier(std::numbers::pi / 4);
  CHECK(oblique_value(0.5 * W, 0.0, b45, W) == b45.V0);
  CHECK(oblique_value(0.0, -0.5 * W, b45, W) == b45.V0);  // shifted argument lands at center
}

TEST_CASE("theta=0 projection is exactly diagonal") {
  const RibbonGeometry geom = RibbonGeometry::make(197, 2.0, 120.0 * kA0);
  const ModeSpace space = enumerate_modes(197, 5);
  const BarrierSpec b = default_barrier(0.0);
  const auto v = project_potential(0.0, space, b, geom, 4);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == j)
        CHECK(v[i * 5 + j] == doctest::Approx(b.V0).epsilon(1e-12));
      else
        CHECK(std::abs(v[i * 5 + j]) < 1e-10 * b.V0);
    }
}

TEST_CASE("projection properties: symmetry, bound, zero cases") {
  const RibbonGeometry geom = RibbonGeometry::make(198, 2.0, 200.0 * kA0);
  const ModeSpace space = enumerate_modes(198, 6);
  const BarrierSpec b = default_barrier(std::numbers::pi / 4);
  const int nm = space.n_modes;

  for (double y : {-80.0, -7.0, 0.0, 13.0, 110.0}) {
    const auto v = project_potential(y, space, b, geom, 4);
    for (int i = 0; i < nm; ++i)
      for (int j = 0; j < nm; ++j) {
        CHECK(v[i * nm + j] == v[j * nm + i]);
        CHECK(std::abs(v[i * nm + j]) <= b.V0 + 1e-12);
      }
  }

  const BarrierSpec off{0.0, b.D, b.d, b.theta};
  const auto vzero = project_potential(0.0, space, off, geom, 4);
  for (double e : vzero) CHECK(e == 0.0);

  // far outside the oblique footprint the integrand vanishes identically
  const double far = barrier_footprint_halfwidth(b, geom.W) + 5.0;
  const auto vfar = project_potential(far, space, b, geom, 4);
  for (double e : vfar) CHECK(e == 0.0);
}

TEST_CASE("projection equals the per-pair quadrature reference") {
  const RibbonGeometry geom = RibbonGeometry::make(198, 2.0, 200.0 * kA0);
  const ModeSpace space = enumerate_modes(198, 4);
  const BarrierSpec b = default_barrier(std::numbers::pi / 6);
  for (double y : {-30.0, 0.0, 42.0}) {
    const auto got = project_potential(y, space, b, geom, 4);
    const auto ref = project_reference(y, space, b, geom, 4);
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-12));
  }
}

TEST_CASE("mirror symmetry y -> -y equals theta -> -theta") {
  const RibbonGeometry geom = RibbonGeometry::make(197, 2.0, 200.0 * kA0);
  const ModeSpace space = enumerate_modes(197, 4);
  const BarrierSpec plus = default_barrier(std::numbers::pi / 5);
  const BarrierSpec minus = default_barrier(-std::numbers::pi / 5);
  for (double y : {-55.0, -10.0, 3.0, 70.0}) {
    const auto a = project_potential(-y, space, plus, geom, 4);
    const auto b2 = project_potential(y, space, minus, geom, 4);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b2[i]).epsilon(1e-13));
  }
}

// Doubling the default 4 points/a0 moves entries by ~1e-6*V0 (the ramp edges
// carry a curvature kink, so the composite rule converges at O(h^2) from that
// level); a further doubling contracts by ~4x.
TEST_CASE("trapezoid refinement contracts at second order") {
  const RibbonGeometry geom = RibbonGeometry::make(198, 2.0, 200.0 * kA0);
  const ModeSpace space = enumerate_modes(198, 5);
  const BarrierSpec b = default_barrier(std::numbers::pi / 4);
  for (double y : {0.0, 25.0, -60.0}) {
    const auto v4 = project_potential(y, space, b, geom, 4);
    const auto v8 = project_potential(y, space, b, geom, 8);
    const auto v16 = project_potential(y, space, b, geom, 16);
    double d48 = 0.0, d816 = 0.0;
    for (std::size_t i = 0; i < v4.size(); ++i) {
      d48 = std::max(d48, std::abs(v4[i] - v8[i]));
      d816 = std::max(d816, std::abs(v8[i] - v16[i]));
    }
    CHECK(d48 < 2e-6 * b.V0);
    CHECK(d816 < 0.5e-6 * b.V0);
  }
}

TEST_CASE("potential table covers every device row") {
  const RibbonGeometry geom = RibbonGeometry::make(198, 2.0, 150.0 * kA0);
  const ModeSpace space = enumerate_modes(198, 3);
  const BarrierSpec b = default_barrier(0.3);
  const PotentialTable table = build_potential_table(geom, space, b, 4);
  REQUIRE((int)table.rows.size() == geom.M);
  for (int m : {0, geom.M / 2, geom.M - 1}) {
    const auto ref = project_potential(geom.y(m), space, b, geom, 4);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(table.rows[m][i] == ref[i]);
  }
  CHECK(table.entry(geom.M / 2, 0, 0) > 0.4);  // center row sits in the barrier
}
