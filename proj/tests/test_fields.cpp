#include <doctest.h>

#include <cmath>
#include <random>

#include "bimot/fields.hpp"
#include "oracles.hpp"

using namespace bimot;

namespace {

LaserBeam make_beam(const Vec3& dir, PolarizationPreset pol) {
  LaserBeam b;
  b.direction = dir.normalized();
  b.polarization = make_polarization(pol, b.direction);
  b.wavenumber = 1.0;
  b.saturation = 1.0;
  return b;
}

Vec3 random_unit(std::mt19937& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v{n(gen), n(gen), n(gen)};
  return v.normalized();
}

}  // namespace

TEST_SUITE("fields") {

TEST_CASE("magnetic field maps") {
  MagneticFieldMap lin{MagneticFieldMap::Kind::linear_1d, 0.1};
  const Vec3 b = lin.field({0.0, 0.0, 1e-3});
  CHECK(b.x == 0.0);
  CHECK(b.y == 0.0);
  CHECK(b.z == doctest::Approx(1e-4).epsilon(1e-15));

  MagneticFieldMap quad{MagneticFieldMap::Kind::quadrupole_3d, 0.1};
  const Vec3 origin = quad.field({0.0, 0.0, 0.0});
  CHECK(origin.norm() == 0.0);
  CHECK(quad.field({2e-3, 0.0, 0.0}).x == doctest::Approx(-1e-4).epsilon(1e-15));

  // Divergence-free by construction: central differences at random points.
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(-5e-3, 5e-3);
  const double h = 1e-6;
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 r{u(gen), u(gen), u(gen)};
    const double div =
        (quad.field({r.x + h, r.y, r.z}).x - quad.field({r.x - h, r.y, r.z}).x +
         quad.field({r.x, r.y + h, r.z}).y - quad.field({r.x, r.y - h, r.z}).y +
         quad.field({r.x, r.y, r.z + h}).z - quad.field({r.x, r.y, r.z - h}).z) /
        (2.0 * h);
    CHECK(std::abs(div) <= 1e-9 * quad.axial_gradient);
  }
}

TEST_CASE("sigma+ beam along z: helicity components flip with the axis") {
  const LaserBeam b = make_beam({0, 0, 1}, PolarizationPreset::sigma_plus);
  const auto up = polarization_components(b, {0, 0, 1});
  CHECK(up[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(up[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(up[2] == doctest::Approx(1.0).epsilon(1e-14));
  const auto down = polarization_components(b, {0, 0, -1});
  CHECK(down[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(down[2] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("circular beam along z about the x axis: (1/4, 1/2, 1/4)") {
  const LaserBeam b = make_beam({0, 0, 1}, PolarizationPreset::sigma_plus);
  const auto c = polarization_components(b, {1, 0, 0});
  CHECK(c[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(c[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c[2] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("components against the Wigner d1 rotation oracle") {
  // Rotate the quantization axis away from z by beta about y; a sigma+ state
  // must decompose with weights |d^1_{q,+1}(beta)|^2.
  const LaserBeam b = make_beam({0, 0, 1}, PolarizationPreset::sigma_plus);
  for (double beta : {0.3, 1.1, kPi / 2, 2.4}) {
    const Vec3 axis{std::sin(beta), 0.0, std::cos(beta)};
    const auto c = polarization_components(b, axis);
    const auto d = oracle::wigner_d1(beta);
    // rows of d ordered m = +1, 0, -1; our triplet is (-1, 0, +1)
    CHECK(c[2] == doctest::Approx(d[0][0] * d[0][0]).epsilon(1e-12));
    CHECK(c[1] == doctest::Approx(d[1][0] * d[1][0]).epsilon(1e-12));
    CHECK(c[0] == doctest::Approx(d[2][0] * d[2][0]).epsilon(1e-12));
  }
}

TEST_CASE("pi light from a transverse beam") {
  const LaserBeam b = make_beam({1, 0, 0}, PolarizationPreset::pi_linear);
  const auto c = polarization_components(b, {0, 0, 1});
  CHECK(c[1] == doctest::Approx(1.0).epsilon(1e-14));
  // pi polarization along the beam axis is rejected.
  CHECK_THROWS_AS(make_beam({0, 0, 1}, PolarizationPreset::pi_linear),
                  std::invalid_argument);
}

TEST_CASE("component sum is one for random beams and axes") {
  std::mt19937 gen(99);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 dir = random_unit(gen);
    LaserBeam b = make_beam(dir, trial % 2 ? PolarizationPreset::helicity_plus
                                           : PolarizationPreset::helicity_minus);
    const Vec3 axis = random_unit(gen);
    const auto c = polarization_components(b, axis);
    CHECK(c[0] + c[1] + c[2] == doctest::Approx(1.0).epsilon(1e-12));
    // Axis rescaling leaves the components alone.
    const auto c2 = polarization_components(b, axis * 7.5);
    CHECK(c[0] == doctest::Approx(c2[0]).epsilon(1e-12));
    CHECK(c[2] == doctest::Approx(c2[2]).epsilon(1e-12));
  }
}

TEST_CASE("equivariance under simultaneous rotation of beam and axis") {
  // Rotation by 90 degrees about x: (x,y,z) -> (x,-z,y).
  auto rot = [](const Vec3& v) { return Vec3{v.x, -v.z, v.y}; };
  auto rotc = [](const CVec3& v) { return CVec3{v.x, -v.z, v.y}; };

  LaserBeam b = make_beam({0, 0, 1}, PolarizationPreset::sigma_plus);
  const Vec3 axis{0.6, 0.0, 0.8};
  const auto before = polarization_components(b, axis);

  LaserBeam br = b;
  br.direction = rot(b.direction);
  br.polarization = rotc(b.polarization);
  const auto after = polarization_components(br, rot(axis));
  for (int q = 0; q < 3; ++q)
    CHECK(before[q] == doctest::Approx(after[q]).epsilon(1e-12));
}

TEST_CASE("schedules gate beams and duty cycles add up") {
  Schedule a{10.0, 0.0, 5.0};
  Schedule bb{10.0, 5.0, 10.0};
  CHECK(a.active(0.0));
  CHECK(!a.active(5.0));
  CHECK(a.active(12.3));
  CHECK(bb.active(5.0));
  CHECK(bb.active(19.999));
  CHECK(!bb.active(20.0));
  CHECK(a.duty() + bb.duty() == doctest::Approx(1.0));
  // At any instant exactly one of the two windows is active.
  for (double t = 0.0; t < 30.0; t += 0.37)
    CHECK((a.active(t) ? 1 : 0) + (bb.active(t) ? 1 : 0) == 1);
}

TEST_CASE("quantization axis follows B and falls back to z") {
  CHECK(quantization_axis({0, 0, -2e-4}).z == doctest::Approx(-1.0));
  const Vec3 fallback = quantization_axis({0, 0, 0});
  CHECK(fallback.z == doctest::Approx(1.0));
}

}  // TEST_SUITE
