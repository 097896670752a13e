#include <doctest.h>

#include <cmath>
#include <random>

#include "bimot/angular.hpp"
#include "oracles.hpp"

using bimot::HalfInt;
using bimot::clebsch_gordan;
using bimot::line_strength;

namespace {
const HalfInt h0 = HalfInt::integer(0);
const HalfInt h1 = HalfInt::integer(1);
const HalfInt h2 = HalfInt::integer(2);
const HalfInt h1_2 = HalfInt::from_twice(1);
const HalfInt h3_2 = HalfInt::from_twice(3);
const HalfInt hm1 = HalfInt::integer(-1);
const HalfInt hm1_2 = HalfInt::from_twice(-1);
}  // namespace

TEST_SUITE("angular") {

TEST_CASE("ladder oracle is orthonormal and complete") {
  const std::pair<HalfInt, HalfInt> spaces[] = {
      {h1, h1}, {h1_2, h1}, {h1, h1_2}, {h3_2, h1}, {h2, h1}, {h1_2, h1_2}, {h3_2, h3_2}};
  for (const auto& [j1, j2] : spaces) {
    oracle::CgTable table(j1, j2);
    // Orthonormality of the coupled states over the product basis.
    for (const auto& [tJa, tMa] : table.coupled_jm_twice())
      for (const auto& [tJb, tMb] : table.coupled_jm_twice()) {
        if (tMa != tMb) continue;
        double s = 0.0;
        for (int tm1 = -j1.twice(); tm1 <= j1.twice(); tm1 += 2) {
          const int tm2 = tMa - tm1;
          if (std::abs(tm2) > j2.twice()) continue;
          s += table.coefficient(HalfInt::from_twice(tm1), HalfInt::from_twice(tm2),
                                 HalfInt::from_twice(tJa), HalfInt::from_twice(tMa)) *
               table.coefficient(HalfInt::from_twice(tm1), HalfInt::from_twice(tm2),
                                 HalfInt::from_twice(tJb), HalfInt::from_twice(tMb));
        }
        const double expected = (tJa == tJb) ? 1.0 : 0.0;
        CHECK(s == doctest::Approx(expected).epsilon(1e-12));
      }
  }
}

TEST_CASE("clebsch_gordan matches the ladder oracle everywhere") {
  const std::pair<HalfInt, HalfInt> spaces[] = {
      {h1, h1}, {h1_2, h1}, {h1, h1_2}, {h3_2, h1}, {h2, h1}, {h1_2, h1_2}, {h3_2, h3_2}};
  for (const auto& [j1, j2] : spaces) {
    oracle::CgTable table(j1, j2);
    for (int tJ = std::abs(j1.twice() - j2.twice()); tJ <= j1.twice() + j2.twice();
         tJ += 2)
      for (int tM = -tJ; tM <= tJ; tM += 2)
        for (int tm1 = -j1.twice(); tm1 <= j1.twice(); tm1 += 2) {
          const int tm2 = tM - tm1;
          if (std::abs(tm2) > j2.twice()) continue;
          if ((j2.twice() - tm2) % 2 != 0) continue;
          const double ref =
              table.coefficient(HalfInt::from_twice(tm1), HalfInt::from_twice(tm2),
                                HalfInt::from_twice(tJ), HalfInt::from_twice(tM));
          const double val =
              clebsch_gordan(j1, HalfInt::from_twice(tm1), j2, HalfInt::from_twice(tm2),
                             HalfInt::from_twice(tJ), HalfInt::from_twice(tM));
          CHECK(val == doctest::Approx(ref).epsilon(1e-12));
        }
  }
}

TEST_CASE("frozen coefficient values") {
  // <1 -1; 1 +1 | 0 0> = +1/sqrt(3) (Condon-Shortley); squared 1/3.
  const double c = clebsch_gordan(h1, hm1, h1, h1, h0, h0);
  CHECK(c == doctest::Approx(0.57735026918962576).epsilon(1e-15));
  CHECK(c * c == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // Oracle agrees on the sign.
  oracle::CgTable t11(h1, h1);
  CHECK(t11.coefficient(hm1, h1, h0, h0) == doctest::Approx(c).epsilon(1e-12));

  // Coupling to a unique stretched state.
  CHECK(clebsch_gordan(h0, h0, h1, h0, h1, h0) == doctest::Approx(1.0));

  // <1/2 -1/2; 1 +1 | 1/2 +1/2>, squared magnitude 2/3.
  const double c2 = clebsch_gordan(h1_2, hm1_2, h1, h1, h1_2, h1_2);
  CHECK(c2 * c2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  oracle::CgTable t121(h1_2, h1);
  CHECK(c2 == doctest::Approx(t121.coefficient(hm1_2, h1, h1_2, h1_2)).epsilon(1e-12));
}

TEST_CASE("frozen line strengths") {
  CHECK(line_strength(h1, h1, -1, h0, h0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(line_strength(h1_2, h1_2, 0, h1_2, h1_2) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // q mismatch with m_up - m_low is a selection-rule zero.
  CHECK(line_strength(h1, h1, +1, h0, h0) == 0.0);

  double sum = 0.0;
  for (int tm = -2; tm <= 2; tm += 2)
    for (int q = -1; q <= 1; ++q)
      sum += line_strength(h1, HalfInt::from_twice(tm), q, h0, h0);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("branching completeness for dipole-allowed manifolds") {
  const std::pair<HalfInt, HalfInt> pairs[] = {
      {h0, h1}, {h1, h1}, {h1, h0}, {h1, h2}, {h1_2, h1_2}, {h1_2, h3_2},
      {h3_2, h1_2}, {h3_2, h3_2}, {h2, h1}};
  for (const auto& [j_up, j_low] : pairs) {
    for (int tmu = -j_up.twice(); tmu <= j_up.twice(); tmu += 2) {
      double sum = 0.0;
      for (int tml = -j_low.twice(); tml <= j_low.twice(); tml += 2) {
        const int tq = tmu - tml;
        if (tq % 2 != 0 || std::abs(tq) > 2) continue;
        sum += line_strength(j_low, HalfInt::from_twice(tml), tq / 2, j_up,
                             HalfInt::from_twice(tmu));
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("magnetic reflection symmetry and range") {
  std::mt19937 gen(12345);
  std::uniform_int_distribution<int> twice_j(0, 6);
  int tested = 0;
  while (tested < 200) {
    const int tj1 = twice_j(gen), tj2 = twice_j(gen);
    std::uniform_int_distribution<int> pick_J(std::abs(tj1 - tj2), tj1 + tj2);
    int tJ = pick_J(gen);
    if ((tj1 + tj2 + tJ) % 2 != 0) continue;
    std::uniform_int_distribution<int> pick_m1(0, tj1), pick_M(0, tJ);
    const int tm1 = tj1 - 2 * pick_m1(gen);
    const int tM = tJ - 2 * pick_M(gen);
    const int tm2 = tM - tm1;
    if (std::abs(tm2) > tj2) continue;
    ++tested;
    const auto j1 = HalfInt::from_twice(tj1), j2 = HalfInt::from_twice(tj2);
    const double plus =
        clebsch_gordan(j1, HalfInt::from_twice(tm1), j2, HalfInt::from_twice(tm2),
                       HalfInt::from_twice(tJ), HalfInt::from_twice(tM));
    const double minus =
        clebsch_gordan(j1, HalfInt::from_twice(-tm1), j2, HalfInt::from_twice(-tm2),
                       HalfInt::from_twice(tJ), HalfInt::from_twice(-tM));
    CHECK(std::abs(plus) == doctest::Approx(std::abs(minus)).epsilon(1e-12));
    CHECK(plus * plus <= 1.0 + 1e-12);
  }
}

TEST_CASE("selection-rule zeros versus invalid quantum numbers") {
  // M != m1 + m2
  CHECK(clebsch_gordan(h1, h1, h1, h1, h2, h1) == 0.0);
  // Triangle violation
  CHECK(clebsch_gordan(h1, h0, h1, h0, HalfInt::integer(3), h0) == 0.0);
  CHECK(clebsch_gordan(h1_2, h1_2, h1_2, hm1_2, h2, h0) == 0.0);

  // Invalid pairs are rejected, not zeroed.
  CHECK_THROWS_AS(clebsch_gordan(h1, h2, h1, hm1, h1, h1), std::domain_error);
  CHECK_THROWS_AS(clebsch_gordan(HalfInt::integer(-1), h0, h1, h0, h1, h0),
                  std::domain_error);
  CHECK_THROWS_AS(clebsch_gordan(h1_2, h0, h1, h0, h1_2, h0), std::domain_error);
  CHECK_THROWS_AS(line_strength(h1, h0, 2, h1, h1), std::domain_error);
  // Out of supported exact range
  CHECK_THROWS_AS(clebsch_gordan(HalfInt::integer(11), h0, HalfInt::integer(11), h0,
                                 HalfInt::integer(11), h0),
                  std::domain_error);
}

TEST_CASE("orthogonality of coupled states") {
  const auto delta = [](bool b) { return b ? 1.0 : 0.0; };
  for (int tJa = 0; tJa <= 4; tJa += 2)
    for (int tJb = 0; tJb <= 4; tJb += 2) {
      double s = 0.0;
      for (int tm1 = -2; tm1 <= 2; tm1 += 2)
        for (int tm2 = -2; tm2 <= 2; tm2 += 2) {
          if (std::abs(tm1 + tm2) > tJa || std::abs(tm1 + tm2) > tJb) continue;
          if (tm1 + tm2 != 0) continue;
          s += clebsch_gordan(h1, HalfInt::from_twice(tm1), h1, HalfInt::from_twice(tm2),
                              HalfInt::from_twice(tJa), h0) *
               clebsch_gordan(h1, HalfInt::from_twice(tm1), h1, HalfInt::from_twice(tm2),
                              HalfInt::from_twice(tJb), h0);
        }
      CHECK(s == doctest::Approx(delta(tJa == tJb)).epsilon(1e-12));
    }
}

}  // TEST_SUITE
