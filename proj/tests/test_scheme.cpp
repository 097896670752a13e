#include <doctest.h>

#include <cmath>

#include "bimot/scheme.hpp"

using namespace bimot;

TEST_SUITE("scheme") {

TEST_CASE("every preset validates cleanly") {
  for (const auto& name : scheme_preset_names()) {
    const LevelScheme s = build_preset(scheme_preset_from_name(name));
    const auto diags = validate(s);
    CAPTURE(name);
    for (const auto& d : diags) MESSAGE(d);
    CHECK(diags.empty());
  }
}

TEST_CASE("lambda scheme: three sublevels, Gamma/2 branching") {
  const LevelScheme s = build_preset(SchemePreset::lambda_1to0);
  REQUIRE(s.n() == 3);
  CHECK(s.index_of("ground", HalfInt::integer(0)) == -1);  // M''=0 excluded
  REQUIRE(s.links.size() == 1);
  REQUIRE(s.links[0].channels.size() == 2);
  for (const auto& ch : s.links[0].channels)
    CHECK(ch.gamma_spont == doctest::Approx(0.5 * kPresetGamma).epsilon(1e-14));
  // g'' = -1 on the ground level, g' = 0 above.
  for (const auto& sub : s.sublevels)
    CHECK(sub.g == (sub.is_upper ? 0.0 : -1.0));
}

TEST_CASE("lambda scheme with M0: Gamma/3 branching") {
  const LevelScheme s = build_preset(SchemePreset::lambda_1to0_with_M0);
  REQUIRE(s.n() == 4);
  REQUIRE(s.links[0].channels.size() == 3);
  for (const auto& ch : s.links[0].channels)
    CHECK(ch.gamma_spont == doctest::Approx(kPresetGamma / 3.0).epsilon(1e-14));
}

TEST_CASE("type1 scheme: four sublevels, complete branching per upper") {
  const LevelScheme s = build_preset(SchemePreset::type1_0to1);
  REQUIRE(s.n() == 4);
  int uppers = 0;
  for (int i = 0; i < s.n(); ++i) {
    if (!s.sublevels[i].is_upper) continue;
    ++uppers;
    CHECK(s.gamma_out(i) == doctest::Approx(kPresetGamma).epsilon(1e-12));
  }
  CHECK(uppers == 3);
}

TEST_CASE("c2minus scheme: 75 ns lifetime on every link, degeneracy-weighted manifolds") {
  const LevelScheme s = build_preset(SchemePreset::c2minus_iii);
  REQUIRE(s.links.size() == 2);
  for (const auto& link : s.links) {
    CHECK(link.gamma_total == doctest::Approx(1.3333333333333334e7).epsilon(1e-12));
    CHECK(link.wavelength == doctest::Approx(541e-9));
  }
  const RadiativeLink* j12 = s.find_link("J12");
  const RadiativeLink* j32 = s.find_link("J32");
  REQUIRE(j12 != nullptr);
  REQUIRE(j32 != nullptr);
  CHECK(j12->manifold_weight == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(j32->manifold_weight == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  // Upper J'=1/2 couples only to J''=1/2 and 3/2, and decays with Gamma total.
  for (int i = 0; i < s.n(); ++i)
    if (s.sublevels[i].is_upper)
      CHECK(s.gamma_out(i) == doctest::Approx(kPresetGamma).epsilon(1e-12));

  // Hund's case (b) defaults.
  for (const auto& sub : s.sublevels) {
    if (sub.level_id == "X_J12") CHECK(sub.g == doctest::Approx(2.0));
    if (sub.level_id == "X_J32") CHECK(sub.g == doctest::Approx(-0.4));
    if (sub.level_id == "B_J12") CHECK(sub.g == 0.0);
  }
}

TEST_CASE("branching sum rule across presets") {
  for (const auto& name : scheme_preset_names()) {
    const LevelScheme s = build_preset(scheme_preset_from_name(name));
    for (int i = 0; i < s.n(); ++i) {
      if (!s.sublevels[i].is_upper) continue;
      double gamma = 0.0;
      for (const auto& link : s.links)
        for (const auto& ch : link.channels)
          if (ch.upper == i) gamma += ch.gamma_spont;
      CHECK(std::abs(gamma - kPresetGamma) < 1e-12 * kPresetGamma);
    }
  }
}

TEST_CASE("constructed defects are diagnosed") {
  LevelScheme s = build_preset(SchemePreset::lambda_1to0);

  SUBCASE("halved branching fraction") {
    s.links[0].channels[0].gamma_spont *= 0.5;
    const auto diags = validate(s);
    REQUIRE(!diags.empty());
    bool found = false;
    for (const auto& d : diags)
      if (d.find("branching sum") != std::string::npos) found = true;
    CHECK(found);
  }

  SUBCASE("decay to an absent level") {
    RadiativeLink bad;
    bad.id = "stray";
    bad.upper_level = "excited";
    bad.lower_level = "nowhere";
    bad.gamma_total = kPresetGamma;
    bad.wavelength = kPresetWavelength;
    s.links.push_back(bad);
    const auto diags = validate(s);
    bool found = false;
    for (const auto& d : diags)
      if (d.find("not closed") != std::string::npos) found = true;
    CHECK(found);
  }

  SUBCASE("invalid sublevel quantum numbers") {
    s.sublevels[0].M = HalfInt::integer(5);
    CHECK(!validate(s).empty());
  }
}

TEST_CASE("custom scheme construction rejects unknown level references") {
  CHECK_THROWS_AS(
      build_scheme({{"g", HalfInt::integer(0), 0.0, 0.0, false, {}}},
                   {{"main", "missing", "g", kPresetGamma, kPresetWavelength}}),
      std::invalid_argument);
}

}  // TEST_SUITE
