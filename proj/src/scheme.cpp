#include "bimot/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bimot/angular.hpp"
#include "bimot/constants.hpp"

namespace bimot {

double RadiativeLink::wavenumber() const { return 2.0 * kPi / wavelength; }

int LevelScheme::index_of(const std::string& level_id, HalfInt M) const {
  for (int i = 0; i < n(); ++i)
    if (sublevels[i].level_id == level_id && sublevels[i].M == M) return i;
  return -1;
}

std::vector<int> LevelScheme::level_indices(const std::string& level_id) const {
  std::vector<int> out;
  for (int i = 0; i < n(); ++i)
    if (sublevels[i].level_id == level_id) out.push_back(i);
  return out;
}

const RadiativeLink* LevelScheme::find_link(const std::string& id) const {
  for (const auto& l : links)
    if (l.id == id) return &l;
  return nullptr;
}

double LevelScheme::gamma_out(int upper_index) const {
  double sum = 0.0;
  for (const auto& link : links)
    for (const auto& ch : link.channels)
      if (ch.upper == upper_index) sum += ch.gamma_spont;
  return sum;
}

double LevelScheme::gamma_scale() const {
  double best = 0.0;
  for (int i = 0; i < n(); ++i)
    if (sublevels[i].is_upper) best = std::max(best, gamma_out(i));
  return best;
}

double LevelScheme::gamma_channel_sum() const {
  double sum = 0.0;
  for (const auto& link : links)
    for (const auto& ch : link.channels) sum += ch.gamma_spont;
  return sum;
}

LevelScheme build_scheme(const std::vector<LevelSpec>& levels,
                         const std::vector<LinkSpec>& links) {
  LevelScheme s;

  for (const auto& lv : levels) {
    if (lv.J.twice() < 0) throw std::invalid_argument("build_scheme: negative J");
    for (int tm = -lv.J.twice(); tm <= lv.J.twice(); tm += 2) {
      if (std::find(lv.exclude_twice_m.begin(), lv.exclude_twice_m.end(), tm) !=
          lv.exclude_twice_m.end())
        continue;
      Sublevel sub;
      sub.level_id = lv.id;
      sub.J = lv.J;
      sub.M = HalfInt::from_twice(tm);
      sub.g = lv.g;
      sub.energy_offset = lv.energy_offset;
      sub.is_upper = lv.is_upper;
      s.sublevels.push_back(sub);
    }
  }

  auto level_J = [&](const std::string& id) -> HalfInt {
    for (const auto& lv : levels)
      if (lv.id == id) return lv.J;
    throw std::invalid_argument("build_scheme: link references unknown level '" + id + "'");
  };

  // Manifold branching shares: a single upper state decaying through several
  // links splits Gamma in proportion to the lower-manifold degeneracy
  // (2J''+1), the only J-dependent weighting consistent with the
  // line-strength sum rules.
  std::map<std::string, int> degeneracy_sum;
  for (const auto& lk : links)
    degeneracy_sum[lk.upper] += level_J(lk.lower).twice() + 1;

  for (const auto& lk : links) {
    RadiativeLink link;
    link.id = lk.id;
    link.upper_level = lk.upper;
    link.lower_level = lk.lower;
    link.gamma_total = lk.gamma_total;
    link.wavelength = lk.wavelength;
    link.manifold_weight =
        static_cast<double>(level_J(lk.lower).twice() + 1) / degeneracy_sum[lk.upper];

    const auto uppers = s.level_indices(lk.upper);
    const auto lowers = s.level_indices(lk.lower);
    if (uppers.empty() || lowers.empty())
      throw std::invalid_argument("build_scheme: link '" + lk.id + "' has empty endpoints");

    for (int ui : uppers) {
      const Sublevel& up = s.sublevels[ui];
      double present_sum = 0.0;
      std::vector<TransitionChannel> chans;
      for (int li : lowers) {
        const Sublevel& low = s.sublevels[li];
        const int tq = up.M.twice() - low.M.twice();
        if (tq % 2 != 0 || std::abs(tq) > 2) continue;
        const double f = line_strength(low.J, low.M, tq / 2, up.J, up.M);
        if (f <= 0.0) continue;
        TransitionChannel ch;
        ch.upper = ui;
        ch.lower = li;
        ch.q = tq / 2;
        ch.strength = f;
        chans.push_back(ch);
        present_sum += f;
      }
      // Excluded sublevels redistribute their branching share, so the upper
      // sublevel keeps its full decay rate through this link.
      for (auto& ch : chans) {
        ch.gamma_spont =
            link.gamma_total * link.manifold_weight * ch.strength / present_sum;
        link.channels.push_back(ch);
      }
    }
    s.links.push_back(std::move(link));
  }
  return s;
}

namespace {

LevelScheme build_type1() {
  return build_scheme(
      {{"ground", HalfInt::integer(0), 0.0, 0.0, false, {}},
       {"excited", HalfInt::integer(1), -1.0, 0.0, true, {}}},
      {{"main", "excited", "ground", kPresetGamma, kPresetWavelength}});
}

LevelScheme build_lambda(bool with_m0) {
  std::vector<int> excluded;
  if (!with_m0) excluded.push_back(0);
  return build_scheme(
      {{"ground", HalfInt::integer(1), -1.0, 0.0, false, excluded},
       {"excited", HalfInt::integer(0), 0.0, 0.0, true, {}}},
      {{"main", "excited", "ground", kPresetGamma, kPresetWavelength}});
}

LevelScheme build_j_half() {
  return build_scheme(
      {{"ground", HalfInt::from_twice(1), 1.0, 0.0, false, {}},
       {"excited", HalfInt::from_twice(1), 0.0, 0.0, true, {}}},
      {{"main", "excited", "ground", kPresetGamma, kPresetWavelength}});
}

// C2- B2Sigma(N'=1, J'=1/2) <-> X2Sigma closed system. Ground g-factors from
// the Hund's case (b) expression g_J = g_S [J(J+1)+S(S+1)-N(N+1)] / (2J(J+1)),
// g_S = 2: g(J''=1/2, N''=0) = 2, g(J''=3/2, N''=2) = -2/5. The upper state
// has no linear Zeeman shift (g' = 0).
LevelScheme build_c2minus() {
  const double manifold_splitting = 1e4 * kPresetGamma;  // >> Gamma, value unused by forces
  return build_scheme(
      {{"X_J12", HalfInt::from_twice(1), 2.0, 0.0, false, {}},
       {"X_J32", HalfInt::from_twice(3), -0.4, manifold_splitting, false, {}},
       {"B_J12", HalfInt::from_twice(1), 0.0, 0.0, true, {}}},
      {{"J12", "B_J12", "X_J12", kPresetGamma, kPresetWavelength},
       {"J32", "B_J12", "X_J32", kPresetGamma, kPresetWavelength}});
}

}  // namespace

SchemePreset scheme_preset_from_name(const std::string& name) {
  if (name == "type1_0to1") return SchemePreset::type1_0to1;
  if (name == "lambda_1to0") return SchemePreset::lambda_1to0;
  if (name == "lambda_1to0_with_M0") return SchemePreset::lambda_1to0_with_M0;
  if (name == "j_half_to_half") return SchemePreset::j_half_to_half;
  if (name == "c2minus_i") return SchemePreset::c2minus_i;
  if (name == "c2minus_ii") return SchemePreset::c2minus_ii;
  if (name == "c2minus_iii") return SchemePreset::c2minus_iii;
  throw std::invalid_argument("unknown scheme preset '" + name + "'");
}

std::vector<std::string> scheme_preset_names() {
  return {"type1_0to1",  "lambda_1to0", "lambda_1to0_with_M0", "j_half_to_half",
          "c2minus_i",   "c2minus_ii",  "c2minus_iii"};
}

LevelScheme build_preset(SchemePreset preset) {
  switch (preset) {
    case SchemePreset::type1_0to1: return build_type1();
    case SchemePreset::lambda_1to0: return build_lambda(false);
    case SchemePreset::lambda_1to0_with_M0: return build_lambda(true);
    case SchemePreset::j_half_to_half: return build_j_half();
    // The three C2- trapping schemes share one level structure; they differ
    // in which transitions the red-detuned lasers drive (a beam-set choice).
    case SchemePreset::c2minus_i:
    case SchemePreset::c2minus_ii:
    case SchemePreset::c2minus_iii: return build_c2minus();
  }
  throw std::invalid_argument("unknown scheme preset");
}

std::vector<std::string> validate(const LevelScheme& s) {
  std::vector<std::string> diags;
  auto add = [&](const std::string& msg) { diags.push_back(msg); };

  for (int i = 0; i < s.n(); ++i) {
    const auto& sub = s.sublevels[i];
    if (!valid_jm(sub.J, sub.M))
      add("sublevel " + std::to_string(i) + " (" + sub.level_id + "): invalid (J, M) = (" +
          sub.J.str() + ", " + sub.M.str() + ")");
  }

  // All sublevels of one level share J, g and energy offset.
  std::map<std::string, int> first_of_level;
  for (int i = 0; i < s.n(); ++i) {
    const auto& sub = s.sublevels[i];
    auto [it, inserted] = first_of_level.try_emplace(sub.level_id, i);
    if (inserted) continue;
    const auto& ref = s.sublevels[it->second];
    if (sub.J != ref.J || sub.g != ref.g || sub.energy_offset != ref.energy_offset ||
        sub.is_upper != ref.is_upper)
      add("level '" + sub.level_id + "': sublevels disagree on J, g, offset or partition");
  }

  for (const auto& link : s.links) {
    if (s.level_indices(link.upper_level).empty())
      add("link '" + link.id + "': upper level '" + link.upper_level +
          "' absent from scheme (decay not closed)");
    if (s.level_indices(link.lower_level).empty())
      add("link '" + link.id + "': lower level '" + link.lower_level +
          "' absent from scheme (decay not closed)");
    if (link.gamma_total <= 0.0) add("link '" + link.id + "': nonpositive Gamma");
    if (link.wavelength <= 0.0) add("link '" + link.id + "': nonpositive wavelength");
    for (const auto& ch : link.channels) {
      if (ch.upper < 0 || ch.upper >= s.n() || ch.lower < 0 || ch.lower >= s.n()) {
        add("link '" + link.id + "': channel references absent sublevel");
        continue;
      }
      if (!s.sublevels[ch.upper].is_upper || s.sublevels[ch.lower].is_upper)
        add("link '" + link.id + "': channel does not go from upper to lower partition");
      if (ch.gamma_spont < 0.0) add("link '" + link.id + "': negative channel rate");
      if (ch.q != (s.sublevels[ch.upper].M.twice() - s.sublevels[ch.lower].M.twice()) / 2)
        add("link '" + link.id + "': channel q inconsistent with sublevel M values");
    }
  }

  // Links sharing an upper level must agree on Gamma, and every upper
  // sublevel must decay with total rate Gamma.
  std::map<std::string, double> gamma_of_upper;
  for (const auto& link : s.links) {
    auto [it, inserted] = gamma_of_upper.try_emplace(link.upper_level, link.gamma_total);
    if (!inserted && it->second != link.gamma_total)
      add("upper level '" + link.upper_level + "': links disagree on Gamma");
  }
  for (int i = 0; i < s.n(); ++i) {
    if (!s.sublevels[i].is_upper) continue;
    auto it = gamma_of_upper.find(s.sublevels[i].level_id);
    if (it == gamma_of_upper.end()) {
      add("upper sublevel " + std::to_string(i) + " (" + s.sublevels[i].level_id +
          ", M=" + s.sublevels[i].M.str() + ") is not reached by any link");
      continue;
    }
    const double out = s.gamma_out(i);
    if (std::abs(out - it->second) > 1e-12 * it->second) {
      std::ostringstream msg;
      msg << "upper sublevel " << i << " (" << s.sublevels[i].level_id
          << ", M=" << s.sublevels[i].M.str() << "): branching sum "
          << out / it->second << " != 1";
      add(msg.str());
    }
  }

  return diags;
}

}  // namespace bimot
