#include "bimot/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "bimot/constants.hpp"

namespace bimot {

namespace {

const TransitionChannel* find_channel(const LevelScheme& scheme,
                                      const std::string& link_id, int upper,
                                      int lower) {
  const RadiativeLink* link = scheme.find_link(link_id);
  if (!link) return nullptr;
  for (const auto& ch : link->channels)
    if (ch.upper == upper && ch.lower == lower) return &ch;
  return nullptr;
}

double lorentzian_rate(double prefactor, double delta, double gamma) {
  const double x = 2.0 * delta / gamma;
  return prefactor / (1.0 + x * x);
}

}  // namespace

double beam_detuning(const LaserBeam& beam, const LevelScheme& scheme,
                     int upper, int lower, const Vec3& v, const Vec3& B) {
  const TransitionChannel* ch = find_channel(scheme, beam.target_link, upper, lower);
  if (!ch)
    throw std::invalid_argument("beam_detuning: beam '" + beam.label +
                                "' does not target a link containing the sublevel pair");
  const Sublevel& up = scheme.sublevels[upper];
  const Sublevel& low = scheme.sublevels[lower];
  const double zeeman =
      kBohrMagneton * B.norm() * (up.g * up.M.value() - low.g * low.M.value()) / kHbar;
  return beam.detuning0 - beam.wavenumber * beam.direction.dot(v) + zeeman;
}

double excitation_rate(const LaserBeam& beam, const LevelScheme& scheme,
                       int upper, int lower, const Vec3& v, const Vec3& B) {
  const TransitionChannel* ch = find_channel(scheme, beam.target_link, upper, lower);
  if (!ch)
    throw std::invalid_argument("excitation_rate: beam '" + beam.label +
                                "' does not target a link containing the sublevel pair");
  const RadiativeLink* link = scheme.find_link(beam.target_link);
  const double delta = beam_detuning(beam, scheme, upper, lower, v, B);
  const auto c = polarization_components(beam, quantization_axis(B));
  const double pre = 0.5 * link->gamma_total * beam.saturation * c[ch->q + 1] * ch->strength;
  return lorentzian_rate(pre, delta, link->gamma_total);
}

RateEvaluator::RateEvaluator(LevelScheme scheme, std::vector<LaserBeam> beams,
                             MagneticFieldMap field)
    : scheme_(std::move(scheme)), beams_(std::move(beams)), field_(field) {
  beam_channels_.resize(beams_.size());
  for (size_t L = 0; L < beams_.size(); ++L) {
    const RadiativeLink* link = scheme_.find_link(beams_[L].target_link);
    if (!link)
      throw std::invalid_argument("beam '" + beams_[L].label + "' targets unknown link '" +
                                  beams_[L].target_link + "'");
    for (const auto& ch : link->channels) {
      BoundChannel bc;
      bc.upper = ch.upper;
      bc.lower = ch.lower;
      bc.q = ch.q;
      bc.strength = ch.strength;
      bc.gamma_spont = ch.gamma_spont;
      bc.gamma_link = link->gamma_total;
      bc.prefactor = 0.5 * link->gamma_total * beams_[L].saturation * ch.strength;
      beam_channels_[L].push_back(bc);
    }
  }
}

void RateEvaluator::eval(const Vec3& r, const Vec3& v, double t, RateMatrix& out) const {
  out.resize(scheme_.n(), static_cast<int>(beams_.size()));

  const Vec3 B = field_.field(r);
  const double b_mag = B.norm();
  const Vec3 axis = quantization_axis(B);

  // Helicity basis once per point; each beam then needs three projections.
  const CVec3 e_minus = helicity_basis_vector(axis, -1);
  const CVec3 e_pi = helicity_basis_vector(axis, 0);
  const CVec3 e_plus = helicity_basis_vector(axis, +1);

  for (size_t L = 0; L < beams_.size(); ++L) {
    const LaserBeam& beam = beams_[L];
    if (!beam.active(t)) continue;
    const double doppler = beam.wavenumber * beam.direction.dot(v);
    const double c[3] = {std::norm(e_minus.dot_conj(beam.polarization)),
                         std::norm(e_pi.dot_conj(beam.polarization)),
                         std::norm(e_plus.dot_conj(beam.polarization))};
    for (const auto& ch : beam_channels_[L]) {
      const double cq = c[ch.q + 1];
      if (cq == 0.0 || ch.prefactor == 0.0) continue;
      const Sublevel& up = scheme_.sublevels[ch.upper];
      const Sublevel& low = scheme_.sublevels[ch.lower];
      const double zeeman =
          kBohrMagneton * b_mag * (up.g * up.M.value() - low.g * low.M.value()) / kHbar;
      const double delta = beam.detuning0 - doppler + zeeman;
      out.stim_at(static_cast<int>(L), ch.upper, ch.lower) =
          lorentzian_rate(ch.prefactor * cq, delta, ch.gamma_link);
    }
  }

  for (const auto& link : scheme_.links)
    for (const auto& ch : link.channels)
      out.spont_at(ch.upper, ch.lower) += ch.gamma_spont;
}

RateMatrix RateEvaluator::eval(const Vec3& r, const Vec3& v, double t) const {
  RateMatrix rm;
  eval(r, v, t, rm);
  return rm;
}

double RateEvaluator::rate_bound() const {
  double bound = scheme_.gamma_channel_sum();
  for (size_t L = 0; L < beams_.size(); ++L) {
    double gamma_link = 0.0;
    const RadiativeLink* link = scheme_.find_link(beams_[L].target_link);
    if (link) gamma_link = link->gamma_total;
    bound += 0.5 * gamma_link * beams_[L].saturation;
  }
  return bound;
}

RateMatrix rate_matrix(const LevelScheme& scheme, const std::vector<LaserBeam>& beams,
                       const MagneticFieldMap& field, const Vec3& r, const Vec3& v,
                       double t) {
  return RateEvaluator(scheme, beams, field).eval(r, v, t);
}

}  // namespace bimot
