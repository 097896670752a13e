#pragma once

// Test-only reference implementations, independent of the library's
// computational paths.

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "bimot/halfint.hpp"
#include "bimot/vec3.hpp"

namespace oracle {

// Clebsch-Gordan coefficients by explicit ladder-operator construction:
// start from the stretched state |J=j1+j2, M=J>, apply J- to walk down each
// ladder, and obtain each lower-J top state by Gram-Schmidt in the fixed-M
// subspace with the Condon-Shortley sign (coefficient of maximal m1
// positive). Entirely numeric; no factorial formula involved.
class CgTable {
 public:
  CgTable(bimot::HalfInt j1, bimot::HalfInt j2) : j1_(j1), j2_(j2) {
    n1_ = j1.twice() + 1;
    n2_ = j2.twice() + 1;
    build();
  }

  // <j1 m1; j2 m2 | J M>
  double coefficient(bimot::HalfInt m1, bimot::HalfInt m2, bimot::HalfInt J,
                     bimot::HalfInt M) const {
    auto it = states_.find(key(J, M));
    if (it == states_.end()) return 0.0;
    if (m1.twice() + m2.twice() != M.twice()) return 0.0;
    const int i1 = (j1_.twice() - m1.twice()) / 2;
    const int i2 = (j2_.twice() - m2.twice()) / 2;
    if (i1 < 0 || i1 >= n1_ || i2 < 0 || i2 >= n2_) return 0.0;
    return it->second[i1 * n2_ + i2];
  }

  std::vector<std::pair<int, int>> coupled_jm_twice() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [k, v] : states_) out.push_back(k);
    return out;
  }

 private:
  using Key = std::pair<int, int>;  // (2J, 2M)
  static Key key(bimot::HalfInt J, bimot::HalfInt M) { return {J.twice(), M.twice()}; }

  static double lower_coeff(bimot::HalfInt j, bimot::HalfInt m) {
    // J-|j m> = sqrt(j(j+1) - m(m-1)) |j, m-1>
    const double jj = j.value(), mm = m.value();
    return std::sqrt(jj * (jj + 1.0) - mm * (mm - 1.0));
  }

  std::vector<double> apply_lowering(const std::vector<double>& state) const {
    std::vector<double> out(state.size(), 0.0);
    for (int i1 = 0; i1 < n1_; ++i1)
      for (int i2 = 0; i2 < n2_; ++i2) {
        const double c = state[i1 * n2_ + i2];
        if (c == 0.0) continue;
        const auto m1 = bimot::HalfInt::from_twice(j1_.twice() - 2 * i1);
        const auto m2 = bimot::HalfInt::from_twice(j2_.twice() - 2 * i2);
        if (i1 + 1 < n1_) out[(i1 + 1) * n2_ + i2] += c * lower_coeff(j1_, m1);
        if (i2 + 1 < n2_) out[i1 * n2_ + (i2 + 1)] += c * lower_coeff(j2_, m2);
      }
    return out;
  }

  void build() {
    for (int tJ = j1_.twice() + j2_.twice(); tJ >= std::abs(j1_.twice() - j2_.twice());
         tJ -= 2) {
      // Top of the ladder: |J, M=J>.
      std::vector<double> top(n1_ * n2_, 0.0);
      if (tJ == j1_.twice() + j2_.twice()) {
        top[0] = 1.0;  // stretched product state
      } else {
        // Orthogonal complement in the M = J subspace, CS sign.
        std::vector<std::vector<double>> higher;
        for (int tJh = tJ + 2; tJh <= j1_.twice() + j2_.twice(); tJh += 2)
          higher.push_back(states_.at({tJh, tJ}));
        // Seed with a basis vector of the subspace, orthogonalize.
        for (int i1 = 0; i1 < n1_ && norm(top) < 1e-8; ++i1) {
          const int tm2 = tJ - (j1_.twice() - 2 * i1);
          if (std::abs(tm2) > j2_.twice()) continue;
          const int i2 = (j2_.twice() - tm2) / 2;
          std::vector<double> candidate(n1_ * n2_, 0.0);
          candidate[i1 * n2_ + i2] = 1.0;
          for (const auto& h : higher) {
            const double overlap = dot(candidate, h);
            for (size_t k = 0; k < candidate.size(); ++k) candidate[k] -= overlap * h[k];
          }
          top = candidate;
        }
        const double n = norm(top);
        if (n < 1e-10) throw std::runtime_error("CgTable: degenerate subspace");
        for (auto& c : top) c /= n;
        // CS: coefficient with the largest m1 must be positive.
        for (int i1 = 0; i1 < n1_; ++i1) {
          bool found = false;
          for (int i2 = 0; i2 < n2_; ++i2)
            if (std::abs(top[i1 * n2_ + i2]) > 1e-10) {
              if (top[i1 * n2_ + i2] < 0.0)
                for (auto& c : top) c = -c;
              found = true;
              break;
            }
          if (found) break;
        }
      }
      states_[{tJ, tJ}] = top;

      // Walk the ladder down.
      std::vector<double> current = top;
      for (int tM = tJ - 2; tM >= -tJ; tM -= 2) {
        const auto J = bimot::HalfInt::from_twice(tJ);
        const auto M_above = bimot::HalfInt::from_twice(tM + 2);
        std::vector<double> next = apply_lowering(current);
        const double c = lower_coeff(J, M_above);
        for (auto& x : next) x /= c;
        states_[{tJ, tM}] = next;
        current = next;
      }
    }
  }

  static double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }
  static double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

  bimot::HalfInt j1_, j2_;
  int n1_ = 0, n2_ = 0;
  std::map<Key, std::vector<double>> states_;
};

// Reduced Wigner d^1 matrix, rows/cols ordered m = +1, 0, -1.
inline std::array<std::array<double, 3>, 3> wigner_d1(double beta) {
  const double c = std::cos(beta), s = std::sin(beta);
  const double r2 = std::sqrt(2.0);
  return {{{0.5 * (1.0 + c), -s / r2, 0.5 * (1.0 - c)},
           {s / r2, c, -s / r2},
           {0.5 * (1.0 - c), s / r2, 0.5 * (1.0 + c)}}};
}

}  // namespace oracle
