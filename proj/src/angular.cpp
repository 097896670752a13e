#include "bimot/angular.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace bimot {
namespace {

using int128 = __int128;

constexpr int kMaxFactorial = 32;

constexpr std::array<int128, kMaxFactorial + 1> make_factorials() {
  std::array<int128, kMaxFactorial + 1> f{};
  f[0] = 1;
  for (int k = 1; k <= kMaxFactorial; ++k) f[k] = f[k - 1] * k;
  return f;
}

constexpr auto kFactorial = make_factorials();

int128 gcd128(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Exact rational on 128-bit integers; enough headroom for the factorial
// products that appear within the J range guarded below.
struct Rational {
  int128 num = 0;
  int128 den = 1;

  void reduce() {
    if (den < 0) { num = -num; den = -den; }
    int128 g = gcd128(num, den);
    if (g > 1) { num /= g; den /= g; }
  }
  Rational& operator*=(Rational o) {
    Rational a{num, o.den}, b{o.num, den};
    a.reduce();
    b.reduce();
    num = a.num * b.num;
    den = a.den * b.den;
    reduce();
    return *this;
  }
  Rational& operator+=(const Rational& o) {
    int128 g = gcd128(den, o.den);
    int128 scale = o.den / g;
    num = num * scale + o.num * (den / g);
    den = den * scale;
    reduce();
    return *this;
  }
  double to_double() const {
    return static_cast<double>(static_cast<long double>(num) /
                               static_cast<long double>(den));
  }
};

struct SignedSquare {
  int sign = 0;  // sign of the coefficient itself: -1, 0, +1
  Rational square{0, 1};
};

// Racah's closed-form sum, evaluated exactly. Selection-rule zeros return
// sign 0; invalid (j, m) pairs throw from require_jm.
SignedSquare cg_signed_square(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                              HalfInt J, HalfInt M) {
  require_jm(j1, m1, "clebsch_gordan");
  require_jm(j2, m2, "clebsch_gordan");
  require_jm(J, M, "clebsch_gordan");

  const int a = j1.twice(), b = j2.twice(), c = J.twice();
  const int al = m1.twice(), be = m2.twice(), ga = M.twice();

  if (al + be != ga) return {};
  if (c < std::abs(a - b) || c > a + b) return {};
  if ((a + b + c) % 2 != 0) return {};  // J not in the decomposition of j1 x j2

  if ((a + b + c) / 2 + 1 > kMaxFactorial)
    throw std::domain_error(
        "clebsch_gordan: angular momenta too large for exact arithmetic");

  // Integer "factorial argument" units from here on.
  const int abc = (a + b - c) / 2, acb = (a - b + c) / 2, bca = (-a + b + c) / 2;
  const int j1mm = (a - al) / 2, j1pm = (a + al) / 2;
  const int j2mm = (b - be) / 2, j2pm = (b + be) / 2;
  const int JpM = (c + ga) / 2, JmM = (c - ga) / 2;

  // Prefactor (2J+1) * Delta^2(j1 j2 J) * (J+M)!(J-M)!(j1-m1)!(j1+m1)!(j2-m2)!(j2+m2)!
  Rational pref{kFactorial[abc], kFactorial[(a + b + c) / 2 + 1]};
  pref.reduce();
  pref *= Rational{kFactorial[acb], 1};
  pref *= Rational{kFactorial[bca], 1};
  pref *= Rational{static_cast<int128>(c) + 1, 1};
  pref *= Rational{kFactorial[JpM], 1};
  pref *= Rational{kFactorial[JmM], 1};
  pref *= Rational{kFactorial[j1mm], 1};
  pref *= Rational{kFactorial[j1pm], 1};
  pref *= Rational{kFactorial[j2mm], 1};
  pref *= Rational{kFactorial[j2pm], 1};

  // Alternating sum over k.
  const int k_min = std::max(0, std::max((b - c - al) / 2, (a + be - c) / 2));
  const int k_max = std::min(abc, std::min(j1mm, j2pm));

  Rational sum{0, 1};
  for (int k = k_min; k <= k_max; ++k) {
    int128 den = kFactorial[k];
    den *= kFactorial[abc - k];
    den *= kFactorial[j1mm - k];
    Rational term{(k % 2 == 0) ? int128{1} : int128{-1}, den};
    int128 den2 = kFactorial[j2pm - k];
    den2 *= kFactorial[(c - b + al) / 2 + k];
    den2 *= kFactorial[(c - a - be) / 2 + k];
    term *= Rational{1, den2};
    sum += term;
  }

  if (sum.num == 0) return {};  // accidental zero of the sum

  SignedSquare out;
  out.sign = sum.num > 0 ? 1 : -1;
  Rational sq = sum;
  sq *= sum;
  sq *= pref;
  out.square = sq;
  return out;
}

}  // namespace

double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                      HalfInt J, HalfInt M) {
  SignedSquare s = cg_signed_square(j1, m1, j2, m2, J, M);
  if (s.sign == 0) return 0.0;
  return s.sign * std::sqrt(s.square.to_double());
}

double clebsch_gordan_squared(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                              HalfInt J, HalfInt M) {
  return cg_signed_square(j1, m1, j2, m2, J, M).square.to_double();
}

double line_strength(HalfInt j_low, HalfInt m_low, int q,
                     HalfInt j_up, HalfInt m_up) {
  if (q < -1 || q > 1)
    throw std::domain_error("line_strength: polarization index q must be -1, 0 or +1");
  require_jm(j_low, m_low, "line_strength");
  require_jm(j_up, m_up, "line_strength");
  if (m_up.twice() != m_low.twice() + 2 * q) return 0.0;
  return clebsch_gordan_squared(j_low, m_low, HalfInt::integer(1),
                                HalfInt::integer(q), j_up, m_up);
}

}  // namespace bimot
