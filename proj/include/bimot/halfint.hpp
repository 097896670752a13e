#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace bimot {

// Angular momentum quantum number stored as twice its value, so that
// J in {0, 1/2, 1, 3/2, ...} and M in {-J, ..., +J} are exact integers.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt integer(int n) { return HalfInt(2 * n); }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }

  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

// True when (j, m) is a valid angular momentum projection pair.
constexpr bool valid_jm(HalfInt j, HalfInt m) {
  if (j.twice() < 0) return false;
  if (std::abs(m.twice()) > j.twice()) return false;
  return (j.twice() - m.twice()) % 2 == 0;  // j and m differ by an integer
}

inline void require_jm(HalfInt j, HalfInt m, const char* who) {
  if (!valid_jm(j, m))
    throw std::domain_error(std::string(who) + ": invalid (j, m) = (" + j.str() +
                            ", " + m.str() + ")");
}

}  // namespace bimot
