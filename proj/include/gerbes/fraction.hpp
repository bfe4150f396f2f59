#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "gerbes/errors.hpp"

namespace gerbes {

using Int = std::int64_t;

Int gcd64(Int a, Int b);
Int lcm64(Int a, Int b);  // throws Overflow if the lcm does not fit

// Exact element of Q/Z stored as a reduced fraction num/den with
// 0 <= num < den.  All coefficient arithmetic in the library is done with
// these; equality is exact.  Intermediates are computed in 128 bits and any
// reduced value whose denominator would leave the 64-bit range raises
// ErrorKind::Overflow instead of wrapping.
class CircleValue {
 public:
  CircleValue() : num_(0), den_(1) {}
  CircleValue(Int num, Int den);  // reduces modulo 1

  Int numerator() const { return num_; }
  Int denominator() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  CircleValue operator+(const CircleValue& o) const;
  CircleValue operator-(const CircleValue& o) const;
  CircleValue operator-() const;
  CircleValue times(Int k) const;
  CircleValue& operator+=(const CircleValue& o) { return *this = *this + o; }
  CircleValue& operator-=(const CircleValue& o) { return *this = *this - o; }

  bool operator==(const CircleValue& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const CircleValue& o) const { return !(*this == o); }
  bool operator<(const CircleValue& o) const;  // total order for containers

  std::string str() const;                      // "p/q", or "0"
  static CircleValue parse(std::string_view s); // inverse of str(); accepts any integer pair

 private:
  Int num_;
  Int den_;
};

inline CircleValue frac(Int num, Int den) { return CircleValue(num, den); }

}  // namespace gerbes

template <>
struct std::hash<gerbes::CircleValue> {
  std::size_t operator()(const gerbes::CircleValue& v) const noexcept {
    return std::hash<long long>()(v.numerator() * 2654435761LL ^ v.denominator());
  }
};
