#include "gerbes/fraction.hpp"

#include <charconv>
#include <limits>

namespace gerbes {

namespace {
using I128 = __int128;

Int checked_narrow(I128 v, const char* what) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    fail(ErrorKind::Overflow, std::string("64-bit overflow in ") + what);
  return static_cast<Int>(v);
}
}  // namespace

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::OrderLimitExceeded: return "OrderLimitExceeded";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::NotCentral: return "NotCentral";
    case ErrorKind::NotSubgroup: return "NotSubgroup";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::NoSolutionAtLevel: return "NoSolutionAtLevel";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::InvalidAction: return "InvalidAction";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::RestrictionNotCharacter: return "RestrictionNotCharacter";
    case ErrorKind::EtaSolveFailed: return "EtaSolveFailed";
    case ErrorKind::CompatibilityFailed: return "CompatibilityFailed";
    case ErrorKind::ComparisonNotIso: return "ComparisonNotIso";
    case ErrorKind::ClassMismatch: return "ClassMismatch";
    case ErrorKind::NotNondegenerate: return "NotNondegenerate";
    case ErrorKind::LevelTooCoarse: return "LevelTooCoarse";
    case ErrorKind::InternalVerificationFailed: return "InternalVerificationFailed";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

Int gcd64(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int lcm64(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  Int g = gcd64(a, b);
  I128 l = (I128)(a / g) * b;
  if (l < 0) l = -l;
  return checked_narrow(l, "lcm");
}

CircleValue::CircleValue(Int num, Int den) {
  if (den == 0) fail(ErrorKind::InvalidInput, "zero denominator");
  if (den < 0) {
    den = -den;
    num = -num;
  }
  num %= den;
  if (num < 0) num += den;
  Int g = gcd64(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = (num == 0) ? 1 : den;
}

CircleValue CircleValue::operator+(const CircleValue& o) const {
  if (num_ == 0) return o;
  if (o.num_ == 0) return *this;
  if (den_ == o.den_) {
    Int n = num_ + o.num_;
    if (n >= den_) n -= den_;
    return CircleValue(n, den_);
  }
  Int g = gcd64(den_, o.den_);
  I128 l = (I128)(den_ / g) * o.den_;
  I128 n = (I128)num_ * (o.den_ / g) + (I128)o.num_ * (den_ / g);
  n %= l;
  if (n < 0) n += l;
  I128 gg = n;
  {  // reduce in 128 bits before narrowing
    I128 a = gg < 0 ? -gg : gg, b = l;
    while (b) {
      I128 t = a % b;
      a = b;
      b = t;
    }
    gg = a == 0 ? 1 : a;
  }
  return CircleValue(checked_narrow(n / gg, "fraction add"), checked_narrow(l / gg, "fraction add"));
}

CircleValue CircleValue::operator-() const {
  if (num_ == 0) return CircleValue();
  return CircleValue(den_ - num_, den_);
}

CircleValue CircleValue::operator-(const CircleValue& o) const { return *this + (-o); }

CircleValue CircleValue::times(Int k) const {
  if (num_ == 0 || k == 0) return CircleValue();
  if (k == 1) return *this;
  I128 n = (I128)num_ * k;
  I128 d = den_;
  n %= d;
  if (n < 0) n += d;
  return CircleValue(checked_narrow(n, "fraction scale"), den_);
}

bool CircleValue::operator<(const CircleValue& o) const {
  I128 lhs = (I128)num_ * o.den_;
  I128 rhs = (I128)o.num_ * den_;
  return lhs < rhs;
}

std::string CircleValue::str() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

CircleValue CircleValue::parse(std::string_view s) {
  auto bad = [&] { fail(ErrorKind::InvalidInput, "bad circle value '" + std::string(s) + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  Int num = 0, den = 1;
  auto parse_int = [&](std::string_view t, Int& out) {
    auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) bad();
  };
  if (slash == std::string_view::npos) {
    parse_int(s, num);
    return CircleValue(num, 1);
  }
  parse_int(s.substr(0, slash), num);
  parse_int(s.substr(slash + 1), den);
  return CircleValue(num, den);
}

}  // namespace gerbes
