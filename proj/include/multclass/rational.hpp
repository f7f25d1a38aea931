#pragma once

// Exact rationals over 128-bit integers with overflow detection. Every
// operation either returns the exact reduced result or throws
// std::overflow_error; there is no silent wraparound.

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace multclass {

#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wpedantic"
using Int128 = __int128;
using UInt128 = unsigned __int128;
#pragma GCC diagnostic pop

namespace checked {

[[noreturn]] inline void overflow(const char* what) {
  throw std::overflow_error(std::string("multclass: integer overflow in ") + what);
}

template <typename T>
T mul(T a, T b) {
  T r;
  if (__builtin_mul_overflow(a, b, &r)) overflow("multiplication");
  return r;
}

template <typename T>
T add(T a, T b) {
  T r;
  if (__builtin_add_overflow(a, b, &r)) overflow("addition");
  return r;
}

template <typename T>
T sub(T a, T b) {
  T r;
  if (__builtin_sub_overflow(a, b, &r)) overflow("subtraction");
  return r;
}

/// base^exp, throwing on overflow.
template <typename T>
T pow(T base, unsigned exp) {
  T r = 1;
  for (unsigned i = 0; i < exp; ++i) r = mul(r, base);
  return r;
}

}  // namespace checked

inline Int128 abs128(Int128 v) {
  if (v == std::numeric_limits<Int128>::min()) checked::overflow("negation");
  return v < 0 ? -v : v;
}

inline Int128 gcd128(Int128 a, Int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    Int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string to_string(Int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  // Work in the negative range so INT128_MIN prints correctly.
  if (!neg) v = -v;
  std::string digits;
  while (v != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(v % 10)));
    v /= 10;
  }
  if (neg) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  static Rational from_int128(Int128 v) {
    Rational r;
    r.num_ = v;
    return r;
  }

  Rational(Int128 num, Int128 den) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("multclass: zero denominator");
    normalize();
  }

  [[nodiscard]] Int128 num() const { return num_; }
  [[nodiscard]] Int128 den() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_ == 0; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  /// Numerator as int64; throws if not an integer or out of range.
  [[nodiscard]] std::int64_t to_int64() const {
    if (den_ != 1) throw std::domain_error("multclass: " + str() + " is not an integer");
    if (num_ > std::numeric_limits<std::int64_t>::max() ||
        num_ < std::numeric_limits<std::int64_t>::min()) {
      checked::overflow("narrowing to int64");
    }
    return static_cast<std::int64_t>(num_);
  }

  [[nodiscard]] double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  [[nodiscard]] std::string str() const {
    if (den_ == 1) return to_string(num_);
    return to_string(num_) + "/" + to_string(den_);
  }

  /// Parses "p", "-p" or "p/q".
  static Rational parse(std::string_view text) {
    auto parse_int = [&](std::string_view s) -> Int128 {
      if (s.empty()) throw std::invalid_argument("multclass: bad rational '" + std::string(text) + "'");
      bool neg = false;
      std::size_t i = 0;
      if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
      }
      if (i == s.size()) throw std::invalid_argument("multclass: bad rational '" + std::string(text) + "'");
      Int128 v = 0;
      for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') {
          throw std::invalid_argument("multclass: bad rational '" + std::string(text) + "'");
        }
        v = checked::add(checked::mul(v, Int128{10}), Int128{s[i] - '0'});
      }
      return neg ? -v : v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return from_int128(parse_int(text));
    return {parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};
  }

  Rational operator-() const {
    Rational r = *this;
    r.num_ = checked::sub(Int128{0}, num_);
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) return from_int128(checked::add(a.num_, b.num_));
    const Int128 g = gcd128(a.den_, b.den_);
    const Int128 da = a.den_ / g;
    const Int128 db = b.den_ / g;
    return {checked::add(checked::mul(a.num_, db), checked::mul(b.num_, da)),
            checked::mul(a.den_, db)};
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) return from_int128(checked::mul(a.num_, b.num_));
    // Cross-reduce first to keep intermediates small.
    const Int128 g1 = gcd128(a.num_, b.den_);
    const Int128 g2 = gcd128(b.num_, a.den_);
    Rational r;
    r.num_ = checked::mul(a.num_ / (g1 == 0 ? 1 : g1), b.num_ / (g2 == 0 ? 1 : g2));
    r.den_ = checked::mul(a.den_ / (g2 == 0 ? 1 : g2), b.den_ / (g1 == 0 ? 1 : g1));
    r.normalize();
    return r;
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("multclass: division by zero");
    Rational inv;
    inv.num_ = b.den_;
    inv.den_ = b.num_;
    inv.normalize();
    return a * inv;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const Int128 lhs = checked::mul(a.num_, b.den_);
    const Int128 rhs = checked::mul(b.num_, a.den_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = checked::sub(Int128{0}, num_);
      den_ = checked::sub(Int128{0}, den_);
    }
    const Int128 g = gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  Int128 num_ = 0;
  Int128 den_ = 1;
};

}  // namespace multclass

template <>
struct std::hash<multclass::Rational> {
  std::size_t operator()(const multclass::Rational& r) const noexcept {
    auto h = [](multclass::Int128 v) {
      const auto lo = static_cast<std::uint64_t>(v);
      const auto hi = static_cast<std::uint64_t>(static_cast<multclass::UInt128>(v) >> 64);
      return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
    };
    return h(r.num()) ^ (h(r.den()) << 1);
  }
};
