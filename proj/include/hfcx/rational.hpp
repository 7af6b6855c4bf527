#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace hfcx {

// Exact rational number with a positive, reduced denominator. Used for
// Maslov gradings, which are rational in general.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator*(std::int64_t k) const;
  Rational operator/(std::int64_t k) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  bool operator==(const Rational& o) const = default;
  std::strong_ordering operator<=>(const Rational& o) const;

  std::string to_string() const;
  // Accepts "a", "-a", "a/b".
  static Rational parse(std::string_view text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace hfcx
