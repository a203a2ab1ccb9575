// Copyright 2026 The Macrospace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "macrospace/error.hpp"

namespace macrospace {

using Rational = boost::multiprecision::cpp_rational;

/// Exact non-negative scale value. Every threshold test `d <= eps` in the
/// library is decided on these, never on floating point.
class Distance {
 public:
  Distance() = default;
  Distance(std::int64_t value) : value_(value) { check(); }  // NOLINT
  explicit Distance(Rational value) : value_(std::move(value)) { check(); }

  static Distance ratio(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) {
      throw input_error("InvalidRational", "zero denominator");
    }
    return Distance(Rational(numerator, denominator));
  }

  /// Accepts "p", "p/q" and plain decimals ("0.25", "1e3" is rejected).
  static Distance parse(std::string_view text);

  const Rational& value() const noexcept { return value_; }

  bool is_zero() const { return value_ == 0; }
  bool is_integer() const {
    return boost::multiprecision::denominator(value_) == 1;
  }

  /// Lowest terms: "p" for integers, "p/q" otherwise.
  std::string to_string() const {
    if (is_integer()) return boost::multiprecision::numerator(value_).str();
    return boost::multiprecision::numerator(value_).str() + "/" +
           boost::multiprecision::denominator(value_).str();
  }

  double to_double() const { return value_.convert_to<double>(); }

  friend bool operator==(const Distance& a, const Distance& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Distance& a,
                                          const Distance& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Distance operator+(const Distance& a, const Distance& b) {
    return Distance(Rational(a.value_ + b.value_));
  }
  friend Distance operator*(const Distance& a, const Distance& b) {
    return Distance(Rational(a.value_ * b.value_));
  }
  Distance& operator+=(const Distance& other) {
    value_ += other.value_;
    return *this;
  }

  /// max(a - b, 0)
  static Distance saturating_sub(const Distance& a, const Distance& b) {
    if (b.value_ >= a.value_) return Distance();
    return Distance(Rational(a.value_ - b.value_));
  }

  friend std::ostream& operator<<(std::ostream& os, const Distance& d) {
    return os << d.to_string();
  }

 private:
  void check() const {
    if (value_ < 0) {
      throw input_error("NegativeDistance",
                        "distance values must be non-negative",
                        {{"value", value_.str()}});
    }
  }

  Rational value_{0};
};

namespace detail {

// cpp_int reads a leading zero as an octal prefix, so strip it.
inline boost::multiprecision::cpp_int decimal_int(std::string_view s) {
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  return boost::multiprecision::cpp_int(std::string(s));
}

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace detail

inline Distance Distance::parse(std::string_view text) {
  using boost::multiprecision::cpp_int;
  auto fail = [&] {
    return input_error("InvalidRational", "cannot parse rational value",
                       {{"text", std::string(text)}});
  };
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  if (!body.empty() && body.front() == '-') {
    throw input_error("NegativeDistance",
                      "distance values must be non-negative",
                      {{"value", std::string(text)}});
  }
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) throw fail();
    cpp_int q = detail::decimal_int(den);
    if (q == 0) throw fail();
    return Distance(Rational(detail::decimal_int(num), q));
  }
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    auto mantissa = body.substr(0, e);
    auto exponent = body.substr(e + 1);
    bool negative = false;
    if (!exponent.empty() && (exponent.front() == '+' || exponent.front() == '-')) {
      negative = exponent.front() == '-';
      exponent.remove_prefix(1);
    }
    if (mantissa.empty() || !detail::all_digits(exponent) || exponent.size() > 4 ||
        mantissa.find('/') != std::string_view::npos) {
      throw fail();
    }
    cpp_int power = 1;
    for (int i = std::stoi(std::string(exponent)); i > 0; --i) power *= 10;
    Rational m = parse(mantissa).value();
    return Distance(negative ? Rational(m / power) : Rational(m * power));
  }
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!detail::all_digits(whole) || (!frac.empty() && !detail::all_digits(frac))) {
      throw fail();
    }
    cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    cpp_int digits =
        detail::decimal_int(std::string(whole) + std::string(frac));
    return Distance(Rational(digits, scale));
  }
  if (!detail::all_digits(body)) throw fail();
  return Distance(Rational(detail::decimal_int(body)));
}

}  // namespace macrospace

template <>
struct std::hash<macrospace::Distance> {
  std::size_t operator()(const macrospace::Distance& d) const {
    return std::hash<std::string>{}(d.to_string());
  }
};
