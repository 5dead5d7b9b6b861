#pragma once

#include <string>

#include "aftail/rational.hpp"

namespace aftail {

// Gaussian rational re + im*i. Closed under conjugation, so it carries the
// *-structure of every algebra in this library exactly.
struct Scalar {
  Rational re;
  Rational im;

  Scalar() = default;
  template <std::integral T>
  Scalar(T v) : re(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Scalar i() { return {Rational(0), Rational(1)}; }

  [[nodiscard]] bool is_zero() const { return re.is_zero() && im.is_zero(); }
  [[nodiscard]] bool is_real() const { return im.is_zero(); }
  [[nodiscard]] Scalar conj() const { return {re, -im}; }
  [[nodiscard]] Rational norm_sq() const { return re * re + im * im; }

  // a/b+c/d*i, with c carrying its own sign.
  [[nodiscard]] std::string to_string() const { return re.to_string() + "+" + im.to_string() + "*i"; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return {a.re + b.re, a.im + b.im}; }
  friend Scalar operator-(const Scalar& a) { return {-a.re, -a.im}; }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return {a.re - b.re, a.im - b.im}; }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.im.is_zero() && b.im.is_zero()) return Scalar(a.re * b.re);
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.im.is_zero()) return {a.re / b.re, a.im / b.re};
    Rational n = b.norm_sq();
    Scalar p = a * b.conj();
    return {p.re / n, p.im / n};
  }
  Scalar& operator+=(const Scalar& o) {
    re += o.re;
    if (!o.im.is_zero()) im += o.im;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += -o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) = default;
};

}  // namespace aftail
