#pragma once

// Exact rational numbers.
//
// Values whose numerator and denominator fit in 63 bits are stored inline and
// computed with 128-bit intermediates; anything larger is promoted to a GMP
// mpq_class. The representation is canonical (a value is big only if it does
// not fit inline), so equality is a field comparison.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

namespace aftail {

class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T v) {  // NOLINT(google-explicit-constructor)
    *this = from_i128(static_cast<__int128>(v), 1);
  }
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    *this = from_i128(num, den);
  }
  explicit Rational(const mpq_class& q) { *this = from_mpq(q); }

  [[nodiscard]] bool is_zero() const { return !big_ && num_ == 0; }
  [[nodiscard]] int sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }

  [[nodiscard]] bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

  // Throws if the value is not an integer that fits in 63 bits.
  [[nodiscard]] std::int64_t to_int64() const {
    if (big_ || den_ != 1) throw std::domain_error("Rational: not a small integer");
    return num_;
  }

  [[nodiscard]] mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    set_mpz(q.get_num(), num_);
    set_mpz(q.get_den(), den_);
    return q;
  }

  [[nodiscard]] std::string to_string() const {
    if (big_) {
      return big_->get_num().get_str() + "/" + big_->get_den().get_str();
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) return from_mpq(a.to_mpq() + b.to_mpq());
    if (a.den_ == 1 && b.den_ == 1) {
      return from_i128(static_cast<__int128>(a.num_) + b.num_, 1);
    }
    return from_i128(static_cast<__int128>(a.num_) * b.den_ +
                         static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a) {
    if (a.big_) return from_mpq(-*a.big_);
    Rational r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.big_ || b.big_) return from_mpq(a.to_mpq() * b.to_mpq());
    return from_i128(static_cast<__int128>(a.num_) * b.num_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    if (a.big_ || b.big_) return from_mpq(a.to_mpq() / b.to_mpq());
    return from_i128(static_cast<__int128>(a.num_) * b.den_,
                     static_cast<__int128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) {
      if (!a.big_ || !b.big_) return false;
      return *a.big_ == *b.big_;
    }
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) {
      int c = cmp(a.to_mpq(), b.to_mpq());
      return c < 0 ? std::strong_ordering::less
                   : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

  static unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static void set_mpz(mpz_class& z, __int128 v) {
    bool neg = v < 0;
    unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::uint64_t words[2] = {static_cast<std::uint64_t>(mag), static_cast<std::uint64_t>(mag >> 64)};
    mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
    if (neg) z = -z;
  }

  static Rational from_i128(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    unsigned __int128 mag = num < 0 ? -static_cast<unsigned __int128>(num) : static_cast<unsigned __int128>(num);
    unsigned __int128 g = gcd_u128(mag, static_cast<unsigned __int128>(den));
    if (g > 1) {
      num /= static_cast<__int128>(g);
      den /= static_cast<__int128>(g);
    }
    Rational r;
    if (num >= -kMax && num <= kMax && den <= kMax) {
      r.num_ = static_cast<std::int64_t>(num);
      r.den_ = static_cast<std::int64_t>(den);
      return r;
    }
    mpq_class q;
    set_mpz(q.get_num(), num);
    set_mpz(q.get_den(), den);
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
    return r;
  }

  static Rational from_mpq(mpq_class q) {
    q.canonicalize();
    Rational r;
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && sizeof(long) == sizeof(std::int64_t) &&
        n.get_si() != std::numeric_limits<long>::min()) {
      r.num_ = n.get_si();
      r.den_ = d.get_si();
      return r;
    }
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

}  // namespace aftail
