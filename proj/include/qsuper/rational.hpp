#pragma once

// Exact rationals: machine-word fast path, GMP fallback on overflow.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

namespace qsuper {

namespace detail {

inline unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
  std::uint64_t x = a < 0 ? 0 - static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
  std::uint64_t y = b < 0 ? 0 - static_cast<std::uint64_t>(b) : static_cast<std::uint64_t>(b);
  while (y != 0) {
    std::uint64_t t = x % y;
    x = y;
    y = t;
  }
  return static_cast<std::int64_t>(x);
}

inline bool fits_i64(__int128 v) {
  return v >= static_cast<__int128>(INT64_MIN) + 1 && v <= static_cast<__int128>(INT64_MAX);
}

}  // namespace detail

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : n_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) { set_i128(n, d); }
  explicit Rational(const mpq_class& q) { set_big(q); }

  Rational(const Rational& o) : n_(o.n_), d_(o.d_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      n_ = o.n_;
      d_ = o.d_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  /// Parses "p", "-p" or "p/q".
  static Rational parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(q);
  }

  bool is_zero() const { return !big_ && n_ == 0; }
  bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
  bool is_small() const { return !big_; }
  int sign() const {
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
  }

  bool is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }
  /// Value as a machine integer; throws unless this is an integer that fits.
  std::int64_t to_int64() const {
    if (big_ || d_ != 1) throw std::domain_error("rational is not a machine integer: " + str());
    return n_;
  }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    mpz_set_si(q.get_num_mpz_t(), n_);
    mpz_set_si(q.get_den_mpz_t(), d_);
    return q;
  }

  std::string str() const {
    if (big_) return big_->get_str();
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
  }

  /// Exact square root if this is the square of a rational.
  bool sqrt_exact(Rational& out) const {
    if (sign() < 0) return false;
    mpq_class q = to_mpq();
    if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0)
      return false;
    mpq_class r;
    mpz_sqrt(r.get_num_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(r.get_den_mpz_t(), q.get_den_mpz_t());
    r.canonicalize();
    out = Rational(r);
    return true;
  }

  Rational operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    Rational r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
  }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("rational division by zero");
    if (big_) return Rational(mpq_class(1 / *big_));
    Rational r;
    if (n_ < 0) {
      r.n_ = -d_;
      r.d_ = -n_;
    } else {
      r.n_ = d_;
      r.d_ = n_;
    }
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.d_ == 1 && b.d_ == 1) {
        std::int64_t s;
        if (!__builtin_add_overflow(a.n_, b.n_, &s) && s != INT64_MIN) return Rational(s);
      }
      Rational r;
      r.set_i128(static_cast<__int128>(a.n_) * b.d_ + static_cast<__int128>(b.n_) * a.d_,
                 static_cast<__int128>(a.d_) * b.d_);
      return r;
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.n_ == 0 || b.n_ == 0) return Rational();
      std::int64_t g1 = detail::gcd_i64(a.n_, b.d_);
      std::int64_t g2 = detail::gcd_i64(b.n_, a.d_);
      std::int64_t n, d;
      if (!__builtin_mul_overflow(a.n_ / g1, b.n_ / g2, &n) &&
          !__builtin_mul_overflow(a.d_ / g2, b.d_ / g1, &d) && n != INT64_MIN) {
        Rational r;
        r.n_ = n;
        r.d_ = d;
        return r;
      }
      Rational r;
      r.set_i128(static_cast<__int128>(a.n_ / g1) * (b.n_ / g2),
                 static_cast<__int128>(a.d_ / g2) * (b.d_ / g1));
      return r;
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
  }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // normalized: a big value never fits in a word
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_)
      return static_cast<__int128>(a.n_) * b.d_ < static_cast<__int128>(b.n_) * a.d_;
    return a.to_mpq() < b.to_mpq();
  }

 private:
  void set_i128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational division by zero");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    unsigned __int128 un = n < 0 ? static_cast<unsigned __int128>(-n) : static_cast<unsigned __int128>(n);
    unsigned __int128 g = detail::gcd_u128(un, static_cast<unsigned __int128>(d));
    if (g > 1) {
      n /= static_cast<__int128>(g);
      d /= static_cast<__int128>(g);
    }
    if (n == 0) d = 1;
    if (detail::fits_i64(n) && detail::fits_i64(d)) {
      n_ = static_cast<std::int64_t>(n);
      d_ = static_cast<std::int64_t>(d);
      big_.reset();
      return;
    }
    mpq_class q;
    mpz_class zn = i128_to_mpz(n), zd = i128_to_mpz(d);
    q.get_num() = zn;
    q.get_den() = zd;
    q.canonicalize();
    set_big(q);
  }

  static mpz_class i128_to_mpz(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  }

  void set_big(const mpq_class& q) {
    if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t())) {
      long n = q.get_num().get_si();
      long d = q.get_den().get_si();
      if (n != INT64_MIN && d != INT64_MIN) {
        n_ = n;
        d_ = d;
        big_.reset();
        return;
      }
    }
    big_ = std::make_unique<mpq_class>(q);
    n_ = 0;
    d_ = 1;
  }

  std::int64_t n_ = 0;
  std::int64_t d_ = 1;
  std::unique_ptr<mpq_class> big_;
};

}  // namespace qsuper
