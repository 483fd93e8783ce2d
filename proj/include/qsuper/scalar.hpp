#pragma once

// Exact scalars: elements of a multi-quadratic tower Q(i)[s_1,...,s_k] with
// s_j^2 = d_j and d_j taken from the field built before s_j.
//
// An element is stored as a sparse sum  sum_S c_S * prod_{j in S} s_j  with
// c_S in Q(i).  Because no s_j lies in the field below it, these monomials are
// linearly independent and the representation is canonical.
//
// The tower a scalar refers to is the one active on the current thread
// (see TowerScope).  Mixing scalars that carry generators from different towers
// is a contract violation; scalars in Q(i) are valid in every tower.

#include "qsuper/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsuper {

/// Gaussian rational a + b*i.
struct Gauss {
  Rational re;
  Rational im;

  Gauss() = default;
  Gauss(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Gauss(std::int64_t r) : re(r) {}         // NOLINT(google-explicit-constructor)
  Gauss(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  friend Gauss operator+(const Gauss& a, const Gauss& b) { return {a.re + b.re, a.im + b.im}; }
  friend Gauss operator-(const Gauss& a, const Gauss& b) { return {a.re - b.re, a.im - b.im}; }
  Gauss operator-() const { return {-re, -im}; }
  friend Gauss operator*(const Gauss& a, const Gauss& b) {
    if (a.im.is_zero() && b.im.is_zero()) return {a.re * b.re, Rational()};
    if (a.im.is_zero()) return {a.re * b.re, a.re * b.im};
    if (b.im.is_zero()) return {a.re * b.re, a.im * b.re};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  Gauss inverse() const {
    if (im.is_zero()) return {re.inverse(), Rational()};
    Rational n = re * re + im * im;
    return {re / n, -im / n};
  }
  friend Gauss operator/(const Gauss& a, const Gauss& b) { return a * b.inverse(); }
  friend bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Gauss& a, const Gauss& b) { return !(a == b); }

  std::string str() const {
    if (im.is_zero()) return re.str();
    std::string ims = im.is_one() ? "i" : (im == Rational(-1) ? "-i" : im.str() + "*i");
    if (re.is_zero()) return ims;
    return re.str() + (im.sign() > 0 ? "+" : "") + ims;
  }

  /// Parses "p/q", "a+b*i", "a-bi", "i", "-3/2*i".
  static Gauss parse(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.empty()) throw std::invalid_argument("empty scalar literal");
    if (s.back() != 'i') return Gauss(Rational::parse(s));
    std::string body = s.substr(0, s.size() - 1);
    if (!body.empty() && body.back() == '*') body.pop_back();
    // split at the last sign that is not the leading one
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e') {
        split = k;
        break;
      }
    }
    std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
    std::string im_part = split == std::string::npos ? body : body.substr(split);
    Rational im;
    if (im_part.empty() || im_part == "+") im = Rational(1);
    else if (im_part == "-") im = Rational(-1);
    else im = Rational::parse(im_part[0] == '+' ? im_part.substr(1) : im_part);
    Rational re = re_part.empty() ? Rational() : Rational::parse(re_part);
    return {re, im};
  }

  /// Square root inside Q(i) when it exists.  For a positive rational the
  /// positive root is returned, for a negative one +i times it, otherwise the
  /// root with positive real part.
  std::optional<Gauss> sqrt_exact() const {
    if (is_zero()) return Gauss();
    if (im.is_zero()) {
      Rational r;
      if (re.sign() > 0) {
        if (re.sqrt_exact(r)) return Gauss(r);
        return std::nullopt;
      }
      if ((-re).sqrt_exact(r)) return Gauss(Rational(), r);
      return std::nullopt;
    }
    Rational n;
    if (!(re * re + im * im).sqrt_exact(n)) return std::nullopt;
    Rational u;
    if (!((re + n) / Rational(2)).sqrt_exact(u) || u.is_zero()) return std::nullopt;
    return Gauss(u, im / (Rational(2) * u));
  }
};

class Scalar;

/// Radicands of the adjoined square roots, append-only.
struct Tower {
  std::vector<Scalar> radicands;
  std::map<std::uint32_t, Scalar> radicand_products;  // cache: prod_{j in S} d_j

  std::size_t size() const { return radicands.size(); }
};

namespace detail {
inline Tower& default_tower() {
  static Tower t;
  return t;
}
inline Tower*& current_tower_ptr() {
  thread_local Tower* t = nullptr;
  return t;
}
}  // namespace detail

inline Tower& current_tower() {
  Tower* t = detail::current_tower_ptr();
  return t ? *t : detail::default_tower();
}

/// Installs a fresh tower for the current thread for the lifetime of the scope.
class TowerScope {
 public:
  TowerScope() : tower_(std::make_unique<Tower>()), previous_(detail::current_tower_ptr()) {
    detail::current_tower_ptr() = tower_.get();
  }
  ~TowerScope() { detail::current_tower_ptr() = previous_; }
  TowerScope(const TowerScope&) = delete;
  TowerScope& operator=(const TowerScope&) = delete;

  Tower& tower() { return *tower_; }

 private:
  std::unique_ptr<Tower> tower_;
  Tower* previous_;
};

class Scalar {
 public:
  using Term = std::pair<std::uint32_t, Gauss>;

  Scalar() = default;
  Scalar(std::int64_t v) : c0_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational v) : c0_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(Gauss g) : c0_(std::move(g)) {}     // NOLINT(google-explicit-constructor)
  Scalar(std::int64_t n, std::int64_t d) : c0_(Rational(n, d)) {}

  Scalar(const Scalar& o) : c0_(o.c0_) {
    if (o.ext_) ext_ = std::make_unique<std::vector<Term>>(*o.ext_);
  }
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(const Scalar& o) {
    if (this != &o) {
      c0_ = o.c0_;
      ext_ = o.ext_ ? std::make_unique<std::vector<Term>>(*o.ext_) : nullptr;
    }
    return *this;
  }
  Scalar& operator=(Scalar&&) noexcept = default;

  static Scalar i() { return Scalar(Gauss(Rational(), Rational(1))); }
  /// The j-th adjoined generator (0-based).
  static Scalar generator(std::size_t j) {
    Scalar s;
    s.ext_ = std::make_unique<std::vector<Term>>();
    s.ext_->emplace_back(std::uint32_t{1} << j, Gauss(1));
    return s;
  }
  static Scalar parse(const std::string& s) { return Scalar(Gauss::parse(s)); }

  bool is_zero() const { return !ext_ && c0_.is_zero(); }
  bool is_one() const { return !ext_ && c0_.im.is_zero() && c0_.re.is_one(); }
  bool in_base_field() const { return !ext_; }
  const Gauss& base_coefficient() const { return c0_; }
  /// Highest generator index in use, or -1.
  int top_generator() const {
    if (!ext_) return -1;
    std::uint32_t all = 0;
    for (const auto& t : *ext_) all |= t.first;
    return 31 - __builtin_clz(all);
  }

  std::vector<Term> terms() const {
    std::vector<Term> out;
    if (!c0_.is_zero()) out.emplace_back(0, c0_);
    if (ext_)
      for (const auto& t : *ext_) out.push_back(t);
    return out;
  }

  static Scalar from_terms(std::vector<Term> ts) {
    std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    Scalar s;
    std::vector<Term> ext;
    for (std::size_t k = 0; k < ts.size();) {
      std::uint32_t m = ts[k].first;
      Gauss acc = ts[k].second;
      std::size_t l = k + 1;
      for (; l < ts.size() && ts[l].first == m; ++l) acc = acc + ts[l].second;
      k = l;
      if (acc.is_zero()) continue;
      if (m == 0) s.c0_ = acc;
      else ext.emplace_back(m, std::move(acc));
    }
    if (!ext.empty()) s.ext_ = std::make_unique<std::vector<Term>>(std::move(ext));
    return s;
  }

  Scalar operator-() const {
    Scalar r;
    r.c0_ = -c0_;
    if (ext_) {
      r.ext_ = std::make_unique<std::vector<Term>>(*ext_);
      for (auto& t : *r.ext_) t.second = -t.second;
    }
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (!a.ext_ && !b.ext_) return Scalar(a.c0_ + b.c0_);
    auto ta = a.terms();
    auto tb = b.terms();
    ta.insert(ta.end(), tb.begin(), tb.end());
    return from_terms(std::move(ta));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (!a.ext_ && !b.ext_) return Scalar(a.c0_ - b.c0_);
    return a + (-b);
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (!a.ext_ && !b.ext_) return Scalar(a.c0_ * b.c0_);
    if (a.is_zero() || b.is_zero()) return Scalar();
    std::vector<Term> plain;
    Scalar reduced;
    for (const auto& x : a.terms()) {
      for (const auto& y : b.terms()) {
        Gauss c = x.second * y.second;
        std::uint32_t common = x.first & y.first;
        std::uint32_t m = x.first ^ y.first;
        if (common == 0) {
          plain.emplace_back(m, std::move(c));
        } else {
          // s^x s^y = (prod_{j in common} d_j) * s^m
          Scalar f = radicand_product(common) * Scalar(std::move(c));
          reduced = reduced + f.times_monomial(m);
        }
      }
    }
    return from_terms(std::move(plain)) + reduced;
  }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("scalar division by zero");
    if (!ext_) return Scalar(c0_.inverse());
    int k = top_generator();
    auto [a, b] = split(static_cast<std::uint32_t>(k));
    const Scalar& d = current_tower().radicands.at(static_cast<std::size_t>(k));
    Scalar norm = a * a - b * b * d;
    Scalar conj = a - b * generator(static_cast<std::size_t>(k));
    return conj * norm.inverse();
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (!a.ext_ && !b.ext_) return Scalar(a.c0_ / b.c0_);
    return a * b.inverse();
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.c0_ != b.c0_) return false;
    if (!a.ext_ || !b.ext_) return !a.ext_ && !b.ext_;
    if (a.ext_->size() != b.ext_->size()) return false;
    for (std::size_t k = 0; k < a.ext_->size(); ++k)
      if ((*a.ext_)[k].first != (*b.ext_)[k].first || (*a.ext_)[k].second != (*b.ext_)[k].second)
        return false;
    return true;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Exact text form: "a+b*i" in Q(i), otherwise a sum of "(c)*s1*s3" terms.
  std::string str() const {
    if (!ext_) return c0_.str();
    std::string out;
    for (const auto& [m, c] : terms()) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")";
      for (int j = 0; j < 32; ++j)
        if (m & (std::uint32_t{1} << j)) out += "*s" + std::to_string(j + 1);
    }
    return out;
  }

  /// Splits x = a + b*s_k where neither a nor b involves s_k.
  std::pair<Scalar, Scalar> split(std::uint32_t k) const {
    std::vector<Term> ta, tb;
    std::uint32_t bit = std::uint32_t{1} << k;
    for (auto& t : terms()) {
      if (t.first & bit) tb.emplace_back(t.first ^ bit, t.second);
      else ta.push_back(t);
    }
    return {from_terms(std::move(ta)), from_terms(std::move(tb))};
  }

 private:
  Scalar times_monomial(std::uint32_t m) const {
    if (m == 0) return *this;
    Scalar mono;
    mono.ext_ = std::make_unique<std::vector<Term>>();
    mono.ext_->emplace_back(m, Gauss(1));
    return *this * mono;
  }

  static Scalar radicand_product(std::uint32_t mask) {
    Tower& t = current_tower();
    auto it = t.radicand_products.find(mask);
    if (it != t.radicand_products.end()) return it->second;
    Scalar p(1);
    for (std::size_t j = 0; j < 32; ++j) {
      if (mask & (std::uint32_t{1} << j)) {
        if (j >= t.radicands.size()) throw std::logic_error("scalar uses a generator outside the active tower");
        p = p * t.radicands[j];
      }
    }
    t.radicand_products.emplace(mask, p);
    return p;
  }

  Gauss c0_;
  std::unique_ptr<std::vector<Term>> ext_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

namespace detail {

// Square root of x within the field generated by the first `levels` generators.
inline std::optional<Scalar> sqrt_below(const Scalar& x, std::size_t levels) {
  if (x.is_zero()) return Scalar();
  if (levels == 0) {
    if (!x.in_base_field()) return std::nullopt;
    auto g = x.base_coefficient().sqrt_exact();
    if (!g) return std::nullopt;
    return Scalar(*g);
  }
  std::size_t k = levels - 1;
  if (x.top_generator() >= static_cast<int>(levels)) return std::nullopt;
  const Scalar& d = current_tower().radicands[k];
  auto [a, b] = x.split(static_cast<std::uint32_t>(k));
  if (b.is_zero()) {
    if (auto r = sqrt_below(a, k)) return r;
    if (auto r = sqrt_below(a / d, k)) return *r * Scalar::generator(k);
    return std::nullopt;
  }
  auto n = sqrt_below(a * a - b * b * d, k);
  if (!n) return std::nullopt;
  for (int sgn : {1, -1}) {
    Scalar t = (a + Scalar(sgn) * *n) / Scalar(2);
    if (t.is_zero()) continue;
    if (auto u = sqrt_below(t, k)) {
      Scalar root = *u + (b / (Scalar(2) * *u)) * Scalar::generator(k);
      if (root * root == x) return root;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Square root of x in the active tower, if x is already a square there.
inline std::optional<Scalar> sqrt_in_tower(const Scalar& x) {
  return detail::sqrt_below(x, current_tower().size());
}

/// Returns r with r*r == d, adjoining a new generator to the active tower only
/// when d is not already a square.  A fresh generator is its own canonical root.
inline Scalar adjoin_sqrt(const Scalar& d) {
  if (d.is_zero()) throw std::domain_error("adjoin_sqrt of zero");
  if (auto r = sqrt_in_tower(d)) return *r;
  Tower& t = current_tower();
  if (t.size() >= 31) throw std::length_error("scalar tower exhausted (31 generators)");
  t.radicands.push_back(d);
  return Scalar::generator(t.size() - 1);
}

}  // namespace qsuper
