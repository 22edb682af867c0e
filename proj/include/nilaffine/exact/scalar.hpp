#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include "nilaffine/exact/rational.hpp"

namespace nilaffine {

/// Raised when two scalars from different quadratic fields meet.
class FieldMismatch : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline bool is_square_free(std::int64_t d) {
  if (d <= 0) return false;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

/// Exact element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).
///
/// d is square-free and positive; d == 1 is plain Q and forces b == 0.
/// A scalar tagged with d == 1 is a rational and combines with any field;
/// two scalars tagged with distinct d > 1 cannot be combined.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int value) : rat_(value) {}
  Scalar(long value) : rat_(value) {}
  Scalar(long long value) : rat_(value) {}
  Scalar(Rational value) : rat_(std::move(value)) {}
  Scalar(Rational rat, Rational irr, std::int64_t d) : rat_(std::move(rat)), irr_(std::move(irr)), d_(d) {
    if (!is_square_free(d_)) throw std::invalid_argument("field parameter d=" + std::to_string(d_) + " is not a square-free positive integer");
    if (d_ == 1 && irr_ != 0) throw std::invalid_argument("irrational component requires d > 1");
  }

  static Scalar sqrt_d(std::int64_t d) { return Scalar(Rational(0), Rational(1), d); }

  const Rational& rat() const { return rat_; }
  const Rational& irr() const { return irr_; }
  std::int64_t d() const { return d_; }

  bool is_zero() const { return rat_ == 0 && irr_ == 0; }
  bool is_rational() const { return irr_ == 0; }

  /// Conjugate a - b*sqrt(d).
  Scalar conjugate() const { return make(rat_, -irr_, d_); }

  /// Field norm a^2 - d*b^2; nonzero for every nonzero element since d is square-free.
  Rational norm() const { return rat_ * rat_ - Rational(d_) * irr_ * irr_; }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    Rational n = norm();
    return make(rat_ / n, -irr_ / n, d_);
  }

  Scalar operator-() const { return make(-rat_, -irr_, d_); }

  Scalar& operator+=(const Scalar& o) {
    d_ = join(d_, o.d_);
    rat_ += o.rat_;
    irr_ += o.irr_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    d_ = join(d_, o.d_);
    rat_ -= o.rat_;
    irr_ -= o.irr_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    std::int64_t d = join(d_, o.d_);
    Rational r = rat_ * o.rat_ + Rational(d) * irr_ * o.irr_;
    Rational i = rat_ * o.irr_ + irr_ * o.rat_;
    rat_ = std::move(r);
    irr_ = std::move(i);
    d_ = d;
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    join(d_, o.d_);
    return *this *= o.inverse();
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.rat_ != b.rat_ || a.irr_ != b.irr_) return false;
    return a.irr_ == 0 || a.d_ == b.d_;
  }

  /// "p/q" for rationals, "p/q + r/s*sqrt(d)" otherwise.
  std::string str() const {
    if (irr_ == 0) return to_string(rat_);
    std::string root = "sqrt(" + std::to_string(d_) + ")";
    std::string coeff = irr_ == 1 ? root : irr_ == -1 ? "-" + root : to_string(irr_) + "*" + root;
    if (rat_ == 0) return coeff;
    if (irr_ < 0) return to_string(rat_) + " - " + coeff.substr(1);
    return to_string(rat_) + " + " + coeff;
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  static Scalar make(Rational r, Rational i, std::int64_t d) {
    Scalar s;
    s.rat_ = std::move(r);
    s.irr_ = std::move(i);
    s.d_ = d;
    return s;
  }

  static std::int64_t join(std::int64_t a, std::int64_t b) {
    if (a == b || b == 1) return a;
    if (a == 1) return b;
    throw FieldMismatch("cannot mix Q(sqrt(" + std::to_string(a) + ")) and Q(sqrt(" + std::to_string(b) + "))");
  }

  Rational rat_{0};
  Rational irr_{0};
  std::int64_t d_{1};
};

}  // namespace nilaffine
