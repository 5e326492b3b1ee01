#pragma once

#include <complex>
#include <gmpxx.h>
#include <string>

namespace nambu {

using Rational = mpq_class;

// Exact coefficient: a GMP rational, or a pair of rationals (re, im) in complex
// mode. Arithmetic between the two modes throws ModeError.
class Scalar {
 public:
  enum class Mode { kRational, kComplex };

  Scalar() = default;
  Scalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& value) : re_(value) {  // NOLINT
    re_.canonicalize();
  }
  Scalar(long num, long den);

  static Scalar complex(const Rational& re, const Rational& im);
  // Parses "p", "-p/q" or a decimal literal such as "1.25".
  static Scalar from_string(const std::string& text);

  Mode mode() const { return mode_; }
  bool is_complex() const { return mode_ == Mode::kComplex; }
  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  // Zero and one in the same mode as *this.
  Scalar zero_like() const;
  Scalar one_like() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.mode_ == b.mode_ && a.re_ == b.re_ && a.im_ == b.im_;
  }

  double to_double() const;
  std::complex<double> to_complex() const;

  // "3/2", "-1", or "(1/2+3/4*i)" in complex mode.
  std::string to_string() const;

 private:
  void require_same_mode(const Scalar& other) const;

  Rational re_{0};
  Rational im_{0};
  Mode mode_ = Mode::kRational;
};

}  // namespace nambu
