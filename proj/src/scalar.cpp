#include "nambu/scalar.hpp"

#include <cctype>

#include "nambu/errors.hpp"

namespace nambu {

Scalar::Scalar(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  re_ = Rational(num, den);
  re_.canonicalize();
}

Scalar Scalar::complex(const Rational& re, const Rational& im) {
  Scalar s(re);
  s.im_ = im;
  s.im_.canonicalize();
  s.mode_ = Mode::kComplex;
  return s;
}

Scalar Scalar::from_string(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.erase(0, 1);
  }
  if (body.empty()) throw DomainError("empty numeric literal");

  Rational value;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    mpz_class num, den;
    if (num.set_str(body.substr(0, slash), 10) != 0 ||
        den.set_str(body.substr(slash + 1), 10) != 0) {
      throw DomainError("malformed rational literal '" + text + "'");
    }
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    value = Rational(num, den);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string digits = body.substr(0, dot) + body.substr(dot + 1);
    mpz_class num;
    if (digits.empty() || num.set_str(digits, 10) != 0) {
      throw DomainError("malformed decimal literal '" + text + "'");
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, body.size() - dot - 1);
    value = Rational(num, den);
  } else {
    mpz_class num;
    if (num.set_str(body, 10) != 0) {
      throw DomainError("malformed integer literal '" + text + "'");
    }
    value = Rational(num);
  }
  value.canonicalize();
  return Scalar(negative ? Rational(-value) : value);
}

Scalar Scalar::zero_like() const {
  return is_complex() ? complex(0, 0) : Scalar(0);
}

Scalar Scalar::one_like() const {
  return is_complex() ? complex(1, 0) : Scalar(1);
}

void Scalar::require_same_mode(const Scalar& other) const {
  if (mode_ != other.mode_) {
    throw ModeError("rational and complex scalars cannot be mixed");
  }
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.re_ = -s.re_;
  s.im_ = -s.im_;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  require_same_mode(other);
  re_ += other.re_;
  im_ += other.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  require_same_mode(other);
  re_ -= other.re_;
  im_ -= other.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  require_same_mode(other);
  if (!is_complex()) {
    re_ *= other.re_;
    return *this;
  }
  Rational re = re_ * other.re_ - im_ * other.im_;
  Rational im = re_ * other.im_ + im_ * other.re_;
  re_ = re;
  im_ = im;
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  require_same_mode(other);
  if (other.is_zero()) throw DomainError("division by zero");
  if (!is_complex()) {
    re_ /= other.re_;
    return *this;
  }
  Rational norm = other.re_ * other.re_ + other.im_ * other.im_;
  Rational re = (re_ * other.re_ + im_ * other.im_) / norm;
  Rational im = (im_ * other.re_ - re_ * other.im_) / norm;
  re_ = re;
  im_ = im;
  return *this;
}

namespace {

// mpq's get_d truncates toward zero. When numerator and denominator are both
// exact doubles a single IEEE division rounds to nearest instead.
double nearest_double(const Rational& q) {
  static const mpz_class kExact = mpz_class(1) << 53;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (abs(num) <= kExact && den <= kExact) return num.get_d() / den.get_d();
  return q.get_d();
}

}  // namespace

double Scalar::to_double() const {
  if (is_complex() && sgn(im_) != 0) {
    throw ModeError("complex scalar has a nonzero imaginary part");
  }
  return nearest_double(re_);
}

std::complex<double> Scalar::to_complex() const {
  return {nearest_double(re_), nearest_double(im_)};
}

std::string Scalar::to_string() const {
  if (!is_complex()) return re_.get_str();
  std::string out = "(" + re_.get_str();
  if (sgn(im_) >= 0) out += "+";
  return out + im_.get_str() + "*i)";
}

}  // namespace nambu
