#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nambu/scalar.hpp"

namespace nambu {

// Exponent vector, one slot per variable.
using Monomial = std::vector<std::uint32_t>;

std::uint32_t total_degree(const Monomial& m);

// Graded-lex order, descending: higher total degree first, then the
// lexicographically larger exponent vector (x0 most significant).
struct GradedLexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Shared variable-name table used when printing.
using VariableNames = std::shared_ptr<const std::vector<std::string>>;

VariableNames make_names(std::vector<std::string> names);
// x0, x1, ..., x{n-1}
VariableNames default_names(std::size_t n);

// Exact multivariate polynomial over Scalar. Values are immutable in spirit:
// every operation returns a new canonical polynomial (no stored zeros, terms
// ordered by GradedLexDescending). Equality compares dimension, scalar mode
// and the term map; the name table is presentation only.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Scalar, GradedLexDescending>;

  Polynomial() : Polynomial(0) {}
  explicit Polynomial(std::size_t dim, Scalar::Mode mode = Scalar::Mode::kRational,
                      VariableNames names = nullptr);

  static Polynomial constant(std::size_t dim, const Scalar& c,
                             VariableNames names = nullptr);
  static Polynomial variable(std::size_t dim, std::size_t index,
                             VariableNames names = nullptr);
  static Polynomial monomial(const Monomial& exponents, const Scalar& c,
                             VariableNames names = nullptr);

  std::size_t dim() const { return dim_; }
  Scalar::Mode mode() const { return mode_; }
  const TermMap& terms() const { return terms_; }
  const VariableNames& names() const { return names_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Coefficient of the monomial (zero when absent).
  Scalar coefficient(const Monomial& m) const;
  Scalar constant_term() const;
  // Highest total degree; -1 for the zero polynomial.
  int degree() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Scalar& c);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.mode_ == b.mode_ && a.terms_ == b.terms_;
  }

  Polynomial pow(std::uint32_t exponent) const;

  // Formal partial derivative with respect to variable `index`.
  Polynomial differentiate(std::size_t index) const;

  // Exact evaluation; the point must have dim() entries in the same mode.
  Scalar evaluate(std::span<const Scalar> point) const;
  double evaluate(std::span<const double> point) const;
  std::complex<double> evaluate(std::span<const std::complex<double>> point) const;

  // Same polynomial viewed in a space with extra trailing variables.
  Polynomial extend(std::size_t new_dim, VariableNames names = nullptr) const;
  Polynomial with_names(VariableNames names) const;
  // Reinterpret rational coefficients as complex-rational ones.
  Polynomial to_complex() const;

  // Canonical text: explicit `*` and `^`, terms in graded-lex descending
  // order, e.g. "3/2*x^2 - x*y + 1/2". The zero polynomial prints as "0".
  std::string to_string() const;

  // Inserts a term, merging with an existing one; zero results are dropped.
  void add_term(const Monomial& m, const Scalar& c);

 private:
  void require_compatible(const Polynomial& other) const;
  void adopt_names(const Polynomial& other);

  std::size_t dim_;
  Scalar::Mode mode_;
  VariableNames names_;
  TermMap terms_;
};

// Parses the expression language: +, -, *, /, ^, parentheses, integer and
// decimal literals, and the declared variable names. Division is allowed by
// nonzero constants only; exponents must be nonnegative integer literals;
// implicit multiplication ("2x", "x y") is rejected. Throws ParseError.
Polynomial parse_polynomial(const std::string& text,
                            const std::vector<std::string>& variables);
Polynomial parse_polynomial(const std::string& text, const VariableNames& variables);

}  // namespace nambu
