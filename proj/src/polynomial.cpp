#include "nambu/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nambu/errors.hpp"

namespace nambu {

std::uint32_t total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), std::uint32_t{0});
}

bool GradedLexDescending::operator()(const Monomial& a, const Monomial& b) const {
  auto da = total_degree(a);
  auto db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

VariableNames make_names(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

VariableNames default_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  return make_names(std::move(names));
}

Polynomial::Polynomial(std::size_t dim, Scalar::Mode mode, VariableNames names)
    : dim_(dim), mode_(mode), names_(std::move(names)) {
  if (names_ && names_->size() != dim_) {
    throw DimensionError("variable table has " + std::to_string(names_->size()) +
                         " names for dimension " + std::to_string(dim_));
  }
}

Polynomial Polynomial::constant(std::size_t dim, const Scalar& c, VariableNames names) {
  Polynomial p(dim, c.mode(), std::move(names));
  p.add_term(Monomial(dim, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t dim, std::size_t index, VariableNames names) {
  if (index >= dim) throw DomainError("variable index out of range");
  Monomial m(dim, 0);
  m[index] = 1;
  return monomial(m, Scalar(1), std::move(names));
}

Polynomial Polynomial::monomial(const Monomial& exponents, const Scalar& c,
                                VariableNames names) {
  Polynomial p(exponents.size(), c.mode(), std::move(names));
  p.add_term(exponents, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  if (it != terms_.end()) return it->second;
  return mode_ == Scalar::Mode::kComplex ? Scalar::complex(0, 0) : Scalar(0);
}

Scalar Polynomial::constant_term() const { return coefficient(Monomial(dim_, 0)); }

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.begin()->first));
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (m.size() != dim_) throw DimensionError("monomial length does not match dimension");
  if (c.mode() != mode_) throw ModeError("coefficient mode does not match polynomial");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::require_compatible(const Polynomial& other) const {
  if (dim_ != other.dim_) {
    throw DimensionError("polynomial dimensions differ (" + std::to_string(dim_) +
                         " vs " + std::to_string(other.dim_) + ")");
  }
  if (mode_ != other.mode_) throw ModeError("polynomial scalar modes differ");
}

void Polynomial::adopt_names(const Polynomial& other) {
  if (!names_) names_ = other.names_;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_compatible(other);
  adopt_names(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_compatible(other);
  adopt_names(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_compatible(b);
  Polynomial out(a.dim_, a.mode_, a.names_ ? a.names_ : b.names_);
  Monomial m(a.dim_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.dim_; ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c.mode() != mode_) throw ModeError("scalar mode does not match polynomial");
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::pow(std::uint32_t exponent) const {
  Polynomial result = constant(dim_, mode_ == Scalar::Mode::kComplex
                                         ? Scalar::complex(1, 0)
                                         : Scalar(1),
                               names_);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::differentiate(std::size_t index) const {
  if (index >= dim_) {
    throw DomainError("derivative index " + std::to_string(index) +
                      " out of range for dimension " + std::to_string(dim_));
  }
  Polynomial out(dim_, mode_, names_);
  for (const auto& [m, c] : terms_) {
    if (m[index] == 0) continue;
    Monomial dm = m;
    --dm[index];
    Scalar factor = c.is_complex() ? Scalar::complex(Rational(m[index]), 0)
                                   : Scalar(static_cast<long>(m[index]));
    out.add_term(dm, c * factor);
  }
  return out;
}

namespace {

// Per-variable power tables, then one product per term.
template <typename T>
T evaluate_terms(const Polynomial& p, std::span<const T> point, const T& zero,
                 const T& one, auto&& coeff) {
  if (point.size() != p.dim()) {
    throw DimensionError("evaluation point has " + std::to_string(point.size()) +
                         " entries, expected " + std::to_string(p.dim()));
  }
  std::vector<std::uint32_t> max_exp(p.dim(), 0);
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i) max_exp[i] = std::max(max_exp[i], m[i]);
  }
  std::vector<std::vector<T>> powers(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    powers[i].reserve(max_exp[i] + 1);
    powers[i].push_back(one);
    for (std::uint32_t e = 1; e <= max_exp[i]; ++e) {
      powers[i].push_back(powers[i].back() * point[i]);
    }
  }
  T sum = zero;
  for (const auto& [m, c] : p.terms()) {
    T term = coeff(c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] != 0) term = term * powers[i][m[i]];
    }
    sum = sum + term;
  }
  return sum;
}

}  // namespace

Scalar Polynomial::evaluate(std::span<const Scalar> point) const {
  for (const auto& s : point) {
    if (s.mode() != mode_) throw ModeError("evaluation point mode does not match");
  }
  Scalar zero = mode_ == Scalar::Mode::kComplex ? Scalar::complex(0, 0) : Scalar(0);
  return evaluate_terms<Scalar>(*this, point, zero, zero.one_like(),
                                [](const Scalar& c) { return c; });
}

double Polynomial::evaluate(std::span<const double> point) const {
  return evaluate_terms<double>(*this, point, 0.0, 1.0,
                                [](const Scalar& c) { return c.to_double(); });
}

std::complex<double> Polynomial::evaluate(
    std::span<const std::complex<double>> point) const {
  using C = std::complex<double>;
  return evaluate_terms<C>(*this, point, C{0.0}, C{1.0},
                           [](const Scalar& c) { return c.to_complex(); });
}

Polynomial Polynomial::extend(std::size_t new_dim, VariableNames names) const {
  if (new_dim < dim_) throw DimensionError("cannot shrink polynomial dimension");
  Polynomial out(new_dim, mode_, std::move(names));
  for (const auto& [m, c] : terms_) {
    Monomial em = m;
    em.resize(new_dim, 0);
    out.add_term(em, c);
  }
  return out;
}

Polynomial Polynomial::with_names(VariableNames names) const {
  Polynomial out = *this;
  if (names && names->size() != dim_) throw DimensionError("name table size mismatch");
  out.names_ = std::move(names);
  return out;
}

Polynomial Polynomial::to_complex() const {
  if (mode_ == Scalar::Mode::kComplex) return *this;
  Polynomial out(dim_, Scalar::Mode::kComplex, names_);
  for (const auto& [m, c] : terms_) out.add_term(m, Scalar::complex(c.real(), 0));
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  VariableNames names = names_ ? names_ : default_names(dim_);
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string monomial_text;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (m[i] == 0) continue;
      if (!monomial_text.empty()) monomial_text += "*";
      monomial_text += (*names)[i];
      if (m[i] > 1) monomial_text += "^" + std::to_string(m[i]);
    }

    Scalar magnitude = c;
    bool negative = false;
    if (!c.is_complex() && sgn(c.real()) < 0) {
      negative = true;
      magnitude = -c;
    }
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;

    if (monomial_text.empty()) {
      out << magnitude.to_string();
    } else if (magnitude.is_one()) {
      out << monomial_text;
    } else {
      out << magnitude.to_string() << "*" << monomial_text;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class ExpressionParser {
 public:
  ExpressionParser(const std::string& text, VariableNames variables)
      : text_(text), vars_(std::move(variables)) {}

  Polynomial parse() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    Polynomial result = expression();
    skip_space();
    if (pos_ < text_.size()) unexpected();
    return result;
  }

 private:
  std::size_t dim() const { return vars_->size(); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  [[noreturn]] void unexpected() {
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = text_[pos_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(') {
      throw ParseError("implicit multiplication is not allowed; use '*'", pos_);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Polynomial expression() {
    Polynomial acc = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      Polynomial rhs = term();
      if (c == '+') {
        acc += rhs;
      } else {
        acc -= rhs;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (char c = peek(); c == '*' || c == '/'; c = peek()) {
      std::size_t op_pos = pos_++;
      Polynomial rhs = unary();
      if (c == '*') {
        acc *= rhs;
      } else {
        if (!rhs.is_constant() || rhs.is_zero()) {
          throw ParseError("division is only allowed by a nonzero constant", op_pos);
        }
        acc *= Scalar(1) / rhs.constant_term();
      }
    }
    return acc;
  }

  Polynomial unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (peek() != '^') return base;
    ++pos_;
    skip_space();
    std::size_t exp_pos = pos_;
    std::size_t end = pos_;
    while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    // "x^2/3" is (x^2)/3; only a decimal point makes the exponent non-integer.
    bool decimal = end < text_.size() && text_[end] == '.';
    if (end == pos_ || decimal) {
      throw ParseError("exponent must be a nonnegative integer literal", exp_pos);
    }
    std::string digits = text_.substr(pos_, end - pos_);
    if (digits.size() > 6) throw ParseError("exponent too large", exp_pos);
    pos_ = end;
    return base.pow(static_cast<std::uint32_t>(std::stoul(digits)));
  }

  Polynomial primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (peek() != ')') {
        if (pos_ >= text_.size()) throw ParseError("missing ')'", pos_);
        unexpected();
      }
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    unexpected();
  }

  Polynomial number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    std::string literal = text_.substr(start, pos_ - start);
    if (literal == ".") throw ParseError("malformed number", start);
    return Polynomial::constant(dim(), Scalar::from_string(literal), vars_);
  }

  Polynomial identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name = text_.substr(start, pos_ - start);
    auto it = std::find(vars_->begin(), vars_->end(), name);
    if (it == vars_->end()) throw ParseError("unknown variable '" + name + "'", start);
    return Polynomial::variable(dim(), static_cast<std::size_t>(it - vars_->begin()), vars_);
  }

  const std::string& text_;
  VariableNames vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const VariableNames& variables) {
  return ExpressionParser(text, variables).parse();
}

Polynomial parse_polynomial(const std::string& text,
                            const std::vector<std::string>& variables) {
  return parse_polynomial(text, make_names(variables));
}

}  // namespace nambu
