#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nambu/flows.hpp"
#include "nambu/polynomial.hpp"

namespace nambu {

// Square matrix of polynomials sharing one ambient dimension and mode.
class PolyMatrix {
 public:
  PolyMatrix(std::size_t size, std::size_t dim, Scalar::Mode mode = Scalar::Mode::kRational,
             VariableNames names = nullptr);
  // Rows of equal length; all entries in the same dimension and mode.
  static PolyMatrix from_rows(const std::vector<std::vector<Polynomial>>& rows);
  static PolyMatrix identity(std::size_t size, std::size_t dim, VariableNames names = nullptr);

  std::size_t size() const { return size_; }
  std::size_t dim() const { return dim_; }
  Scalar::Mode mode() const { return mode_; }

  const Polynomial& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * size_ + c];
  }
  void set(std::size_t r, std::size_t c, Polynomial value);

  PolyMatrix& operator+=(const PolyMatrix& other);
  PolyMatrix& operator-=(const PolyMatrix& other);
  PolyMatrix& operator*=(const Scalar& s);
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
  friend PolyMatrix operator*(PolyMatrix a, const Scalar& s) { return a *= s; }
  friend PolyMatrix operator*(const Scalar& s, PolyMatrix a) { return a *= s; }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.size_ == b.size_ && a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

  Polynomial trace() const;
  PolyMatrix pow(std::uint32_t k) const;
  bool is_zero() const;
  PolyMatrix extend(std::size_t new_dim, VariableNames names = nullptr) const;

  Eigen::MatrixXcd evaluate(std::span<const std::complex<double>> point) const;

  // "[[x, z], [z, y]]"
  std::string to_string() const;

 private:
  void require_compatible(const PolyMatrix& other) const;

  std::size_t size_;
  std::size_t dim_;
  Scalar::Mode mode_;
  std::vector<Polynomial> entries_;
};

// L and M of a Lax equation dL/dt = [M, L] along `flow`. The matrices may use
// extra trailing variables beyond the flow's (parameters such as σ); those
// are constant in time.
struct LaxPair {
  PolyMatrix lax;
  PolyMatrix partner;
  FlowSystem flow;
};

PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b);

// dL/dt along the flow via the chain rule.
PolyMatrix time_derivative(const PolyMatrix& m, const FlowSystem& flow);

// dL/dt - [M, L], exact. The zero matrix certifies the pair.
PolyMatrix lax_residual(const LaxPair& pair);

// (1/k) tr L^k.
Polynomial trace_invariant(const PolyMatrix& lax, std::uint32_t k);

// d/dt of f along the flow: sum_i df/dx_i * rhs_i.
Polynomial derivative_along(const Polynomial& f, const FlowSystem& flow);

// Reduces p modulo a monic relation in one variable, e.g. s^2 + s + 1 for
// s = e^{2πi/3}: every power s^d with d >= deg(relation) is rewritten until
// the degree in that variable drops below it. Exact over the rationals.
Polynomial reduce_modulo(const Polynomial& p, std::size_t var, const Polynomial& relation);
PolyMatrix reduce_modulo(const PolyMatrix& m, std::size_t var, const Polynomial& relation);

// Numeric residual for pairs whose parameters are not rational (σ = e^{2πi/n}).
// `parameters` fills the trailing variables, M is scaled by `partner_scale`,
// and the max entry of |dL/dt - [M, L]| over `states` is returned.
double sampled_lax_residual(const LaxPair& pair,
                            std::span<const std::complex<double>> parameters,
                            std::complex<double> partner_scale,
                            const std::vector<std::vector<double>>& states);

}  // namespace nambu
