#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nambu/errors.hpp"
#include "nambu/polynomial.hpp"

namespace nambu {

// Strictly increasing variable indices labelling dx_{i1}^...^dx_{ik} or
// e_{i1}^...^e_{ik} (e_i = d/dx_i).
using IndexTuple = std::vector<std::size_t>;

enum class Variance { kCovariant, kContravariant };

// Degree-k antisymmetric tensor with polynomial coefficients in an ambient
// space of dimension n. Covariant: differential form. Contravariant:
// polyvector field. Zero coefficients are never stored.
template <Variance V>
class Multivector {
 public:
  using ComponentMap = std::map<IndexTuple, Polynomial>;

  Multivector(std::size_t degree, std::size_t dim, VariableNames names = nullptr);

  // Single basis element with coefficient `coeff`. `indices` may be in any
  // order; the permutation sign is applied and repeats give zero.
  static Multivector basis(std::size_t dim, const IndexTuple& indices,
                           const Polynomial& coeff);
  static Multivector basis(std::size_t dim, const IndexTuple& indices,
                           VariableNames names = nullptr);
  // Degree-0 element carrying a function.
  static Multivector scalar(const Polynomial& f);

  std::size_t degree() const { return degree_; }
  std::size_t dim() const { return dim_; }
  const VariableNames& names() const { return names_; }
  const ComponentMap& components() const { return components_; }
  bool is_zero() const { return components_.empty(); }

  Polynomial component(const IndexTuple& indices) const;
  Polynomial zero_coefficient() const { return Polynomial(dim_, Scalar::Mode::kRational, names_); }
  // For degree 0: the function itself.
  Polynomial as_function() const;

  // Adds coeff * basis(indices); indices need not be sorted.
  void add(const IndexTuple& indices, const Polynomial& coeff);

  Multivector& operator+=(const Multivector& other);
  Multivector& operator-=(const Multivector& other);
  Multivector& operator*=(const Polynomial& f);
  Multivector& operator*=(const Scalar& c);
  Multivector operator-() const;

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, const Polynomial& f) { return a *= f; }
  friend Multivector operator*(const Polynomial& f, Multivector a) { return a *= f; }
  friend Multivector operator*(Multivector a, const Scalar& c) { return a *= c; }
  friend Multivector operator*(const Scalar& c, Multivector a) { return a *= c; }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.degree_ == b.degree_ && a.dim_ == b.dim_ && a.components_ == b.components_;
  }

  // Same tensor with extra trailing variables (e.g. t appended as x_n).
  Multivector extend(std::size_t new_dim, VariableNames names = nullptr) const;

  // "(y - z)*dy^dz + x*dx^dy" with differentials named after the variables;
  // polyvectors use index labels, e0^e1. Zero prints "0".
  std::string to_string() const;

 private:
  void require_compatible(const Multivector& other) const;

  std::size_t degree_;
  std::size_t dim_;
  VariableNames names_;
  ComponentMap components_;
};

using DiffForm = Multivector<Variance::kCovariant>;
using PolyVector = Multivector<Variance::kContravariant>;

extern template class Multivector<Variance::kCovariant>;
extern template class Multivector<Variance::kContravariant>;

// dx_0 ^ dx_1 ^ ... ^ dx_{n-1}
DiffForm volume_form(std::size_t dim, VariableNames names = nullptr);
// dH as a 1-form.
DiffForm differential(const Polynomial& f);

// Sorts `indices` in place. Returns the permutation sign, or 0 on a repeat.
int sort_with_sign(IndexTuple& indices);

DiffForm wedge(const DiffForm& a, const DiffForm& b);
PolyVector wedge(const PolyVector& a, const PolyVector& b);

// Exterior derivative. For a top-degree form the result is the (always
// zero) form of degree n+1.
DiffForm exterior_derivative(const DiffForm& form);

// Interior product X ⌟ w. For X = v1^...^vk the factors are inserted
// left to right, v1 innermost: (v1^v2) ⌟ w = v2 ⌟ (v1 ⌟ w).
DiffForm contract(const PolyVector& field, const DiffForm& form);

// L_X w = X ⌟ dw + d(X ⌟ w), for a vector field X (degree 1).
DiffForm lie_derivative(const PolyVector& field, const DiffForm& form);

// Raised by homotopy() when the input is not closed; carries d(form).
class NotClosedError : public DomainError {
 public:
  NotClosedError(const std::string& message, DiffForm residual)
      : DomainError(message), residual_(std::move(residual)) {}
  const DiffForm& residual() const { return residual_; }

 private:
  DiffForm residual_;
};

// Radial homotopy operator. Each k-form term m dx_I with monomial m of total
// degree d maps to (1/(d+k)) E ⌟ (m dx_I), E = sum_i x_i d/dx_i. On a closed
// form the result eta satisfies d(eta) = form.
DiffForm homotopy(const DiffForm& form, bool require_closed = true);

// The polyvector X with X ⌟ volume_form(n) == form. Basis e_I maps to
// sign(I) dx_J with J the complement of I and
// sign(I) = (-1)^(sum(I) - k(k-1)/2), k = |I|.
PolyVector volume_dual(const DiffForm& form);

}  // namespace nambu
