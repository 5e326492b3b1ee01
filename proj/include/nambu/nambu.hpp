#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nambu/exterior.hpp"
#include "nambu/polynomial.hpp"
#include "nambu/report.hpp"

namespace nambu {

struct FlowSystem;

// An ordered list of 1..n-1 Hamiltonians on an n-dimensional phase space.
class HamiltonianSystem {
 public:
  HamiltonianSystem(std::size_t dim, std::vector<Polynomial> hamiltonians,
                    std::string label = {});

  std::size_t dim() const { return dim_; }
  const std::vector<Polynomial>& hamiltonians() const { return hamiltonians_; }
  std::size_t arity() const { return hamiltonians_.size(); }
  const std::string& label() const { return label_; }

 private:
  std::size_t dim_;
  std::vector<Polynomial> hamiltonians_;
  std::string label_;
};

// An (n-2)-form h whose differential is the contraction X ⌟ Ω of the flow
// it generates: a 1-form for n = 3 (X = rot h), a 0-form for n = 2.
struct VectorHamiltonian {
  DiffForm form;
};

// Θ^m = sum over i1 < ... < i_{m-1} of dH ^ dx_i1 ^ ... ^ dx_i(m-1).
DiffForm theta_form(const Polynomial& hamiltonian, std::size_t m);

// Hamiltonian k-vector field X_H^k (1 <= k <= n-1), normalised so that
// X_H^k ⌟ Ω = Θ^{n-k}; in particular X_H^{n-1} ⌟ Ω = dH. Constants give 0.
PolyVector canonical_polyvector(const Polynomial& hamiltonian, std::size_t k);

// Nambu bracket {F1, ..., Fk, G} = X_G^k ⌟ (dF1 ^ ... ^ dFk) for a system
// of k Hamiltonians. For k = n-1 this is det d(F1..F_{n-1}, G)/d(x0..x_{n-1}).
Polynomial nambu_bracket(const HamiltonianSystem& system, const Polynomial& g);

// {F1, ..., Fk, x_i} for every coordinate, sharing one wedge of the dF's.
std::vector<Polynomial> coordinate_brackets(const HamiltonianSystem& system);

// The same bracket evaluated through the field of the first Hamiltonian:
// X_{F1}^k ⌟ (dF2 ^ ... ^ dFk ^ dG). At top degree this equals
// (-1)^{n-1} * nambu_bracket(system, g).
Polynomial field_bracket(const HamiltonianSystem& system, const Polynomial& g);

// Exact Jacobian determinant of n functions in n variables.
Polynomial jacobian_bracket(const std::vector<Polynomial>& functions);

// Raised when a flow has nonzero divergence; carries the divergence.
class DivergenceError : public DomainError {
 public:
  DivergenceError(const std::string& message, Polynomial divergence)
      : DomainError(message), divergence_(std::move(divergence)) {}
  const Polynomial& divergence() const { return divergence_; }

 private:
  Polynomial divergence_;
};

// Builds the vector field sum_i rhs_i d/dx_i.
PolyVector vector_field(const std::vector<Polynomial>& components);

// h = homotopy(X ⌟ Ω) for a divergence-free vector field X, so d(h) = X ⌟ Ω.
VectorHamiltonian flow_to_vector_hamiltonian(const PolyVector& field);

// The vector field generated by a vector Hamiltonian: X_h ⌟ Ω = dh.
PolyVector hamiltonian_field(const VectorHamiltonian& h);

// Compares d(h) with (-1)^{n-1} dH1 ^ ... ^ dHk, the contraction X ⌟ Ω of
// the bracket flow. The sign is +1 for n = 3. residual = expected - d(h).
CheckResult verify_factorization(const VectorHamiltonian& h,
                                 const std::vector<Polynomial>& hamiltonians);

// Residual d(X ⌟ Ω); the field is Hamiltonian when it is zero.
CheckResult liouville_check(const PolyVector& field);

struct CartanVolume {
  DiffForm volume;        // I = θ0 ^ ... ^ θ_{n-1} in extended space
  DiffForm primitive;     // i with d(i) = I
  DiffForm residual;      // d(i) - I
  int dt_sign = 0;        // I = Ω + dt_sign * (X ⌟ Ω) ^ dt
  VectorHamiltonian vector_hamiltonian;  // in phase space
  DiffForm volume_primitive;             // homotopy(Ω), extended space
};

// Works in extended space (x0..x_{n-1}, t): θ_i = dx_i - f_i dt. The sign in
// front of (X ⌟ Ω) ^ dt is read off the expansion, and
// i = homotopy(Ω) + dt_sign * h ^ dt with dh = X ⌟ Ω.
CartanVolume cartan_volume(const FlowSystem& flow);

// {h, G} = X_h ⌟ dG.
Polynomial involution_check(const VectorHamiltonian& h, const Polynomial& g);
// {F1, ..., Fk, G} through nambu_bracket.
Polynomial involution_check(const HamiltonianSystem& system, const Polynomial& g);

}  // namespace nambu
