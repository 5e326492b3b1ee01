#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nambu/exterior.hpp"
#include "nambu/flows.hpp"
#include "nambu/lax.hpp"
#include "nambu/nambu.hpp"
#include "nambu/scalar.hpp"

namespace nambu {

// Generalised Pauli matrices of an annular n-level system.
struct GenPauliSet {
  std::size_t n = 0;
  std::complex<double> sigma;  // e^{2πi/n}
  Eigen::MatrixXcd identity;   // Σ0
  Eigen::MatrixXcd shift;      // Σ1: ones below the diagonal and at (0, n-1)
  Eigen::MatrixXcd clock;      // Σ3 = diag(σ^0, ..., σ^{n-1})
  Eigen::MatrixXcd raise;      // Σ1^+ = Σ1^{n-1}
};

GenPauliSet gen_pauli(std::size_t n);

// Max-norm residuals of Σ1^n = Σ0, σ^n = 1 and sum_k σ^k = 0.
struct PauliIdentityResiduals {
  double shift_order = 0.0;
  double sigma_order = 0.0;
  double sigma_sum = 0.0;
};
PauliIdentityResiduals pauli_identity_residuals(const GenPauliSet& set);

// c_j(t) = sum_k t^{nk+j} / (nk+j)!, summed until the tail bound
// next_term * e^{|t|} drops below tol.
double c_series(std::size_t n, std::size_t j, double t, double tol);
std::vector<double> c_series_vector(std::size_t n, double t, double tol);

// Names c0 .. c{n-1}.
VariableNames ring_names(std::size_t n);

struct RingSystem {
  std::size_t n = 0;
  FlowSystem flow;                          // c_j' = c_{j+1 mod n}
  std::optional<Polynomial> invariant;      // n = 2, 3, 4
  std::optional<Polynomial> conservation;   // d/dt of the invariant (zero)
};

// Known scalar invariants: c1^2 - c0^2 (n = 2),
// c0^3 + c1^3 + c2^3 - 3 c0 c1 c2 (n = 3), 2(2 c0 c2 - c1^2 - c3^2) (n = 4).
std::optional<Polynomial> ring_invariant(std::size_t n);

// Attaches the invariant only after its derivative along the flow is checked
// to vanish; a candidate that fails is dropped.
RingSystem ring_system(std::size_t n);

// max |expm(tΣ1) - sum_j c_j(t) Σ1^j| entrywise.
double exp_reconstruction_check(std::size_t n, double t);

struct RingVectorHamiltonian {
  VectorHamiltonian published;    // the closed-form h for n = 3 or 4
  VectorHamiltonian homotopy;     // homotopy(X ⌟ Ω)
  DiffForm certification_residual;  // d(published) - X ⌟ Ω
  DiffForm gauge_difference;        // published - homotopy
  bool certified = false;           // residual is zero
  bool gauge_closed = false;        // d(gauge_difference) is zero
};

RingVectorHamiltonian ring_vector_hamiltonian(std::size_t n);

// Cyclotomic polynomial Φ_n, coefficients from s^0 upward.
std::vector<Rational> cyclotomic(std::size_t n);

// Lax pair of the ring flow over Q(σ), σ = e^{2πi/n}, carried by one trailing
// parameter variable "s" subject to Φ_n(s) = 0:
// L[a][b] = c_{(b-a) mod n} s^{(n-1-a-b) mod n} and M = Σ1 / (σ - σ^{n-1}),
// the scalar being rewritten as a polynomial in s. For n = 2 that scalar is
// singular and M = (s/2) Σ1 with L = [[c1, c0], [c0 s, c1 s]].
struct RingLaxPair {
  LaxPair pair;
  Polynomial relation;  // Φ_n(s) in the extended variables
  std::complex<double> sigma;
};
RingLaxPair ring_lax_pair(std::size_t n);

// dL/dt - [M, L] reduced modulo Φ_n(s); zero certifies the pair exactly.
PolyMatrix ring_lax_residual(const RingLaxPair& ring);

}  // namespace nambu
