#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nambu/nambu.hpp"
#include "nambu/polynomial.hpp"

namespace nambu {

// x' = rhs(x), one polynomial per coordinate.
struct FlowSystem {
  std::vector<Polynomial> rhs;
  std::string provenance;

  std::size_t dim() const { return rhs.size(); }
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  double step = 0.0;
  std::string method = "rk4";
};

struct InvariantReport {
  Polynomial invariant;
  double initial_value = 0.0;
  double max_drift = 0.0;
  std::vector<double> drift;  // |I(x(t)) - I(x(0))| per sample
};

// Component i is the bracket of the system with x_i.
FlowSystem rhs_from_bracket(const HamiltonianSystem& system);
// Component i is X_h ⌟ dx_i.
FlowSystem rhs_from_vector_hamiltonian(const VectorHamiltonian& h);

Polynomial divergence(const FlowSystem& flow);

// Jacobian matrix d(rhs_i)/d(x_j), row-major.
std::vector<std::vector<Polynomial>> flow_jacobian(const FlowSystem& flow);

// Polynomial flattened to double coefficients and exponent vectors for fast
// repeated evaluation.
class CompiledPolynomial {
 public:
  explicit CompiledPolynomial(const Polynomial& p);
  double operator()(std::span<const double> x) const;

 private:
  std::size_t dim_;
  std::vector<double> coeffs_;
  std::vector<std::uint32_t> exponents_;  // dim_ entries per term
};

// Thrown when a state component becomes non-finite or exceeds kBlowUpLimit.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& message, double time, Trajectory partial)
      : Error(message), time_(time), partial_(std::move(partial)) {}
  double time() const { return time_; }
  const Trajectory& partial() const { return partial_; }

 private:
  double time_;
  Trajectory partial_;
};

inline constexpr double kBlowUpLimit = 1e12;

// Classical fixed-step RK4 from t = 0. The last sample lands exactly on
// t_end; a shorter final step is taken when dt does not divide t_end.
Trajectory integrate(const FlowSystem& flow, std::span<const double> x0, double t_end,
                     double dt);

InvariantReport invariant_drift(const Trajectory& trajectory, const Polynomial& invariant);

// CSV: header "t,<names>", one row per sample, 17 significant digits.
void write_csv(std::ostream& out, const Trajectory& trajectory,
               const std::vector<std::string>& names);
std::string trajectory_json(const Trajectory& trajectory,
                            const std::vector<std::string>& names);

}  // namespace nambu
