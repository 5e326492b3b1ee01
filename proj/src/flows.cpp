#include "nambu/flows.hpp"

#include <cstdio>
#include <cmath>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace nambu {

FlowSystem rhs_from_bracket(const HamiltonianSystem& system) {
  FlowSystem flow;
  flow.provenance = system.label().empty() ? "nambu-bracket" : system.label();
  flow.rhs = coordinate_brackets(system);
  return flow;
}

FlowSystem rhs_from_vector_hamiltonian(const VectorHamiltonian& h) {
  PolyVector field = hamiltonian_field(h);
  FlowSystem flow;
  flow.provenance = "vector-hamiltonian";
  for (std::size_t i = 0; i < h.form.dim(); ++i) flow.rhs.push_back(field.component({i}));
  return flow;
}

Polynomial divergence(const FlowSystem& flow) {
  if (flow.rhs.empty()) throw DomainError("empty flow");
  Polynomial sum(flow.dim(), Scalar::Mode::kRational, flow.rhs.front().names());
  for (std::size_t i = 0; i < flow.dim(); ++i) sum += flow.rhs[i].differentiate(i);
  return sum;
}

std::vector<std::vector<Polynomial>> flow_jacobian(const FlowSystem& flow) {
  std::vector<std::vector<Polynomial>> jac(flow.dim());
  for (std::size_t i = 0; i < flow.dim(); ++i) {
    for (std::size_t j = 0; j < flow.dim(); ++j) jac[i].push_back(flow.rhs[i].differentiate(j));
  }
  return jac;
}

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) : dim_(p.dim()) {
  for (const auto& [m, c] : p.terms()) {
    coeffs_.push_back(c.to_double());
    exponents_.insert(exponents_.end(), m.begin(), m.end());
  }
}

double CompiledPolynomial::operator()(std::span<const double> x) const {
  double sum = 0.0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double term = coeffs_[t];
    const std::uint32_t* e = exponents_.data() + t * dim_;
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

namespace {

void check_state(const std::vector<double>& x, double t, const Trajectory& partial) {
  for (double v : x) {
    if (!std::isfinite(v) || std::abs(v) > kBlowUpLimit) {
      std::ostringstream msg;
      msg << "trajectory blew up at t = " << t;
      throw BlowUpError(msg.str(), t, partial);
    }
  }
}

}  // namespace

Trajectory integrate(const FlowSystem& flow, std::span<const double> x0, double t_end,
                     double dt) {
  const std::size_t n = flow.dim();
  if (x0.size() != n) throw DimensionError("initial state has the wrong length");
  if (!(dt > 0.0) || !(t_end > 0.0)) throw DomainError("dt and t_end must be positive");

  std::vector<CompiledPolynomial> rhs;
  rhs.reserve(n);
  for (const auto& p : flow.rhs) rhs.emplace_back(p);

  auto eval = [&](const std::vector<double>& x, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = rhs[i](x);
  };

  // Full steps, plus one partial step when dt does not divide t_end.
  auto full_steps = static_cast<std::size_t>(std::floor(t_end / dt));
  double remainder = t_end - static_cast<double>(full_steps) * dt;
  if (remainder <= 1e-9 * dt) {
    remainder = 0.0;
  } else if (dt - remainder <= 1e-9 * dt) {
    ++full_steps;
    remainder = 0.0;
  }
  const std::size_t total = full_steps + (remainder > 0.0 ? 1 : 0);

  Trajectory traj;
  traj.step = dt;
  traj.times.reserve(total + 1);
  traj.states.reserve(total + 1);
  std::vector<double> x(x0.begin(), x0.end());
  traj.times.push_back(0.0);
  traj.states.push_back(x);
  check_state(x, 0.0, traj);

  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (std::size_t s = 0; s < total; ++s) {
    const bool last = s + 1 == total;
    const double h = (last && remainder > 0.0) ? remainder : dt;
    eval(x, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    eval(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    eval(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
    eval(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    const double t = last ? t_end : static_cast<double>(s + 1) * dt;
    check_state(x, t, traj);
    traj.times.push_back(t);
    traj.states.push_back(x);
  }
  return traj;
}

InvariantReport invariant_drift(const Trajectory& trajectory, const Polynomial& invariant) {
  InvariantReport report{invariant, 0.0, 0.0, {}};
  if (trajectory.states.empty()) return report;
  if (invariant.dim() != trajectory.states.front().size()) {
    throw DimensionError("invariant dimension does not match trajectory");
  }
  CompiledPolynomial f(invariant);
  report.initial_value = f(trajectory.states.front());
  report.drift.reserve(trajectory.states.size());
  for (const auto& state : trajectory.states) {
    double d = std::abs(f(state) - report.initial_value);
    report.drift.push_back(d);
    report.max_drift = std::max(report.max_drift, d);
  }
  return report;
}

void write_csv(std::ostream& out, const Trajectory& trajectory,
               const std::vector<std::string>& names) {
  out << "t";
  for (const auto& name : names) out << "," << name;
  out << "\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (std::size_t s = 0; s < trajectory.times.size(); ++s) {
    put(trajectory.times[s]);
    for (double v : trajectory.states[s]) {
      out << ",";
      put(v);
    }
    out << "\n";
  }
}

std::string trajectory_json(const Trajectory& trajectory,
                            const std::vector<std::string>& names) {
  nlohmann::json j;
  j["method"] = trajectory.method;
  j["step"] = trajectory.step;
  j["variables"] = names;
  j["t"] = trajectory.times;
  j["x"] = trajectory.states;
  return j.dump(2);
}

}  // namespace nambu
