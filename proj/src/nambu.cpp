#include "nambu/nambu.hpp"

#include "nambu/flows.hpp"

namespace nambu {

HamiltonianSystem::HamiltonianSystem(std::size_t dim, std::vector<Polynomial> hamiltonians,
                                     std::string label)
    : dim_(dim), hamiltonians_(std::move(hamiltonians)), label_(std::move(label)) {
  if (hamiltonians_.empty() || hamiltonians_.size() + 1 > dim_) {
    throw DomainError("a system in dimension " + std::to_string(dim_) + " takes 1.." +
                      std::to_string(dim_ > 0 ? dim_ - 1 : 0) + " Hamiltonians, got " +
                      std::to_string(hamiltonians_.size()));
  }
  for (const auto& h : hamiltonians_) {
    if (h.dim() != dim_) throw DimensionError("Hamiltonian lives in the wrong dimension");
  }
}

namespace {

// All strictly increasing tuples of length r drawn from 0..n-1.
std::vector<IndexTuple> combinations(std::size_t n, std::size_t r) {
  std::vector<IndexTuple> out;
  if (r > n) return out;
  IndexTuple current(r);
  for (std::size_t i = 0; i < r; ++i) current[i] = i;
  while (true) {
    out.push_back(current);
    std::size_t i = r;
    while (i > 0 && current[i - 1] == n - r + i - 1) --i;
    if (i == 0) break;
    ++current[i - 1];
    for (std::size_t j = i; j < r; ++j) current[j] = current[j - 1] + 1;
  }
  return out;
}

DiffForm wedge_of_differentials(std::size_t dim, const std::vector<Polynomial>& fs,
                                const VariableNames& names) {
  DiffForm acc = DiffForm::scalar(Polynomial::constant(dim, Scalar(1), names));
  for (const auto& f : fs) acc = wedge(acc, differential(f));
  return acc;
}

}  // namespace

DiffForm theta_form(const Polynomial& hamiltonian, std::size_t m) {
  const std::size_t n = hamiltonian.dim();
  if (m == 0 || m > n) throw DomainError("theta degree out of range");
  DiffForm dh = differential(hamiltonian);
  DiffForm out(m, n, hamiltonian.names());
  for (const auto& tuple : combinations(n, m - 1)) {
    out += wedge(dh, DiffForm::basis(n, tuple, hamiltonian.names()));
  }
  return out;
}

PolyVector canonical_polyvector(const Polynomial& hamiltonian, std::size_t k) {
  const std::size_t n = hamiltonian.dim();
  if (k == 0 || k + 1 > n) {
    throw DomainError("polyvector degree " + std::to_string(k) + " outside 1.." +
                      std::to_string(n > 0 ? n - 1 : 0));
  }
  return volume_dual(theta_form(hamiltonian, n - k));
}

Polynomial nambu_bracket(const HamiltonianSystem& system, const Polynomial& g) {
  if (g.dim() != system.dim()) throw DimensionError("bracket argument in wrong dimension");
  PolyVector field = canonical_polyvector(g, system.arity());
  DiffForm wedge_form =
      wedge_of_differentials(system.dim(), system.hamiltonians(), g.names());
  return contract(field, wedge_form).as_function();
}

std::vector<Polynomial> coordinate_brackets(const HamiltonianSystem& system) {
  const auto& names = system.hamiltonians().front().names();
  DiffForm wedge_form = wedge_of_differentials(system.dim(), system.hamiltonians(), names);
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < system.dim(); ++i) {
    PolyVector field =
        canonical_polyvector(Polynomial::variable(system.dim(), i, names), system.arity());
    out.push_back(contract(field, wedge_form).as_function());
  }
  return out;
}

Polynomial field_bracket(const HamiltonianSystem& system, const Polynomial& g) {
  if (g.dim() != system.dim()) throw DimensionError("bracket argument in wrong dimension");
  const auto& hs = system.hamiltonians();
  PolyVector field = canonical_polyvector(hs.front(), system.arity());
  std::vector<Polynomial> rest(hs.begin() + 1, hs.end());
  rest.push_back(g);
  return contract(field, wedge_of_differentials(system.dim(), rest, g.names())).as_function();
}

Polynomial jacobian_bracket(const std::vector<Polynomial>& functions) {
  const std::size_t n = functions.size();
  for (const auto& f : functions) {
    if (f.dim() != n) {
      throw DomainError("Jacobian bracket needs exactly n functions of n variables");
    }
  }
  if (n == 0) return Polynomial::constant(0, Scalar(1));

  // Cofactor expansion along the first row over the remaining columns.
  std::vector<std::vector<Polynomial>> jac(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) jac[r].push_back(functions[r].differentiate(c));
  }
  auto det = [&](auto&& self, std::size_t row, std::vector<std::size_t>& cols) -> Polynomial {
    if (cols.size() == 1) return jac[row][cols[0]];
    Polynomial sum(n, Scalar::Mode::kRational, functions[0].names());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const Polynomial& entry = jac[row][cols[j]];
      if (entry.is_zero()) continue;
      std::vector<std::size_t> minor_cols = cols;
      minor_cols.erase(minor_cols.begin() + static_cast<std::ptrdiff_t>(j));
      Polynomial term = entry * self(self, row + 1, minor_cols);
      if (j % 2 == 0) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    return sum;
  };
  std::vector<std::size_t> cols(n);
  for (std::size_t c = 0; c < n; ++c) cols[c] = c;
  return det(det, 0, cols);
}

PolyVector vector_field(const std::vector<Polynomial>& components) {
  if (components.empty()) throw DomainError("empty vector field");
  const std::size_t n = components.size();
  PolyVector out(1, n, components.front().names());
  for (std::size_t i = 0; i < n; ++i) {
    if (components[i].dim() != n) throw DimensionError("vector field component dimension");
    out.add({i}, components[i]);
  }
  return out;
}

VectorHamiltonian flow_to_vector_hamiltonian(const PolyVector& field) {
  if (field.degree() != 1) throw DomainError("vector Hamiltonian needs a vector field");
  if (field.dim() < 2) throw DomainError("vector Hamiltonian needs dimension >= 2");
  DiffForm omega = contract(field, volume_form(field.dim(), field.names()));
  DiffForm d_omega = exterior_derivative(omega);
  if (!d_omega.is_zero()) {
    Polynomial divergence = d_omega.components().begin()->second;
    throw DivergenceError("field has nonzero divergence " + divergence.to_string(),
                          divergence);
  }
  return {homotopy(omega, false)};
}

PolyVector hamiltonian_field(const VectorHamiltonian& h) {
  return volume_dual(exterior_derivative(h.form));
}

CheckResult verify_factorization(const VectorHamiltonian& h,
                                 const std::vector<Polynomial>& hamiltonians) {
  DiffForm dh = exterior_derivative(h.form);
  if (hamiltonians.size() != dh.degree()) {
    throw DomainError("factorization needs " + std::to_string(dh.degree()) +
                      " Hamiltonians, got " + std::to_string(hamiltonians.size()));
  }
  DiffForm product = wedge_of_differentials(dh.dim(), hamiltonians, dh.names());
  // For the bracket flow, (X ⌟ Ω) ^ dx_i = (-1)^{n-1} X_i Ω, so the wedge
  // of differentials picks up this sign in even dimension.
  if (dh.dim() % 2 == 0) product = -product;
  DiffForm residual = product - dh;
  return {"factorization", "dh = (-1)^(n-1) dH1 ^ ... ^ dHk", residual.is_zero(),
          residual.to_string(), {}};
}

CheckResult liouville_check(const PolyVector& field) {
  if (field.degree() + 1 > field.dim()) throw DomainError("polyvector degree must be <= n-1");
  DiffForm residual =
      exterior_derivative(contract(field, volume_form(field.dim(), field.names())));
  return {"liouville", "d(X ⌟ Ω) = 0", residual.is_zero(), residual.to_string(), {}};
}

CartanVolume cartan_volume(const FlowSystem& flow) {
  const std::size_t n = flow.dim();
  const std::size_t ext = n + 1;
  std::vector<std::string> names_ext;
  const VariableNames& base_names =
      flow.rhs.front().names() ? flow.rhs.front().names() : default_names(n);
  names_ext.assign(base_names->begin(), base_names->end());
  names_ext.emplace_back("t");
  VariableNames ext_names = make_names(std::move(names_ext));

  DiffForm dt = DiffForm::basis(ext, {n}, ext_names);
  DiffForm volume = DiffForm::scalar(Polynomial::constant(ext, Scalar(1), ext_names));
  for (std::size_t i = 0; i < n; ++i) {
    DiffForm theta = DiffForm::basis(ext, {i}, ext_names);
    theta -= dt * flow.rhs[i].extend(ext, ext_names);
    volume = wedge(volume, theta);
  }

  DiffForm omega = volume_form(n, base_names).extend(ext, ext_names);
  PolyVector field = vector_field(flow.rhs);
  DiffForm flux = contract(field, volume_form(n, base_names)).extend(ext, ext_names);
  DiffForm flux_dt = wedge(flux, dt);
  DiffForm time_part = volume - omega;

  int sign = 0;
  if (!flux_dt.is_zero()) {
    if (time_part == flux_dt) {
      sign = 1;
    } else if (time_part == -flux_dt) {
      sign = -1;
    } else {
      throw Error("Cartan volume does not split as Ω ± (X ⌟ Ω) ^ dt");
    }
  }

  VectorHamiltonian h = flow_to_vector_hamiltonian(field);
  DiffForm volume_primitive = homotopy(omega);
  DiffForm primitive = volume_primitive;
  if (sign != 0) primitive += Scalar(sign) * wedge(h.form.extend(ext, ext_names), dt);
  DiffForm residual = exterior_derivative(primitive) - volume;
  return {volume, primitive, residual, sign, h, volume_primitive};
}

Polynomial involution_check(const VectorHamiltonian& h, const Polynomial& g) {
  return contract(hamiltonian_field(h), differential(g)).as_function();
}

Polynomial involution_check(const HamiltonianSystem& system, const Polynomial& g) {
  return nambu_bracket(system, g);
}

}  // namespace nambu
