#include "nambu/ring.hpp"

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

namespace nambu {

GenPauliSet gen_pauli(std::size_t n) {
  if (n < 2) throw DomainError("generalized Pauli matrices need n >= 2");
  const auto size = static_cast<Eigen::Index>(n);
  GenPauliSet set;
  set.n = n;
  set.sigma = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(n));
  set.identity = Eigen::MatrixXcd::Identity(size, size);
  set.shift = Eigen::MatrixXcd::Zero(size, size);
  set.clock = Eigen::MatrixXcd::Zero(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    set.shift((i + 1) % size, i) = 1.0;
    set.clock(i, i) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) /
                                          static_cast<double>(n));
  }
  set.raise = set.identity;
  for (std::size_t k = 0; k + 1 < n; ++k) set.raise = set.raise * set.shift;
  return set;
}

PauliIdentityResiduals pauli_identity_residuals(const GenPauliSet& set) {
  PauliIdentityResiduals out;
  Eigen::MatrixXcd power = set.identity;
  std::complex<double> sigma_power = 1.0;
  std::complex<double> sigma_sum = 0.0;
  for (std::size_t k = 0; k < set.n; ++k) {
    power = power * set.shift;
    sigma_sum += sigma_power;
    sigma_power *= set.sigma;
  }
  out.shift_order = (power - set.identity).cwiseAbs().maxCoeff();
  out.sigma_order = std::abs(sigma_power - 1.0);
  out.sigma_sum = std::abs(sigma_sum);
  return out;
}

double c_series(std::size_t n, std::size_t j, double t, double tol) {
  if (n < 1 || j >= n) throw DomainError("series index out of range");
  if (!(tol > 0.0)) throw DomainError("series tolerance must be positive");
  // First term t^j / j!.
  double term = 1.0;
  for (std::size_t i = 1; i <= j; ++i) term *= t / static_cast<double>(i);
  const double tail_factor = std::exp(std::abs(t));
  double sum = 0.0;
  std::size_t index = j;
  while (true) {
    sum += term;
    // Next term of the subsequence: t^{index+n} / (index+n)!.
    double next = term;
    for (std::size_t i = 1; i <= n; ++i) next *= t / static_cast<double>(index + i);
    // The whole exponential tail from index+1 onward bounds the remainder.
    double bound = std::abs(term) * std::abs(t) / static_cast<double>(index + 1) * tail_factor;
    if (bound < tol || next == 0.0) break;
    term = next;
    index += n;
  }
  return sum;
}

std::vector<double> c_series_vector(std::size_t n, double t, double tol) {
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = c_series(n, j, t, tol);
  return out;
}

VariableNames ring_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  return make_names(std::move(names));
}

namespace {

FlowSystem ring_flow(std::size_t n) {
  VariableNames names = ring_names(n);
  FlowSystem flow;
  flow.provenance = "ring-" + std::to_string(n);
  for (std::size_t j = 0; j < n; ++j) flow.rhs.push_back(Polynomial::variable(n, (j + 1) % n, names));
  return flow;
}

}  // namespace

std::optional<Polynomial> ring_invariant(std::size_t n) {
  VariableNames names = ring_names(n);
  switch (n) {
    case 2:
      return parse_polynomial("c1^2 - c0^2", names);
    case 3:
      return parse_polynomial("c0^3 + c1^3 + c2^3 - 3*c0*c1*c2", names);
    case 4:
      return parse_polynomial("2*(2*c0*c2 - c1^2 - c3^2)", names);
    default:
      return std::nullopt;
  }
}

RingSystem ring_system(std::size_t n) {
  if (n < 2) throw DomainError("ring system needs n >= 2");
  RingSystem ring;
  ring.n = n;
  ring.flow = ring_flow(n);
  if (auto candidate = ring_invariant(n)) {
    Polynomial rate = derivative_along(*candidate, ring.flow);
    ring.conservation = rate;
    if (rate.is_zero()) ring.invariant = std::move(candidate);
  }
  return ring;
}

double exp_reconstruction_check(std::size_t n, double t) {
  GenPauliSet set = gen_pauli(n);
  Eigen::MatrixXd shift = set.shift.real();
  Eigen::MatrixXd exact = (t * shift).exp();
  std::vector<double> c = c_series_vector(n, t, 1e-17);
  Eigen::MatrixXd series = Eigen::MatrixXd::Zero(shift.rows(), shift.cols());
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(shift.rows(), shift.cols());
  for (std::size_t j = 0; j < n; ++j) {
    series += c[j] * power;
    power = power * shift;
  }
  return (exact - series).cwiseAbs().maxCoeff();
}

RingVectorHamiltonian ring_vector_hamiltonian(std::size_t n) {
  if (n != 3 && n != 4) throw DomainError("closed-form ring vector Hamiltonian exists for n = 3, 4");
  VariableNames names = ring_names(n);
  auto p = [&](const char* text) { return parse_polynomial(text, names); };

  DiffForm published(n - 2, n, names);
  if (n == 3) {
    published.add({0}, p("(c2^2 - 2*c0*c1)/4"));
    published.add({1}, p("(c0^2 - 2*c1*c2)/4"));
    published.add({2}, p("(c1^2 - 2*c0*c2)/4"));
  } else {
    published.add({0, 1}, p("(c3^2 - 2*c0*c2)/6"));
    published.add({2, 3}, p("(c1^2 - 2*c2*c0)/6"));
    published.add({0, 3}, p("(c2^2 - 2*c3*c1)/6"));
    published.add({2, 1}, p("(c0^2 - 2*c3*c1)/6"));
    published.add({1, 3}, p("2*(c3*c0 - c1*c2)/6"));
    published.add({0, 2}, p("2*(c0*c1 - c2*c3)/6"));
  }

  PolyVector field = vector_field(ring_flow(n).rhs);
  DiffForm flux = contract(field, volume_form(n, names));
  VectorHamiltonian homotopy = flow_to_vector_hamiltonian(field);
  DiffForm residual = exterior_derivative(published) - flux;
  DiffForm gauge = published - homotopy.form;
  const bool certified = residual.is_zero();
  const bool closed = exterior_derivative(gauge).is_zero();
  return {{published}, homotopy, residual, gauge, certified, closed};
}

namespace {

using Univariate = std::vector<Rational>;

void trim(Univariate& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Exact quotient of a by a monic b.
Univariate divide_exact(Univariate a, const Univariate& b) {
  const std::size_t db = b.size() - 1;
  Univariate q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    Rational c = a[i];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  trim(a);
  if (!a.empty()) throw Error("cyclotomic division left a remainder");
  return q;
}

// a mod monic m.
Univariate reduce(Univariate a, const Univariate& m) {
  const std::size_t dm = m.size() - 1;
  for (std::size_t i = a.size(); i-- > dm;) {
    Rational c = a[i];
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j <= dm; ++j) a[i - dm + j] -= c * m[j];
  }
  a.resize(std::min(a.size(), dm), 0);
  return a;
}

Univariate multiply(const Univariate& a, const Univariate& b) {
  Univariate out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Inverse of a in Q[s]/(m) by solving the multiplication-map system.
Univariate inverse_modulo(const Univariate& a, const Univariate& m) {
  const std::size_t d = m.size() - 1;
  std::vector<Univariate> cols;
  for (std::size_t k = 0; k < d; ++k) {
    Univariate basis(k + 1, 0);
    basis[k] = 1;
    Univariate col = reduce(multiply(a, basis), m);
    col.resize(d, 0);
    cols.push_back(col);
  }
  // Augmented rows: sum_k x_k cols[k][r] = delta_{r0}.
  std::vector<Univariate> rows(d, Univariate(d + 1, 0));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t k = 0; k < d; ++k) rows[r][k] = cols[k][r];
    rows[r][d] = r == 0 ? 1 : 0;
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t pivot = c;
    while (pivot < d && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == d) throw DomainError("element is not invertible modulo the relation");
    std::swap(rows[c], rows[pivot]);
    Rational inv = 1 / rows[c][c];
    for (auto& v : rows[c]) v *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || sgn(rows[r][c]) == 0) continue;
      Rational f = rows[r][c];
      for (std::size_t k = c; k <= d; ++k) rows[r][k] -= f * rows[c][k];
    }
  }
  Univariate x(d);
  for (std::size_t r = 0; r < d; ++r) x[r] = rows[r][d];
  return x;
}

Polynomial in_variable(const Univariate& coeffs, std::size_t dim, std::size_t var,
                       const VariableNames& names) {
  Polynomial out(dim, Scalar::Mode::kRational, names);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (sgn(coeffs[k]) == 0) continue;
    Monomial m(dim, 0);
    m[var] = static_cast<std::uint32_t>(k);
    out.add_term(m, Scalar(coeffs[k]));
  }
  return out;
}

}  // namespace

std::vector<Rational> cyclotomic(std::size_t n) {
  if (n < 1) throw DomainError("cyclotomic index must be positive");
  Univariate p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_exact(p, cyclotomic(d));
  }
  return p;
}

RingLaxPair ring_lax_pair(std::size_t n) {
  if (n < 2) throw DomainError("ring Lax pair needs n >= 2");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  names.emplace_back("s");
  VariableNames ext = make_names(std::move(names));
  const std::size_t dim = n + 1;
  const Univariate phi = cyclotomic(n);
  Polynomial relation = in_variable(phi, dim, n, ext);

  auto entry = [&](std::size_t c_index, std::size_t s_power) {
    Monomial m(dim, 0);
    m[c_index] = 1;
    m[n] = static_cast<std::uint32_t>(s_power);
    return Polynomial::monomial(m, Scalar(1), ext);
  };

  PolyMatrix lax(n, dim, Scalar::Mode::kRational, ext);
  PolyMatrix partner(n, dim, Scalar::Mode::kRational, ext);
  Polynomial scale(dim, Scalar::Mode::kRational, ext);
  if (n == 2) {
    lax.set(0, 0, entry(1, 0));
    lax.set(0, 1, entry(0, 0));
    lax.set(1, 0, entry(0, 1));
    lax.set(1, 1, entry(1, 1));
    scale = in_variable({0, Rational(1, 2)}, dim, n, ext);
  } else {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) lax.set(a, b, entry((b + n - a) % n, (2 * n - 1 - a - b) % n));
    }
    Univariate denom(n, 0);
    denom[1] += 1;
    denom[n - 1] -= 1;
    scale = in_variable(inverse_modulo(reduce(denom, phi), phi), dim, n, ext);
  }
  for (std::size_t a = 0; a < n; ++a) partner.set((a + 1) % n, a, scale);

  const std::complex<double> sigma =
      std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(n));
  return {{lax, partner, ring_flow(n)}, relation, sigma};
}

PolyMatrix ring_lax_residual(const RingLaxPair& ring) {
  return reduce_modulo(lax_residual(ring.pair), ring.pair.flow.dim(), ring.relation);
}

}  // namespace nambu
