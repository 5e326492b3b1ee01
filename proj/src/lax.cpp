#include "nambu/lax.hpp"

#include <sstream>

namespace nambu {

PolyMatrix::PolyMatrix(std::size_t size, std::size_t dim, Scalar::Mode mode,
                       VariableNames names)
    : size_(size), dim_(dim), mode_(mode),
      entries_(size * size, Polynomial(dim, mode, names)) {}

PolyMatrix PolyMatrix::from_rows(const std::vector<std::vector<Polynomial>>& rows) {
  if (rows.empty()) throw DomainError("matrix needs at least one row");
  const std::size_t m = rows.size();
  const Polynomial& first = rows.front().front();
  PolyMatrix out(m, first.dim(), first.mode(), first.names());
  for (std::size_t r = 0; r < m; ++r) {
    if (rows[r].size() != m) throw DimensionError("matrix must be square");
    for (std::size_t c = 0; c < m; ++c) out.set(r, c, rows[r][c]);
  }
  return out;
}

PolyMatrix PolyMatrix::identity(std::size_t size, std::size_t dim, VariableNames names) {
  PolyMatrix out(size, dim, Scalar::Mode::kRational, names);
  for (std::size_t i = 0; i < size; ++i) out.set(i, i, Polynomial::constant(dim, Scalar(1), names));
  return out;
}

void PolyMatrix::set(std::size_t r, std::size_t c, Polynomial value) {
  if (r >= size_ || c >= size_) throw DomainError("matrix index out of range");
  if (value.dim() != dim_) throw DimensionError("matrix entry in the wrong dimension");
  if (value.mode() != mode_) throw ModeError("matrix entry in the wrong scalar mode");
  entries_[r * size_ + c] = std::move(value);
}

void PolyMatrix::require_compatible(const PolyMatrix& other) const {
  if (size_ != other.size_) throw DimensionError("matrix sizes differ");
  if (dim_ != other.dim_) throw DimensionError("matrix entry dimensions differ");
  if (mode_ != other.mode_) throw ModeError("matrix scalar modes differ");
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

PolyMatrix& PolyMatrix::operator*=(const Scalar& s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  a.require_compatible(b);
  PolyMatrix out(a.size_, a.dim_, a.mode_, a(0, 0).names());
  for (std::size_t r = 0; r < a.size_; ++r) {
    for (std::size_t c = 0; c < a.size_; ++c) {
      Polynomial sum(a.dim_, a.mode_, a(0, 0).names());
      for (std::size_t k = 0; k < a.size_; ++k) {
        if (a(r, k).is_zero() || b(k, c).is_zero()) continue;
        sum += a(r, k) * b(k, c);
      }
      out.entries_[r * a.size_ + c] = std::move(sum);
    }
  }
  return out;
}

Polynomial PolyMatrix::trace() const {
  Polynomial sum(dim_, mode_, entries_.front().names());
  for (std::size_t i = 0; i < size_; ++i) sum += (*this)(i, i);
  return sum;
}

PolyMatrix PolyMatrix::pow(std::uint32_t k) const {
  PolyMatrix result = identity(size_, dim_, entries_.front().names());
  if (mode_ == Scalar::Mode::kComplex) {
    for (auto& e : result.entries_) e = e.to_complex();
    result.mode_ = mode_;
  }
  for (std::uint32_t i = 0; i < k; ++i) result = result * *this;
  return result;
}

bool PolyMatrix::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

PolyMatrix PolyMatrix::extend(std::size_t new_dim, VariableNames names) const {
  PolyMatrix out(size_, new_dim, mode_, names);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out.entries_[i] = entries_[i].extend(new_dim, names);
  }
  return out;
}

Eigen::MatrixXcd PolyMatrix::evaluate(std::span<const std::complex<double>> point) const {
  Eigen::MatrixXcd out(size_, size_);
  for (std::size_t r = 0; r < size_; ++r) {
    for (std::size_t c = 0; c < size_; ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          (*this)(r, c).evaluate(point);
    }
  }
  return out;
}

std::string PolyMatrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t r = 0; r < size_; ++r) {
    out << (r ? ", [" : "[");
    for (std::size_t c = 0; c < size_; ++c) out << (c ? ", " : "") << (*this)(r, c).to_string();
    out << "]";
  }
  out << "]";
  return out.str();
}

PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b) { return a * b - b * a; }

Polynomial derivative_along(const Polynomial& f, const FlowSystem& flow) {
  if (f.dim() < flow.dim()) throw DimensionError("function has fewer variables than the flow");
  Polynomial sum(f.dim(), f.mode(), f.names());
  for (std::size_t i = 0; i < flow.dim(); ++i) {
    Polynomial rate = flow.rhs[i].extend(f.dim(), f.names());
    if (f.mode() == Scalar::Mode::kComplex) rate = rate.to_complex();
    sum += f.differentiate(i) * rate;
  }
  return sum;
}

PolyMatrix time_derivative(const PolyMatrix& m, const FlowSystem& flow) {
  PolyMatrix out(m.size(), m.dim(), m.mode(), m(0, 0).names());
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m.size(); ++c) out.set(r, c, derivative_along(m(r, c), flow));
  }
  return out;
}

PolyMatrix lax_residual(const LaxPair& pair) {
  if (pair.lax.size() != pair.partner.size()) throw DimensionError("L and M sizes differ");
  return time_derivative(pair.lax, pair.flow) - commutator(pair.partner, pair.lax);
}

Polynomial trace_invariant(const PolyMatrix& lax, std::uint32_t k) {
  if (k == 0) throw DomainError("trace invariant power must be >= 1");
  Polynomial tr = lax.pow(k).trace();
  if (k == 1) return tr;
  Rational inv_k(1);
  inv_k /= k;
  Scalar inv = tr.mode() == Scalar::Mode::kComplex ? Scalar::complex(inv_k, 0) : Scalar(inv_k);
  return tr * inv;
}

Polynomial reduce_modulo(const Polynomial& p, std::size_t var, const Polynomial& relation) {
  if (var >= p.dim()) throw DomainError("reduction variable out of range");
  if (relation.dim() != p.dim()) throw DimensionError("relation in the wrong dimension");
  std::uint32_t degree = 0;
  Scalar lead;
  for (const auto& [m, c] : relation.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != var && m[i] != 0) throw DomainError("relation must involve only the reduced variable");
    }
    if (m[var] >= degree) {
      degree = m[var];
      lead = c;
    }
  }
  if (degree == 0) throw DomainError("relation must have positive degree");
  if (!lead.is_one()) throw DomainError("relation must be monic");
  Monomial top(p.dim(), 0);
  top[var] = degree;
  // s^degree == -tail
  Polynomial replacement = -(relation - Polynomial::monomial(top, lead, relation.names()));

  Polynomial current = p;
  while (true) {
    Polynomial kept(p.dim(), p.mode(), p.names());
    Polynomial rewritten(p.dim(), p.mode(), p.names());
    bool changed = false;
    for (const auto& [m, c] : current.terms()) {
      if (m[var] < degree) {
        kept.add_term(m, c);
        continue;
      }
      changed = true;
      Monomial rest = m;
      rest[var] -= degree;
      Polynomial lowered = Polynomial::monomial(rest, c, p.names()) * replacement;
      rewritten += lowered;
    }
    if (!changed) return current;
    current = kept + rewritten;
  }
}

PolyMatrix reduce_modulo(const PolyMatrix& m, std::size_t var, const Polynomial& relation) {
  PolyMatrix out(m.size(), m.dim(), m.mode(), m(0, 0).names());
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m.size(); ++c) out.set(r, c, reduce_modulo(m(r, c), var, relation));
  }
  return out;
}

double sampled_lax_residual(const LaxPair& pair,
                            std::span<const std::complex<double>> parameters,
                            std::complex<double> partner_scale,
                            const std::vector<std::vector<double>>& states) {
  const std::size_t n = pair.flow.dim();
  if (n + parameters.size() != pair.lax.dim()) {
    throw DimensionError("flow variables plus parameters must match the matrix dimension");
  }
  PolyMatrix dl = time_derivative(pair.lax, pair.flow);
  double worst = 0.0;
  std::vector<std::complex<double>> point(pair.lax.dim());
  for (const auto& state : states) {
    if (state.size() != n) throw DimensionError("sample state has the wrong length");
    for (std::size_t i = 0; i < n; ++i) point[i] = state[i];
    for (std::size_t p = 0; p < parameters.size(); ++p) point[n + p] = parameters[p];
    Eigen::MatrixXcd l = pair.lax.evaluate(point);
    Eigen::MatrixXcd m = partner_scale * pair.partner.evaluate(point);
    Eigen::MatrixXcd r = dl.evaluate(point) - (m * l - l * m);
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace nambu
