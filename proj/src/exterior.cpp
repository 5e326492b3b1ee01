#include "nambu/exterior.hpp"

#include <algorithm>
#include <sstream>

namespace nambu {

int sort_with_sign(IndexTuple& indices) {
  int sign = 1;
  // Insertion sort; tuples are short.
  for (std::size_t i = 1; i < indices.size(); ++i) {
    for (std::size_t j = i; j > 0 && indices[j - 1] > indices[j]; --j) {
      std::swap(indices[j - 1], indices[j]);
      sign = -sign;
    }
  }
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) return 0;
  return sign;
}

template <Variance V>
Multivector<V>::Multivector(std::size_t degree, std::size_t dim, VariableNames names)
    : degree_(degree), dim_(dim), names_(std::move(names)) {
  if (degree_ > dim_ + 1) {
    throw DomainError("degree " + std::to_string(degree_) + " exceeds dimension " +
                      std::to_string(dim_));
  }
}

template <Variance V>
Multivector<V> Multivector<V>::basis(std::size_t dim, const IndexTuple& indices,
                                     const Polynomial& coeff) {
  Multivector out(indices.size(), dim, coeff.names());
  out.add(indices, coeff);
  return out;
}

template <Variance V>
Multivector<V> Multivector<V>::basis(std::size_t dim, const IndexTuple& indices,
                                     VariableNames names) {
  return basis(dim, indices, Polynomial::constant(dim, Scalar(1), std::move(names)));
}

template <Variance V>
Multivector<V> Multivector<V>::scalar(const Polynomial& f) {
  Multivector out(0, f.dim(), f.names());
  out.add({}, f);
  return out;
}

template <Variance V>
Polynomial Multivector<V>::component(const IndexTuple& indices) const {
  auto it = components_.find(indices);
  return it == components_.end() ? zero_coefficient() : it->second;
}

template <Variance V>
Polynomial Multivector<V>::as_function() const {
  if (degree_ != 0) throw DomainError("not a degree-0 element");
  return component({});
}

template <Variance V>
void Multivector<V>::add(const IndexTuple& indices, const Polynomial& coeff) {
  if (indices.size() != degree_) throw DomainError("index tuple length does not match degree");
  if (coeff.dim() != dim_) throw DimensionError("coefficient dimension mismatch");
  for (auto i : indices) {
    if (i >= dim_) throw DomainError("basis index out of range");
  }
  if (coeff.is_zero()) return;
  IndexTuple sorted = indices;
  int sign = sort_with_sign(sorted);
  if (sign == 0) return;
  if (!names_) names_ = coeff.names();
  auto it = components_.find(sorted);
  if (it == components_.end()) {
    components_.emplace(std::move(sorted), sign > 0 ? coeff : -coeff);
    return;
  }
  if (sign > 0) {
    it->second += coeff;
  } else {
    it->second -= coeff;
  }
  if (it->second.is_zero()) components_.erase(it);
}

template <Variance V>
void Multivector<V>::require_compatible(const Multivector& other) const {
  if (dim_ != other.dim_) throw DimensionError("ambient dimensions differ");
  if (degree_ != other.degree_) throw DomainError("degrees differ");
}

template <Variance V>
Multivector<V>& Multivector<V>::operator+=(const Multivector& other) {
  require_compatible(other);
  for (const auto& [idx, c] : other.components_) add(idx, c);
  return *this;
}

template <Variance V>
Multivector<V>& Multivector<V>::operator-=(const Multivector& other) {
  require_compatible(other);
  for (const auto& [idx, c] : other.components_) add(idx, -c);
  return *this;
}

template <Variance V>
Multivector<V>& Multivector<V>::operator*=(const Polynomial& f) {
  if (f.dim() != dim_) throw DimensionError("coefficient dimension mismatch");
  ComponentMap scaled;
  for (auto& [idx, c] : components_) {
    Polynomial p = c * f;
    if (!p.is_zero()) scaled.emplace(idx, std::move(p));
  }
  components_ = std::move(scaled);
  return *this;
}

template <Variance V>
Multivector<V>& Multivector<V>::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    components_.clear();
    return *this;
  }
  for (auto& [idx, c] : components_) c *= s;
  return *this;
}

template <Variance V>
Multivector<V> Multivector<V>::operator-() const {
  Multivector out = *this;
  for (auto& [idx, c] : out.components_) c = -c;
  return out;
}

template <Variance V>
Multivector<V> Multivector<V>::extend(std::size_t new_dim, VariableNames names) const {
  Multivector out(degree_, new_dim, names);
  for (const auto& [idx, c] : components_) out.add(idx, c.extend(new_dim, names));
  return out;
}

template <Variance V>
std::string Multivector<V>::to_string() const {
  if (components_.empty()) return "0";
  if (degree_ == 0) return components_.begin()->second.to_string();
  const VariableNames names = names_ ? names_ : default_names(dim_);
  std::ostringstream out;
  bool first = true;
  for (const auto& [idx, c] : components_) {
    std::string basis_text;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k > 0) basis_text += "^";
      basis_text += V == Variance::kCovariant ? "d" + (*names)[idx[k]]
                                              : "e" + std::to_string(idx[k]);
    }
    std::string coeff = c.to_string();
    bool negative = false;
    if (c.size() == 1) {
      if (coeff.front() == '-') {
        negative = true;
        coeff.erase(0, 1);
      }
    } else {
      coeff = "(" + coeff + ")";
    }
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (coeff != "1") out << coeff << "*";
    out << basis_text;
  }
  return out.str();
}

template class Multivector<Variance::kCovariant>;
template class Multivector<Variance::kContravariant>;

namespace {

template <Variance V>
Multivector<V> wedge_impl(const Multivector<V>& a, const Multivector<V>& b) {
  if (a.dim() != b.dim()) throw DimensionError("wedge operands live in different dimensions");
  if (a.degree() + b.degree() > a.dim()) {
    throw DomainError("wedge degree " + std::to_string(a.degree() + b.degree()) +
                      " exceeds dimension " + std::to_string(a.dim()));
  }
  Multivector<V> out(a.degree() + b.degree(), a.dim(), a.names() ? a.names() : b.names());
  for (const auto& [ia, ca] : a.components()) {
    for (const auto& [ib, cb] : b.components()) {
      IndexTuple joined = ia;
      joined.insert(joined.end(), ib.begin(), ib.end());
      out.add(joined, ca * cb);
    }
  }
  return out;
}

}  // namespace

DiffForm volume_form(std::size_t dim, VariableNames names) {
  IndexTuple all(dim);
  for (std::size_t i = 0; i < dim; ++i) all[i] = i;
  return DiffForm::basis(dim, all, std::move(names));
}

DiffForm differential(const Polynomial& f) {
  return exterior_derivative(DiffForm::scalar(f));
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) { return wedge_impl(a, b); }
PolyVector wedge(const PolyVector& a, const PolyVector& b) { return wedge_impl(a, b); }

DiffForm exterior_derivative(const DiffForm& form) {
  DiffForm out(form.degree() + 1, form.dim(), form.names());
  if (form.degree() >= form.dim()) return out;
  for (const auto& [idx, c] : form.components()) {
    for (std::size_t j = 0; j < form.dim(); ++j) {
      if (std::binary_search(idx.begin(), idx.end(), j)) continue;
      Polynomial dc = c.differentiate(j);
      if (dc.is_zero()) continue;
      IndexTuple joined{j};
      joined.insert(joined.end(), idx.begin(), idx.end());
      out.add(joined, dc);
    }
  }
  return out;
}

namespace {

// Removes index i from a sorted tuple; returns the sign (-1)^position or 0.
int remove_index(IndexTuple& tuple, std::size_t i) {
  auto it = std::lower_bound(tuple.begin(), tuple.end(), i);
  if (it == tuple.end() || *it != i) return 0;
  auto position = it - tuple.begin();
  tuple.erase(it);
  return position % 2 == 0 ? 1 : -1;
}

}  // namespace

DiffForm contract(const PolyVector& field, const DiffForm& form) {
  if (field.dim() != form.dim()) throw DimensionError("contraction dimension mismatch");
  if (field.degree() > form.degree()) {
    throw DomainError("cannot contract a degree-" + std::to_string(field.degree()) +
                      " polyvector into a degree-" + std::to_string(form.degree()) + " form");
  }
  DiffForm out(form.degree() - field.degree(), form.dim(),
               form.names() ? form.names() : field.names());
  for (const auto& [iv, cv] : field.components()) {
    for (const auto& [iw, cw] : form.components()) {
      IndexTuple remaining = iw;
      int sign = 1;
      for (auto i : iv) {
        sign *= remove_index(remaining, i);
        if (sign == 0) break;
      }
      if (sign == 0) continue;
      Polynomial coeff = cv * cw;
      out.add(remaining, sign > 0 ? coeff : -coeff);
    }
  }
  return out;
}

DiffForm lie_derivative(const PolyVector& field, const DiffForm& form) {
  if (field.degree() != 1) throw DomainError("Lie derivative needs a vector field (degree 1)");
  DiffForm out = exterior_derivative(contract(field, form));
  if (form.degree() < form.dim()) out += contract(field, exterior_derivative(form));
  return out;
}

DiffForm homotopy(const DiffForm& form, bool require_closed) {
  if (form.degree() == 0) throw DomainError("homotopy operator needs a form of degree >= 1");
  if (require_closed) {
    DiffForm residual = exterior_derivative(form);
    if (!residual.is_zero()) {
      throw NotClosedError("form is not closed: d(form) = " + residual.to_string(), residual);
    }
  }
  const std::size_t k = form.degree();
  DiffForm out(k - 1, form.dim(), form.names());
  for (const auto& [idx, c] : form.components()) {
    for (const auto& [m, coeff] : c.terms()) {
      Scalar weight = coeff / Scalar(static_cast<long>(total_degree(m) + k));
      for (std::size_t p = 0; p < idx.size(); ++p) {
        Monomial raised = m;
        ++raised[idx[p]];
        IndexTuple rest = idx;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
        out.add(rest, Polynomial::monomial(raised, p % 2 == 0 ? weight : -weight, c.names()));
      }
    }
  }
  return out;
}

PolyVector volume_dual(const DiffForm& form) {
  const std::size_t n = form.dim();
  const std::size_t k = n - form.degree();
  PolyVector out(k, n, form.names());
  for (const auto& [idx, c] : form.components()) {
    IndexTuple complement;
    std::size_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::binary_search(idx.begin(), idx.end(), i)) {
        complement.push_back(i);
        sum += i;
      }
    }
    bool negative = (sum - k * (k - 1) / 2) % 2 == 1;
    out.add(complement, negative ? -c : c);
  }
  return out;
}

}  // namespace nambu
