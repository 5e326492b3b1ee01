#include "nambu/sampling.hpp"

namespace nambu {

namespace {

Scalar random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  return Scalar(num(rng), den(rng));
}

void enumerate(std::size_t dim, std::uint32_t remaining, Monomial& current, std::size_t slot,
               std::vector<Monomial>& out) {
  if (slot == dim) {
    out.push_back(current);
    return;
  }
  for (std::uint32_t e = 0; e <= remaining; ++e) {
    current[slot] = e;
    enumerate(dim, remaining - e, current, slot + 1, out);
  }
  current[slot] = 0;
}

}  // namespace

Polynomial random_polynomial(std::mt19937_64& rng, std::size_t dim, std::uint32_t max_degree,
                             double density, VariableNames names) {
  std::vector<Monomial> monomials;
  Monomial current(dim, 0);
  enumerate(dim, max_degree, current, 0, monomials);
  std::bernoulli_distribution keep(density);
  Polynomial out(dim, Scalar::Mode::kRational, names);
  for (const auto& m : monomials) {
    if (keep(rng)) out.add_term(m, random_rational(rng));
  }
  return out;
}

std::vector<Scalar> random_point(std::mt19937_64& rng, std::size_t dim) {
  std::vector<Scalar> point;
  point.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) point.push_back(random_rational(rng));
  return point;
}

}  // namespace nambu
