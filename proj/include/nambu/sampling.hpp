#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "nambu/polynomial.hpp"

namespace nambu {

// Random polynomial in `dim` variables with total degree <= max_degree:
// each monomial is kept with probability `density`, and kept coefficients are
// rationals p/q with |p| <= 9, 1 <= q <= 4.
Polynomial random_polynomial(std::mt19937_64& rng, std::size_t dim, std::uint32_t max_degree,
                             double density = 0.5, VariableNames names = nullptr);

// Random rational point with entries p/q, |p| <= 9, 1 <= q <= 4.
std::vector<Scalar> random_point(std::mt19937_64& rng, std::size_t dim);

}  // namespace nambu
