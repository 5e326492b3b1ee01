#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "nambu/lax.hpp"
#include "nambu/ring.hpp"
#include "nambu/sampling.hpp"
#include "support.hpp"

namespace nambu {
namespace {

using testing::P;
using testing::xs;

PolyMatrix matrix(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Polynomial>> out;
  for (const auto& row : rows) {
    out.emplace_back();
    for (const auto& e : row) out.back().push_back(P(e));
  }
  return PolyMatrix::from_rows(out);
}

FlowSystem solid_body() {
  return rhs_from_bracket(HamiltonianSystem(3, {P("(x^2 + y^2 + z^2)/2"), P("x + y + z")}));
}

LaxPair solid_body_pair() {
  return {matrix({{"x", "z", "y"}, {"z", "y", "x"}, {"y", "x", "z"}}),
          matrix({{"0", "-1/2", "1/2"}, {"1/2", "0", "-1/2"}, {"-1/2", "1/2", "0"}}),
          solid_body()};
}

LaxPair cubic_pair() {
  return {matrix({{"-x", "0", "1"}, {"-y", "0", "0"}, {"-z", "y/2", "0"}}),
          matrix({{"1", "1/2", "0"}, {"0", "1", "1"}, {"y/2", "x/2", "1"}}),
          rhs_from_bracket(HamiltonianSystem(3, {P("x*z - y^2/2 - x^3/3"), P("x^2/2 - z")}))};
}

TEST(Commutator, IdentityAndSelfCommute) {
  PolyMatrix A = matrix({{"x", "y^2"}, {"z", "x*y"}});
  PolyMatrix I = PolyMatrix::identity(2, 3);
  EXPECT_TRUE(commutator(I, A).is_zero());
  EXPECT_TRUE(commutator(A, A).is_zero());
}

TEST(Commutator, SolidBodyTopLeftEntryIsFlow) {
  LaxPair p = solid_body_pair();
  EXPECT_EQ(commutator(p.partner, p.lax)(0, 0), P("y - z"));
}

TEST(Commutator, SizeMismatchThrows) {
  EXPECT_THROW(commutator(PolyMatrix::identity(2, 3), PolyMatrix::identity(3, 3)), DimensionError);
}

TEST(LaxResidual, SolidBodyVanishes) {
  PolyMatrix r = lax_residual(solid_body_pair());
  EXPECT_TRUE(r.is_zero()) << r.to_string();
}

TEST(LaxResidual, FlowJacobianIsMinusTwoPartner) {
  LaxPair p = solid_body_pair();
  auto jac = flow_jacobian(p.flow);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(jac[r][c], p.partner(r, c) * Scalar(-2));
  }
}

// The printed pair for the cubic flow does not satisfy the Lax equation.
// Every other entry cancels, but the middle diagonal entry leaves -y, and
// tr L = -x is not conserved because x' = y.
TEST(LaxResidual, PrintedCubicPairLeavesMiddleEntry) {
  LaxPair p = cubic_pair();
  PolyMatrix r = lax_residual(p);
  PolyMatrix expected = matrix({{"0", "0", "0"}, {"0", "-y", "0"}, {"0", "0", "0"}});
  EXPECT_EQ(r, expected) << r.to_string();
  EXPECT_EQ(derivative_along(p.lax.trace(), p.flow), P("-y"));
}

TEST(LaxResidual, CubicTracesAreStillTheInvariants) {
  LaxPair p = cubic_pair();
  EXPECT_EQ(trace_invariant(p.lax, 2), P("x^2/2 - z"));
  EXPECT_EQ(trace_invariant(p.lax, 3), P("x*z - y^2/2 - x^3/3"));
  EXPECT_TRUE(derivative_along(P("x^2/2 - z"), p.flow).is_zero());
  EXPECT_TRUE(derivative_along(P("x*z - y^2/2 - x^3/3"), p.flow).is_zero());
}

TEST(LaxResidual, LinearInPartner) {
  LaxPair p = solid_body_pair();
  LaxPair doubled = p;
  doubled.partner = p.partner * Scalar(2);
  PolyMatrix dl = time_derivative(p.lax, p.flow);
  EXPECT_EQ(lax_residual(doubled), dl - commutator(p.partner, p.lax) * Scalar(2));
  EXPECT_EQ(lax_residual(doubled), dl * Scalar(-1));
}

TEST(TraceInvariant, SolidBody) {
  PolyMatrix L = solid_body_pair().lax;
  EXPECT_EQ(trace_invariant(L, 1), P("x + y + z"));
  EXPECT_EQ(trace_invariant(L, 2), P("3/2*(x^2 + y^2 + z^2)"));
  EXPECT_THROW(trace_invariant(L, 0), DomainError);
}

TEST(TraceInvariant, ConservedForVerifiedPair) {
  LaxPair p = solid_body_pair();
  for (std::uint32_t k = 1; k <= 4; ++k) {
    EXPECT_TRUE(derivative_along(trace_invariant(p.lax, k), p.flow).is_zero()) << k;
  }
}

TEST(TraceProperties, Cyclicity) {
  std::mt19937_64 rng(17);
  auto names = make_names(xs(3));
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::vector<Polynomial>> a(3), b(3);
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) {
        a[r].push_back(random_polynomial(rng, 3, 2, 0.3, names));
        b[r].push_back(random_polynomial(rng, 3, 2, 0.3, names));
      }
    }
    PolyMatrix A = PolyMatrix::from_rows(a), B = PolyMatrix::from_rows(b);
    EXPECT_EQ((A * B).trace(), (B * A).trace());
  }
}

TEST(ReduceModulo, CubeRootOfUnity) {
  auto names = make_names({"s"});
  Polynomial rel = parse_polynomial("s^2 + s + 1", names);
  EXPECT_EQ(reduce_modulo(parse_polynomial("s^3", names), 0, rel), Polynomial::constant(1, 1));
  EXPECT_EQ(reduce_modulo(parse_polynomial("s^2", names), 0, rel), parse_polynomial("-s - 1", names));
  EXPECT_THROW(reduce_modulo(parse_polynomial("s", names), 0, parse_polynomial("2*s^2", names)),
               DomainError);
}

TEST(RingPairs, ExactModuloCyclotomic) {
  for (std::size_t n = 2; n <= 8; ++n) {
    RingLaxPair ring = ring_lax_pair(n);
    PolyMatrix r = ring_lax_residual(ring);
    EXPECT_TRUE(r.is_zero()) << "n = " << n << ": " << r.to_string();
  }
}

TEST(RingPairs, UnreducedResidualIsNotZero) {
  // Without the cyclotomic relation the pair does not close.
  EXPECT_FALSE(lax_residual(ring_lax_pair(3).pair).is_zero());
}

TEST(RingPairs, SampledResidualAtPrimitiveRoot) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (std::size_t n = 2; n <= 6; ++n) {
    RingLaxPair ring = ring_lax_pair(n);
    std::vector<std::vector<double>> states(10, std::vector<double>(n));
    for (auto& s : states)
      for (auto& v : s) v = u(rng);
    std::complex<double> sigma = ring.sigma;
    EXPECT_LT(sampled_lax_residual(ring.pair, std::span(&sigma, 1), 1.0, states), 1e-10) << n;
  }
}

// The numeric route: L with σ as a parameter and M = Σ1 scaled by
// 1/(σ - σ^{n-1}) in floating point.
TEST(RingPairs, NumericScaleOnBareShift) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {3u, 4u, 5u}) {
    RingLaxPair ring = ring_lax_pair(n);
    LaxPair bare = ring.pair;
    PolyMatrix shift(n, n + 1, Scalar::Mode::kRational, ring.pair.lax(0, 0).names());
    for (std::size_t a = 0; a < n; ++a) shift.set((a + 1) % n, a, Polynomial::constant(n + 1, 1));
    bare.partner = shift;
    std::complex<double> sigma = ring.sigma;
    std::complex<double> scale = 1.0 / (sigma - std::pow(sigma, static_cast<int>(n - 1)));
    std::vector<std::vector<double>> states(10, std::vector<double>(n));
    for (auto& s : states)
      for (auto& v : s) v = u(rng);
    EXPECT_LT(sampled_lax_residual(bare, std::span(&sigma, 1), scale, states), 1e-10) << n;
  }
}

// The printed two-level matrix has an entry "c1 y" with no y in the system.
// Reading y as the parameter σ = -1 gives the pair verified here, whose
// half-trace of L^2 at σ = -1 is the conserved c1^2 - c0^2.
TEST(RingPairs, TwoLevelPairReadsYAsSigma) {
  RingLaxPair ring = ring_lax_pair(2);
  auto names = ring.pair.lax(0, 0).names();
  EXPECT_EQ(ring.pair.lax(1, 1), parse_polynomial("c1*s", names));
  EXPECT_EQ(ring.relation, parse_polynomial("s + 1", names));
  Polynomial half = reduce_modulo(trace_invariant(ring.pair.lax, 2), 2, ring.relation);
  EXPECT_EQ(half, parse_polynomial("c1^2 - c0^2", names));
}

TEST(PolyMatrix, RenderAndPower) {
  PolyMatrix A = matrix({{"x", "z"}, {"z", "y"}});
  EXPECT_EQ(A.to_string(), "[[x, z], [z, y]]");
  EXPECT_EQ(A.pow(2), A * A);
  EXPECT_EQ(A.pow(0), PolyMatrix::identity(2, 3));
}

}  // namespace
}  // namespace nambu
