#include <doctest.h>

#include "bcm/errors.hpp"
#include "bcm/lattice_core.hpp"
#include "test_support.hpp"

using namespace bcm;
using bcm::testing::Rng;

namespace {

// c_t = sum over all (i, j) with i + j = t, enumerated by t.
Sequence convolve_by_enumeration(const Sequence& a, const Sequence& b) {
  if (a.empty() || b.empty()) return {};
  Sequence c;
  for (std::size_t t = 0; t < a.size() + b.size() - 1; ++t) {
    double s = 0.0;
    for (std::size_t i = 0; i <= t; ++i) {
      if (i < a.size() && t - i < b.size()) s += a[i] * b[t - i];
    }
    c.push_back(s);
  }
  return c;
}

}  // namespace

TEST_CASE("convolve examples") {
  CHECK(convolve(Sequence{1, 0, 0}, Sequence{2.5, -1, 4}) == Sequence{2.5, -1, 4, 0, 0});
  CHECK(convolve(Sequence{1, 1}, Sequence{1, 1}) == Sequence{1, 2, 1});
  CHECK(convolve(Sequence{1, -3}, Sequence{2, 0, 1}) == Sequence{2, -6, 1, -3});
  CHECK(convolve(Sequence{}, Sequence{1, 2}).empty());
}

TEST_CASE("convolve is commutative, bilinear and matches enumeration") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = rng.vector(static_cast<std::size_t>(rng.integer(1, 64)), 3.0);
    const auto b = rng.vector(static_cast<std::size_t>(rng.integer(1, 64)), 3.0);
    const auto c = rng.vector(b.size(), 3.0);
    const double alpha = rng.uniform(-2, 2);

    const Sequence ab = convolve(a, b);
    CHECK(bcm::testing::max_abs_diff(ab, convolve(b, a)) <= 1e-12);
    CHECK(bcm::testing::max_abs_diff(ab, convolve_by_enumeration(a, b)) <= 1e-12);

    Sequence mix(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) mix[i] = b[i] + alpha * c[i];
    const Sequence lhs = convolve(a, mix);
    const Sequence ac = convolve(a, c);
    Sequence rhs(lhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = ab[i] + alpha * ac[i];
    CHECK(bcm::testing::max_abs_diff(lhs, rhs) <= 1e-11);
  }
}

TEST_CASE("chebyshev_seq examples") {
  const double lambda = 0.37;
  CHECK(chebyshev_seq(3, lambda) == Sequence{0, 1, lambda, lambda * lambda - 1});
  CHECK(chebyshev_seq(5, 1.0) == Sequence{0, 1, 1, 0, -1, -1});
  CHECK(chebyshev_seq(5, 2.0) == Sequence{0, 1, 2, 3, 4, 5});
  CHECK_THROWS_AS(chebyshev_seq(0, 1.0), PreconditionError);
}

TEST_CASE("chebyshev_seq satisfies its recurrence") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const double lambda = rng.uniform(-4, 4);
    const Sequence t = chebyshev_seq(40, lambda);
    CHECK(t[0] == 0.0);
    CHECK(t[1] == 1.0);
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
      // Exact in exact arithmetic; rounding only.
      CHECK(std::abs(t[i + 1] + t[i - 1] - lambda * t[i]) <= 1e-12 * (1 + std::abs(t[i + 1])));
    }
  }
}

TEST_CASE("kappa_seq examples and recurrence") {
  CHECK(kappa_seq(TimeHorizon(1)) == Sequence{1});
  CHECK(kappa_seq(TimeHorizon(4)) == Sequence{0, -1, 0, 1});
  CHECK(kappa_seq(TimeHorizon(5)) == Sequence{1, 0, -1, 0, 1});
  for (int T = 1; T <= 30; ++T) {
    Sequence k = kappa_seq(TimeHorizon(T));
    REQUIRE(k.size() == static_cast<std::size_t>(T));
    CHECK(k.back() == 1.0);
    k.push_back(0.0);  // kappa_T
    for (int t = 1; t < T; ++t) CHECK(k[t + 1] + k[t - 1] == 0.0);
  }
}

TEST_CASE("domain type invariants") {
  CHECK_THROWS_AS(TimeHorizon(0), PreconditionError);
  CHECK_THROWS_AS(Potential(Sequence{}), PreconditionError);
  CHECK_THROWS_AS(Potential(Sequence{1.0, NAN}), PreconditionError);
  CHECK_THROWS_AS(ResponseKernel(Sequence{0.5, 1.0}), PreconditionError);
  CHECK_THROWS_AS(ControlSeq(Sequence{}), PreconditionError);
  CHECK_THROWS_AS((Tolerances{-1.0, 0.0, 0.0}.validate()), PreconditionError);

  const Potential b(Sequence{1.5, -2});
  CHECK(b(1) == 1.5);
  CHECK(b(2) == -2);
  CHECK(b(3) == 0.0);
  CHECK(Potential::empty().is_empty());

  const ControlSeq f(Sequence{4, 5});
  CHECK(f(-1) == 0.0);
  CHECK(f(1) == 5.0);
  CHECK(f(2) == 0.0);
}
