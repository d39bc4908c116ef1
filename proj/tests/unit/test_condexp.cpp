#include <cmath>
#include <random>

#include "doctest.h"
#include "hardy/condexp.hpp"
#include "hardy/errors.hpp"

using namespace hardy;

namespace {

constexpr std::size_t kN = 1024;

GridFunction RandomTrig(std::mt19937_64& rng, int lo, int hi, std::size_t n = kN) {
  std::normal_distribution<double> g;
  SpectralFunction s(n);
  for (int k = lo; k <= hi; ++k) s.set(k, {g(rng), g(rng)});
  return synthesize(s);
}

GridFunction Power(const GridFunction& f, int k) {
  auto out = GridFunction::constant(f.size(), 1.0);
  for (int i = 0; i < k; ++i) out *= f;
  return out;
}

const BlaschkeProduct kZ2 = BlaschkeProduct::monomial(2);
const BlaschkeProduct kGeneral({0.0, cplx(0.4, 0.2)});

}  // namespace

TEST_CASE("condexp examples") {
  const auto z = GridFunction::identity(kN);
  CHECK(sup_norm(condexp(z, kZ2)) < 1e-15);
  const auto one = GridFunction::constant(kN, 1.0);
  const auto f = one + z + z * z + z * z * z;
  CHECK(sup_distance(condexp(f, kZ2), one + z * z) < 1e-14);
  for (std::size_t n : {2u, 3u, 4u}) {
    std::mt19937_64 rng(n);
    const auto g = RandomTrig(rng, -40, 40);
    const auto fiber = analyze(condexp(g, BlaschkeProduct::monomial(n)));
    const auto mult = analyze(multiplier_condexp(g, n));
    for (int k = fiber.min_frequency(); k <= fiber.max_frequency(); ++k) CHECK(std::abs(fiber.at(k) - mult.at(k)) < 1e-12);
  }
}

TEST_CASE("fiber tables") {
  const auto t2 = fiber_table(kZ2, kN);
  CHECK(t2->aligned);
  CHECK(t2->fiber_sum_defect == 0.0);
  CHECK(t2.get() == fiber_table(kZ2, kN).get());
  const auto t3 = fiber_table(BlaschkeProduct::monomial(3), kN);
  CHECK_FALSE(t3->aligned);
  const auto tg = fiber_table(kGeneral, kN);
  CHECK(tg->fiber_sum_defect < 1e-8);
  CHECK_THROWS_AS(fiber_table(BlaschkeProduct(), kN), ConfigurationError);
}

TEST_CASE("condexp contract on a general eta") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = RandomTrig(rng, -20, 20);
    const auto e = condexp(f, kGeneral);
    // constant on fibers
    const auto table = fiber_table(kGeneral, kN);
    const SpectralInterpolant ie(e);
    for (std::size_t j = 0; j < kN; j += 37) {
      for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(ie(table->points[j * 2 + i]) - e[j]) < 1e-8);
    }
    CHECK(sup_distance(condexp(e, kGeneral), e) < 1e-8);
    CHECK(std::abs(mean(e) - mean(f)) < 1e-9);
  }
}

TEST_CASE("weighted condexp examples") {
  std::mt19937_64 rng(2);
  const auto g = RandomTrig(rng, -10, 10);
  const auto one = GridFunction::constant(kN, 1.0);
  CHECK(sup_distance(weighted_condexp(g, kGeneral, one), condexp(g, kGeneral)) < 1e-13);

  const auto eta = kGeneral.sample(kN);
  const auto h = one + 0.3 * eta + 0.2 * Power(eta.conj(), 2);
  auto w = (one + 0.5 * (GridFunction::identity(kN) + GridFunction::identity(kN).conj())).map(
      [](cplx v) { return cplx(v.real() + 0.1); });
  CHECK(sup_distance(weighted_condexp(h, kGeneral, w), h) < 1e-9);

  CHECK_THROWS_AS(weighted_condexp(g, kGeneral, GridFunction::constant(kN, 0.0)), DegenerateWeight);
  CHECK_THROWS_AS(weighted_condexp(g, kGeneral, GridFunction::constant(kN, -1.0)), DegenerateWeight);
}

TEST_CASE("weighted contraction") {
  std::mt19937_64 rng(17);
  const auto z = GridFunction::identity(kN);
  const auto w = (GridFunction::constant(kN, 1.0) + 0.4 * (z + z.conj())).map([](cplx v) { return cplx(v.real()); });
  for (double p : {1.0, 4.0 / 3.0, 3.0, 4.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = RandomTrig(rng, -12, 12);
      const auto r = weighted_condexp(g, kGeneral, w);
      auto wnorm = [&](const GridFunction& x) {
        double acc = 0.0;
        for (std::size_t j = 0; j < kN; ++j) acc += std::pow(std::abs(x[j]), p) * w[j].real();
        return std::pow(acc / kN, 1.0 / p);
      };
      CHECK(wnorm(r) <= wnorm(g) * (1.0 + 1e-8));
    }
  }
}

TEST_CASE("averaging and measurability residuals") {
  std::mt19937_64 rng(23);
  const auto f = RandomTrig(rng, -16, 16);
  CHECK(averaging_residual(f, GridFunction::constant(kN, 2.0), kZ2) < 1e-13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = RandomTrig(rng, 0, 16), b = RandomTrig(rng, 0, 16);
    CHECK(averaging_residual(a, b, kZ2) <= 1e-8);
    CHECK(averaging_residual(a, b, kGeneral) <= 1e-7);
  }
  const auto eta = kGeneral.sample(kN);
  const auto h = GridFunction::constant(kN, 1.0) + 0.5 * eta;
  CHECK(averaging_residual(f, h, kGeneral) <= 1e-9);

  CHECK(measurability_residual(Power(eta, 3), kGeneral) < 1e-9);
  CHECK(measurability_residual(GridFunction::identity(kN), kZ2) == doctest::Approx(1.0));
  CHECK(measurability_residual(eta.conj(), kGeneral) <= 1e-9);
}

TEST_CASE("condexp invariants") {
  std::mt19937_64 rng(31);
  const std::vector<BlaschkeProduct> etas{kZ2, BlaschkeProduct::monomial(3), kGeneral};
  for (const auto& eta : etas) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto f = RandomTrig(rng, -24, 24);
      const auto e = condexp(f, eta);
      for (double p : {1.0, 4.0 / 3.0, 2.0, 3.0, 4.0}) {
        CHECK(pnorm(e, Exponent(p)) <= pnorm(f, Exponent(p)) * (1.0 + 1e-8));
      }
      if (trial % 20 == 0) {
        const auto pos = f.modulus();
        for (auto v : condexp(pos, eta).samples()) CHECK(v.real() >= -1e-10);
        const auto analytic = RandomTrig(rng, 0, 24);
        CHECK(negative_energy(condexp(analytic, eta)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("tower property on nested monomials") {
  std::mt19937_64 rng(41);
  const auto z4 = BlaschkeProduct::monomial(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = RandomTrig(rng, -30, 30);
    CHECK(sup_distance(condexp(f, z4), condexp(condexp(f, kZ2), z4)) < 1e-8);
  }
}
