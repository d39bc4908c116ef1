#include <cmath>
#include <random>

#include "doctest.h"
#include "hardy/blaschke.hpp"
#include "hardy/errors.hpp"
#include "hardy/factorize.hpp"

using namespace hardy;

namespace {

constexpr std::size_t kN = 4096;

GridFunction Poly(std::initializer_list<cplx> c, std::size_t n = kN) {
  const std::vector<cplx> v(c);
  return GridFunction::polynomial(n, v);
}

double MaxRelative(const GridFunction& a, const GridFunction& b) {
  return sup_distance(a, b) / std::max(1e-300, sup_norm(b));
}

}  // namespace

TEST_CASE("outer_from_modulus examples") {
  const auto one = outer_from_modulus(OuterSpec{GridFunction::constant(kN, 1.0)});
  CHECK(sup_distance(one.values, GridFunction::constant(kN, 1.0)) < 1e-15);
  CHECK_FALSE(one.aliasing);

  // 1 + z is outer with positive value at 0 and modulus |1 + z|.
  const auto onepz = Poly({1.0, 1.0});
  const auto f = outer_from_modulus(OuterSpec{onepz.modulus()});
  CHECK(sup_distance(f.values, onepz) < 1e-7);
  CHECK(f.zeros.size() == 1);
  CHECK(f.zeros[0].first == kN / 2);
  CHECK(f.zeros[0].second == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(negative_energy(f.values) <= 1e-8);
  CHECK(mean(f.values).real() > 0.0);

  const auto ez = GridFunction::sample(kN, [](cplx z) { return std::exp(z); });
  const auto g = outer_from_modulus(OuterSpec{ez.modulus()});
  CHECK(sup_distance(g.values, ez) < 1e-12);
}

TEST_CASE("outer_from_modulus guards") {
  std::vector<cplx> m(kN, 1.0);
  for (std::size_t j = 0; j < kN / 10; ++j) m[j] = 0.0;
  CHECK_THROWS_AS(outer_from_modulus(OuterSpec{GridFunction(m)}), RejectedInput);
  std::vector<cplx> neg(kN, 1.0);
  neg[3] = -1.0;
  CHECK_THROWS_AS(outer_from_modulus(OuterSpec{GridFunction(neg)}), RejectedInput);
}

TEST_CASE("outer_from_modulus reproduces the modulus") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    SpectralFunction s(kN);
    for (int k = -6; k <= 6; ++k) s.set(k, {0.2 * g(rng), 0.0});
    // real log modulus: symmetrize to a real trigonometric polynomial
    auto logm = synthesize(s);
    logm = 0.5 * (logm + logm.conj());
    const auto modulus = logm.map([](cplx v) { return cplx(std::exp(v.real())); });
    const auto f = outer_from_modulus(OuterSpec{modulus});
    for (std::size_t j = 0; j < kN; ++j) {
      CHECK(std::abs(std::abs(f.values[j]) - modulus[j].real()) <= 1e-8 * modulus[j].real());
    }
    CHECK(negative_energy(f.values) <= 1e-8);
    CHECK(std::abs(mean(f.values) - std::exp(mean(logm).real())) < 1e-10);
  }
}

TEST_CASE("outer_power examples") {
  const auto ez = GridFunction::sample(kN, [](cplx z) { return std::exp(0.5 * z); });
  CHECK(sup_distance(outer_power(ez, 1.0), ez) < 1e-12);
  const auto half = outer_power(ez, 0.5);
  CHECK(sup_distance(half * half, ez) < 1e-8);

  const auto sq = Poly({1.0, 2.0, 1.0});
  CHECK(sup_distance(outer_power(sq, 0.5), Poly({1.0, 1.0})) < 1e-8);

  const auto f = Poly({1.0, 0.3});
  CHECK(sup_distance(outer_power(f, 0.7) * outer_power(f, 0.6), outer_power(f, 1.3)) < 1e-8);

  CHECK_THROWS_AS(outer_power(GridFunction::identity(kN).conj(), 0.5), ContractViolation);
}

TEST_CASE("inner_outer_split examples") {
  const auto z = GridFunction::identity(kN);
  const auto cube = z * z * z;
  const auto s1 = inner_outer_split(cube);
  CHECK(sup_distance(s1.inner, cube) < 1e-12);
  CHECK(sup_distance(s1.outer, GridFunction::constant(kN, 1.0)) < 1e-12);

  const auto onepz = Poly({1.0, 1.0});
  const auto s2 = inner_outer_split(onepz * z);
  CHECK(sup_distance(s2.inner, z) < 1e-6);
  CHECK(sup_distance(s2.outer, onepz) < 1e-7);

  const auto ez = GridFunction::sample(kN, [](cplx w) { return std::exp(w); });
  const auto s3 = inner_outer_split(ez);
  CHECK(sup_distance(s3.inner, GridFunction::constant(kN, 1.0)) < 1e-10);
  CHECK(sup_distance(s3.outer, ez) < 1e-10);
}

TEST_CASE("inner_outer_split on random polynomial times Blaschke") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    // decaying coefficients keep the polynomial zero-free near the circle
    std::vector<cplx> c{1.0};
    for (int k = 1; k <= 5; ++k) c.push_back(cplx(g(rng), g(rng)) * std::pow(0.25, k));
    const auto p = GridFunction::polynomial(1024, c);
    const BlaschkeProduct b({std::polar(0.8 * u(rng), 6.28 * u(rng)), std::polar(0.8 * u(rng), 6.28 * u(rng))});
    const auto f = p * b.sample(1024);
    const auto split = inner_outer_split(f);
    CHECK(MaxRelative(split.inner * split.outer, f) <= 1e-7);
    for (auto v : split.inner.samples()) CHECK(std::abs(std::abs(v) - 1.0) <= 1e-6);
    // inner part is the Blaschke factor up to a unimodular constant
    const cplx phase = split.inner[0] / b.sample(1024)[0];
    CHECK(sup_distance(split.inner, phase * b.sample(1024)) < 1e-9);
  }
}
