#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "hardy/blaschke.hpp"
#include "hardy/errors.hpp"

using namespace hardy;

namespace {

cplx RandomDiskPoint(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(rmax * std::sqrt(u(rng)), 2.0 * 3.141592653589793 * u(rng));
}

bool ContainsPoint(const std::vector<cplx>& pts, cplx w, double tol) {
  return std::any_of(pts.begin(), pts.end(), [&](cplx v) { return std::abs(v - w) <= tol; });
}

}  // namespace

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(BlaschkeProduct({cplx(1.0, 0.0)}), ConfigurationError);
  CHECK_THROWS_AS(BlaschkeProduct({0.5}, cplx(2.0)), ConfigurationError);
  CHECK_NOTHROW(BlaschkeProduct({0.5}, cplx(0.6, 0.8)));
}

TEST_CASE("eval examples") {
  CHECK(std::abs(eval(BlaschkeProduct::monomial(2), cplx(0, 1)) - cplx(-1.0)) < 1e-15);
  const BlaschkeProduct half({0.5});
  CHECK(std::abs(eval(half, 0.0) - cplx(-0.5)) < 1e-15);
  CHECK(std::abs(eval(half, 1.0) - cplx(1.0)) < 1e-15);
  CHECK_THROWS_AS(eval(half, cplx(1.5)), ConfigurationError);
  const auto s = BlaschkeProduct({0.3, cplx(0.1, -0.6)}).sample(128);
  for (auto v : s.samples()) CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
}

TEST_CASE("boundary derivative modulus") {
  const auto d2 = boundary_derivative_modulus(BlaschkeProduct::monomial(2), 64);
  for (auto v : d2.samples()) CHECK(v == cplx(2.0));
  const auto d1 = boundary_derivative_modulus(BlaschkeProduct::monomial(1), 64);
  for (auto v : d1.samples()) CHECK(v == cplx(1.0));

  // Fiber sum of 1/|B'| equals 1 for B(0) = 0.
  const BlaschkeProduct b({0.0, 0.5});
  const auto dm = boundary_derivative_modulus(b, 256);
  for (auto v : dm.samples()) CHECK(v.real() > 0.0);
  for (std::size_t j = 0; j < 256; j += 17) {
    double sum = 0.0;
    for (cplx w : fibers(b, unit_root(j, 256))) sum += 1.0 / derivative_modulus(b, w);
    CHECK(std::abs(sum - 1.0) < 1e-8);
  }
}

TEST_CASE("fiber examples") {
  const auto f2 = fibers(BlaschkeProduct::monomial(2), 1.0);
  REQUIRE(f2.size() == 2);
  CHECK(std::abs(f2[0] - cplx(1.0)) < 1e-15);
  CHECK(std::abs(f2[1] - cplx(-1.0)) < 1e-15);

  const auto f3 = fibers(BlaschkeProduct::monomial(3), cplx(0, 1));
  REQUIRE(f3.size() == 3);
  for (cplx w : f3) CHECK(std::abs(w * w * w - cplx(0, 1)) < 1e-14);
  CHECK(std::abs(f3[0] - f3[1]) > 0.5);

  // z (z - 0.5) / (1 - 0.5 z) = 1  <=>  w^2 - 0.5 w = 1 - 0.5 w  <=>  w = +-1
  const BlaschkeProduct b({0.0, 0.5});
  const auto fb = fibers(b, 1.0);
  REQUIRE(fb.size() == 2);
  const double disc = std::sqrt(0.0 * 0.0 + 4.0 * 1.0);
  CHECK(ContainsPoint(fb, cplx((0.0 + disc) / 2.0), 1e-12));
  CHECK(ContainsPoint(fb, cplx((0.0 - disc) / 2.0), 1e-12));
  CHECK_THROWS_AS(fibers(BlaschkeProduct(), 1.0), ConfigurationError);
}

TEST_CASE("fiber properties") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<cplx> zeros{0.0};
    const int extra = 1 + trial % 3;
    for (int k = 0; k < extra; ++k) zeros.push_back(RandomDiskPoint(rng, 0.8));
    const BlaschkeProduct b(zeros, std::polar(1.0, 0.3 * trial));
    for (int j = 0; j < 8; ++j) {
      const cplx zeta = std::polar(1.0, 0.7 * j + 0.05);
      const auto pts = fibers(b, zeta);
      CHECK(pts.size() == b.degree());
      double sum = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(std::abs(b(pts[i]) - zeta) <= 1e-9);
        sum += 1.0 / derivative_modulus(b, pts[i]);
        for (std::size_t k = i + 1; k < pts.size(); ++k) CHECK(std::abs(pts[i] - pts[k]) > 1e-9);
      }
      CHECK(std::abs(sum - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("gcd and divides examples") {
  const cplx a = 0.3, b = cplx(0, 0.5), c = -0.4;
  const auto g = gcd(BlaschkeProduct({a, b}), BlaschkeProduct({a, c}));
  CHECK(same_zeros(g, BlaschkeProduct({a}), 1e-15));
  const BlaschkeProduct bb({a, b, b}, cplx(0, 1));
  CHECK(same_zeros(gcd(bb, bb), bb, 0.0));
  CHECK(gcd(bb, bb).constant() == cplx(1.0));
  CHECK(same_zeros(gcd(BlaschkeProduct::monomial(2), BlaschkeProduct::monomial(3)), BlaschkeProduct::monomial(2), 0.0));
  CHECK(divides(BlaschkeProduct::monomial(1), BlaschkeProduct::monomial(2)));
  CHECK_FALSE(divides(BlaschkeProduct::monomial(2), BlaschkeProduct::monomial(1)));
  CHECK(same_zeros(quotient(bb, BlaschkeProduct({b})), BlaschkeProduct({a, b}), 0.0));
  CHECK_THROWS_AS(quotient(bb, BlaschkeProduct({c})), ContractViolation);
}

TEST_CASE("gcd algebra on random triples") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, 4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> pool;
    for (int k = 0; k < 5; ++k) pool.push_back(RandomDiskPoint(rng, 0.9));
    auto draw = [&] {
      std::vector<cplx> z;
      for (int k = 0; k < 3; ++k) z.push_back(pool[static_cast<std::size_t>(pick(rng))]);
      return BlaschkeProduct(z);
    };
    const auto x = draw(), y = draw(), w = draw();
    CHECK(same_zeros(gcd(x, y), gcd(y, x), 0.0));
    CHECK(same_zeros(gcd(gcd(x, y), w), gcd(x, gcd(y, w)), 0.0));
    CHECK(divides(gcd(x, y), x));
    CHECK(divides(gcd(x, y), y));
  }
}

TEST_CASE("compose_zeros examples") {
  const auto z2 = BlaschkeProduct::monomial(2);
  CHECK(same_zeros(compose_zeros(BlaschkeProduct::monomial(1), z2), z2, 0.0));
  const auto sq = compose_zeros(BlaschkeProduct({0.25}), z2);
  CHECK(same_zeros(sq, BlaschkeProduct({0.5, -0.5}), 1e-15));

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const BlaschkeProduct chi({RandomDiskPoint(rng, 0.8), RandomDiskPoint(rng, 0.8)}, std::polar(1.0, 0.1 * trial));
    const BlaschkeProduct eta({0.0, RandomDiskPoint(rng, 0.8)});
    const auto comp = compose_zeros(chi, eta);
    CHECK(comp.degree() == 4);
    for (int j = 0; j < 16; ++j) {
      const cplx z = std::polar(1.0, 0.4 * j);
      CHECK(std::abs(comp(z) - chi(eta(z))) <= 1e-8);
    }
  }
}

TEST_CASE("gcd commutes with composition") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> deg(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const cplx shared = RandomDiskPoint(rng, 0.85);
    std::vector<cplx> z1{shared}, z2{shared};
    for (int k = 1; k < deg(rng); ++k) z1.push_back(RandomDiskPoint(rng, 0.85));
    for (int k = 1; k < deg(rng); ++k) z2.push_back(RandomDiskPoint(rng, 0.85));
    std::vector<cplx> ze{0.0};
    for (int k = 1; k < deg(rng); ++k) ze.push_back(RandomDiskPoint(rng, 0.85));
    const BlaschkeProduct chi1(z1), chi2(z2), eta(ze);
    const auto lhs = gcd(compose_zeros(chi1, eta), compose_zeros(chi2, eta));
    const auto rhs = compose_zeros(gcd(chi1, chi2), eta);
    CHECK(zero_set_distance(lhs, rhs) <= 1e-8);
  }
}
