#include <cmath>
#include <random>

#include "doctest.h"
#include "hardy/condexp.hpp"
#include "hardy/errors.hpp"
#include "hardy/fixtures.hpp"
#include "hardy/xp.hpp"

using namespace hardy;

namespace {

constexpr std::size_t kN = 4096;
const BlaschkeProduct kZ2 = BlaschkeProduct::monomial(2);

GridFunction OnePlusZ(std::size_t n) {
  return GridFunction::sample(n, [](cplx z) { return 1.0 + z; });
}

}  // namespace

TEST_CASE("validate_pair examples") {
  CHECK(validate_pair(kZ2, GridFunction::constant(kN, 1.0), Exponent(3)).pass());
  CHECK(validate_pair(kZ2, GridFunction::identity(kN), Exponent(4)).pass());

  const auto bad = validate_pair(kZ2, OnePlusZ(kN) * (1.0 / std::pow(6.0, 0.25)), Exponent(4));
  CHECK(bad.eta_ok());
  CHECK(bad.norm_ok());
  CHECK(bad.h2_ok());
  CHECK_FALSE(bad.orthogonality_ok());
  CHECK_FALSE(bad.pass());
  // G = (1 + z)^2 / sqrt 6 and conj(z^2) G has coefficient 1/sqrt 6 at k = 0.
  CHECK(bad.eta_orthogonality == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-6));

  const auto good = fixtures::z2_sqrt1pz(Exponent(4), kN);
  CHECK(good.valid());
  CHECK(good.report().norm_defect < 1e-12);

  CHECK_THROWS_AS(validate_pair(kZ2, GridFunction::identity(kN), Exponent(2)), ConfigurationError);
  CHECK_FALSE(validate_pair(BlaschkeProduct({0.3, 0.0}), GridFunction::identity(kN), Exponent(4)).pass());
}

TEST_CASE("pair factorization invariants") {
  for (double p : {1.0, 4.0 / 3.0, 3.0, 4.0}) {
    for (const auto& fx : fixtures::standard_pairs(Exponent(p), kN)) {
      INFO(fx.name << " p=" << p);
      const auto& pair = fx.pair;
      CHECK(pair.valid());
      CHECK(std::abs(pair.eta()(0.0)) <= 1e-10);
      CHECK(std::abs(pnorm(pair.phi(), pair.p()) - 1.0) <= 1e-8);
      CHECK(sup_distance(pair.xi() * pair.F(), pair.phi()) <= 1e-7 * sup_norm(pair.phi()));
      for (auto v : pair.xi().samples()) CHECK(std::abs(std::abs(v) - 1.0) <= 1e-6);
    }
  }
}

TEST_CASE("orthonormality defect examples") {
  CHECK(orthonormality_defect(fixtures::z2_one(Exponent(3), kN), 8) < 1e-15);
  CHECK(orthonormality_defect(fixtures::z2_z(Exponent(3), kN), 8) <= 1e-10);
  CHECK(orthonormality_defect(fixtures::z2_sqrt1pz(Exponent(4), kN), 8) <= 1e-7);
  const auto bad = XpPair(kZ2, OnePlusZ(kN) * (1.0 / std::pow(6.0, 0.25)), Exponent(4));
  CHECK(orthonormality_defect(bad, 8) > 1e-2);
}

TEST_CASE("apply_T examples") {
  const auto pair = fixtures::z2_z(Exponent(4), kN);
  CHECK(sup_distance(apply_T(pair, GridFunction::constant(kN, 1.0)), pair.phi()) < 1e-14);
  const auto z = GridFunction::identity(kN);
  CHECK(sup_distance(apply_T(pair, z), z * z * z) < 1e-13);
  CHECK_THROWS_AS(apply_T(pair, z.conj()), ContractViolation);

  const auto branch = fixtures::z2_sqrt1pz(Exponent(4), fixtures::kBranchPointGrid);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = fixtures::random_polynomial(rng, 32, fixtures::kBranchPointGrid);
    const auto tf = apply_T(branch, f);
    CHECK(std::abs(pnorm(tf, Exponent(4)) - pnorm(f, Exponent(4))) <= 1e-6 * pnorm(f, Exponent(4)));
  }
}

TEST_CASE("pushforward of the weighted measure") {
  std::mt19937_64 rng(8);
  for (const auto& fx : fixtures::standard_pairs(Exponent(3), kN)) {
    INFO(fx.name);
    const auto w = weight_of(fx.pair);
    for (int trial = 0; trial < 50; ++trial) {
      const auto h = fixtures::random_trig(rng, -6, 6, fx.pair.grid_size());
      const auto hh = compose_with(h, fx.pair.eta());
      CHECK(std::abs(mean(hh * w) - mean(h)) <= 1e-7);
    }
  }
}

TEST_CASE("range characterization of T") {
  std::mt19937_64 rng(9);
  for (const auto& fx : fixtures::standard_pairs(Exponent(4), kN)) {
    INFO(fx.name);
    auto f = fixtures::random_polynomial(rng, 12, fx.pair.grid_size());
    f *= 1.0 / pnorm(f, fx.pair.p());
    const auto tf = apply_T(fx.pair, f);
    CHECK(negative_energy(tf) <= 1e-7);
    if (fx.name == "z2_sqrt1pz") continue;  // phi vanishes at -1
    std::vector<cplx> ratio(tf.size());
    for (std::size_t j = 0; j < tf.size(); ++j) ratio[j] = tf[j] / fx.pair.phi()[j];
    CHECK(measurability_residual(GridFunction(ratio), fx.pair.eta()) <= 1e-6);
  }
}

TEST_CASE("canonicalize examples") {
  const auto z = GridFunction::identity(kN);
  const auto c1 = canonicalize(kZ2, z, BlaschkeProduct::monomial(1), Exponent(4));
  CHECK(same_zeros(c1.xi, BlaschkeProduct::monomial(1), 0.0));
  CHECK(sup_distance(c1.outer, GridFunction::constant(kN, 1.0)) < 1e-12);
  CHECK(c1.pair.valid());

  const auto phi0 = z * z * OnePlusZ(kN) * (1.0 / std::pow(6.0, 0.25));
  const auto c2 = canonicalize(kZ2, phi0, BlaschkeProduct::monomial(2), Exponent(4));
  CHECK(c2.xi.degree() == 0);

  const auto c3 = canonicalize(kZ2, z * z * z, BlaschkeProduct::monomial(3), Exponent(4));
  CHECK(same_zeros(c3.xi, BlaschkeProduct::monomial(1), 0.0));
  CHECK(c3.pair.valid());

  for (double p : {1.0, 3.0, 4.0}) {
    const auto in = fixtures::degree_two_input(Exponent(p), kN);
    const auto c = canonicalize(in.eta, in.phi0, in.theta, Exponent(p));
    CHECK(same_zeros(c.xi, BlaschkeProduct::monomial(1), 0.0));
    CHECK(c.pair.valid());
    CHECK(sup_distance(c.pair.phi(), in.phi_true) < 1e-8);
  }
  CHECK_THROWS_AS(canonicalize(BlaschkeProduct({0.5}), z, BlaschkeProduct::monomial(1), Exponent(4)),
                  ConfigurationError);
}

TEST_CASE("composition with a monomial matches spectral interpolation") {
  std::mt19937_64 rng(5);
  const GridFunction f = fixtures::random_polynomial(rng, 24, kN);
  const GridFunction fast = compose_with(f, BlaschkeProduct::monomial(3));
  const SpectralInterpolant interp(f);
  std::vector<cplx> pts(kN), slow(kN);
  for (std::size_t j = 0; j < kN; ++j) pts[j] = std::pow(unit_root(j, kN), 3);
  interp.evaluate(pts, slow);
  CHECK(sup_distance(fast, GridFunction(slow)) <= 1e-12);
  // A non-trivial constant takes the interpolation path.
  const cplx c = std::polar(1.0, 0.3);
  const GridFunction rotated = compose_with(f, BlaschkeProduct::monomial(3, c));
  for (std::size_t j = 0; j < kN; ++j) pts[j] *= c;
  interp.evaluate(pts, slow);
  CHECK(sup_distance(rotated, GridFunction(slow)) <= 1e-12);
}
