#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hardy/circlefft.hpp"
#include "hardy/errors.hpp"

using namespace hardy;

namespace {

constexpr std::size_t kN = 256;

GridFunction RandomBandLimited(std::size_t n, int band, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  SpectralFunction s(n);
  for (int k = -band; k <= band; ++k) s.set(k, {g(rng), g(rng)});
  return synthesize(s);
}

double MaxCoeffDiff(const SpectralFunction& a, const SpectralFunction& b) {
  double worst = 0.0;
  for (int k = a.min_frequency(); k <= a.max_frequency(); ++k) worst = std::max(worst, std::abs(a.at(k) - b.at(k)));
  return worst;
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(GridFunction(std::vector<cplx>(100)), ConfigurationError);
  CHECK_THROWS_AS(GridFunction(std::vector<cplx>(32)), ConfigurationError);
  std::vector<cplx> bad(64);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(GridFunction{bad}, ConfigurationError);
  CHECK_NOTHROW(GridFunction(std::vector<cplx>(64)));
  CHECK_THROWS_AS(Exponent(0.5), ConfigurationError);
  CHECK_THROWS_AS(Exponent(2.0).require_not_two(), ConfigurationError);
}

TEST_CASE("unit roots hit the axes exactly") {
  CHECK(unit_root(0, 64) == cplx(1, 0));
  CHECK(unit_root(16, 64) == cplx(0, 1));
  CHECK(unit_root(32, 64) == cplx(-1, 0));
  CHECK(unit_root(48, 64) == cplx(0, -1));
  for (std::size_t j = 0; j < 64; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / 64.0;
    CHECK(std::abs(unit_root(j, 64) - std::polar(1.0, t)) < 1e-15);
  }
}

TEST_CASE("analyze on monomials and binomials") {
  const auto z = GridFunction::identity(kN);
  auto c = analyze(z);
  CHECK(std::abs(c.at(1) - 1.0) < 1e-15);
  c.set(1, 0.0);
  CHECK(MaxCoeffDiff(c, SpectralFunction(kN)) < 1e-15);

  const auto one = analyze(GridFunction::constant(kN, 1.0));
  CHECK(std::abs(one.at(0) - 1.0) < 1e-15);

  const auto sq = analyze(GridFunction::sample(kN, [](cplx w) { return (1.0 + w) * (1.0 + w); }));
  CHECK(std::abs(sq.at(0) - 1.0) < 1e-14);
  CHECK(std::abs(sq.at(1) - 2.0) < 1e-14);
  CHECK(std::abs(sq.at(2) - 1.0) < 1e-14);
  CHECK(std::abs(sq.at(3)) < 1e-14);
}

TEST_CASE("synthesize inverts analyze") {
  SpectralFunction s(kN);
  s.set(0, 1.0);
  CHECK(sup_distance(synthesize(s), GridFunction::constant(kN, 1.0)) < 1e-15);
  SpectralFunction t(kN);
  t.set(-1, 1.0);
  CHECK(sup_distance(synthesize(t), GridFunction::identity(kN).conj()) < 1e-14);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  SpectralFunction r(kN);
  for (int k = r.min_frequency(); k <= r.max_frequency(); ++k) r.set(k, {g(rng), g(rng)});
  const auto back = analyze(synthesize(r));
  double scale = 0.0;
  for (auto v : r.shifted()) scale = std::max(scale, std::abs(v));
  CHECK(MaxCoeffDiff(back, r) <= 1e-12 * scale);
}

TEST_CASE("pnorm examples") {
  for (double p : {1.0, 1.5, 3.0, 4.0}) {
    CHECK(pnorm(GridFunction::constant(kN, 1.0), Exponent(p)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pnorm(GridFunction::identity(kN), Exponent(p)) == doctest::Approx(1.0).epsilon(1e-14));
  }
  // |1+e^{it}|^4 = (2 + 2 cos t)^2 integrates to 4 + 2 = 6 over the normalized circle.
  double quad = 0.0;
  const int m = 1000;
  for (int j = 0; j < m; ++j) {
    const double t = 2.0 * std::numbers::pi * j / m;
    quad += std::pow(2.0 + 2.0 * std::cos(t), 2) / m;
  }
  const auto onepz = GridFunction::sample(kN, [](cplx w) { return 1.0 + w; });
  CHECK(pnorm(onepz, Exponent(4)) == doctest::Approx(std::pow(quad, 0.25)).epsilon(1e-12));
  CHECK(pnorm(onepz, Exponent(4)) == doctest::Approx(std::pow(6.0, 0.25)).epsilon(1e-12));
}

TEST_CASE("riesz examples") {
  const auto z = GridFunction::identity(kN);
  const auto one = GridFunction::constant(kN, 1.0);
  CHECK(sup_norm(riesz(z.conj())) < 1e-15);
  CHECK(sup_distance(riesz(one + z + z.conj()), one + z) < 1e-14);
  const auto cube = GridFunction::sample(kN, [](cplx w) { return std::pow(1.0 + w, 3); });
  CHECK(sup_distance(riesz(cube), cube) < 1e-13);
}

TEST_CASE("hilbert examples") {
  CHECK(sup_norm(hilbert(GridFunction::constant(kN, 1.0))) < 1e-15);
  const auto cosf = GridFunction::sample(kN, [](cplx w) { return cplx(w.real()); });
  const auto sinf = GridFunction::sample(kN, [](cplx w) { return cplx(w.imag()); });
  CHECK(sup_distance(hilbert(cosf), sinf) < 1e-14);
  CHECK(sup_distance(hilbert(sinf), -1.0 * cosf) < 1e-14);
}

TEST_CASE("negative energy examples") {
  const auto z = GridFunction::identity(kN);
  CHECK(negative_energy(z * z * z) < 1e-15);
  CHECK(negative_energy(z.conj()) == doctest::Approx(1.0));
  const auto f = GridFunction::constant(kN, 2.0) + 0.5 * (z.conj() * z.conj());
  CHECK(negative_energy(f) == doctest::Approx(0.5));
}

TEST_CASE("circlefft properties") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = RandomBandLimited(kN, 40, rng);
    // Parseval
    const auto c = analyze(f);
    double lhs = 0.0;
    for (auto v : c.shifted()) lhs += std::norm(v);
    const double rhs = std::pow(pnorm(f, Exponent(2)), 2);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);

    const auto r = riesz(f);
    CHECK(sup_distance(riesz(r), r) < 1e-12);

    // I + iH = 2R - E
    const auto lhs_op = f + cplx(0, 1) * hilbert(f);
    const auto rhs_op = 2.0 * r - GridFunction::constant(kN, mean(f));
    CHECK(sup_distance(lhs_op, rhs_op) <= 1e-10);

    // H^2 = -(I - E)
    const auto centered = f - GridFunction::constant(kN, mean(f));
    CHECK(sup_distance(hilbert(hilbert(centered)), -1.0 * centered) <= 1e-10);

    const cplx s(g(rng), g(rng));
    for (double p : {1.0, 4.0 / 3.0, 3.0}) {
      CHECK(std::abs(pnorm(s * f, Exponent(p)) - std::abs(s) * pnorm(f, Exponent(p))) <=
            1e-12 * std::abs(s) * pnorm(f, Exponent(p)));
    }
  }
}

TEST_CASE("spectral interpolation") {
  std::mt19937_64 rng(7);
  const auto f = RandomBandLimited(kN, 30, rng);
  const auto c = analyze(f);
  const SpectralInterpolant interp(f);
  CHECK(interp.band_limited());
  CHECK(interp.positive_bandwidth() == 30);
  CHECK(interp.negative_bandwidth() == 30);
  for (double t : {0.1, 1.234, 2.9, 5.5}) {
    const cplx w = std::polar(1.0, t);
    cplx ref = 0.0;
    for (int k = -30; k <= 30; ++k) ref += c.at(k) * std::pow(w, k);
    CHECK(std::abs(interp(w) - ref) < 1e-12);
  }
  // grid nodes return stored samples exactly
  for (std::size_t j : {0u, 5u, 100u, 255u}) {
    CHECK(interp.snap_index(f.point(j)) == static_cast<long>(j));
    CHECK(interp(f.point(j)) == f[j]);
  }
  CHECK(interp.snap_index(std::polar(1.0, 0.01)) == -1);
}

TEST_CASE("resample interpolates band-limited samples exactly") {
  std::mt19937_64 rng(11);
  const GridFunction f = RandomBandLimited(kN, 20, rng);
  const GridFunction fine = resample(f, 4 * kN);
  const SpectralFunction s = analyze(f);
  double worst = 0.0;
  for (std::size_t j = 0; j < fine.size(); j += 97) {
    const cplx z = unit_root(j, fine.size());
    cplx direct = 0.0;
    for (int k = -20; k <= 20; ++k) direct += s.at(k) * std::pow(z, k);
    worst = std::max(worst, std::abs(fine[j] - direct));
  }
  CHECK(worst <= 1e-12);
  CHECK(sup_distance(resample(f, kN), f) == 0.0);
  CHECK_THROWS_AS(resample(f, kN / 2), ConfigurationError);
  CHECK_THROWS_AS(resample(f, 3 * kN), ConfigurationError);
}
