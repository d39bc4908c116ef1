#include "hardy/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "hardy/factorize.hpp"

namespace hardy::fixtures {

XpPair z2_one(Exponent p, std::size_t n) {
  return XpPair(BlaschkeProduct::monomial(2), GridFunction::constant(n, 1.0), p);
}

XpPair z2_z(Exponent p, std::size_t n) {
  return XpPair(BlaschkeProduct::monomial(2), GridFunction::identity(n), p);
}

XpPair z2_sqrt1pz(Exponent p, std::size_t n) {
  const auto base = GridFunction::sample(n, [](cplx z) { return (1.0 + z) / std::sqrt(2.0); });
  return XpPair(BlaschkeProduct::monomial(2), outer_power(base, 2.0 / p.value()), p);
}

XpPair z3_z(Exponent p, std::size_t n) {
  return XpPair(BlaschkeProduct::monomial(3), GridFunction::identity(n), p);
}

DegreeTwoInput degree_two_input(Exponent p, std::size_t n) {
  const cplx a = kDegreeTwoZero;
  const double pv = p.value();
  const BlaschkeProduct eta({0.0, a});
  // |c|^p = 1 - |a|^2 makes ||phi_true||_p = 1.
  const double c = std::pow(1.0 - std::norm(a), 1.0 / pv);
  const auto phi_true = GridFunction::sample(n, [&](cplx z) {
    return c * z * std::exp(-2.0 / pv * std::log(1.0 - std::conj(a) * z));
  });
  const auto eta_s = eta.sample(n);
  const auto h = eta_s * (GridFunction::constant(n, 1.0) + 0.3 * eta_s);
  const BlaschkeProduct theta({0.0, 0.0, a});
  return DegreeTwoInput{eta, phi_true * h, theta, phi_true};
}

XpPair degree_two(Exponent p, std::size_t n) {
  const auto in = degree_two_input(p, n);
  return canonicalize(in.eta, in.phi0, in.theta, p).pair;
}

std::vector<NamedPair> standard_pairs(Exponent p, std::size_t n) {
  std::vector<NamedPair> out;
  out.push_back({"z2_one", z2_one(p, n)});
  out.push_back({"z2_z", z2_z(p, n)});
  out.push_back({"z2_sqrt1pz", z2_sqrt1pz(p, kBranchPointGrid)});
  out.push_back({"z3_z", z3_z(p, n)});
  out.push_back({"degree_two", degree_two(p, n)});
  return out;
}

std::vector<NamedPair> acceptance_pairs(std::size_t n) {
  std::vector<NamedPair> out;
  for (double p : {1.0, 4.0 / 3.0, 3.0, 4.0}) {
    const std::string tag = p == 4.0 / 3.0 ? "@p=4/3" : "@p=" + std::to_string(static_cast<int>(p));
    const Exponent e(p);
    out.push_back({"z2_one" + tag, z2_one(e, n)});
    out.push_back({"z2_z" + tag, z2_z(e, n)});
    out.push_back({"degree_two" + tag, degree_two(e, n)});
  }
  out.push_back({"z2_sqrt1pz@p=4", z2_sqrt1pz(Exponent(4), kBranchPointGrid)});
  out.push_back({"z3_z@p=3", z3_z(Exponent(3), n)});
  return out;
}

cplx random_disk_point(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = rmax * std::sqrt(u(rng));
  const double t = 2.0 * std::numbers::pi * u(rng);
  return std::polar(r, t);
}

BlaschkeProduct random_blaschke(std::mt19937_64& rng, int degree, double rmax, bool through_origin) {
  std::vector<cplx> zeros;
  for (int k = 0; k < degree; ++k) {
    zeros.push_back(k == 0 && through_origin ? cplx(0.0) : random_disk_point(rng, rmax));
  }
  return BlaschkeProduct(zeros);
}

GridFunction random_polynomial(std::mt19937_64& rng, int degree, std::size_t n) {
  return random_trig(rng, 0, degree, n);
}

GridFunction random_trig(std::mt19937_64& rng, int lo, int hi, std::size_t n) {
  std::normal_distribution<double> g;
  SpectralFunction s(n);
  for (int k = lo; k <= hi; ++k) {
    const double re = g(rng), im = g(rng);
    s.set(k, {re, im});
  }
  return synthesize(s);
}

GridFunction random_zero_free_polynomial(std::mt19937_64& rng, int degree, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<cplx> c{1.0};
  for (int k = 1; k <= degree; ++k) {
    const double re = g(rng), im = g(rng);
    c.push_back(cplx(re, im) * std::pow(0.25, k));
  }
  return GridFunction::polynomial(n, c);
}

}  // namespace hardy::fixtures
