#include "hardy/xp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hardy/condexp.hpp"
#include "hardy/errors.hpp"
#include "hardy/factorize.hpp"

namespace hardy {
namespace {

double MaxNonnegativeCoefficient(const GridFunction& g) {
  const SpectralFunction s = analyze(g);
  double worst = 0.0;
  for (int k = 0; k <= s.max_frequency(); ++k) worst = std::max(worst, std::abs(s.at(k)));
  return worst;
}

GridFunction AbsPower(const GridFunction& f, double p) {
  return f.map([p](cplx v) { return cplx(std::pow(std::abs(v), p)); });
}

struct Factors {
  GridFunction xi;
  GridFunction outer;
};

Factors Factorize(const GridFunction& phi) {
  InnerOuter split = inner_outer_split_unchecked(phi);
  return Factors{std::move(split.inner), std::move(split.outer)};
}

ValidationReport Validate(const BlaschkeProduct& eta, const GridFunction& phi, Exponent p, const Factors& fac) {
  p.require_not_two();
  ValidationReport r;
  r.eta_at_origin = std::abs(eta(0.0));
  r.norm_defect = std::abs(pnorm(phi, p) - 1.0);
  const GridFunction g = fac.xi * outer_power_unchecked(fac.outer, p.value() / 2.0);
  r.h2_membership = negative_energy(g);
  r.eta_orthogonality = MaxNonnegativeCoefficient(GridFunction::times_conj(g, eta.sample(phi.size())));
  return r;
}

}  // namespace

ValidationReport validate_pair(const BlaschkeProduct& eta, const GridFunction& phi, Exponent p) {
  p.require_not_two();
  return Validate(eta, phi, p, Factorize(phi));
}

XpPair::XpPair(BlaschkeProduct eta, GridFunction phi, Exponent p)
    : eta_(std::move(eta)), phi_(std::move(phi)), p_(p), xi_(phi_), outer_(phi_) {
  p_.require_not_two();
  Factors fac = Factorize(phi_);
  report_ = Validate(eta_, phi_, p_, fac);
  xi_ = std::move(fac.xi);
  outer_ = std::move(fac.outer);
}

void XpPair::require_valid() const {
  if (valid()) return;
  std::ostringstream msg;
  msg << "pair fails validation:";
  if (!report_.eta_ok()) msg << " eta(0) = " << report_.eta_at_origin;
  if (!report_.norm_ok()) msg << " norm defect " << report_.norm_defect;
  if (!report_.h2_ok()) msg << " H^2 membership " << report_.h2_membership;
  if (!report_.orthogonality_ok()) msg << " eta-orthogonality " << report_.eta_orthogonality;
  throw ConsistencyError(msg.str());
}

GridFunction weight_of(const XpPair& pair) { return AbsPower(pair.phi(), pair.p().value()); }

OrthonormalityDefect orthonormality_defect_detailed(const XpPair& pair, int K) {
  const GridFunction w = weight_of(pair);
  const GridFunction eta = pair.eta().sample(pair.grid_size());
  OrthonormalityDefect d;
  d.moments = std::abs(mean(w) - 1.0);
  GridFunction up = w, down = w;
  for (int j = 1; j <= K; ++j) {
    up *= eta;
    down = GridFunction::times_conj(down, eta);
    d.moments = std::max({d.moments, std::abs(mean(up)), std::abs(mean(down))});
  }
  const GridFunction e = condexp(w, pair.eta());
  d.weight_condexp = sup_distance(e, GridFunction::constant(w.size(), 1.0));
  return d;
}

double orthonormality_defect(const XpPair& pair, int K) { return orthonormality_defect_detailed(pair, K).value(); }

GridFunction compose_with(const GridFunction& f, const BlaschkeProduct& eta) {
  const std::size_t n = f.size();
  if (eta.is_monomial() && eta.constant() == cplx(1.0) && eta.degree() > 0) {
    // z_j^d is the grid point z_{dj mod n}.
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = f[(j * eta.degree()) % n];
    return GridFunction(std::move(out));
  }
  const SpectralInterpolant interp(f);
  std::vector<cplx> pts(n), out(n);
  for (std::size_t j = 0; j < n; ++j) pts[j] = eta(unit_root(j, n));
  interp.evaluate(pts, out);
  return GridFunction(std::move(out));
}

GridFunction apply_T(const XpPair& pair, const GridFunction& f) {
  if (f.size() != pair.grid_size()) throw ConfigurationError("grid size mismatch");
  const double ne = negative_energy(f);
  if (ne > 1e-8 * std::max(1.0, sup_norm(f))) {
    std::ostringstream msg;
    msg << "apply_T needs an H^p input, negative energy " << ne;
    throw ContractViolation(msg.str());
  }
  return pair.phi() * compose_with(f, pair.eta());
}

Canonicalization canonicalize(const BlaschkeProduct& eta, const GridFunction& phi0, const BlaschkeProduct& theta,
                              Exponent p) {
  p.require_not_two();
  if (std::abs(eta(0.0)) > ValidationReport::kEtaAtOriginTol) {
    throw ConfigurationError("canonicalize requires eta(0) = 0");
  }
  if (theta.degree() > 12) throw ConfigurationError("canonicalize supports deg(theta) <= 12");
  const std::size_t n = phi0.size();

  // Distinct zeros of theta with multiplicities.
  std::vector<cplx> distinct;
  std::vector<int> mult;
  for (const cplx& a : theta.zeros()) {
    auto it = std::find_if(distinct.begin(), distinct.end(),
                           [&](cplx b) { return std::abs(a - b) <= kZeroPairingTol; });
    if (it == distinct.end()) {
      distinct.push_back(a);
      mult.push_back(1);
    } else {
      ++mult[static_cast<std::size_t>(it - distinct.begin())];
    }
  }

  // Enumerate sub-multisets in lexicographic order of multiplicity vectors.
  std::vector<BlaschkeProduct> passing;
  std::vector<int> pick(distinct.size(), 0);
  while (true) {
    std::vector<cplx> zeros;
    for (std::size_t i = 0; i < distinct.size(); ++i) zeros.insert(zeros.end(), static_cast<std::size_t>(pick[i]), distinct[i]);
    const BlaschkeProduct chi(zeros, 1.0);
    const BlaschkeProduct rest = quotient(theta.with_constant(1.0), chi);
    // chi / theta = conj(theta / chi) on the circle
    const GridFunction ratio = rest.sample(n).conj();
    if (measurability_residual(ratio, eta) <= 1e-6) passing.push_back(chi);
    std::size_t i = 0;
    while (i < pick.size() && pick[i] == mult[i]) pick[i++] = 0;
    if (i == pick.size()) break;
    ++pick[i];
  }
  if (passing.empty()) throw ConsistencyError("no sub-product of theta passes the measurability test");

  std::size_t min_degree = passing.front().degree();
  for (const auto& chi : passing) min_degree = std::min(min_degree, chi.degree());
  const BlaschkeProduct* chosen = nullptr;
  for (const auto& chi : passing) {
    if (chi.degree() != min_degree) continue;
    for (const auto& other : passing) {
      if (!divides(chi, other)) {
        std::ostringstream msg;
        msg << "minimal sub-product of degree " << min_degree << " does not divide a passing sub-product of degree "
            << other.degree();
        throw AmbiguityError(msg.str());
      }
    }
    if (chosen == nullptr) chosen = &chi;
  }
  const BlaschkeProduct xi = chosen->with_constant(theta.constant());

  const GridFunction w = AbsPower(phi0, p.value());
  const GridFunction e = condexp(w, eta);
  std::vector<cplx> modulus(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double ej = e[j].real();
    if (!(ej > 0.0)) throw DegenerateWeight("E(|phi0|^p | eta) vanishes");
    modulus[j] = std::abs(phi0[j]) / std::pow(ej, 1.0 / p.value());
  }
  GridFunction outer = outer_from_modulus(OuterSpec{GridFunction(std::move(modulus))}).values;
  GridFunction phi = xi.sample(n) * outer;
  return Canonicalization{XpPair(eta, std::move(phi), p), xi, std::move(passing), std::move(outer)};
}

}  // namespace hardy
