#include "hardy/projector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "hardy/condexp.hpp"
#include "hardy/errors.hpp"
#include "hardy/kernels.hpp"

namespace hardy {
namespace {

cplx Sgn(cplx v) {
  const double m = std::abs(v);
  return m > 0.0 ? v / m : cplx(0.0);
}

void RequireAnalytic(const GridFunction& f, const char* what) {
  const double ne = negative_energy(f);
  if (ne > 1e-6 * std::max(1.0, sup_norm(f))) {
    std::ostringstream msg;
    msg << what << " needs an H^p input, negative energy " << ne;
    throw ContractViolation(msg.str());
  }
}

std::string Digest(const std::vector<GridFunction>& a, const std::vector<GridFunction>& b) {
  std::uint64_t h = 1469598103934665603ull;
  auto feed = [&h](const std::vector<GridFunction>& list) {
    for (const auto& g : list) {
      for (const cplx& v : g.samples()) {
        const auto* bytes = reinterpret_cast<const unsigned char*>(&v);
        for (std::size_t i = 0; i < sizeof v; ++i) {
          h ^= bytes[i];
          h *= 1099511628211ull;
        }
      }
    }
  };
  feed(a);
  feed(b);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

cplx InnerMean(const GridFunction& a, const GridFunction& b) { return mean(GridFunction::times_conj(a, b)); }

}  // namespace

ProjectionOperator::ProjectionOperator(XpPair pair, double floor)
    : pair_(std::move(pair)), floor_(floor), u_(pair_.phi()), denominator_(pair_.phi()) {
  if (!pair_.valid()) {
    try {
      pair_.require_valid();
    } catch (const ConsistencyError& e) {
      throw ContractViolation(e.what());
    }
  }
  const GridFunction& phi = pair_.phi();
  const double p = pair_.p().value();
  const std::size_t n = phi.size();
  small_.assign(n, false);
  std::size_t count = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(phi[j]) < floor_) {
      small_[j] = true;
      ++count;
    }
  }
  if (static_cast<double>(count) > 1e-3 * static_cast<double>(n)) {
    std::ostringstream msg;
    msg << "|phi| below " << floor_ << " on " << count << " of " << n << " samples";
    throw DegenerateWeight(msg.str());
  }
  // At an exact zero of phi the sign is taken from the neighbours, so that an
  // even-order zero (where sgn phi is continuous) does not leave a hole when
  // p = 1. Odd-order zeros give opposite neighbours and keep sign 0.
  std::vector<cplx> sgn(n);
  for (std::size_t j = 0; j < n; ++j) sgn[j] = Sgn(phi[j]);
  std::vector<cplx> u(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx s = sgn[j];
    if (s == cplx(0.0)) {
      const cplx both = sgn[(j + n - 1) % n] + sgn[(j + 1) % n];
      if (std::abs(both) > 1.0) s = both / std::abs(both);
    }
    u[j] = std::pow(std::abs(phi[j]), p - 1.0) * std::conj(s);
  }
  u_ = GridFunction(std::move(u));
  denominator_ = condexp(weight_of(pair_), pair_.eta());
  for (const cplx& v : denominator_.samples()) {
    if (!(v.real() >= 1e-10)) throw DegenerateWeight("E(|phi|^p | eta) below 1e-10");
  }
}

GridFunction ProjectionOperator::operator()(const GridFunction& f) const {
  if (f.size() != grid_size()) throw ConfigurationError("grid size mismatch");
  const GridFunction num = condexp(f * u_, pair_.eta());
  std::vector<cplx> out(f.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = pair_.phi()[j] * num[j] / denominator_[j].real();
  return GridFunction(std::move(out));
}

GridFunction ProjectionOperator::transferred(const GridFunction& g) const {
  if (g.size() != grid_size()) throw ConfigurationError("grid size mismatch");
  const GridFunction num = condexp(g * weight_of(pair_), pair_.eta());
  std::vector<cplx> out(g.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = num[j] / denominator_[j].real();
  return GridFunction(std::move(out));
}

GridFunction ProjectionOperator::via_multiplier(const GridFunction& f) const {
  if (!pair_.eta().is_monomial()) throw ConfigurationError("multiplier path needs a monomial eta");
  const std::size_t d = pair_.eta().degree();
  const GridFunction num = multiplier_condexp(f * u_, d);
  const GridFunction den = multiplier_condexp(weight_of(pair_), d);
  std::vector<cplx> out(f.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = pair_.phi()[j] * num[j] / den[j].real();
  return GridFunction(std::move(out));
}

double ProjectionOperator::range_residual(const GridFunction& g) const {
  const std::size_t n = grid_size();
  const bool any_small = std::find(small_.begin(), small_.end(), true) != small_.end();
  const auto table = fiber_table(pair_.eta(), n);
  if (any_small && !table->aligned) {
    throw ConfigurationError("range check with vanishing phi needs grid-aligned fibers");
  }
  std::vector<cplx> ratio(n);
  for (std::size_t j = 0; j < n; ++j) ratio[j] = small_[j] ? cplx(0.0) : g[j] / pair_.phi()[j];
  const GridFunction r(ratio);
  const GridFunction e = condexp(r, pair_.eta());
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    bool skip = false;
    if (any_small) {
      for (std::size_t i = 0; i < table->degree; ++i) {
        skip = skip || small_[static_cast<std::size_t>(table->snapped[j * table->degree + i])];
      }
    }
    if (!skip) worst = std::max(worst, std::abs(r[j] - e[j]));
  }
  return worst;
}

GridFunction apply_P(const ProjectionOperator& op, const GridFunction& f) {
  RequireAnalytic(f, "apply_P");
  return op(f);
}

GridFunction apply_Pext(const ProjectionOperator& op, const GridFunction& f) { return op(f); }

Certificate certify_contractive(Exponent p, const std::vector<GridFunction>& range,
                                const std::vector<GridFunction>& kernel) {
  if (range.empty() || kernel.empty()) throw ConfigurationError("certificate needs range and kernel samples");
  const double pv = p.value();
  Certificate cert;
  cert.kind = pv > 1.0 ? CertificateKind::kLemma21 : CertificateKind::kLemma22;
  cert.digest = Digest(range, kernel);
  double worst = 0.0;
  for (const auto& g : range) {
    const double gnorm = pnorm(g, p);
    if (gnorm == 0.0) continue;
    if (pv > 1.0) {
      const GridFunction dual = g.map([pv](cplx v) { return std::pow(std::abs(v), pv - 1.0) * Sgn(v); });
      const double scale = std::pow(gnorm, pv - 1.0);
      for (const auto& k : kernel) {
        const double knorm = pnorm(k, p);
        if (knorm == 0.0) continue;
        worst = std::max(worst, std::abs(InnerMean(dual, k)) / (scale * knorm));
      }
    } else {
      const GridFunction sg = g.map(Sgn);
      for (const auto& k : kernel) {
        const double knorm = pnorm(k, p);
        if (knorm == 0.0) continue;
        double zero_mass = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
          if (std::abs(g[j]) <= 1e-9) zero_mass += std::abs(k[j]);
        }
        zero_mass /= static_cast<double>(g.size());
        const double slack = std::abs(InnerMean(sg, k)) - zero_mass;
        worst = std::max(worst, std::max(0.0, slack) / knorm);
      }
    }
  }
  cert.residual = worst;
  cert.pass = worst <= cert.tolerance;
  return cert;
}

CertificateSamples certificate_samples(const std::function<GridFunction(const GridFunction&)>& apply, Exponent p,
                                       std::size_t n, int count, int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CertificateSamples out;
  for (int t = 0; t < count; ++t) {
    SpectralFunction s(n);
    for (int k = 0; k <= degree; ++k) {
      const double re = g(rng), im = g(rng);
      s.set(k, {re, im});
    }
    GridFunction f = synthesize(s);
    f *= 1.0 / pnorm(f, p);
    GridFunction pf = apply(f);
    out.kernel.push_back(f - pf);
    out.range.push_back(std::move(pf));
  }
  return out;
}

double estimate_opnorm(const std::function<GridFunction(const GridFunction&)>& apply,
                       const std::vector<GridFunction>& basis, Exponent p, const OpnormOptions& options) {
  if (basis.empty()) throw ConfigurationError("operator norm estimate needs a nonempty basis");
  const std::size_t dim = basis.size();
  const std::size_t n = basis.front().size();
  const double pv = p.value();
  std::vector<GridFunction> images;
  images.reserve(dim);
  for (const auto& b : basis) images.push_back(apply(b));

  const auto& k = kernels::active();
  auto ratio = [&](const std::vector<cplx>& f, const std::vector<cplx>& pf) {
    const double den = k.abs_pow_sum(f.data(), n, pv);
    if (den <= 0.0) return 0.0;
    return std::pow(k.abs_pow_sum(pf.data(), n, pv) / den, 1.0 / pv);
  };

  // Every basis vector on its own is a valid lower bound and the best one
  // seeds the first restart.
  double best_overall = 0.0;
  std::size_t best_basis = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<cplx> b(basis[i].samples().begin(), basis[i].samples().end());
    std::vector<cplx> pb(images[i].samples().begin(), images[i].samples().end());
    const double r = ratio(b, pb);
    if (r > best_overall) {
      best_overall = r;
      best_basis = i;
    }
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  std::vector<cplx> f(n), pf(n), tf(n), tpf(n);
  const cplx dirs[4] = {1.0, -1.0, cplx(0, 1), cplx(0, -1)};
  for (int trial = 0; trial < options.trials; ++trial) {
    std::vector<cplx> c(dim, cplx(0.0));
    if (trial == 0) {
      c[best_basis] = 1.0;
    } else if (trial == 1) {
      std::fill(c.begin(), c.end(), cplx(1.0));
    } else {
      for (auto& v : c) {
        const double re = gauss(rng), im = gauss(rng);
        v = {re, im};
      }
    }
    std::fill(f.begin(), f.end(), cplx(0.0));
    std::fill(pf.begin(), pf.end(), cplx(0.0));
    for (std::size_t i = 0; i < dim; ++i) {
      k.axpy(c[i], basis[i].samples().data(), f.data(), n);
      k.axpy(c[i], images[i].samples().data(), pf.data(), n);
    }
    double best = ratio(f, pf);
    double scale = 0.0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
    // Per-coordinate step sizes grow after a successful move and shrink
    // after a failed one.
    std::vector<double> delta(dim, 0.5 * scale);
    const double min_delta = 1e-12 * scale;
    for (int sweep = 0; sweep < options.steps; ++sweep) {
      bool active = false;
      for (std::size_t i = 0; i < dim; ++i) {
        if (delta[i] < min_delta) continue;
        active = true;
        bool moved = false;
        for (const cplx& dir : dirs) {
          const cplx step = delta[i] * dir;
          tf = f;
          tpf = pf;
          k.axpy(step, basis[i].samples().data(), tf.data(), n);
          k.axpy(step, images[i].samples().data(), tpf.data(), n);
          const double r = ratio(tf, tpf);
          if (r > best) {
            best = r;
            f.swap(tf);
            pf.swap(tpf);
            c[i] += step;
            moved = true;
            break;
          }
        }
        delta[i] *= moved ? 2.0 : 0.5;
      }
      if (!active) break;
    }
    best_overall = std::max(best_overall, best);
  }
  return best_overall;
}

std::vector<GridFunction> monomial_basis(int lo, int hi, std::size_t n) {
  std::vector<GridFunction> out;
  for (int k = lo; k <= hi; ++k) {
    SpectralFunction s(n);
    s.set(k, 1.0);
    out.push_back(synthesize(s));
  }
  return out;
}

GridFunction keep_frequencies(const GridFunction& f, const std::vector<int>& keep) {
  const SpectralFunction s = analyze(f);
  SpectralFunction out(s.size());
  for (int k : keep) {
    if (k >= s.min_frequency() && k <= s.max_frequency()) out.set(k, s.at(k));
  }
  return synthesize(out);
}

EvenCounterexampleReport counterexample_even(int k, int M, Exponent p, std::size_t n, const OpnormOptions& options) {
  if (k < 1) throw ConfigurationError("counterexample needs k >= 1");
  if (p.value() != 2.0 * k) throw ConfigurationError("counterexample needs p = 2k");
  if (M < k + 4) throw ConfigurationError("counterexample needs M >= k + 4");
  EvenCounterexampleReport rep;
  rep.k = k;
  rep.M = M;
  rep.p = p.value();
  auto project = [](const GridFunction& f) { return keep_frequencies(f, {0, 1}); };

  std::vector<GridFunction> basis = monomial_basis(0, 1, n);
  for (auto& b : monomial_basis(k + 1, M, n)) basis.push_back(std::move(b));

  // Range: a + b z. Kernel: f - P f for f in the subspace.
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> g;
  std::vector<GridFunction> range, kernel;
  for (int t = 0; t < 16; ++t) {
    GridFunction f = GridFunction::constant(n, 0.0);
    for (const auto& b : basis) {
      const double re = g(rng), im = g(rng);
      f += cplx(re, im) * b;
    }
    GridFunction pf = project(f);
    kernel.push_back(f - pf);
    range.push_back(std::move(pf));
  }
  rep.certificate = certify_contractive(p, range, kernel);

  const GridFunction z = GridFunction::identity(n);
  rep.z_in_range = sup_distance(project(z), z) <= 1e-12;
  for (const auto& b : basis) rep.identity_defect = std::max(rep.identity_defect, pnorm(project(b) - b, p));

  rep.odd_exponent = 2.0 * k - 1.0;
  rep.opnorm_odd = estimate_opnorm(project, basis, Exponent(rep.odd_exponent), options);
  return rep;
}

double aleksandrov_check(const BlaschkeProduct& eta, int K, std::size_t n) {
  double worst = 0.0;
  GridFunction zk = GridFunction::constant(n, 1.0);
  const GridFunction z = GridFunction::identity(n);
  for (int k = 0; k <= K; ++k) {
    worst = std::max(worst, negative_energy(condexp(zk, eta)));
    zk *= z;
  }
  return worst;
}

}  // namespace hardy
