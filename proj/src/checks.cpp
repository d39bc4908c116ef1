#include "hardy/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>

#include "hardy/blaschke.hpp"
#include "hardy/condexp.hpp"
#include "hardy/errors.hpp"
#include "hardy/factorize.hpp"
#include "hardy/finitelab.hpp"
#include "hardy/projector.hpp"
#include "hardy/xp.hpp"

namespace hardy::lab {
namespace {

using fixtures::NamedPair;
constexpr double kInf = std::numeric_limits<double>::infinity();

cplx ParseComplex(const json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigurationError(std::string(what) + " must be a number or [re, im]");
}

std::vector<cplx> ParseComplexList(const json& v, const char* what) {
  if (!v.is_array()) throw ConfigurationError(std::string(what) + " must be an array");
  std::vector<cplx> out;
  for (const auto& item : v) out.push_back(ParseComplex(item, what));
  return out;
}

void RequireKeys(const json& obj, std::initializer_list<const char*> allowed, const char* what) {
  if (!obj.is_object()) throw ConfigurationError(std::string(what) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
      throw ConfigurationError(std::string(what) + " has unknown key \"" + key + "\"");
    }
  }
}

BlaschkeProduct ParseEta(const json& spec) {
  RequireKeys(spec, {"zeros", "constant", "monomial"}, "eta");
  if (spec.contains("monomial")) {
    if (!spec["monomial"].is_number_integer() || spec["monomial"].get<int>() < 1) {
      throw ConfigurationError("eta.monomial must be a positive integer");
    }
    return BlaschkeProduct::monomial(spec["monomial"].get<std::size_t>());
  }
  if (!spec.contains("zeros")) throw ConfigurationError("eta needs \"zeros\" or \"monomial\"");
  const cplx c = spec.contains("constant") ? ParseComplex(spec["constant"], "eta.constant") : cplx(1.0);
  return BlaschkeProduct(ParseComplexList(spec["zeros"], "eta.zeros"), c);
}

Exponent ParseExponent(const json& spec) {
  if (!spec.contains("p") || !spec["p"].is_number()) throw ConfigurationError("pair needs a numeric \"p\"");
  return Exponent(spec["p"].get<double>());
}

NamedPair BuildPair(const json& spec, std::size_t n) {
  const Exponent p = ParseExponent(spec);
  if (spec.contains("fixture")) {
    const std::string f = spec["fixture"].get<std::string>();
    const std::string name = spec.value("name", f);
    if (f == "z2_one") return {name, fixtures::z2_one(p, n)};
    if (f == "z2_z") return {name, fixtures::z2_z(p, n)};
    if (f == "z2_sqrt1pz") return {name, fixtures::z2_sqrt1pz(p, fixtures::kBranchPointGrid)};
    if (f == "z3_z") return {name, fixtures::z3_z(p, n)};
    if (f == "degree_two") return {name, fixtures::degree_two(p, n)};
    throw ConfigurationError("unknown fixture \"" + f + "\"");
  }
  const BlaschkeProduct eta = ParseEta(spec.at("eta"));
  const json& phi = spec.at("phi");
  RequireKeys(phi, {"coefficients", "normalize"}, "phi");
  GridFunction g = GridFunction::polynomial(n, ParseComplexList(phi.at("coefficients"), "phi.coefficients"));
  if (phi.value("normalize", false)) g *= 1.0 / pnorm(g, p);
  return {spec.value("name", std::string("pair")), XpPair(eta, std::move(g), p)};
}

std::vector<NamedPair> Pairs(const CheckContext& ctx) { return build_pairs(ctx.inputs, ctx.grid_size); }

std::vector<GridFunction> UnitPolynomials(std::mt19937_64& rng, int count, int degree, std::size_t n, Exponent p) {
  std::vector<GridFunction> out;
  for (int t = 0; t < count; ++t) {
    GridFunction f = fixtures::random_polynomial(rng, degree, n);
    f *= 1.0 / pnorm(f, p);
    out.push_back(std::move(f));
  }
  return out;
}

// Shared sweep behind the five range and contraction checks: one pass of
// random trials per pair, several residuals per trial.
struct Sweep {
  json idempotence = json::object(), contractivity = json::object(), hp = json::object(), fixes = json::object(),
       range = json::object();
  double max_idempotence = 0, max_contractivity = 0, max_hp = 0, max_fixes = 0, max_range = 0;
};

std::shared_ptr<const Sweep> RunSweep(const CheckContext& ctx) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const Sweep>> cache;
  const int trials = ctx.params.value("trials", 500);
  const std::uint64_t seed = derive_seed(ctx.master_seed, "projector_sweep");
  const std::string key =
      std::to_string(ctx.grid_size) + "/" + std::to_string(seed) + "/" + std::to_string(trials) + "/" + ctx.inputs.dump();
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto sweep = std::make_shared<Sweep>();
  std::mt19937_64 rng(seed);
  for (const auto& [name, pair] : Pairs(ctx)) {
    const ProjectionOperator op(pair);
    const Exponent p = pair.p();
    const std::size_t n = pair.grid_size();
    double idem = 0, contr = 0, hp = 0, fix = 0, range = 0;
    for (int t = 0; t < trials; ++t) {
      GridFunction f = fixtures::random_polynomial(rng, 24, n);
      f *= 1.0 / pnorm(f, p);
      const GridFunction pf = apply_P(op, f);
      idem = std::max(idem, pnorm(apply_P(op, pf) - pf, p));
      contr = std::max(contr, pnorm(pf, p) - 1.0);
      hp = std::max(hp, negative_energy(pf));
      range = std::max(range, op.range_residual(pf));
      const GridFunction tq = apply_T(pair, fixtures::random_polynomial(rng, 8, n));
      fix = std::max(fix, sup_distance(apply_P(op, tq), tq) / std::max(1.0, sup_norm(tq)));
    }
    contr = std::max(contr, 0.0);
    sweep->idempotence[name] = idem;
    sweep->contractivity[name] = contr;
    sweep->hp[name] = hp;
    sweep->fixes[name] = fix;
    sweep->range[name] = range;
    sweep->max_idempotence = std::max(sweep->max_idempotence, idem);
    sweep->max_contractivity = std::max(sweep->max_contractivity, contr);
    sweep->max_hp = std::max(sweep->max_hp, hp);
    sweep->max_fixes = std::max(sweep->max_fixes, fix);
    sweep->max_range = std::max(sweep->max_range, range);
  }
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, std::move(sweep)).first->second;
}

Measurement FromSweep(const CheckContext& ctx, double Sweep::*max, json Sweep::*per_pair) {
  const auto s = RunSweep(ctx);
  return {(*s).*max, json{{"per_pair", (*s).*per_pair}, {"trials", ctx.params.value("trials", 500)}}};
}

// Record per-pair values and return the maximum.
template <typename Fn>
Measurement MaxOverPairs(const CheckContext& ctx, Fn fn) {
  Measurement m;
  json per = json::object();
  for (const auto& np : Pairs(ctx)) {
    const double v = fn(np);
    per[np.name] = v;
    m.residual = std::max(m.residual, v);
  }
  m.baselines["per_pair"] = per;
  return m;
}

Measurement Prop42Moments(const CheckContext& ctx) {
  const int K = ctx.params.value("K", 8);
  return MaxOverPairs(ctx, [&](const NamedPair& np) { return orthonormality_defect_detailed(np.pair, K).moments; });
}

Measurement Prop42Weight(const CheckContext& ctx) {
  return MaxOverPairs(ctx, [&](const NamedPair& np) { return orthonormality_defect_detailed(np.pair, 1).weight_condexp; });
}

// Integrals of |g|^p and sgn(g) lose accuracy near zeros of g close to the
// circle; band-limited samples are interpolated onto a finer grid first.
GridFunction Fine(const CheckContext& ctx, const GridFunction& g) {
  const std::size_t m = ctx.params.value("quadrature_grid", std::size_t{65536});
  return resample(g, std::max(m, g.size()));
}

Measurement Prop42Isometry(const CheckContext& ctx) {
  const int trials = ctx.params.value("trials", 100);
  std::mt19937_64 rng(ctx.seed);
  return MaxOverPairs(ctx, [&](const NamedPair& np) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const GridFunction f = fixtures::random_polynomial(rng, 32, np.pair.grid_size());
      const double a = pnorm(Fine(ctx, f), np.pair.p());
      worst = std::max(worst, std::abs(pnorm(Fine(ctx, apply_T(np.pair, f)), np.pair.p()) - a) / a);
    }
    return worst;
  });
}

Measurement Cor13Restriction(const CheckContext& ctx) {
  const int trials = ctx.params.value("trials", 50);
  std::mt19937_64 rng(ctx.seed);
  return MaxOverPairs(ctx, [&](const NamedPair& np) {
    const ProjectionOperator op(np.pair);
    const GridFunction& phi = np.pair.phi();
    const GridFunction w = weight_of(np.pair);
    // The division path is used only where phi stays away from zero.
    double min_phi = kInf;
    for (const cplx& v : phi.samples()) min_phi = std::min(min_phi, std::abs(v));
    double worst = 0.0;
    for (const auto& f : UnitPolynomials(rng, trials, 24, np.pair.grid_size(), np.pair.p())) {
      const GridFunction ext = apply_Pext(op, f);
      worst = std::max(worst, sup_distance(ext, apply_P(op, f)));
      if (min_phi >= 1e-3) {
        const GridFunction ratio = f * phi.map([](cplx v) { return 1.0 / v; });
        worst = std::max(worst, sup_distance(ext, phi * weighted_condexp(ratio, np.pair.eta(), w)));
      }
    }
    return worst;
  });
}

Measurement Cor13Reality(const CheckContext& ctx) {
  const int trials = ctx.params.value("trials", 50);
  std::mt19937_64 rng(ctx.seed);
  json pext = json::object();
  Measurement m = MaxOverPairs(ctx, [&](const NamedPair& np) {
    const ProjectionOperator op(np.pair);
    double worst = 0.0, ext = 0.0;
    for (int t = 0; t < trials; ++t) {
      const GridFunction f = fixtures::random_trig(rng, -24, 24, np.pair.grid_size());
      worst = std::max(worst, sup_distance(op.transferred(f.conj()), op.transferred(f).conj()));
      ext = std::max(ext, sup_distance(apply_Pext(op, f.conj()), apply_Pext(op, f).conj()));
    }
    pext[np.name] = ext;
    return worst;
  });
  // The projection itself commutes with conjugation only when sgn(phi)^2 is
  // eta-measurable; recorded, not asserted.
  m.baselines["projection_conjugation_defect"] = pext;
  return m;
}

Measurement Cor13DualPath(const CheckContext& ctx) {
  const std::size_t n = ctx.grid_size;
  const int K = ctx.params.value("max_frequency", 64);
  std::vector<NamedPair> pairs;
  for (double p : {1.0, 3.0, 4.0}) {
    const std::string tag = "@p=" + std::to_string(static_cast<int>(p));
    pairs.push_back({"z2_one" + tag, fixtures::z2_one(Exponent(p), n)});
    pairs.push_back({"z2_z" + tag, fixtures::z2_z(Exponent(p), n)});
    pairs.push_back({"z3_z" + tag, fixtures::z3_z(Exponent(p), n)});
  }
  Measurement m;
  for (const auto& np : pairs) {
    const ProjectionOperator op(np.pair);
    double worst = 0.0;
    for (int k = -K; k <= K; ++k) {
      SpectralFunction s(n);
      s.set(k, 1.0);
      const GridFunction f = synthesize(s);
      worst = std::max(worst, sup_distance(apply_Pext(op, f), op.via_multiplier(f)));
    }
    m.baselines["per_pair"][np.name] = worst;
    m.residual = std::max(m.residual, worst);
  }
  m.baselines["scope"] = "trigonometric monomials with |k| <= " + std::to_string(K);
  return m;
}

Measurement Certificates(const CheckContext& ctx, bool p_one) {
  Measurement m;
  const int count = ctx.params.value("samples", 16);
  std::uint64_t salt = 0;
  for (const auto& np : Pairs(ctx)) {
    ++salt;
    const bool is_one = np.pair.p().value() == 1.0;
    if (is_one != p_one) continue;
    const ProjectionOperator op(np.pair);
    const auto samples = certificate_samples([&](const GridFunction& f) { return apply_P(op, f); }, np.pair.p(),
                                             op.grid_size(), count, 24, ctx.seed + salt);
    std::vector<GridFunction> range, kernel;
    for (const auto& g : samples.range) range.push_back(Fine(ctx, g));
    for (const auto& k : samples.kernel) kernel.push_back(Fine(ctx, k));
    const Certificate c = certify_contractive(np.pair.p(), range, kernel);
    m.baselines["per_pair"][np.name] = c.residual;
    m.baselines["digest"][np.name] = c.digest;
    m.residual = std::max(m.residual, c.residual);
  }
  return m;
}

Measurement BrokenMultiplier(const CheckContext& ctx) {
  const auto s = certificate_samples([](const GridFunction& f) { return keep_frequencies(f, {0, 1}); }, Exponent(3),
                                     1024, ctx.params.value("samples", 16), 8, ctx.seed);
  const Certificate c = certify_contractive(Exponent(3), s.range, s.kernel);
  return {c.residual, json{{"digest", c.digest}}};
}

Measurement EvenCertificate(const CheckContext& ctx) {
  Measurement m;
  const OpnormOptions opts{1, 1, ctx.seed};
  for (int k : {2, 3}) {
    const auto rep = counterexample_even(k, k + 6, Exponent(2.0 * k), 1024, opts);
    const std::string key = "p=" + std::to_string(2 * k);
    m.baselines[key] = {{"residual", rep.certificate.residual},
                        {"z_in_range", rep.z_in_range},
                        {"identity_defect", rep.identity_defect}};
    double r = rep.certificate.residual;
    // Without the witness the operator could be a conditional expectation.
    if (!rep.z_in_range || !(rep.identity_defect > 1e-3)) r = kInf;
    m.residual = std::max(m.residual, r);
  }
  return m;
}

Measurement EvenOddOpnorm(const CheckContext& ctx) {
  const OpnormOptions opts{ctx.params.value("trials", 8), ctx.params.value("steps", 200), ctx.seed};
  const auto rep = counterexample_even(2, 8, Exponent(4), 1024, opts);
  return {rep.opnorm_odd - 1.0, json{{"opnorm_p3", rep.opnorm_odd}}};
}

Measurement AleksandrovOrigin(const CheckContext& ctx) {
  const std::vector<std::pair<std::string, BlaschkeProduct>> etas = {
      {"z^2", BlaschkeProduct::monomial(2)},
      {"z b_0.4", BlaschkeProduct({0.0, 0.4})},
      {"z b_(0.3+0.3i) b_(-0.5)", BlaschkeProduct({0.0, cplx(0.3, 0.3), -0.5})},
  };
  Measurement m;
  for (const auto& [name, eta] : etas) {
    const double v = aleksandrov_check(eta, 16, ctx.grid_size);
    m.baselines["per_eta"][name] = v;
    m.residual = std::max(m.residual, v);
  }
  return m;
}

Measurement AleksandrovShifted(const CheckContext& ctx) {
  return {aleksandrov_check(BlaschkeProduct({0.5, 0.5}), 16, ctx.grid_size), json{{"eta_at_origin", 0.25}}};
}

Measurement GcdComposition(const CheckContext& ctx) {
  const int trials = ctx.params.value("trials", 50);
  std::mt19937_64 rng(ctx.seed);
  std::uniform_int_distribution<int> deg(1, 3);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    // A shared zero keeps the gcd nontrivial.
    const cplx shared = fixtures::random_disk_point(rng, 0.85);
    std::vector<cplx> z1{shared}, z2{shared};
    const int d1 = deg(rng), d2 = deg(rng), de = deg(rng);
    for (int k = 1; k < d1; ++k) z1.push_back(fixtures::random_disk_point(rng, 0.85));
    for (int k = 1; k < d2; ++k) z2.push_back(fixtures::random_disk_point(rng, 0.85));
    const BlaschkeProduct chi1(z1), chi2(z2);
    const BlaschkeProduct eta = fixtures::random_blaschke(rng, de, 0.85, true);
    const auto lhs = gcd(compose_zeros(chi1, eta), compose_zeros(chi2, eta));
    const auto rhs = compose_zeros(gcd(chi1, chi2), eta);
    worst = std::max(worst, zero_set_distance(lhs, rhs));
  }
  return {worst, json{{"trials", trials}}};
}

Measurement OuterMeasurability(const CheckContext& ctx, bool measurable) {
  const int count = ctx.params.value("fixtures", 20);
  const std::size_t n = ctx.grid_size;
  std::mt19937_64 rng(ctx.seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> deg(2, 3);
  double worst = measurable ? 0.0 : kInf;
  for (int t = 0; t < count; ++t) {
    const BlaschkeProduct eta = fixtures::random_blaschke(rng, deg(rng), 0.7, true);
    std::vector<cplx> c{1.0};
    for (int k = 1; k <= 4; ++k) {
      const double re = gauss(rng), im = gauss(rng);
      c.push_back(cplx(re, im) * std::pow(0.25, k));
    }
    const double r = 0.3 + 0.3 * unit(rng);
    const cplx b = std::polar(r, 2.0 * std::numbers::pi * unit(rng));
    auto q = [&c](cplx w) {
      cplx acc = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * w + *it;
      return acc;
    };
    std::vector<cplx> modulus(n);
    for (std::size_t j = 0; j < n; ++j) {
      const cplx z = unit_root(j, n);
      modulus[j] = measurable ? std::abs(q(eta(z))) : std::abs(1.0 - b * z) * std::abs(q(z));
    }
    const GridFunction F = outer_from_modulus(OuterSpec{GridFunction(std::move(modulus))}).values;
    const double res = measurability_residual(F, eta);
    worst = measurable ? std::max(worst, res) : std::min(worst, res);
  }
  return {worst, json{{"fixtures", count}}};
}

Measurement FiniteCeNorm(const CheckContext& ctx) {
  const finite::OracleOptions opts{ctx.params.value("restarts", 8), ctx.params.value("steps", 200), ctx.seed};
  Measurement m;
  int count = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto space = finite::FiniteSpace::random(n, derive_seed(ctx.seed, "space" + std::to_string(n)));
    for (const auto& part : finite::all_partitions(n)) {
      const Eigen::MatrixXd e = finite::condexp_matrix(space, part);
      for (double p : {1.0, 3.0}) {
        m.residual = std::max(m.residual, std::abs(finite::oracle_pnorm(e, Exponent(p), space, opts) - 1.0));
        ++count;
      }
    }
  }
  m.baselines["oracle_runs"] = count;
  return m;
}

Measurement FiniteProjectionNorm(const CheckContext& ctx) {
  const int trials = ctx.params.value("trials", 200);
  const finite::OracleOptions opts{ctx.params.value("restarts", 8), ctx.params.value("steps", 200), 0};
  std::mt19937_64 rng(ctx.seed);
  Measurement m;
  m.residual = kInf;
  for (double p : {1.0, 3.0}) {
    double min_excess = kInf;
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 6)(rng);
      const std::size_t rank = std::uniform_int_distribution<std::size_t>(2, n - 1)(rng);
      const auto space = finite::FiniteSpace::random(n, rng());
      const Eigen::MatrixXd q = finite::random_projection_fixing_one(n, rank, rng());
      finite::OracleOptions o = opts;
      o.seed = rng();
      min_excess = std::min(min_excess, finite::oracle_pnorm(q, Exponent(p), space, o) - 1.0);
    }
    m.baselines["min_excess"]["p=" + std::to_string(static_cast<int>(p))] = min_excess;
    m.residual = std::min(m.residual, min_excess);
  }
  m.baselines["trials_per_exponent"] = trials;
  m.baselines["statement"] = "no norm-one non-averaging projection found";
  return m;
}

struct Contrast {
  double p2 = 0.0, p3 = 0.0;
};

Contrast ContrastNorms(const CheckContext& ctx) {
  const auto space = finite::FiniteSpace::random(5, 17);
  Eigen::VectorXd v(5);
  v << 0.3, -1.2, 0.7, 2.1, -0.4;
  const Eigen::MatrixXd q = finite::orthogonal_projection(space, v);
  const finite::OracleOptions opts{ctx.params.value("restarts", 16), ctx.params.value("steps", 300), ctx.seed};
  return {finite::oracle_pnorm(q, Exponent(2), space, opts), finite::oracle_pnorm(q, Exponent(3), space, opts)};
}

Measurement Lemma32Enumeration(const CheckContext& ctx) {
  const int count = ctx.params.value("fixtures", 100);
  Measurement m;
  int with_hypothesis = 0, nonzero = 0;
  for (int t = 0; t < count; ++t) {
    const auto fx = finite::random_lemma32_fixture(derive_seed(ctx.seed, "fixture" + std::to_string(t)));
    const auto rep = finite::lemma32_check(fx.space, fx.f, fx.Y, 32, derive_seed(ctx.seed, std::to_string(t)));
    if (!rep.enumeration_agrees) m.residual = kInf;
    if (rep.hypothesis) {
      ++with_hypothesis;
      m.residual = std::max(m.residual, rep.conclusion_residual);
    }
    if (fx.f.cwiseAbs().maxCoeff() > 1e-12) ++nonzero;
  }
  m.baselines["fixtures_with_hypothesis"] = with_hypothesis;
  m.baselines["fixtures_with_nonzero_f"] = nonzero;
  return m;
}

Measurement ValidatePair(const CheckContext& ctx) {
  Measurement m;
  for (const auto& [name, pair] : Pairs(ctx)) {
    const ValidationReport& r = pair.report();
    const double ratio = std::max({r.eta_at_origin / ValidationReport::kEtaAtOriginTol,
                                   r.norm_defect / ValidationReport::kNormTol,
                                   r.h2_membership / ValidationReport::kMembershipTol,
                                   r.eta_orthogonality / ValidationReport::kOrthogonalityTol});
    m.baselines["per_pair"][name] = {{"eta_at_origin", r.eta_at_origin},
                                     {"norm_defect", r.norm_defect},
                                     {"h2_membership", r.h2_membership},
                                     {"eta_orthogonality", r.eta_orthogonality},
                                     {"valid", r.pass()}};
    m.residual = std::max(m.residual, ratio);
  }
  m.baselines["residual_unit"] = "largest defect divided by its threshold";
  return m;
}

Measurement CanonicalizeDegreeTwo(const CheckContext& ctx) {
  Measurement m;
  for (double p : {1.0, 3.0}) {
    const auto in = fixtures::degree_two_input(Exponent(p), ctx.grid_size);
    const auto c = canonicalize(in.eta, in.phi0, in.theta, Exponent(p));
    const double d = std::max(sup_distance(c.pair.phi(), in.phi_true),
                              zero_set_distance(c.xi, BlaschkeProduct::monomial(1)));
    m.baselines["p=" + std::to_string(static_cast<int>(p))] = d;
    m.residual = std::max(m.residual, d);
  }
  return m;
}

Measurement OuterReproduction(const CheckContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  double worst = 0.0;
  for (int t = 0; t < ctx.params.value("trials", 20); ++t) {
    const GridFunction q = fixtures::random_zero_free_polynomial(rng, 6, ctx.grid_size);
    const GridFunction F = outer_from_modulus(OuterSpec{q.map([](cplx v) { return cplx(std::abs(v)); })}).values;
    worst = std::max(worst, sup_distance(F, q) / sup_norm(q));
  }
  return {worst, json::object()};
}

Measurement CondexpContract(const CheckContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const BlaschkeProduct eta({0.0, fixtures::kDegreeTwoZero});
  double worst = 0.0;
  for (int t = 0; t < ctx.params.value("trials", 20); ++t) {
    const GridFunction f = fixtures::random_trig(rng, -16, 16, ctx.grid_size);
    const GridFunction e = condexp(f, eta);
    worst = std::max({worst, sup_distance(condexp(e, eta), e), std::abs(mean(e) - mean(f)),
                      measurability_residual(e, eta)});
  }
  return {worst, json::object()};
}

Measurement RieszL1(const CheckContext& ctx) {
  const auto basis = monomial_basis(-32, 31, 1024);
  const double v = estimate_opnorm([](const GridFunction& f) { return riesz(f); }, basis, Exponent(1),
                                   OpnormOptions{ctx.params.value("trials", 2), ctx.params.value("steps", 200), ctx.seed});
  return {v, json{{"dimension", 64}}};
}

Measurement FiberMeasure(const CheckContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  std::uniform_int_distribution<int> deg(1, 4);
  double worst = 0.0;
  for (int t = 0; t < ctx.params.value("trials", 10); ++t) {
    const BlaschkeProduct eta = fixtures::random_blaschke(rng, deg(rng), 0.8, true);
    worst = std::max(worst, fiber_table(eta, ctx.grid_size)->fiber_sum_defect);
  }
  return {worst, json::object()};
}

std::vector<CheckInfo> BuildCatalog() {
  using D = Direction;
  auto sweep = [](double Sweep::*max, json Sweep::*per) {
    return [max, per](const CheckContext& ctx) { return FromSweep(ctx, max, per); };
  };
  return {
      {"prop42_orthonormality", "xp", "Proposition 4.2, orthonormality of eta^j in L^2(|phi|^p)",
       "max over pairs of |int eta^j |phi|^p dm - delta_j0|, |j| <= 8", 1e-7, D::kAtMost, false, Prop42Moments},
      {"prop42_weight_condexp", "xp", "Proposition 4.2, E(|phi|^p | eta) = 1",
       "max over pairs of sup |E(|phi|^p | eta) - 1|", 1e-7, D::kAtMost, false, Prop42Weight},
      {"prop42_isometry", "xp", "Proposition 4.2 and Corollary 1.4, T is an isometry",
       "max relative change of the p-norm under T on random polynomials of degree <= 32", 1e-6, D::kAtMost, true,
       Prop42Isometry},
      {"thm44_idempotence", "projector", "Theorem 1.2, P = phi E_phi(./phi | eta)",
       "max ||P P f - P f||_p over random unit f", 1e-7, D::kAtMost, true,
       sweep(&Sweep::max_idempotence, &Sweep::idempotence)},
      {"thm44_contractivity", "projector", "Theorem 1.2, contractive projection",
       "max (||P f||_p - ||f||_p)_+ over random unit f", 1e-7, D::kAtMost, true,
       sweep(&Sweep::max_contractivity, &Sweep::contractivity)},
      {"thm44_hp_invariance", "projector", "Theorem 4.4, P carries H^p into H^p",
       "max negative-frequency coefficient of P f", 1e-7, D::kAtMost, true, sweep(&Sweep::max_hp, &Sweep::hp)},
      {"thm44_fixes_range", "projector", "Theorem 4.4, P fixes the range of T",
       "max sup |P T q - T q| / max(1, sup |T q|)", 1e-7, D::kAtMost, true, sweep(&Sweep::max_fixes, &Sweep::fixes)},
      {"thm44_range_measurability", "projector", "Theorem 4.4, Ran P = H^p_{eta,phi}",
       "max sup |P f / phi - E(P f / phi | eta)|", 1e-6, D::kAtMost, true, sweep(&Sweep::max_range, &Sweep::range)},
      {"cor13_restriction", "projector", "Corollary 1.3, P is the restriction of the extension",
       "extension against H^p path and against the division formula", 1e-9, D::kAtMost, true, Cor13Restriction},
      {"cor13_reality", "projector", "Corollary 4.8, positivity of the weighted conditional expectation",
       "sup |E_phi(conj f) - conj E_phi(f)| on random trigonometric f", 1e-9, D::kAtMost, true, Cor13Reality},
      {"cor13_dual_path", "projector", "Corollary 1.3, uniqueness via trigonometric density",
       "fiber averaging against the Fourier multiplier on z^k, |k| <= 64", 1e-9, D::kAtMost, false, Cor13DualPath},
      {"lemma21_certificate", "projector", "Lemma 2.1, contractivity criterion for p > 1",
       "normalized pairing of |g|^{p-1} sgn g with kernel samples", 1e-8, D::kAtMost, true,
       [](const CheckContext& c) { return Certificates(c, false); }},
      {"lemma22_certificate", "projector", "Lemma 2.2, contractivity criterion for p = 1",
       "pairing of sgn g with kernel samples minus the zero-set mass", 1e-8, D::kAtMost, true,
       [](const CheckContext& c) { return Certificates(c, true); }},
      {"broken_multiplier_certificate", "projector", "Lemma 2.1, falsification on a non-contractive multiplier",
       "certificate residual of the multiplier keeping k in {0, 1} on H^3", 1e-3, D::kAtLeast, true,
       BrokenMultiplier},
      {"even_p_certificate", "projector", "Section 3.1 Example, a + bz + z^{k+1} r -> a + bz",
       "certificate residual at p = 4 and p = 6 with the z in Ran P witness", 1e-8, D::kAtMost, false,
       EvenCertificate},
      {"even_p_odd_opnorm", "projector", "Theorem 3.1, the same projection at p = 3",
       "operator norm lower bound minus 1 at p = 3", 1e-4, D::kAtLeast, true, EvenOddOpnorm},
      {"aleksandrov_origin", "projector", "Aleksandrov's theorem, inner function vanishing at the origin",
       "max negative energy of E(z^k | eta), k <= 16, for three eta with eta(0) = 0", 1e-7, D::kAtMost, false,
       AleksandrovOrigin},
      {"aleksandrov_shifted", "projector", "Aleksandrov's theorem, falsification with eta(0) != 0",
       "max negative energy of E(z^k | eta) for eta = ((z - 1/2) / (1 - z/2))^2", 1e-3, D::kAtLeast, false,
       AleksandrovShifted},
      {"lemma414_gcd_composition", "blaschke", "Lemma 4.14, gcd(F o eta) = (gcd F) o eta",
       "zero multiset distance on random triples of degree <= 3", 1e-8, D::kAtMost, true, GcdComposition},
      {"lemma413_measurable_modulus", "factorize", "Lemma 4.13, outer F is eta-measurable iff |F| is",
       "max measurability residual of the outer function with |F| = h o eta", 1e-6, D::kAtMost, true,
       [](const CheckContext& c) { return OuterMeasurability(c, true); }},
      {"lemma413_nonmeasurable_modulus", "factorize", "Lemma 4.13, converse direction",
       "min measurability residual of the outer function with non-measurable |F|", 1e-3, D::kAtLeast, true,
       [](const CheckContext& c) { return OuterMeasurability(c, false); }},
      {"finite_ce_norm", "finitelab", "Theorem 3.1, conditional expectations are contractive",
       "max |oracle norm - 1| over every partition of random spaces with n <= 6, p in {1, 3}", 1e-9, D::kAtMost,
       true, FiniteCeNorm},
      {"finite_projection_norm", "finitelab", "Theorem 3.1, norm-one projections fixing 1 are averaging",
       "min (oracle norm - 1) over random non-averaging projections fixing 1, p in {1, 3}", 1e-9, D::kAtLeast,
       true, FiniteProjectionNorm},
      {"finite_p2_contrast_p2", "finitelab", "Theorem 3.1, the hypothesis p != 2",
       "|oracle norm - 1| of an orthogonal non-averaging projection at p = 2", 1e-9, D::kAtMost, true,
       [](const CheckContext& c) { return Measurement{std::abs(ContrastNorms(c).p2 - 1.0), json::object()}; }},
      {"finite_p2_contrast_p3", "finitelab", "Theorem 3.1, the hypothesis p != 2",
       "oracle norm - 1 of the same projection at p = 3", 1e-4, D::kAtLeast, true,
       [](const CheckContext& c) { return Measurement{ContrastNorms(c).p3 - 1.0, json::object()}; }},
      {"lemma32_enumeration", "finitelab", "Lemma 3.2, E(f | g) = 0 for each g in Y implies E(f | Sigma(Y)) = 0",
       "max block mean of f over Sigma(Y) when the hypothesis holds, with enumeration cross-check", 1e-9,
       D::kAtMost, true, Lemma32Enumeration},
      {"validate_pair", "xp", "Definition 4.1, the set X_p",
       "largest validation defect divided by its threshold", 1.0, D::kAtMost, false, ValidatePair},
      {"canonicalize_degree_two", "xp", "Theorem 4.5, xi = gcd of the admissible inner factors",
       "sup |phi - phi_true| and zero distance of xi to z after canonicalization", 1e-8, D::kAtMost, false,
       CanonicalizeDegreeTwo},
      {"outer_modulus_reproduction", "factorize", "Outer function from its modulus, exp(u + i H u)",
       "relative sup distance between outer_from_modulus(|q|) and zero-free q", 1e-8, D::kAtMost, true,
       OuterReproduction},
      {"condexp_contract", "condexp", "Conditional expectation properties (1)-(3)",
       "idempotence, mean preservation and fiber constancy for a degree-2 eta", 1e-8, D::kAtMost, true,
       CondexpContract},
      {"riesz_l1_growth", "projector", "Riesz projection unbounded on L^1",
       "operator norm lower bound on trigonometric polynomials of dimension 64", 1.5, D::kAtLeast, true, RieszL1},
      {"blaschke_fiber_measure", "blaschke", "Inner functions fixing 0 preserve Lebesgue measure",
       "max |sum over fibers of 1/|eta'| - 1| for random eta", 1e-8, D::kAtMost, true, FiberMeasure},
  };
}

}  // namespace

const std::vector<CheckInfo>& catalog() {
  static const std::vector<CheckInfo> checks = BuildCatalog();
  return checks;
}

const CheckInfo* find_check(const std::string& name) {
  for (const auto& c : catalog()) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void validate_pair_spec(const json& spec) {
  RequireKeys(spec, {"name", "fixture", "eta", "phi", "p"}, "pair");
  if (spec.contains("name") && !spec["name"].is_string()) throw ConfigurationError("pair name must be a string");
  const Exponent p = ParseExponent(spec);
  p.require_not_two();
  if (spec.contains("fixture")) {
    if (!spec["fixture"].is_string()) throw ConfigurationError("pair fixture must be a string");
    const std::string f = spec["fixture"].get<std::string>();
    if (f != "z2_one" && f != "z2_z" && f != "z2_sqrt1pz" && f != "z3_z" && f != "degree_two") {
      throw ConfigurationError("unknown fixture \"" + f + "\"");
    }
    if (spec.contains("eta") || spec.contains("phi")) throw ConfigurationError("fixture pairs take no eta or phi");
    return;
  }
  if (!spec.contains("eta") || !spec.contains("phi")) throw ConfigurationError("pair needs eta and phi");
  ParseEta(spec["eta"]);
  RequireKeys(spec["phi"], {"coefficients", "normalize"}, "phi");
  if (!spec["phi"].contains("coefficients")) throw ConfigurationError("phi needs coefficients");
  if (ParseComplexList(spec["phi"]["coefficients"], "phi.coefficients").empty()) {
    throw ConfigurationError("phi.coefficients must be nonempty");
  }
}

std::vector<NamedPair> build_pairs(const json& inputs, std::size_t n) {
  static std::mutex mutex;
  static std::map<std::string, std::vector<NamedPair>> cache;
  const std::string key = std::to_string(n) + "/" + inputs.dump();
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::vector<NamedPair> pairs;
  if (inputs.contains("pairs")) {
    for (const auto& spec : inputs["pairs"]) pairs.push_back(BuildPair(spec, n));
  } else {
    pairs = fixtures::acceptance_pairs(n);
  }
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, std::move(pairs)).first->second;
}

std::uint64_t derive_seed(std::uint64_t master, const std::string& label) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32)};
  for (unsigned char ch : label) words.push_back(ch);
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace hardy::lab
