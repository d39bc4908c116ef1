#pragma once
// The projection P f = phi E(f u | eta) / E(|phi|^p | eta) with
// u = |phi|^{p-1} conj(sgn phi), which equals phi E_phi(f / phi | eta) for
// the weight |phi|^p without dividing by phi. The same formula defines the
// extension to L^p.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hardy/circlefft.hpp"
#include "hardy/xp.hpp"

namespace hardy {

class ProjectionOperator {
 public:
  // Throws ContractViolation for a pair that fails validation and
  // DegenerateWeight when |phi| < floor on more than 0.1% of the samples.
  explicit ProjectionOperator(XpPair pair, double floor = 1e-12);

  const XpPair& pair() const { return pair_; }
  std::size_t grid_size() const { return pair_.grid_size(); }
  double floor() const { return floor_; }

  // Formula evaluation on any grid function.
  GridFunction operator()(const GridFunction& f) const;
  // The weighted conditional expectation E(g |phi|^p | eta) / E(|phi|^p | eta)
  // that the projection is conjugate to: P f = phi * transferred(f / phi).
  // It commutes with conjugation; P itself does only when sgn(phi)^2 is
  // eta-measurable.
  GridFunction transferred(const GridFunction& g) const;
  // Same operator through the Fourier multiplier keeping k in nZ; requires
  // eta = c z^n.
  GridFunction via_multiplier(const GridFunction& f) const;

  // sup over rows of |g/phi - E(g/phi | eta)|, skipping samples where
  // |phi| < floor together with their fiber partners. Throws
  // ConfigurationError when samples are skipped and the fibers are off-grid.
  double range_residual(const GridFunction& g) const;

 private:
  XpPair pair_;
  double floor_;
  GridFunction u_;            // |phi|^{p-1} conj(sgn phi)
  GridFunction denominator_;  // E(|phi|^p | eta)
  std::vector<bool> small_;   // |phi| < floor
};

// Throws ContractViolation when negative_energy(f) > 1e-6 * max(1, sup|f|),
// which catches inputs that are not analytic at all while letting sampled
// branch-point functions through.
GridFunction apply_P(const ProjectionOperator& op, const GridFunction& f);
GridFunction apply_Pext(const ProjectionOperator& op, const GridFunction& f);

enum class CertificateKind { kLemma21, kLemma22 };

struct Certificate {
  CertificateKind kind;
  double residual = 0.0;
  double tolerance = 1e-8;
  std::string digest;  // FNV-1a of the sample data, hex
  bool pass = false;
};

// p > 1: max over pairs of |int |g|^{p-1} sgn(g) conj(k) dm| / (||g||_p^{p-1} ||k||_p).
// p = 1: max over pairs of (|int sgn(g) conj(k) dm| - int_{|g| <= 1e-9} |k| dm)_+ / ||k||_1.
// Throws ConfigurationError for empty lists.
Certificate certify_contractive(Exponent p, const std::vector<GridFunction>& range,
                                const std::vector<GridFunction>& kernel);

// Range samples P f and kernel samples f - P f for `count` random analytic
// polynomials of degree <= degree, normalized to unit p-norm.
struct CertificateSamples {
  std::vector<GridFunction> range;
  std::vector<GridFunction> kernel;
};
CertificateSamples certificate_samples(const std::function<GridFunction(const GridFunction&)>& apply, Exponent p,
                                       std::size_t n, int count, int degree, std::uint64_t seed);

struct OpnormOptions {
  int trials = 64;
  int steps = 200;
  std::uint64_t seed = 0;
};

// Lower bound for the norm of `apply` on span(basis) in L^p. Every basis
// vector is scored first; restart 0 starts from the best one, restart 1 from
// the sum of the basis and the rest from random complex coefficients. Each
// restart runs coordinate ascent over +-delta and +-i delta with a step per
// coordinate that doubles after a move and halves otherwise. `steps` bounds
// the sweeps.
double estimate_opnorm(const std::function<GridFunction(const GridFunction&)>& apply,
                       const std::vector<GridFunction>& basis, Exponent p, const OpnormOptions& options);

// Monomials z^lo .. z^hi on an n-point grid.
std::vector<GridFunction> monomial_basis(int lo, int hi, std::size_t n);

// Fourier multiplier keeping the listed frequencies.
GridFunction keep_frequencies(const GridFunction& f, const std::vector<int>& keep);

struct EvenCounterexampleReport {
  int k = 0;
  int M = 0;
  double p = 0.0;
  Certificate certificate;     // at p = 2k
  bool z_in_range = false;     // P z = z
  double identity_defect = 0;  // max over basis of ||P b - b||_p, > 0 when P != Id
  double odd_exponent = 0.0;   // 2k - 1
  double opnorm_odd = 0.0;     // lower bound at 2k - 1
};

// P(a + b z + z^{k+1} r) = a + b z on span{1, z, z^{k+1}, ..., z^M}.
EvenCounterexampleReport counterexample_even(int k, int M, Exponent p, std::size_t n, const OpnormOptions& options);

// max_{0 <= k <= K} negative_energy(E(z^k | eta)).
double aleksandrov_check(const BlaschkeProduct& eta, int K, std::size_t n);

}  // namespace hardy
