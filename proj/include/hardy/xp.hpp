#pragma once
// Pairs (eta, phi) admitted by the projection formula: eta a finite
// Blaschke product with eta(0) = 0, ||phi||_p = 1, and xi F^{p/2} orthogonal
// to eta H^2 inside H^2, where phi = xi F is the inner-outer factorization.

#include <optional>
#include <vector>

#include "hardy/blaschke.hpp"
#include "hardy/circlefft.hpp"

namespace hardy {

struct ValidationReport {
  static constexpr double kEtaAtOriginTol = 1e-10;
  static constexpr double kNormTol = 1e-8;
  static constexpr double kMembershipTol = 1e-7;
  static constexpr double kOrthogonalityTol = 1e-7;

  double eta_at_origin = 0.0;      // |eta(0)|
  double norm_defect = 0.0;        // | ||phi||_p - 1 |
  double h2_membership = 0.0;      // negative energy of G = xi F^{p/2}
  double eta_orthogonality = 0.0;  // max_{k >= 0} |coeff_k(conj(eta) G)|

  bool eta_ok() const { return eta_at_origin <= kEtaAtOriginTol; }
  bool norm_ok() const { return norm_defect <= kNormTol; }
  bool h2_ok() const { return h2_membership <= kMembershipTol; }
  bool orthogonality_ok() const { return eta_orthogonality <= kOrthogonalityTol; }
  bool pass() const { return eta_ok() && norm_ok() && h2_ok() && orthogonality_ok(); }
};

// Throws ConfigurationError for p = 2 and RejectedInput when |phi| fails the
// log-integrability guard.
ValidationReport validate_pair(const BlaschkeProduct& eta, const GridFunction& phi, Exponent p);

class XpPair {
 public:
  // Factorizes and validates; the pair is kept even when validation fails so
  // that callers can inspect the report.
  XpPair(BlaschkeProduct eta, GridFunction phi, Exponent p);

  const BlaschkeProduct& eta() const { return eta_; }
  const GridFunction& phi() const { return phi_; }
  Exponent p() const { return p_; }
  const GridFunction& xi() const { return xi_; }
  const GridFunction& F() const { return outer_; }
  const ValidationReport& report() const { return report_; }
  bool valid() const { return report_.pass(); }
  std::size_t grid_size() const { return phi_.size(); }

  // Throws ConsistencyError naming the failed conditions.
  void require_valid() const;

 private:
  BlaschkeProduct eta_;
  GridFunction phi_;
  Exponent p_;
  GridFunction xi_;
  GridFunction outer_;
  ValidationReport report_;
};

struct OrthonormalityDefect {
  double moments = 0.0;         // max_{1 <= |j| <= K} |int eta^j |phi|^p dm| and |int |phi|^p dm - 1|
  double weight_condexp = 0.0;  // sup |E(|phi|^p | eta) - 1|
  double value() const { return moments > weight_condexp ? moments : weight_condexp; }
};

OrthonormalityDefect orthonormality_defect_detailed(const XpPair& pair, int K);
double orthonormality_defect(const XpPair& pair, int K);

// |phi|^p as a real grid function.
GridFunction weight_of(const XpPair& pair);

// phi * (f o eta), with f evaluated at eta(z_j) by spectral interpolation.
// Throws ContractViolation when negative_energy(f) > 1e-8 * max(1, sup|f|).
GridFunction apply_T(const XpPair& pair, const GridFunction& f);
GridFunction compose_with(const GridFunction& f, const BlaschkeProduct& eta);

struct Canonicalization {
  XpPair pair;
  BlaschkeProduct xi;               // minimal passing sub-product of theta
  std::vector<BlaschkeProduct> passing;  // every sub-product with chi/theta eta-measurable
  GridFunction outer;
};

// theta is the inner part of phi0, given by its zeros. Throws AmbiguityError
// when the minimal-degree passing sub-products do not divide every other
// passing one, ConfigurationError when eta(0) != 0 or deg(theta) > 12.
Canonicalization canonicalize(const BlaschkeProduct& eta, const GridFunction& phi0, const BlaschkeProduct& theta,
                              Exponent p);

}  // namespace hardy
