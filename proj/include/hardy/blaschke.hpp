#pragma once
// Finite Blaschke products c * prod (z - a) / (1 - conj(a) z).

#include <cstddef>
#include <vector>

#include "hardy/circlefft.hpp"

namespace hardy {

// Absolute distance under which two zeros are treated as the same point.
inline constexpr double kZeroPairingTol = 1e-9;

class BlaschkeProduct {
 public:
  // Throws ConfigurationError for zeros with |a| > 1 - 1e-9 or a constant
  // whose modulus differs from 1 by more than 1e-12.
  explicit BlaschkeProduct(std::vector<cplx> zeros = {}, cplx constant = 1.0);

  static BlaschkeProduct monomial(std::size_t n, cplx constant = 1.0);

  const std::vector<cplx>& zeros() const { return zeros_; }
  cplx constant() const { return constant_; }
  std::size_t degree() const { return zeros_.size(); }
  // True when every zero is exactly 0.
  bool is_monomial() const;

  // Throws NumericError when |1 - conj(a) z| < 1e-14 for some zero.
  cplx operator()(cplx z) const;
  GridFunction sample(std::size_t n) const;

  BlaschkeProduct with_constant(cplx c) const { return BlaschkeProduct(zeros_, c); }
  friend BlaschkeProduct operator*(const BlaschkeProduct& a, const BlaschkeProduct& b);

 private:
  std::vector<cplx> zeros_;
  cplx constant_;
};

cplx eval(const BlaschkeProduct& b, cplx z);

// |B'(w)| for |w| = 1, equal to sum (1 - |a|^2) / |w - a|^2.
double derivative_modulus(const BlaschkeProduct& b, cplx w);
GridFunction boundary_derivative_modulus(const BlaschkeProduct& b, std::size_t n);

// All w on the circle with B(w) = zeta, sorted by angle in [0, 2 pi).
std::vector<cplx> fibers(const BlaschkeProduct& b, cplx zeta);

// Roots of B(w) = value for |value| < 1, all inside the disk.
std::vector<cplx> disk_preimages(const BlaschkeProduct& b, cplx value);

// Multiset operations on zeros, pairing within kZeroPairingTol.
BlaschkeProduct gcd(const BlaschkeProduct& b1, const BlaschkeProduct& b2);
bool divides(const BlaschkeProduct& chi, const BlaschkeProduct& b);
// Zeros of b with those of chi removed; requires divides(chi, b).
BlaschkeProduct quotient(const BlaschkeProduct& b, const BlaschkeProduct& chi);
// Zero multisets equal within tol (constants ignored).
bool same_zeros(const BlaschkeProduct& a, const BlaschkeProduct& b, double tol);
// Largest distance in an optimal greedy pairing of two equal-size zero sets,
// or infinity when the degrees differ.
double zero_set_distance(const BlaschkeProduct& a, const BlaschkeProduct& b);

// chi o eta as a Blaschke product.
BlaschkeProduct compose_zeros(const BlaschkeProduct& chi, const BlaschkeProduct& eta);

}  // namespace hardy
