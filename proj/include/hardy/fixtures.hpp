#pragma once
// Standard pairs and random test functions shared by the test suites and the
// scenario runner.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hardy/xp.hpp"

namespace hardy::fixtures {

// Grid used for the (1 + z) family, whose branch point on the circle
// limits the accuracy of every analytic quantity to O(N^{-3/2}).
inline constexpr std::size_t kBranchPointGrid = 262144;

inline const cplx kDegreeTwoZero{0.4, 0.2};

XpPair z2_one(Exponent p, std::size_t n);
XpPair z2_z(Exponent p, std::size_t n);
// phi = ((1 + z) / sqrt 2)^{2/p}
XpPair z2_sqrt1pz(Exponent p, std::size_t n);
XpPair z3_z(Exponent p, std::size_t n);

// eta = z (z - a) / (1 - conj(a) z), phi0 = phi_true * h(eta) with
// phi_true = c z (1 - conj(a) z)^{-2/p}, h(w) = w (1 + 0.3 w), and
// theta with zeros {0, 0, a}.
struct DegreeTwoInput {
  BlaschkeProduct eta;
  GridFunction phi0;
  BlaschkeProduct theta;
  GridFunction phi_true;
};
DegreeTwoInput degree_two_input(Exponent p, std::size_t n);
XpPair degree_two(Exponent p, std::size_t n);

struct NamedPair {
  std::string name;
  XpPair pair;
};

// The five fixture families at exponent p; grid n except the (1 + z) family.
std::vector<NamedPair> standard_pairs(Exponent p, std::size_t n);

// z2_one, z2_z and degree_two at p in {1, 4/3, 3, 4}, z2_sqrt1pz at p = 4 and
// z3_z at p = 3. Names carry the exponent, e.g. "z2_z@p=3".
std::vector<NamedPair> acceptance_pairs(std::size_t n);

// Uniform point in the disk of radius rmax.
cplx random_disk_point(std::mt19937_64& rng, double rmax);
// Blaschke product with `degree` zeros drawn by random_disk_point; the first
// zero is 0 when through_origin is set.
BlaschkeProduct random_blaschke(std::mt19937_64& rng, int degree, double rmax, bool through_origin);

// sum_{k=0}^{degree} c_k z^k with standard complex normal c_k.
GridFunction random_polynomial(std::mt19937_64& rng, int degree, std::size_t n);
// sum_{k=lo}^{hi} c_k z^k
GridFunction random_trig(std::mt19937_64& rng, int lo, int hi, std::size_t n);
// Polynomial with coefficients decaying like 4^{-k}, constant term 1; its
// zeros stay well outside the closed disk.
GridFunction random_zero_free_polynomial(std::mt19937_64& rng, int degree, std::size_t n);

}  // namespace hardy::fixtures
