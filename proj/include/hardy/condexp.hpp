#pragma once
// Conditional expectation with respect to the sigma-algebra generated by a
// finite Blaschke product eta, realized by averaging over the fibers
//   E(f|eta)(z) = sum_{eta(w) = eta(z)} f(w) / |eta'(w)|
// normalized by the fiber sum of 1/|eta'|. Off-grid fiber points are
// evaluated through the truncated Fourier series of f.

#include <cstddef>
#include <memory>
#include <vector>

#include "hardy/blaschke.hpp"
#include "hardy/circlefft.hpp"

namespace hardy {

struct FiberTable {
  std::size_t n = 0;
  std::size_t degree = 0;
  // Row j (entries j*degree .. j*degree + degree - 1) is the fiber through
  // z_j, sorted by angle.
  std::vector<cplx> points;
  std::vector<double> weights;   // normalized to sum 1 per row
  std::vector<long> snapped;     // grid index or -1
  bool aligned = false;          // every fiber point is a grid node
  std::size_t rotated_rows = 0;  // rows re-solved half a step away (near-critical)
  // max_j |sum 1/|eta'| - 1| over rows; meaningful when eta(0) = 0.
  double fiber_sum_defect = 0.0;
};

// Built once per (eta, n) and shared afterwards.
std::shared_ptr<const FiberTable> fiber_table(const BlaschkeProduct& eta, std::size_t n);

struct CondexpResult {
  GridFunction value;
  // Set when some fiber point is off the grid and f is not band-limited to
  // N/4, so that spectral interpolation may alias.
  bool interpolation_flag = false;
};

CondexpResult condexp_detailed(const GridFunction& f, const BlaschkeProduct& eta);
GridFunction condexp(const GridFunction& f, const BlaschkeProduct& eta);

// For eta = c z^n: keeps the Fourier modes k in nZ.
GridFunction multiplier_condexp(const GridFunction& f, std::size_t n);

// condexp(g w, eta) / condexp(w, eta). The weight must be real, nonnegative,
// with mean >= 1e-8; throws DegenerateWeight when condexp(w, eta) drops
// below 1e-10 somewhere.
GridFunction weighted_condexp(const GridFunction& g, const BlaschkeProduct& eta, const GridFunction& w);

// sup |E(f E(g|eta)|eta) - E(f|eta) E(g|eta)|
double averaging_residual(const GridFunction& f, const GridFunction& g, const BlaschkeProduct& eta);

// sup |g - E(g|eta)|
double measurability_residual(const GridFunction& g, const BlaschkeProduct& eta);

}  // namespace hardy
