#pragma once
// Outer functions from a boundary modulus, analytic powers of outer
// functions, and inner-outer splitting of grid functions.
//
// The analytic logarithm of |F| is u + i H u. Isolated zeros of the modulus
// on the grid (a zero sample, or a sample dropping below 1e-6 of both
// neighbours) are fitted locally as alpha * log|z - zeta| and carried
// through analytically as (1 - conj(zeta) z)^alpha, so that moduli such as
// |1 + z| reproduce 1 + z instead of a clipped approximation.

#include <cstddef>
#include <utility>
#include <vector>

#include "hardy/circlefft.hpp"

namespace hardy {

struct OuterSpec {
  GridFunction modulus;
  double log_floor = -30.0;
};

struct OuterFunction {
  GridFunction values;
  // Samples whose log modulus fell below the floor (isolated zeros included).
  std::size_t clipped_samples = 0;
  // Zeros handled by the local singular fit: grid index and exponent.
  std::vector<std::pair<std::size_t, double>> zeros;
  // Sup distance between this result and the same construction on every
  // other sample, relative to max(1, sup |F|); zero when N < 128.
  double aliasing_delta = 0.0;
  bool aliasing = false;
};

// Throws RejectedInput when the modulus has negative or non-real samples or
// when 5% or more of the samples fall below exp(log_floor).
OuterFunction outer_from_modulus(const OuterSpec& spec);

// exp(s * (u + i H u)) with u = log|F|. Throws ContractViolation when
// negative_energy(F) > 1e-6 * max(1, sup|F|).
GridFunction outer_power(const GridFunction& f, double s);
// Same construction without the analyticity precondition.
GridFunction outer_power_unchecked(const GridFunction& f, double s);

struct InnerOuter {
  GridFunction inner;
  GridFunction outer;
};

// Throws ContractViolation when negative_energy(f) > 1e-8 * max(1, sup|f|).
InnerOuter inner_outer_split(const GridFunction& f);
InnerOuter inner_outer_split_unchecked(const GridFunction& f);

}  // namespace hardy
