#pragma once
// Boundary functions on the unit circle sampled at N uniform points, their
// discrete Fourier coefficients, L^p norms, Riesz projection and Hilbert
// transform.
//
// Conventions:
//   z_j = exp(2 pi i j / N), j = 0..N-1.
//   coeff_k = (1/N) sum_j f(z_j) exp(-2 pi i k j / N), k in [-N/2, N/2).
//   Integrals against the normalized arc-length measure dm use the trapezoid
//   rule (1/N) sum_j, which is exact for trigonometric polynomials of degree < N.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hardy {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultGridSize = 4096;

bool is_power_of_two(std::size_t n);

// Throws ConfigurationError unless n is a power of two >= 64.
void require_grid_size(std::size_t n);

// exp(2 pi i j / n), computed by octant reduction so that the points
// 1, i, -1, -i come out exact.
cplx unit_root(std::size_t j, std::size_t n);

/// Complex samples of a function on the unit circle.
class GridFunction {
 public:
  explicit GridFunction(std::vector<cplx> samples);

  static GridFunction constant(std::size_t n, cplx value);
  // Samples z -> fn(z) at the n grid points.
  static GridFunction sample(std::size_t n, const std::function<cplx(cplx)>& fn);
  // Samples of the identity map z.
  static GridFunction identity(std::size_t n);
  // Analytic polynomial sum_k coeffs[k] z^k.
  static GridFunction polynomial(std::size_t n, std::span<const cplx> coeffs);

  std::size_t size() const { return samples_.size(); }
  std::span<const cplx> samples() const { return samples_; }
  cplx operator[](std::size_t j) const { return samples_[j]; }
  cplx point(std::size_t j) const { return unit_root(j, size()); }

  GridFunction conj() const;
  // |f| as a real-valued grid function.
  GridFunction modulus() const;
  GridFunction map(const std::function<cplx(cplx)>& fn) const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(const GridFunction& other);
  GridFunction& operator*=(cplx s);

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(GridFunction a, const GridFunction& b) { return a *= b; }
  friend GridFunction operator*(GridFunction a, cplx s) { return a *= s; }
  friend GridFunction operator*(cplx s, GridFunction a) { return a *= s; }

  // a * conj(b), pointwise.
  static GridFunction times_conj(const GridFunction& a, const GridFunction& b);

  bool operator==(const GridFunction&) const = default;

 private:
  std::vector<cplx> samples_;
};

/// Fourier coefficients indexed by k in [-N/2, N/2), stored in fftshift order.
class SpectralFunction {
 public:
  explicit SpectralFunction(std::size_t n);
  // coeffs given in fftshift order: coeffs[i] is frequency i - n/2.
  static SpectralFunction from_shifted(std::vector<cplx> coeffs);

  std::size_t size() const { return coeffs_.size(); }
  int min_frequency() const { return -static_cast<int>(size() / 2); }
  int max_frequency() const { return static_cast<int>(size() / 2) - 1; }

  cplx at(int k) const;
  void set(int k, cplx value);
  std::span<const cplx> shifted() const { return coeffs_; }

 private:
  std::vector<cplx> coeffs_;
};

/// Exponent p of an L^p space, 1 <= p < infinity.
class Exponent {
 public:
  explicit Exponent(double p);
  double value() const { return p_; }
  // Throws ConfigurationError when p == 2.
  void require_not_two() const;
  bool operator==(const Exponent&) const = default;

 private:
  double p_;
};

SpectralFunction analyze(const GridFunction& g);
GridFunction synthesize(const SpectralFunction& s);

double pnorm(const GridFunction& g, Exponent p);
double pnorm(std::span<const cplx> samples, double p);

// Trigonometric interpolation onto an m-point grid, m >= g.size() a power of
// two, by zero-padding the spectrum. Exact for band-limited samples; used to
// integrate nonsmooth expressions such as |g|^p more accurately.
GridFunction resample(const GridFunction& g, std::size_t m);

// Zeroes every negative frequency (including -N/2).
GridFunction riesz(const GridFunction& g);

// Fourier multiplier -i sgn(k), sgn(0) = 0, frequency -N/2 counted as negative.
GridFunction hilbert(const GridFunction& g);

// max_{k<0} |coeff_k|.
double negative_energy(const GridFunction& g);

// (1/N) sum_j g(z_j)
cplx mean(const GridFunction& g);

// max_j |a_j - b_j|
double sup_distance(const GridFunction& a, const GridFunction& b);
double sup_norm(const GridFunction& a);

/// Off-grid evaluation of a grid function through its truncated Fourier
/// series (modes below 1e-14 of the largest are dropped). Points that lie within 1e-10 rad of a grid node return the stored
/// sample, so grid-aligned evaluation is exact.
class SpectralInterpolant {
 public:
  explicit SpectralInterpolant(const GridFunction& g);

  cplx operator()(cplx w) const;
  void evaluate(std::span<const cplx> points, std::span<cplx> out) const;

  // Returns the grid index when w is a grid node, -1 otherwise.
  long snap_index(cplx w) const;

  // Highest retained positive / negative frequency.
  int positive_bandwidth() const { return static_cast<int>(positive_.size()) - 1; }
  int negative_bandwidth() const { return static_cast<int>(negative_.size()) - 1; }
  // True when the spectrum is negligible beyond N/4 in both directions.
  bool band_limited() const;

 private:
  std::vector<cplx> samples_;
  std::vector<cplx> positive_;  // c_0, c_1, ...
  std::vector<cplx> negative_;  // 0, c_{-1}, c_{-2}, ...
  double tail_ = 0.0;
};

}  // namespace hardy
