#include "hardy/circlefft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hardy/errors.hpp"
#include "hardy/fft.hpp"
#include "hardy/kernels.hpp"

namespace hardy {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_grid_size(std::size_t n) {
  if (!is_power_of_two(n) || n < 64) {
    throw ConfigurationError("grid size must be a power of two >= 64, got " + std::to_string(n));
  }
}

cplx unit_root(std::size_t j, std::size_t n) {
  j %= n;
  if (n % 8 != 0) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    return {std::cos(t), std::sin(t)};
  }
  const std::size_t quarter = n / 4;
  const std::size_t q = j / quarter;
  const std::size_t r = j % quarter;
  const double scale = 2.0 * std::numbers::pi / static_cast<double>(n);
  double c, s;
  if (2 * r <= quarter) {
    c = std::cos(scale * static_cast<double>(r));
    s = std::sin(scale * static_cast<double>(r));
  } else {
    const double t = scale * static_cast<double>(quarter - r);
    c = std::sin(t);
    s = std::cos(t);
  }
  switch (q) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

// ---------------------------------------------------------------- GridFunction

GridFunction::GridFunction(std::vector<cplx> samples) : samples_(std::move(samples)) {
  require_grid_size(samples_.size());
  for (const cplx& v : samples_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ConfigurationError("grid function has a non-finite sample");
    }
  }
}

GridFunction GridFunction::constant(std::size_t n, cplx value) {
  return GridFunction(std::vector<cplx>(n, value));
}

GridFunction GridFunction::sample(std::size_t n, const std::function<cplx(cplx)>& fn) {
  require_grid_size(n);
  std::vector<cplx> s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = fn(unit_root(j, n));
  return GridFunction(std::move(s));
}

GridFunction GridFunction::identity(std::size_t n) {
  return sample(n, [](cplx z) { return z; });
}

GridFunction GridFunction::polynomial(std::size_t n, std::span<const cplx> coeffs) {
  return sample(n, [&](cplx z) {
    cplx acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
    return acc;
  });
}

GridFunction GridFunction::conj() const {
  std::vector<cplx> s(samples_.size());
  std::transform(samples_.begin(), samples_.end(), s.begin(), [](cplx v) { return std::conj(v); });
  return GridFunction(std::move(s));
}

GridFunction GridFunction::modulus() const {
  std::vector<cplx> s(samples_.size());
  std::transform(samples_.begin(), samples_.end(), s.begin(), [](cplx v) { return cplx(std::abs(v)); });
  return GridFunction(std::move(s));
}

GridFunction GridFunction::map(const std::function<cplx(cplx)>& fn) const {
  std::vector<cplx> s(samples_.size());
  std::transform(samples_.begin(), samples_.end(), s.begin(), fn);
  return GridFunction(std::move(s));
}

namespace {
void RequireSameSize(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw ConfigurationError("grid size mismatch");
}
}  // namespace

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  RequireSameSize(*this, other);
  for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] += other.samples_[j];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  RequireSameSize(*this, other);
  for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] -= other.samples_[j];
  return *this;
}

GridFunction& GridFunction::operator*=(const GridFunction& other) {
  RequireSameSize(*this, other);
  kernels::active().cmul(samples_.data(), other.samples_.data(), samples_.data(), samples_.size());
  return *this;
}

GridFunction& GridFunction::operator*=(cplx s) {
  for (cplx& v : samples_) v *= s;
  return *this;
}

GridFunction GridFunction::times_conj(const GridFunction& a, const GridFunction& b) {
  RequireSameSize(a, b);
  std::vector<cplx> out(a.size());
  kernels::active().cmul_conj(a.samples_.data(), b.samples_.data(), out.data(), out.size());
  return GridFunction(std::move(out));
}

// ------------------------------------------------------------ SpectralFunction

SpectralFunction::SpectralFunction(std::size_t n) : coeffs_(n) {
  if (!is_power_of_two(n) || n < 2) throw ConfigurationError("spectral size must be a power of two");
}

SpectralFunction SpectralFunction::from_shifted(std::vector<cplx> coeffs) {
  SpectralFunction s(coeffs.size());
  s.coeffs_ = std::move(coeffs);
  return s;
}

cplx SpectralFunction::at(int k) const {
  if (k < min_frequency() || k > max_frequency()) return 0.0;
  return coeffs_[static_cast<std::size_t>(k - min_frequency())];
}

void SpectralFunction::set(int k, cplx value) {
  if (k < min_frequency() || k > max_frequency()) {
    throw ConfigurationError("frequency " + std::to_string(k) + " outside spectral range");
  }
  coeffs_[static_cast<std::size_t>(k - min_frequency())] = value;
}

// -------------------------------------------------------------------- Exponent

Exponent::Exponent(double p) : p_(p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw ConfigurationError("exponent must satisfy 1 <= p < inf");
  }
}

void Exponent::require_not_two() const {
  if (p_ == 2.0) throw ConfigurationError("p = 2 is excluded for this operation");
}

// ----------------------------------------------------------------- transforms

namespace {

// Unshifted coefficients c[k mod N].
std::vector<cplx> RawCoefficients(std::span<const cplx> samples) {
  std::vector<cplx> c(samples.begin(), samples.end());
  fft::forward(c);
  const double inv = 1.0 / static_cast<double>(c.size());
  for (cplx& v : c) v *= inv;
  return c;
}

GridFunction FromRawCoefficients(std::vector<cplx> c) {
  fft::inverse(c);
  return GridFunction(std::move(c));
}

// Signed frequency of raw index i.
long Frequency(std::size_t i, std::size_t n) {
  return i < n / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n);
}

}  // namespace

SpectralFunction analyze(const GridFunction& g) {
  const std::size_t n = g.size();
  std::vector<cplx> raw = RawCoefficients(g.samples());
  std::vector<cplx> shifted(n);
  for (std::size_t i = 0; i < n; ++i) shifted[(i + n / 2) % n] = raw[i];
  return SpectralFunction::from_shifted(std::move(shifted));
}

GridFunction synthesize(const SpectralFunction& s) {
  const std::size_t n = s.size();
  std::vector<cplx> raw(n);
  const auto shifted = s.shifted();
  for (std::size_t i = 0; i < n; ++i) raw[i] = shifted[(i + n / 2) % n];
  return FromRawCoefficients(std::move(raw));
}

GridFunction resample(const GridFunction& g, std::size_t m) {
  require_grid_size(m);
  if (m < g.size()) throw ConfigurationError("resample: target grid is smaller than the source");
  if (m == g.size()) return g;
  const SpectralFunction s = analyze(g);
  SpectralFunction t(m);
  for (int k = s.min_frequency(); k <= s.max_frequency(); ++k) t.set(k, s.at(k));
  return synthesize(t);
}

double pnorm(std::span<const cplx> samples, double p) {
  if (samples.empty()) return 0.0;
  const double sum = kernels::active().abs_pow_sum(samples.data(), samples.size(), p);
  return std::pow(sum / static_cast<double>(samples.size()), 1.0 / p);
}

double pnorm(const GridFunction& g, Exponent p) { return pnorm(g.samples(), p.value()); }

GridFunction riesz(const GridFunction& g) {
  const std::size_t n = g.size();
  std::vector<cplx> c = RawCoefficients(g.samples());
  for (std::size_t i = n / 2; i < n; ++i) c[i] = 0.0;
  return FromRawCoefficients(std::move(c));
}

GridFunction hilbert(const GridFunction& g) {
  const std::size_t n = g.size();
  std::vector<cplx> c = RawCoefficients(g.samples());
  const cplx minus_i(0.0, -1.0);
  c[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    c[i] *= Frequency(i, n) > 0 ? minus_i : -minus_i;
  }
  return FromRawCoefficients(std::move(c));
}

double negative_energy(const GridFunction& g) {
  const std::size_t n = g.size();
  const std::vector<cplx> c = RawCoefficients(g.samples());
  double worst = 0.0;
  for (std::size_t i = n / 2; i < n; ++i) worst = std::max(worst, std::abs(c[i]));
  return worst;
}

cplx mean(const GridFunction& g) {
  cplx acc = 0.0;
  for (const cplx& v : g.samples()) acc += v;
  return acc / static_cast<double>(g.size());
}

double sup_distance(const GridFunction& a, const GridFunction& b) {
  RequireSameSize(a, b);
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
  return worst;
}

double sup_norm(const GridFunction& a) {
  double worst = 0.0;
  for (const cplx& v : a.samples()) worst = std::max(worst, std::abs(v));
  return worst;
}

// ---------------------------------------------------------- SpectralInterpolant

SpectralInterpolant::SpectralInterpolant(const GridFunction& g)
    : samples_(g.samples().begin(), g.samples().end()) {
  const std::size_t n = samples_.size();
  std::vector<cplx> c = RawCoefficients(samples_);
  double biggest = 0.0;
  for (const cplx& v : c) biggest = std::max(biggest, std::abs(v));
  const double threshold = 1e-14 * biggest;

  // The Nyquist mode is split evenly between +N/2 and -N/2 so that real
  // samples interpolate to a real trigonometric polynomial.
  const cplx nyquist = 0.5 * c[n / 2];
  std::vector<cplx> pos(n / 2 + 1), neg(n / 2 + 1);
  for (std::size_t k = 0; k < n / 2; ++k) pos[k] = c[k];
  pos[n / 2] = nyquist;
  neg[0] = 0.0;
  for (std::size_t k = 1; k < n / 2; ++k) neg[k] = c[n - k];
  neg[n / 2] = nyquist;

  auto trim = [threshold](std::vector<cplx>& v, std::size_t keep_min) {
    std::size_t len = v.size();
    while (len > keep_min && std::abs(v[len - 1]) <= threshold) --len;
    v.resize(len);
  };
  trim(pos, 1);
  trim(neg, 1);
  positive_ = std::move(pos);
  negative_ = std::move(neg);

  double tail = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(Frequency(i, n)) > static_cast<long>(n / 4)) tail = std::max(tail, std::abs(c[i]));
  }
  tail_ = biggest > 0.0 ? tail / biggest : 0.0;
}

bool SpectralInterpolant::band_limited() const { return tail_ <= 1e-10; }

long SpectralInterpolant::snap_index(cplx w) const {
  const double n = static_cast<double>(samples_.size());
  double angle = std::atan2(w.imag(), w.real());
  if (angle < 0.0) angle += 2.0 * std::numbers::pi;
  const double t = angle * n / (2.0 * std::numbers::pi);
  const double j = std::nearbyint(t);
  if (std::abs(t - j) * (2.0 * std::numbers::pi / n) < 1e-10) {
    return static_cast<long>(j) % static_cast<long>(samples_.size());
  }
  return -1;
}

cplx SpectralInterpolant::operator()(cplx w) const {
  cplx out;
  evaluate(std::span<const cplx>(&w, 1), std::span<cplx>(&out, 1));
  return out;
}

void SpectralInterpolant::evaluate(std::span<const cplx> points, std::span<cplx> out) const {
  if (points.size() != out.size()) throw ConfigurationError("interpolant output size mismatch");
  std::vector<std::size_t> off_grid;
  std::vector<cplx> off_points;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const long j = snap_index(points[i]);
    if (j >= 0) {
      out[i] = samples_[static_cast<std::size_t>(j)];
    } else {
      off_grid.push_back(i);
      off_points.push_back(points[i]);
    }
  }
  if (off_grid.empty()) return;
  const auto& k = kernels::active();
  std::vector<cplx> pos_vals(off_points.size()), neg_vals(off_points.size());
  k.horner(positive_.data(), positive_.size(), off_points.data(), pos_vals.data(), off_points.size());
  for (cplx& w : off_points) w = std::conj(w);
  k.horner(negative_.data(), negative_.size(), off_points.data(), neg_vals.data(), off_points.size());
  for (std::size_t m = 0; m < off_grid.size(); ++m) out[off_grid[m]] = pos_vals[m] + neg_vals[m];
}

}  // namespace hardy
