#include "hardy/factorize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hardy/errors.hpp"

namespace hardy {
namespace {

constexpr double kDropRatio = 1e-6;
constexpr int kFitPoints = 4;
constexpr double kMaxOrder = 64.0;

struct Singularity {
  std::size_t index;
  double alpha;
  double s0;  // value of the regular part at the zero
};

struct LogModulus {
  std::size_t n = 0;
  std::vector<double> u;  // clipped log modulus
  std::vector<Singularity> singular;
  std::size_t clipped = 0;
};

double LogDistance(cplx z, cplx zeta) { return std::log(std::abs(1.0 - std::conj(zeta) * z)); }

// Fit the symmetric averages (u[j+q] + u[j-q]) / 2, q = 1..4, by
// alpha * log|z_{j+q} - z_j| + s0 + c2 q^2 + c4 q^4.
bool FitSingularity(const std::vector<double>& u, std::size_t j, Singularity& out) {
  const std::size_t n = u.size();
  Eigen::Matrix4d a;
  Eigen::Vector4d rhs;
  for (int q = 1; q <= kFitPoints; ++q) {
    const std::size_t up = (j + static_cast<std::size_t>(q)) % n;
    const std::size_t down = (j + n - static_cast<std::size_t>(q)) % n;
    const double dq = static_cast<double>(q);
    a(q - 1, 0) = LogDistance(unit_root(up, n), unit_root(j, n));
    a(q - 1, 1) = 1.0;
    a(q - 1, 2) = dq * dq;
    a(q - 1, 3) = dq * dq * dq * dq;
    rhs(q - 1) = 0.5 * (u[up] + u[down]);
  }
  const Eigen::Vector4d x = a.fullPivLu().solve(rhs);
  if (!std::isfinite(x(0)) || !std::isfinite(x(1))) return false;
  if (!(x(0) > 0.0) || x(0) > kMaxOrder) return false;
  out = Singularity{j, x(0), x(1)};
  return true;
}

LogModulus PrepareLog(std::span<const cplx> modulus, double log_floor) {
  LogModulus lm;
  lm.n = modulus.size();
  const std::size_t n = lm.n;
  std::vector<double> m(n);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx v = modulus[j];
    if (v.real() < 0.0 || std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real()))) {
      throw RejectedInput("modulus samples must be real and nonnegative");
    }
    m[j] = v.real();
  }
  const double floor_value = std::exp(log_floor);
  lm.u.resize(n);
  std::vector<bool> low(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[j] < floor_value) {
      lm.u[j] = log_floor;
      low[j] = true;
      ++lm.clipped;
    } else {
      lm.u[j] = std::log(m[j]);
    }
  }
  if (static_cast<double>(lm.clipped) >= 0.05 * static_cast<double>(n)) {
    std::ostringstream msg;
    msg << "log-integrability guard: " << lm.clipped << " of " << n << " samples below exp(" << log_floor << ")";
    throw RejectedInput(msg.str());
  }

  std::vector<bool> candidate(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    const double left = m[(j + n - 1) % n], right = m[(j + 1) % n];
    candidate[j] = low[j] || m[j] < kDropRatio * std::min(left, right);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!candidate[j]) continue;
    bool isolated = true;
    for (int q = 1; q <= kFitPoints && isolated; ++q) {
      const std::size_t up = (j + static_cast<std::size_t>(q)) % n;
      const std::size_t down = (j + n - static_cast<std::size_t>(q)) % n;
      isolated = !candidate[up] && !candidate[down];
    }
    Singularity s{};
    if (isolated && FitSingularity(lm.u, j, s)) lm.singular.push_back(s);
  }
  return lm;
}

// v + i H v on the grid of every stride-th sample, where v is the log
// modulus with the fitted singular terms removed.
std::vector<cplx> RegularLog(const LogModulus& lm, std::size_t stride) {
  const std::size_t n = lm.n / stride;
  std::vector<cplx> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = lm.u[k * stride];
  for (const Singularity& s : lm.singular) {
    const cplx zeta = unit_root(s.index, lm.n);
    for (std::size_t k = 0; k < n; ++k) {
      if (k * stride == s.index) {
        v[k] = s.s0;
      } else {
        v[k] -= s.alpha * LogDistance(unit_root(k * stride, lm.n), zeta);
      }
    }
  }
  const GridFunction vg(std::move(v));
  const GridFunction hv = hilbert(vg);
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = cplx(vg[k].real(), hv[k].real());
  return out;
}

std::vector<cplx> ExpAnalytic(const LogModulus& lm, double s, std::size_t stride) {
  std::vector<cplx> out = RegularLog(lm, stride);
  const std::size_t n = out.size();
  for (cplx& v : out) v = std::exp(s * v);
  for (const Singularity& sing : lm.singular) {
    const cplx zeta = unit_root(sing.index, lm.n);
    const double order = s * sing.alpha;
    for (std::size_t k = 0; k < n; ++k) {
      if (k * stride == sing.index) {
        if (order < 0.0) throw RejectedInput("negative power of an outer function with a zero on the circle");
        if (order > 0.0) out[k] = 0.0;
        continue;
      }
      out[k] *= std::exp(order * std::log(1.0 - std::conj(zeta) * unit_root(k * stride, lm.n)));
    }
  }
  return out;
}

double AliasingDelta(const LogModulus& lm, const std::vector<cplx>& full, double s) {
  if (lm.n < 128) return 0.0;
  const std::vector<cplx> half = ExpAnalytic(lm, s, 2);
  double worst = 0.0, scale = 1.0;
  for (const cplx& v : full) scale = std::max(scale, std::abs(v));
  for (std::size_t k = 0; k < half.size(); ++k) worst = std::max(worst, std::abs(half[k] - full[2 * k]));
  return worst / scale;
}

double AnalyticityScale(const GridFunction& f) { return std::max(1.0, sup_norm(f)); }

}  // namespace

OuterFunction outer_from_modulus(const OuterSpec& spec) {
  const LogModulus lm = PrepareLog(spec.modulus.samples(), spec.log_floor);
  std::vector<cplx> values = ExpAnalytic(lm, 1.0, 1);
  OuterFunction result{GridFunction(values), 0, {}, 0.0, false};
  result.clipped_samples = lm.clipped;
  for (const Singularity& s : lm.singular) result.zeros.emplace_back(s.index, s.alpha);
  result.aliasing_delta = AliasingDelta(lm, values, 1.0);
  result.aliasing = result.aliasing_delta > 1e-6;
  return result;
}

GridFunction outer_power_unchecked(const GridFunction& f, double s) {
  const LogModulus lm = PrepareLog(f.modulus().samples(), -30.0);
  return GridFunction(ExpAnalytic(lm, s, 1));
}

GridFunction outer_power(const GridFunction& f, double s) {
  const double ne = negative_energy(f);
  if (ne > 1e-6 * AnalyticityScale(f)) {
    std::ostringstream msg;
    msg << "outer_power needs an analytic input, negative energy " << ne;
    throw ContractViolation(msg.str());
  }
  return outer_power_unchecked(f, s);
}

InnerOuter inner_outer_split_unchecked(const GridFunction& f) {
  const std::size_t n = f.size();
  GridFunction outer = outer_from_modulus(OuterSpec{f.modulus()}).values;
  std::vector<cplx> inner(n);
  std::vector<bool> missing(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(outer[j]) > 0.0 && std::abs(f[j]) > 0.0) {
      const cplx q = f[j] / outer[j];
      inner[j] = q / std::abs(q);
    } else {
      missing[j] = true;
    }
  }
  // Zeros of the outer part: take the phase midway between the neighbours.
  for (std::size_t j = 0; j < n; ++j) {
    if (!missing[j]) continue;
    cplx acc = 0.0;
    for (std::size_t step = 1; step < n && acc == cplx(0.0); ++step) {
      const std::size_t up = (j + step) % n, down = (j + n - step) % n;
      if (!missing[up]) acc += inner[up];
      if (!missing[down]) acc += inner[down];
    }
    inner[j] = std::abs(acc) > 0.0 ? acc / std::abs(acc) : cplx(1.0);
  }
  return InnerOuter{GridFunction(std::move(inner)), std::move(outer)};
}

InnerOuter inner_outer_split(const GridFunction& f) {
  const double ne = negative_energy(f);
  if (ne > 1e-8 * AnalyticityScale(f)) {
    std::ostringstream msg;
    msg << "inner_outer_split needs an H^p input, negative energy " << ne;
    throw ContractViolation(msg.str());
  }
  return inner_outer_split_unchecked(f);
}

}  // namespace hardy
