#include "hardy/condexp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>

#include "hardy/errors.hpp"

namespace hardy {
namespace {

constexpr double kCriticalSeparation = 1e-6;

std::string CacheKey(const BlaschkeProduct& eta, std::size_t n) {
  std::string key(reinterpret_cast<const char*>(&n), sizeof n);
  auto append = [&key](cplx v) {
    double parts[2] = {v.real(), v.imag()};
    key.append(reinterpret_cast<const char*>(parts), sizeof parts);
  };
  append(eta.constant());
  for (const cplx& a : eta.zeros()) append(a);
  return key;
}

bool NearCritical(const std::vector<cplx>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t k = i + 1; k < pts.size(); ++k) {
      if (std::abs(pts[i] - pts[k]) < kCriticalSeparation) return true;
    }
  }
  return false;
}

long SnapIndex(cplx w, std::size_t n) {
  const double nn = static_cast<double>(n);
  double angle = std::atan2(w.imag(), w.real());
  if (angle < 0.0) angle += 2.0 * std::numbers::pi;
  const double t = angle * nn / (2.0 * std::numbers::pi);
  const double j = std::nearbyint(t);
  if (std::abs(t - j) * (2.0 * std::numbers::pi / nn) < 1e-10) {
    return static_cast<long>(j) % static_cast<long>(n);
  }
  return -1;
}

std::shared_ptr<const FiberTable> BuildTable(const BlaschkeProduct& eta, std::size_t n) {
  const std::size_t d = eta.degree();
  if (d == 0) throw ConfigurationError("conditional expectation needs deg(eta) >= 1");
  auto table = std::make_shared<FiberTable>();
  table->n = n;
  table->degree = d;
  table->points.resize(n * d);
  table->weights.resize(n * d);
  table->snapped.resize(n * d);
  table->aligned = true;
  const double half_step = std::numbers::pi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx z = unit_root(j, n);
    std::vector<cplx> pts = fibers(eta, eta(z));
    if (NearCritical(pts)) {
      pts = fibers(eta, eta(z * std::polar(1.0, half_step)));
      ++table->rotated_rows;
    }
    double total = 0.0;
    std::vector<double> raw(d);
    for (std::size_t i = 0; i < d; ++i) {
      raw[i] = 1.0 / derivative_modulus(eta, pts[i]);
      total += raw[i];
    }
    table->fiber_sum_defect = std::max(table->fiber_sum_defect, std::abs(total - 1.0));
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t slot = j * d + i;
      table->points[slot] = pts[i];
      table->weights[slot] = raw[i] / total;
      table->snapped[slot] = SnapIndex(pts[i], n);
      if (table->snapped[slot] < 0) table->aligned = false;
    }
  }
  return table;
}

void RequireSameGrid(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw ConfigurationError("grid size mismatch");
}

}  // namespace

std::shared_ptr<const FiberTable> fiber_table(const BlaschkeProduct& eta, std::size_t n) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const FiberTable>> cache;
  const std::string key = CacheKey(eta, n);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto table = BuildTable(eta, n);
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, table).first->second;
}

CondexpResult condexp_detailed(const GridFunction& f, const BlaschkeProduct& eta) {
  const std::size_t n = f.size();
  const auto table = fiber_table(eta, n);
  const std::size_t d = table->degree;
  std::vector<cplx> values(n * d);
  bool flag = false;
  if (table->aligned) {
    for (std::size_t s = 0; s < n * d; ++s) values[s] = f[static_cast<std::size_t>(table->snapped[s])];
  } else {
    const SpectralInterpolant interp(f);
    flag = !interp.band_limited();
    std::vector<cplx> off_points;
    std::vector<std::size_t> off_slots;
    for (std::size_t s = 0; s < n * d; ++s) {
      if (table->snapped[s] >= 0) {
        values[s] = f[static_cast<std::size_t>(table->snapped[s])];
      } else {
        off_points.push_back(table->points[s]);
        off_slots.push_back(s);
      }
    }
    std::vector<cplx> off_values(off_points.size());
    interp.evaluate(off_points, off_values);
    for (std::size_t m = 0; m < off_slots.size(); ++m) values[off_slots[m]] = off_values[m];
  }
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) acc += table->weights[j * d + i] * values[j * d + i];
    out[j] = acc;
  }
  return CondexpResult{GridFunction(std::move(out)), flag};
}

GridFunction condexp(const GridFunction& f, const BlaschkeProduct& eta) { return condexp_detailed(f, eta).value; }

GridFunction multiplier_condexp(const GridFunction& f, std::size_t n) {
  if (n == 0) throw ConfigurationError("monomial degree must be >= 1");
  SpectralFunction s = analyze(f);
  const long m = static_cast<long>(n);
  for (int k = s.min_frequency(); k <= s.max_frequency(); ++k) {
    if (k % m != 0) s.set(k, 0.0);
  }
  return synthesize(s);
}

GridFunction weighted_condexp(const GridFunction& g, const BlaschkeProduct& eta, const GridFunction& w) {
  RequireSameGrid(g, w);
  for (const cplx& v : w.samples()) {
    if (v.real() < 0.0 || v.imag() != 0.0) throw DegenerateWeight("weight samples must be real and nonnegative");
  }
  if (mean(w).real() < 1e-8) throw DegenerateWeight("weight mass below 1e-8");
  const GridFunction den = condexp(w, eta);
  const GridFunction num = condexp(g * w, eta);
  std::vector<cplx> out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double dj = den[j].real();
    if (!(dj >= 1e-10)) {
      std::ostringstream msg;
      msg << "conditional expectation of the weight is " << dj << " at sample " << j;
      throw DegenerateWeight(msg.str());
    }
    out[j] = num[j] / dj;
  }
  return GridFunction(std::move(out));
}

double averaging_residual(const GridFunction& f, const GridFunction& g, const BlaschkeProduct& eta) {
  RequireSameGrid(f, g);
  const GridFunction eg = condexp(g, eta);
  const GridFunction lhs = condexp(f * eg, eta);
  const GridFunction rhs = condexp(f, eta) * eg;
  return sup_distance(lhs, rhs);
}

double measurability_residual(const GridFunction& g, const BlaschkeProduct& eta) {
  return sup_distance(g, condexp(g, eta));
}

}  // namespace hardy
