#include "hardy/blaschke.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hardy/errors.hpp"

namespace hardy {
namespace {

using Poly = std::vector<cplx>;  // low to high degree

Poly Multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

cplx Evaluate(const Poly& p, cplx w) {
  cplx acc = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * w + p[k];
  return acc;
}

cplx EvaluateDerivative(const Poly& p, cplx w) {
  cplx acc = 0.0;
  for (std::size_t k = p.size(); k-- > 1;) acc = acc * w + static_cast<double>(k) * p[k];
  return acc;
}

// c * prod (w - a)
Poly Numerator(const BlaschkeProduct& b) {
  Poly p{b.constant()};
  for (const cplx& a : b.zeros()) p = Multiply(p, Poly{-a, 1.0});
  return p;
}

// prod (1 - conj(a) w)
Poly Denominator(const BlaschkeProduct& b) {
  Poly p{1.0};
  for (const cplx& a : b.zeros()) p = Multiply(p, Poly{1.0, -std::conj(a)});
  return p;
}

// Roots of numerator - value * denominator, with one Newton polish each.
std::vector<cplx> SolveLevel(const BlaschkeProduct& b, cplx value) {
  const Poly num = Numerator(b);
  const Poly den = Denominator(b);
  const std::size_t d = b.degree();
  Poly p(d + 1);
  for (std::size_t k = 0; k <= d; ++k) p[k] = num[k] - value * den[k];
  const cplx lead = p[d];
  if (std::abs(lead) < 1e-14) throw NumericError("degenerate leading coefficient in fiber polynomial");

  std::vector<cplx> roots(d);
  if (d == 1) {
    roots[0] = -p[0] / lead;
  } else {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 1; i < d; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -p[i] / lead;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw NumericError("companion eigenvalue solver did not converge");
    for (std::size_t i = 0; i < d; ++i) roots[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
  }
  for (cplx& w : roots) {
    const cplx slope = EvaluateDerivative(p, w);
    if (std::abs(slope) > 1e-300) {
      const cplx step = Evaluate(p, w) / slope;
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) w -= step;
    }
  }
  return roots;
}

double Angle(cplx w) {
  double t = std::atan2(w.imag(), w.real());
  if (t < 0.0) t += 2.0 * std::numbers::pi;
  return t;
}

// Greedy nearest pairing. Returns indices into b matched to each zero of a
// (or -1).
std::vector<long> PairZeros(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol) {
  std::vector<long> match(a.size(), -1);
  std::vector<bool> used(b.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = tol;
    long pick = -1;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(a[i] - b[j]);
      if (dist <= best) {
        best = dist;
        pick = static_cast<long>(j);
      }
    }
    if (pick >= 0) {
      used[static_cast<std::size_t>(pick)] = true;
      match[i] = pick;
    }
  }
  return match;
}

}  // namespace

BlaschkeProduct::BlaschkeProduct(std::vector<cplx> zeros, cplx constant) : zeros_(std::move(zeros)) {
  for (const cplx& a : zeros_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || std::abs(a) > 1.0 - 1e-9) {
      std::ostringstream msg;
      msg << "Blaschke zero " << a << " is not inside the open disk";
      throw ConfigurationError(msg.str());
    }
  }
  const double m = std::abs(constant);
  if (!(std::abs(m - 1.0) <= 1e-12)) throw ConfigurationError("Blaschke constant must be unimodular");
  constant_ = constant / m;
}

BlaschkeProduct BlaschkeProduct::monomial(std::size_t n, cplx constant) {
  return BlaschkeProduct(std::vector<cplx>(n, 0.0), constant);
}

bool BlaschkeProduct::is_monomial() const {
  return std::all_of(zeros_.begin(), zeros_.end(), [](cplx a) { return a == cplx(0.0); });
}

cplx BlaschkeProduct::operator()(cplx z) const {
  cplx acc = constant_;
  for (const cplx& a : zeros_) {
    const cplx den = 1.0 - std::conj(a) * z;
    if (std::abs(den) < 1e-14) throw NumericError("evaluation point too close to a Blaschke pole");
    acc *= (z - a) / den;
  }
  return acc;
}

GridFunction BlaschkeProduct::sample(std::size_t n) const {
  return GridFunction::sample(n, [this](cplx z) { return (*this)(z); });
}

BlaschkeProduct operator*(const BlaschkeProduct& a, const BlaschkeProduct& b) {
  std::vector<cplx> zeros = a.zeros_;
  zeros.insert(zeros.end(), b.zeros_.begin(), b.zeros_.end());
  return BlaschkeProduct(std::move(zeros), a.constant_ * b.constant_);
}

cplx eval(const BlaschkeProduct& b, cplx z) {
  if (std::abs(z) > 1.0 + 1e-12) throw ConfigurationError("Blaschke evaluation requires |z| <= 1");
  return b(z);
}

double derivative_modulus(const BlaschkeProduct& b, cplx w) {
  double acc = 0.0;
  for (const cplx& a : b.zeros()) {
    // |w| = 1 makes the term for a zero at the origin exactly 1.
    acc += a == cplx(0.0) ? 1.0 : (1.0 - std::norm(a)) / std::norm(w - a);
  }
  return acc;
}

GridFunction boundary_derivative_modulus(const BlaschkeProduct& b, std::size_t n) {
  return GridFunction::sample(n, [&b](cplx w) { return cplx(derivative_modulus(b, w)); });
}

std::vector<cplx> fibers(const BlaschkeProduct& b, cplx zeta) {
  const std::size_t d = b.degree();
  if (d == 0) throw ConfigurationError("fibers require a Blaschke product of degree >= 1");
  std::vector<cplx> roots;
  if (b.is_monomial()) {
    const double base = Angle(zeta / b.constant()) / static_cast<double>(d);
    const cplx r = std::polar(1.0, base);
    roots.reserve(d);
    for (std::size_t k = 0; k < d; ++k) roots.push_back(r * unit_root(8 * k, 8 * d));
  } else {
    roots = SolveLevel(b, zeta);
  }
  for (cplx& w : roots) {
    const double m = std::abs(w);
    if (std::abs(m - 1.0) > 1e-9) {
      std::ostringstream msg;
      msg << "fiber point " << w << " is off the circle by " << std::abs(m - 1.0);
      throw ConsistencyError(msg.str());
    }
    w /= m;
    const double residual = std::abs(b(w) - zeta);
    if (residual > 1e-9) {
      std::ostringstream msg;
      msg << "fiber solve did not converge, residual " << residual;
      throw NumericError(msg.str());
    }
  }
  std::sort(roots.begin(), roots.end(), [](cplx x, cplx y) { return Angle(x) < Angle(y); });
  return roots;
}

std::vector<cplx> disk_preimages(const BlaschkeProduct& b, cplx value) {
  if (b.degree() == 0) throw ConfigurationError("preimages require a Blaschke product of degree >= 1");
  if (b.is_monomial()) {
    const std::size_t d = b.degree();
    const cplx target = value / b.constant();
    const double r = std::pow(std::abs(target), 1.0 / static_cast<double>(d));
    const cplx base = std::polar(r, Angle(target) / static_cast<double>(d));
    std::vector<cplx> roots;
    for (std::size_t k = 0; k < d; ++k) roots.push_back(base * unit_root(8 * k, 8 * d));
    return roots;
  }
  return SolveLevel(b, value);
}

BlaschkeProduct gcd(const BlaschkeProduct& b1, const BlaschkeProduct& b2) {
  const auto match = PairZeros(b1.zeros(), b2.zeros(), kZeroPairingTol);
  std::vector<cplx> common;
  for (std::size_t i = 0; i < match.size(); ++i) {
    if (match[i] >= 0) common.push_back(b1.zeros()[i]);
  }
  return BlaschkeProduct(std::move(common), 1.0);
}

bool divides(const BlaschkeProduct& chi, const BlaschkeProduct& b) {
  const auto match = PairZeros(chi.zeros(), b.zeros(), kZeroPairingTol);
  return std::all_of(match.begin(), match.end(), [](long m) { return m >= 0; });
}

BlaschkeProduct quotient(const BlaschkeProduct& b, const BlaschkeProduct& chi) {
  const auto match = PairZeros(chi.zeros(), b.zeros(), kZeroPairingTol);
  std::vector<bool> removed(b.degree(), false);
  for (long m : match) {
    if (m < 0) throw ContractViolation("quotient requires chi to divide b");
    removed[static_cast<std::size_t>(m)] = true;
  }
  std::vector<cplx> rest;
  for (std::size_t i = 0; i < b.degree(); ++i) {
    if (!removed[i]) rest.push_back(b.zeros()[i]);
  }
  return BlaschkeProduct(std::move(rest), b.constant() / chi.constant());
}

double zero_set_distance(const BlaschkeProduct& a, const BlaschkeProduct& b) {
  if (a.degree() != b.degree()) return std::numeric_limits<double>::infinity();
  const auto match = PairZeros(a.zeros(), b.zeros(), std::numeric_limits<double>::infinity());
  double worst = 0.0;
  for (std::size_t i = 0; i < match.size(); ++i) {
    worst = std::max(worst, std::abs(a.zeros()[i] - b.zeros()[static_cast<std::size_t>(match[i])]));
  }
  return worst;
}

bool same_zeros(const BlaschkeProduct& a, const BlaschkeProduct& b, double tol) {
  return zero_set_distance(a, b) <= tol;
}

BlaschkeProduct compose_zeros(const BlaschkeProduct& chi, const BlaschkeProduct& eta) {
  std::vector<cplx> zeros;
  for (const cplx& a : chi.zeros()) {
    const auto pre = disk_preimages(eta, a);
    std::size_t inside = 0;
    for (const cplx& w : pre) {
      if (std::abs(w) < 1.0) {
        zeros.push_back(w);
        ++inside;
      }
    }
    if (inside != eta.degree()) {
      std::ostringstream msg;
      msg << "expected " << eta.degree() << " disk preimages of " << a << ", found " << inside;
      throw ConsistencyError(msg.str());
    }
  }
  // Fix the constant by matching boundary values at z = 1.
  const BlaschkeProduct bare(zeros, 1.0);
  const cplx target = chi(eta(1.0));
  const cplx c = target / bare(1.0);
  return BlaschkeProduct(std::move(zeros), c / std::abs(c));
}

}  // namespace hardy
