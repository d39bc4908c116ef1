#include "hardy/finitelab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "hardy/errors.hpp"

namespace hardy::finite {
namespace {

constexpr double kEqualTol = 1e-9;

std::mt19937_64 Derived(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

Eigen::VectorXd Gaussian(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = g(rng);
  return v;
}

// Largest |block mean| of f with respect to the weights.
double BlockMeans(const FiniteSpace& space, const FinitePartition& part, const Eigen::VectorXd& f) {
  double worst = 0.0;
  for (const auto& block : part.blocks()) {
    double mass = 0.0, sum = 0.0;
    for (std::size_t i : block) {
      mass += space.weight(i);
      sum += space.weight(i) * f[static_cast<Eigen::Index>(i)];
    }
    worst = std::max(worst, std::abs(sum / mass));
  }
  return worst;
}

bool ConstantOnBlocks(const FinitePartition& part, const std::vector<Eigen::VectorXd>& vectors) {
  for (const auto& block : part.blocks()) {
    for (const auto& v : vectors) {
      const double first = v[static_cast<Eigen::Index>(block.front())];
      for (std::size_t i : block) {
        if (std::abs(v[static_cast<Eigen::Index>(i)] - first) > kEqualTol) return false;
      }
    }
  }
  return true;
}

}  // namespace

FiniteSpace::FiniteSpace(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty() || weights_.size() > kMaxPoints) throw ConfigurationError("finite space needs 1 <= n <= 12");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 1e-9)) throw ConfigurationError("finite space weights must be >= 1e-9");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "finite space weights sum to " << total;
    throw ConfigurationError(msg.str());
  }
}

FiniteSpace FiniteSpace::random(std::size_t n, std::uint64_t seed) {
  if (n == 0 || n > kMaxPoints) throw ConfigurationError("finite space needs 1 <= n <= 12");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(n);
  for (auto& v : w) v = u(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= total;
  // Put the rounding residue on the largest weight.
  const double rest = 1.0 - std::accumulate(w.begin(), w.end(), 0.0);
  *std::max_element(w.begin(), w.end()) += rest;
  return FiniteSpace(std::move(w));
}

FiniteSpace FiniteSpace::uniform(std::size_t n) {
  if (n == 0) throw ConfigurationError("finite space needs 1 <= n <= 12");
  return FiniteSpace(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double FiniteSpace::pnorm(const Eigen::VectorXd& f, Exponent p) const {
  if (static_cast<std::size_t>(f.size()) != size()) throw ConfigurationError("vector length mismatch");
  const double pv = p.value();
  double acc = 0.0;
  for (std::size_t i = 0; i < size(); ++i) acc += weights_[i] * std::pow(std::abs(f[static_cast<Eigen::Index>(i)]), pv);
  return std::pow(acc, 1.0 / pv);
}

FinitePartition::FinitePartition(std::vector<std::vector<std::size_t>> blocks, std::size_t n)
    : n_(n), blocks_(std::move(blocks)), label_(n, n) {
  for (auto& b : blocks_) {
    if (b.empty()) throw ConfigurationError("partition blocks must be nonempty");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end());
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    for (std::size_t i : blocks_[k]) {
      if (i >= n || label_[i] != n) throw ConfigurationError("partition blocks must be disjoint subsets of 0..n-1");
      label_[i] = k;
    }
  }
  if (std::find(label_.begin(), label_.end(), n) != label_.end()) {
    throw ConfigurationError("partition blocks must cover 0..n-1");
  }
}

FinitePartition FinitePartition::trivial(std::size_t n) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  return FinitePartition({all}, n);
}

FinitePartition FinitePartition::discrete(std::size_t n) {
  std::vector<std::vector<std::size_t>> blocks(n);
  for (std::size_t i = 0; i < n; ++i) blocks[i] = {i};
  return FinitePartition(std::move(blocks), n);
}

FinitePartition FinitePartition::from_labels(const std::vector<std::size_t>& labels) {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find(seen.begin(), seen.end(), labels[i]);
    if (it == seen.end()) {
      seen.push_back(labels[i]);
      blocks.push_back({i});
    } else {
      blocks[static_cast<std::size_t>(it - seen.begin())].push_back(i);
    }
  }
  return FinitePartition(std::move(blocks), labels.size());
}

bool FinitePartition::coarser_than(const FinitePartition& finer) const {
  if (finer.size() != n_) return false;
  for (const auto& b : finer.blocks()) {
    for (std::size_t i : b) {
      if (label_[i] != label_[b.front()]) return false;
    }
  }
  return true;
}

std::vector<FinitePartition> all_partitions(std::size_t n) {
  if (n == 0 || n > kMaxPoints) throw ConfigurationError("partition enumeration needs 1 <= n <= 12");
  std::vector<FinitePartition> out;
  std::vector<std::size_t> a(n, 0), max_prefix(n, 0);
  while (true) {
    out.push_back(FinitePartition::from_labels(a));
    // Next restricted growth string: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
    std::size_t i = n - 1;
    while (i > 0 && a[i] == max_prefix[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    max_prefix[i] = std::max(max_prefix[i - 1], a[i]);
    for (std::size_t k = i + 1; k < n; ++k) {
      a[k] = 0;
      max_prefix[k] = max_prefix[i];
    }
  }
  return out;
}

Eigen::MatrixXd condexp_matrix(const FiniteSpace& space, const FinitePartition& part) {
  const std::size_t n = space.size();
  if (part.size() != n) throw ConfigurationError("partition and space sizes differ");
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& block : part.blocks()) {
    double mass = 0.0;
    for (std::size_t j : block) mass += space.weight(j);
    for (std::size_t i : block) {
      for (std::size_t j : block) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = space.weight(j) / mass;
    }
  }
  return e;
}

FinitePartition sigma_from_functions(const std::vector<Eigen::VectorXd>& vectors) {
  if (vectors.empty()) throw ConfigurationError("sigma_from_functions needs a nonempty list");
  const auto n = static_cast<std::size_t>(vectors.front().size());
  for (const auto& v : vectors) {
    if (static_cast<std::size_t>(v.size()) != n) throw ConfigurationError("vector length mismatch");
  }
  // Union-find over pairs that agree in every vector.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool same = true;
      for (const auto& v : vectors) {
        same = same && std::abs(v[static_cast<Eigen::Index>(i)] - v[static_cast<Eigen::Index>(j)]) <= kEqualTol;
      }
      if (same) parent[find(j)] = find(i);
    }
  }
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = find(i);
  return FinitePartition::from_labels(labels);
}

double oracle_pnorm(const Eigen::MatrixXd& m, Exponent p, const FiniteSpace& space, const OracleOptions& options) {
  const auto n = static_cast<Eigen::Index>(space.size());
  if (m.rows() != n || m.cols() != n) throw ConfigurationError("matrix and space sizes differ");
  auto ratio = [&](const Eigen::VectorXd& x) {
    const double d = space.pnorm(x, p);
    return d > 0.0 ? space.pnorm(m * x, p) / d : 0.0;
  };

  std::vector<Eigen::VectorXd> starts;
  starts.push_back(Eigen::VectorXd::Ones(n));
  for (Eigen::Index i = 0; i < n; ++i) starts.push_back(Eigen::VectorXd::Unit(n, i));
  std::mt19937_64 rng(options.seed);
  for (int r = 0; r < options.restarts; ++r) starts.push_back(Gaussian(rng, space.size()));

  double best_overall = 0.0;
  for (auto x : starts) {
    double best = ratio(x);
    std::vector<double> delta(static_cast<std::size_t>(n), 0.5 * x.cwiseAbs().maxCoeff());
    const double min_delta = 1e-13 * x.cwiseAbs().maxCoeff();
    for (int sweep = 0; sweep < options.steps; ++sweep) {
      bool active = false;
      for (Eigen::Index i = 0; i < n; ++i) {
        double& d = delta[static_cast<std::size_t>(i)];
        if (d < min_delta) continue;
        active = true;
        bool moved = false;
        for (double sign : {1.0, -1.0}) {
          x[i] += sign * d;
          const double r = ratio(x);
          if (r > best) {
            best = r;
            moved = true;
            break;
          }
          x[i] -= sign * d;
        }
        d *= moved ? 2.0 : 0.5;
      }
      if (!active) break;
    }
    best_overall = std::max(best_overall, best);
  }
  return best_overall;
}

FinitePartition coarsest_measurable_partition(const std::vector<Eigen::VectorXd>& vectors) {
  if (vectors.empty()) throw ConfigurationError("need at least one vector");
  const auto n = static_cast<std::size_t>(vectors.front().size());
  if (n > 6) throw ConfigurationError("partition enumeration oracle is limited to n <= 6");
  std::optional<FinitePartition> best;
  for (const auto& part : all_partitions(n)) {
    if (!ConstantOnBlocks(part, vectors)) continue;
    if (!best || part.block_count() < best->block_count()) best = part;
  }
  return *best;  // the discrete partition always qualifies
}

Lemma32Report lemma32_check(const FiniteSpace& space, const Eigen::VectorXd& f, const std::vector<Eigen::VectorXd>& Y,
                            int trials, std::uint64_t seed) {
  if (Y.empty()) throw ConfigurationError("lemma32_check needs a nonempty family");
  const std::size_t n = space.size();
  if (static_cast<std::size_t>(f.size()) != n) throw ConfigurationError("vector length mismatch");
  const double tol = 1e-9 * std::max(1.0, f.cwiseAbs().maxCoeff());
  Lemma32Report rep;

  auto vanishes_given = [&](const Eigen::VectorXd& g) {
    return BlockMeans(space, sigma_from_functions({g}), f) <= tol;
  };
  rep.hypothesis_on_basis = std::all_of(Y.begin(), Y.end(), vanishes_given);
  rep.hypothesis = rep.hypothesis_on_basis;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < trials && rep.hypothesis; ++t) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (const auto& y : Y) {
      const double c = gauss(rng);
      g += c * y;
    }
    if (!vanishes_given(g)) {
      rep.hypothesis = false;
      rep.hypothesis_witness = g;
    }
  }

  const FinitePartition sigma = sigma_from_functions(Y);
  rep.conclusion_residual = BlockMeans(space, sigma, f);
  if (n <= 6) rep.enumeration_agrees = coarsest_measurable_partition(Y) == sigma;
  rep.counterexample = rep.hypothesis && rep.conclusion_residual > tol;
  return rep;
}

Lemma32Fixture random_lemma32_fixture(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
  FiniteSpace space = FiniteSpace::random(n, rng());
  const std::size_t dim = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  std::uniform_int_distribution<int> alphabet(0, 2);
  std::vector<Eigen::VectorXd> Y;
  Eigen::MatrixXd stacked(0, static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < dim; ++k) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = alphabet(rng);
    const Eigen::MatrixXd e = condexp_matrix(space, sigma_from_functions({y}));
    Eigen::MatrixXd grown(stacked.rows() + e.rows(), stacked.cols());
    grown << stacked, e;
    stacked = std::move(grown);
    Y.push_back(std::move(y));
  }
  const Eigen::MatrixXd kernel = Eigen::FullPivLU<Eigen::MatrixXd>(stacked).kernel();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  std::normal_distribution<double> g;
  // A trivial kernel comes back as a single zero column.
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    const double w = g(rng);
    f += w * kernel.col(c);
  }
  return {std::move(space), std::move(f), std::move(Y)};
}

Eigen::MatrixXd random_projection_fixing_one(std::size_t n, std::size_t rank, std::uint64_t seed) {
  if (n < 3 || n > kMaxPoints) throw ConfigurationError("random projections need 3 <= n <= 12");
  if (rank < 2 || rank >= n) throw ConfigurationError("range dimension must lie in [2, n-1]");
  const auto N = static_cast<Eigen::Index>(n), R = static_cast<Eigen::Index>(rank);
  for (std::uint64_t draw = 0;; ++draw) {
    std::mt19937_64 rng = Derived(seed, draw);
    Eigen::MatrixXd b(N, R), a(R, N);
    b.col(0).setOnes();
    for (Eigen::Index k = 1; k < R; ++k) b.col(k) = Gaussian(rng, n);
    for (Eigen::Index k = 0; k < R; ++k) a.row(k) = Gaussian(rng, n).transpose();
    const Eigen::MatrixXd ab = a * b;
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(ab);
    const auto& s = svd.singularValues();
    if (!(s[R - 1] > 0.0) || s[0] / s[R - 1] > 1e8) continue;
    std::vector<Eigen::VectorXd> cols;
    for (Eigen::Index k = 0; k < R; ++k) cols.push_back(b.col(k));
    if (sigma_from_functions(cols).block_count() == rank) continue;
    return b * ab.inverse() * a;
  }
}

Eigen::MatrixXd orthogonal_projection(const FiniteSpace& space, const Eigen::VectorXd& v) {
  const auto n = static_cast<Eigen::Index>(space.size());
  if (v.size() != n) throw ConfigurationError("vector length mismatch");
  Eigen::VectorXd mu(n);
  for (Eigen::Index i = 0; i < n; ++i) mu[i] = space.weight(static_cast<std::size_t>(i));
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd w = v - mu.dot(v) * one;
  const double norm = std::sqrt(mu.dot(w.cwiseProduct(w)));
  if (norm < 1e-12) throw ConfigurationError("v must not be constant");
  w /= norm;
  // Q f = <f, 1> 1 + <f, w> w in L^2(mu).
  return one * mu.transpose() + w * w.cwiseProduct(mu).transpose();
}

Theorem31Report theorem31_probe(const FiniteSpace& space, Exponent p, int trials, std::uint64_t seed,
                                const OracleOptions& oracle) {
  const std::size_t n = space.size();
  if (n < 3) throw ConfigurationError("theorem31_probe needs n >= 3");
  Theorem31Report rep;
  rep.p = p.value();
  rep.trials = trials;
  rep.min_excess = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng = Derived(seed, static_cast<std::uint64_t>(t));
    std::uniform_int_distribution<std::size_t> pick(2, n - 1);
    const std::size_t rank = pick(rng);
    const Eigen::MatrixXd q = random_projection_fixing_one(n, rank, rng());
    OracleOptions o = oracle;
    o.seed = rng();
    const double excess = oracle_pnorm(q, p, space, o) - 1.0;
    rep.min_excess = std::min(rep.min_excess, excess);
    if (excess > 1e-9) ++rep.above_one;
  }
  if (trials == 0) rep.min_excess = 0.0;

  std::vector<FinitePartition> parts;
  if (n <= 6) {
    parts = all_partitions(n);
  } else {
    parts = {FinitePartition::trivial(n), FinitePartition::discrete(n)};
    std::mt19937_64 rng = Derived(seed, ~0ull);
    std::uniform_int_distribution<std::size_t> label(0, n - 1);
    for (int t = 0; t < trials; ++t) {
      std::vector<std::size_t> labels(n);
      for (auto& l : labels) l = label(rng);
      parts.push_back(FinitePartition::from_labels(labels));
    }
  }
  for (const auto& part : parts) {
    OracleOptions o = oracle;
    o.seed = seed;
    const double norm = oracle_pnorm(condexp_matrix(space, part), p, space, o);
    rep.ce_max_deviation = std::max(rep.ce_max_deviation, std::abs(norm - 1.0));
    ++rep.ce_count;
  }
  return rep;
}

}  // namespace hardy::finite
