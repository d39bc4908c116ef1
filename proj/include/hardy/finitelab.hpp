#pragma once
// Finite probability spaces: conditional-expectation matrices, sigma-algebras
// generated by families of vectors, a brute-force p-norm oracle, and probes
// for contractive projections fixing the constants.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hardy/circlefft.hpp"

namespace hardy::finite {

inline constexpr std::size_t kMaxPoints = 12;

class FiniteSpace {
 public:
  // Throws ConfigurationError unless 1 <= n <= 12, every weight >= 1e-9 and
  // the weights sum to 1 within 1e-12.
  explicit FiniteSpace(std::vector<double> weights);
  // Positive random weights normalized to sum 1.
  static FiniteSpace random(std::size_t n, std::uint64_t seed);
  static FiniteSpace uniform(std::size_t n);

  std::size_t size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_[i]; }
  double pnorm(const Eigen::VectorXd& f, Exponent p) const;

 private:
  std::vector<double> weights_;
};

class FinitePartition {
 public:
  // Blocks are stored sorted by their smallest index, each block sorted.
  // Throws ConfigurationError unless the blocks are disjoint and cover
  // {0, .., n-1}.
  FinitePartition(std::vector<std::vector<std::size_t>> blocks, std::size_t n);
  static FinitePartition trivial(std::size_t n);
  static FinitePartition discrete(std::size_t n);
  // Block label per point.
  static FinitePartition from_labels(const std::vector<std::size_t>& labels);

  std::size_t size() const { return n_; }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  std::size_t block_of(std::size_t i) const { return label_[i]; }
  // Every block of `finer` lies inside a block of this partition.
  bool coarser_than(const FinitePartition& finer) const;
  bool operator==(const FinitePartition& o) const { return blocks_ == o.blocks_; }

 private:
  std::size_t n_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> label_;
};

// Every partition of {0, .., n-1}, n <= 12, in restricted-growth order.
std::vector<FinitePartition> all_partitions(std::size_t n);

// (E f)_i = sum_{j in block(i)} mu_j f_j / sum_{j in block(i)} mu_j.
Eigen::MatrixXd condexp_matrix(const FiniteSpace& space, const FinitePartition& part);

// Blocks are the classes of indices on which every vector agrees within 1e-9.
// Throws ConfigurationError for an empty list or mismatched lengths.
FinitePartition sigma_from_functions(const std::vector<Eigen::VectorXd>& vectors);

struct OracleOptions {
  int restarts = 24;
  int steps = 400;
  std::uint64_t seed = 0;
};

// Lower bound for the weighted L^p operator norm of a real matrix, exact for
// p = 1. Starts from the constants, every basis vector and random vectors,
// then runs coordinate ascent with per-coordinate step sizes.
double oracle_pnorm(const Eigen::MatrixXd& m, Exponent p, const FiniteSpace& space, const OracleOptions& options);

struct Lemma32Report {
  bool hypothesis_on_basis = false;  // E(f | sigma(y)) = 0 for every basis vector y
  bool hypothesis = false;           // also for every sampled combination
  std::optional<Eigen::VectorXd> hypothesis_witness;  // a combination with E(f | sigma(g)) != 0
  double conclusion_residual = 0.0;  // sup of the block means of f over sigma(Y)
  bool enumeration_agrees = true;    // sigma(Y) equals the enumerated coarsest partition (n <= 6)
  bool counterexample = false;       // hypothesis holds and the conclusion fails
  bool pass() const { return !counterexample && enumeration_agrees; }
};

// Checks that vanishing conditional expectations of f given each g in
// span(Y) force E(f | sigma(Y)) = 0, sampling `trials` random combinations.
Lemma32Report lemma32_check(const FiniteSpace& space, const Eigen::VectorXd& f, const std::vector<Eigen::VectorXd>& Y,
                            int trials, std::uint64_t seed);

// Random input for lemma32_check: n in [2, 6], Y of dimension 1 to 3 with
// entries from {0, 1, 2} so that the generated partitions are nontrivial, and
// f a random element of the common kernel of E(. | sigma(y)) over y in Y.
struct Lemma32Fixture {
  FiniteSpace space;
  Eigen::VectorXd f;
  std::vector<Eigen::VectorXd> Y;
};
Lemma32Fixture random_lemma32_fixture(std::uint64_t seed);

// Coarsest partition on which every vector is constant, found by scanning all
// partitions. Throws ConfigurationError for n > 6.
FinitePartition coarsest_measurable_partition(const std::vector<Eigen::VectorXd>& vectors);

// Random oblique projection Q = B (A B)^{-1} A with B's first column the
// constants and range dimension `rank`; draws with cond(A B) > 1e8 or a range
// that is the range of a conditional expectation are redrawn.
Eigen::MatrixXd random_projection_fixing_one(std::size_t n, std::size_t rank, std::uint64_t seed);

// L^2(mu)-orthogonal projection onto span{1, v}.
Eigen::MatrixXd orthogonal_projection(const FiniteSpace& space, const Eigen::VectorXd& v);

struct Theorem31Report {
  double p = 0.0;
  int trials = 0;
  int above_one = 0;           // projections with oracle norm > 1 + 1e-9
  double min_excess = 0.0;     // min over projections of (norm - 1)
  int ce_count = 0;            // conditional expectations checked
  double ce_max_deviation = 0.0;  // max |norm - 1| over them
  bool pass() const { return above_one == trials && ce_max_deviation <= 1e-9; }
};

// Compares random non-averaging projections fixing the constants with every
// conditional expectation of the space (all partitions for n <= 6, the
// trivial, discrete and `trials` random ones otherwise).
Theorem31Report theorem31_probe(const FiniteSpace& space, Exponent p, int trials, std::uint64_t seed,
                                const OracleOptions& oracle = {});

}  // namespace hardy::finite
