#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "bratteli/diagram.hpp"

namespace bratteli {

// m_{v,w} = f_{v,w} / (row sum), exactly.
std::vector<std::vector<Rational>> markov_matrix(const Matrix& f);
// M_{b-1} ... M_a, mapping level a to level b.
std::vector<std::vector<Rational>> composed_markov(const Diagram& d, int a, int b);

// Probability, under the uniform measure on orderings, that the maximal edges from
// level n down to level k reach exactly j distinct vertices of level k. Entry j of
// the distribution vector is that probability. Rank <= 5.
std::vector<Rational> exact_G_distribution(const Diagram& d, int k, int n);
Rational exact_G_probability(const Diagram& d, int k, int n, int j);

// Derived per-sample seed, independent of thread count and traversal order.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

struct Frequency {
  long long hits = 0;
  long long samples = 0;
  double estimate() const { return samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0.0; }
  double sigma() const;  // binomial standard error
  std::pair<double, double> wilson95() const;
};

Frequency monte_carlo_G(const Diagram& d, int k, int n, int j, long long samples, std::uint64_t seed,
                        int threads = 1);

struct GenericJReport {
  int depth = 0;
  int window = 0;
  long long samples = 0;
  std::uint64_t seed = 0;
  std::map<int, long long> max_histogram;  // stabilized samples only
  std::map<int, long long> min_histogram;
  long long max_unstabilized = 0;
  long long min_unstabilized = 0;
  int j_max = 0;  // modal value, 0 when nothing stabilized
  int j_min = 0;
  Frequency max_modal;  // samples stabilized at j_max, out of all samples
  Frequency min_modal;
  bool agree() const { return j_max == j_min; }
};

GenericJReport estimate_generic_j(const Diagram& d, int depth, long long samples, int window, std::uint64_t seed,
                                  int threads = 1);

struct DivergenceTerm {
  int from = 0;
  int to = 0;
  bool exact = false;
  Rational value;          // exact term
  double estimate = 0.0;   // Monte-Carlo term
  double sigma = 0.0;
  double partial_sum = 0.0;
};

struct DivergenceReport {
  int j = 0;
  std::vector<DivergenceTerm> terms;
  Rational exact_partial_sum;  // meaningful when every term is exact
  bool all_exact = false;
  double slope = 0.0;  // least-squares slope of partial sums against term index
  double intercept = 0.0;
};

// Partial sums of mu(G_{n_k}^{n_{k+1}, j}) along the given levels. Exact terms when
// rank <= 5 (or always when exact_only), Monte-Carlo otherwise.
DivergenceReport divergence_diagnostic(const Diagram& d, int j, const std::vector<int>& levels, long long samples,
                                       std::uint64_t seed, bool exact_only = false, int threads = 1);

struct GenericOneWitness {
  int from = 0;
  int to = 0;
  int vertex = 0;   // column of the composed Markov matrix bounded below by epsilon
  Rational min_entry;
};

struct GenericOneReport {
  Rational epsilon;
  int depth = 0;
  std::vector<GenericOneWitness> witnesses;
  bool found() const { return !witnesses.empty(); }
  bool reached_depth = false;  // the chain of witnesses covers levels up to depth
};

GenericOneReport generic_one_check(const Diagram& d, const Rational& epsilon, int depth);

struct ImperfectionReport {
  long long samples = 0;
  int q = 1;
  long long stabilized = 0;
  long long above_q = 0;   // stabilized with more than q extremal pairs
  long long imperfect = 0;
  long long inconclusive = 0;
  Frequency imperfect_fraction;  // imperfect out of above_q
};

ImperfectionReport imperfection_genericity_experiment(const Diagram& d, long long samples, int depth, int horizon,
                                                      std::uint64_t seed, int q, int threads = 1);

// Runs body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(long long count, int threads, const std::function<void(long long)>& body);

}  // namespace bratteli
