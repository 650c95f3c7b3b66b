#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bratteli/skeleton.hpp"

namespace bratteli {

struct SplitTable {
  bool decomposable = false;
  std::string failure;  // first violated condition when not decomposable
  // Maximal vertex -> split position i in [1, |w|]: the prefix w[0, i) ends with the
  // maximal vertex and the rest starts with its sigma image. i == |w| leaves an empty
  // suffix, whose role is taken by the start of the next copy of w.
  std::map<int, int> split;
  std::vector<long long> occurrences;
};

SplitTable is_sigma_decomposable(const Word& w, const Skeleton& sk, const Sigma& sigma);

struct OdometerRows {
  Matrix matrix;
  LevelWords words;  // w(v) = s(min) w^p p(max) for v in [min, max]
};

// p_values[v] copies of w in the middle of row v.
OdometerRows odometer_order_rows(const Skeleton& sk, const Sigma& sigma, const Word& w,
                                 const std::vector<long long>& p_values);

// Words (v_j v_sigma(j) ...)^{f_j} v_j on a diagram whose matrices are all in class M.
// sigma must be one cycle through every vertex.
Ordering d_extremal_construction(const Diagram& d, const Sigma& sigma);

// Skeleton with every vertex extremal and every source the vertex itself.
Skeleton identity_skeleton(std::size_t rank);

struct PeriodicLanguage {
  bool periodic = false;
  Word word;            // primitive period when periodic
  int horizon = 0;
  int failure_level = -1;
  std::string note;
};

// Looks for a primitive W such that every sampled w(v, m, n) is a factor of W W W ...
// Throws NotPerfect when the ordering is not certified perfect.
PeriodicLanguage periodic_language_check(const Diagram& d, const Ordering& w, int horizon);

struct TowerCounts {
  std::vector<BigInt> counts;     // |Q_n| for n = 1..n_max
  std::vector<Rational> ratios;   // |Q_{n+1}| / |Q_n|
  std::vector<BigInt> expected;   // 1 + sum f_i for class-M matrices, else empty entries
  bool law_holds = false;
};

TowerCounts tower_counts(const Diagram& d, int n_max);

// Smallest period of a word (Knuth-Morris-Pratt border table).
std::size_t minimal_period(const Word& w);
bool is_primitive(const Word& w);

}  // namespace bratteli
