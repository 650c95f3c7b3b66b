#pragma once

#include <map>
#include <string>
#include <vector>

#include "bratteli/ordering.hpp"

namespace bratteli {

// Extremal-edge structure of a well-telescoped ordering, identical at every level.
struct Skeleton {
  std::vector<int> max_vertices;  // sorted
  std::vector<int> min_vertices;  // sorted
  std::vector<int> max_source;    // w -> source of the maximal edge into w
  std::vector<int> min_source;    // w -> source of the minimal edge into w

  std::size_t size() const { return max_source.size(); }
  bool operator==(const Skeleton& o) const {
    return max_vertices == o.max_vertices && min_vertices == o.min_vertices && max_source == o.max_source &&
           min_source == o.min_source;
  }
};

// Maximal vertex -> minimal vertex.
using Sigma = std::map<int, int>;

// Structural checks (sources land in the declared sets, extremal vertices are
// fixed points). Throws InvalidSkeleton.
void check_skeleton(const Skeleton& sk);

// Also checks that every designated edge exists in f (twice when both ends share a source).
void check_skeleton_against(const Skeleton& sk, const Matrix& f, int level);

void check_sigma(const Skeleton& sk, const Sigma& sigma);  // throws SigmaNotBijective

Skeleton skeleton_of(const Diagram& d, const Ordering& w, int probe_depth);

struct Partitions {
  std::map<int, std::vector<int>> by_max;  // W: blocks keyed by maximal vertex
  std::map<int, std::vector<int>> by_min;  // W': blocks keyed by minimal vertex
};

Partitions partitions(const Skeleton& sk);

struct GraphNode {
  int min_vertex = 0;
  int max_vertex = 0;
  std::vector<int> members;
};

class AssociatedGraph {
 public:
  std::vector<GraphNode> nodes;         // ordered by (min_vertex, max_vertex)
  std::vector<std::vector<int>> edges;  // out-neighbours per node
  Sigma sigma;
  std::vector<int> node_of;  // vertex -> node index

  int find(int min_vertex, int max_vertex) const;  // -1 when absent
  bool has_loop(int node) const;
};

AssociatedGraph associated_graph(const Skeleton& sk, const Sigma& sigma);

enum class Connectivity { Strong, Weak, Disconnected };
std::string to_string(Connectivity c);

Connectivity connectivity(const AssociatedGraph& g);
// Strong connectivity of the subgraph induced by the flagged nodes (true when empty).
bool strongly_connected(const AssociatedGraph& g, const std::vector<bool>& keep);

std::string to_dot(const AssociatedGraph& g, const std::vector<std::string>& labels);

struct BalanceResidual {
  int u = 0;
  int max_vertex = 0;
  BigInt max_side;  // sum over W of the decremented maximal-side entries
  BigInt min_side;  // sum over W' of sigma(max_vertex), minimal side
  bool ok() const { return max_side == min_side; }
};

struct BalanceReport {
  bool balanced = true;
  std::vector<BalanceResidual> table;
};

// f maps a level to the next one; both carry the skeleton's vertex set.
BalanceReport balance_check(const Matrix& f, const Skeleton& sk, const Sigma& sigma);
BalanceReport balance_check(const Diagram& d, const Skeleton& sk, const Sigma& sigma, int n);

// P_u(t) for every node t of g.
std::vector<BigInt> crossing_numbers(const Matrix& f, const Skeleton& sk, const AssociatedGraph& g, int u);

bool positively_strongly_connected(const Matrix& f, const Skeleton& sk, const AssociatedGraph& g, int u);
std::vector<bool> positively_strongly_connected(const Matrix& f, const Skeleton& sk, const AssociatedGraph& g);

struct WordValidity {
  bool multiset = false;
  bool endpoints = false;
  bool adjacency = false;
  bool eulerian = false;
  bool ok() const { return multiset && endpoints && adjacency && eulerian; }
};

WordValidity validate_word(const Word& word, const Matrix& f, int u, const Skeleton& sk, const AssociatedGraph& g);

// Whether the letters of row u can be ordered into a word with the skeleton's
// endpoints and every adjacency along an edge of the associated graph.
bool row_walk_feasible(const std::vector<long long>& counts, int u, const Skeleton& sk, const Sigma& sigma);

// One word for row u of f. Follows the greedy rule of the existence proof, skipping
// any choice that would leave the remaining letters unplaceable.
Word synthesize_word(const Matrix& f, int u, const Skeleton& sk, const Sigma& sigma);

// Words for every level of d (one period for repeating schedules, levels up to
// horizon for explicit ones). Checks balance and positive strong connectivity first.
Ordering synthesize_order(const Diagram& d, const Skeleton& sk, const Sigma& sigma, int horizon);

struct CandidateAnalysis {
  Skeleton skeleton;
  Sigma sigma;
  Connectivity connectivity = Connectivity::Disconnected;
  bool balanced = false;
  bool rows_feasible = false;
  bool positively_connected = false;
  bool passes() const;  // every necessary condition holds
};

struct EnumerationReport {
  int k = 0;
  bool simple = false;
  long long candidates = 0;
  long long structural_failures = 0;  // associated graph fails the connectivity requirement
  long long balance_failures = 0;     // connected but some row is unbalanced or unplaceable
  std::vector<CandidateAnalysis> passing;
  bool nonexistence_certified() const { return candidates > 0 && passing.empty(); }
  bool no_candidates() const { return candidates == 0; }
};

// Every skeleton with k extremal pairs allowed by the supports of the period matrices.
EnumerationReport enumerate_skeletons(const Diagram& d, int k, long long max_candidates = 50'000'000);

struct MatrixClass {
  bool square = false;
  bool in_class_m = false;
  std::vector<BigInt> f;  // F = (f_i + delta_ij) when in class M
};

MatrixClass matrix_class_checks(const Matrix& f);
bool in_class_d(const Diagram& d);  // every period matrix in class M

}  // namespace bratteli
