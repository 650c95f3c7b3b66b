#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bratteli/ordering.hpp"

namespace bratteli {

enum class Status { Perfect, Imperfect, Inconclusive };
std::string to_string(Status s);

struct WellTelescoped {
  Diagram diagram;
  Ordering ordering;
  int first = 1;  // cut levels first, first + step, ...
  int step = 1;
  std::vector<int> max_vertices;  // vertices carrying the vertical maximal paths
  std::vector<int> min_vertices;
  bool identity() const { return first == 1 && step == 1; }
};

// Telescopes until every extremal path is vertical and extremal sources no longer
// depend on the level. Throws NotStabilized when nothing works within probe_depth.
WellTelescoped well_telescope(const Diagram& d, const Ordering& w, int probe_depth);

// Whether the ordering already satisfies the well-telescoped conditions.
bool is_well_telescoped(const Diagram& d, const Ordering& w, int probe_depth);

struct Witness {
  // "two_successors": a maximal vertex followed by two minimal vertices.
  // "two_predecessors": a minimal vertex preceded by two maximal vertices.
  // "unmatched": some extremal vertex has no partner at all.
  std::string kind;
  int vertex = -1;
  std::vector<int> partners;
  std::vector<std::pair<int, int>> levels;  // (m, n) where each adjacency was first seen
};

struct PerfectionVerdict {
  Status status = Status::Inconclusive;
  bool exact = false;
  int horizon = 0;
  std::vector<int> max_vertices;
  std::vector<int> min_vertices;
  std::map<int, int> sigma;  // maximal vertex -> minimal vertex, when Perfect
  std::optional<Witness> witness;
  std::set<std::pair<int, int>> adjacency;  // observed (maximal, minimal) pairs
  std::string note;
  // Telescoping applied before the check (cuts first, first + step, ...); witness
  // levels refer to the telescoped diagram.
  int telescope_first = 1;
  int telescope_step = 1;
};

// Repeating inputs must be well-telescoped and get an exact verdict. Explicit
// inputs are scanned along their extremal threads up to horizon and never
// certified Perfect.
PerfectionVerdict check_perfect(const Diagram& d, const Ordering& w, int horizon);

// well_telescope followed by check_perfect.
PerfectionVerdict analyze_perfection(const Diagram& d, const Ordering& w, int horizon);

struct SuccPred {
  ExtremalReport extremal;
  // Indexed by path: extremal.max.trajectories[i] / extremal.min.trajectories[j].
  std::vector<std::set<int>> succ;
  std::vector<std::set<int>> pred;
  bool all_singletons() const;
};

// Successor candidates of each maximal path: minimal paths whose vertices are seen
// right after the maximal path's vertex at some level of the upper half window.
SuccPred succ_pred_sets(const Diagram& d, const Ordering& w, int probe_depth);

// Adjacency of extremal threads: key (max path, min path) -> (m, n) of first sighting,
// over levels m in [probe_depth / 2, probe_depth - 1].
std::map<std::pair<int, int>, std::pair<int, int>> thread_adjacency(const Diagram& d, const Ordering& w,
                                                                    const ExtremalReport& ex);

struct StabilityReport {
  PerfectionVerdict before;
  PerfectionVerdict after;
  bool stable() const { return before.status == after.status; }
};

StabilityReport verify_telescoping_stability(const Diagram& d, const Ordering& w, const std::vector<int>& cuts,
                                             int horizon);

}  // namespace bratteli
