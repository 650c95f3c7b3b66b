#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "bratteli/diagram.hpp"

namespace bratteli {

// Source word: sources of r^-1(v) listed in increasing order. Among edges with the
// same source, the k-th occurrence is the edge of rank k in E(source, v).
using Word = std::vector<int>;
using LevelWords = std::vector<Word>;  // indexed by vertex of the range level

class Ordering {
 public:
  Ordering() = default;

  static Ordering stationary(LevelWords words);
  // phases[i] is used at every level n >= 2 with (n - 2) % p == i.
  static Ordering periodic(std::vector<LevelWords> phases);
  // levels[i] is the word set of level i + 2.
  static Ordering explicit_levels(std::vector<LevelWords> levels);

  ScheduleMode mode() const { return mode_; }
  int period() const { return static_cast<int>(entries_.size()); }
  int max_level() const;  // highest level with words
  const LevelWords& words(int n) const;  // n >= 2
  const std::vector<LevelWords>& entries() const { return entries_; }

  bool operator==(const Ordering& o) const { return mode_ == o.mode_ && entries_ == o.entries_; }

 private:
  ScheduleMode mode_ = ScheduleMode::Stationary;
  std::vector<LevelWords> entries_;
};

// Letter-multiset check against the matrix rows. Throws OrderingMismatch.
void check_ordering(const Diagram& d, const Ordering& w);

// Last level at which both the diagram and the ordering are defined.
int joint_max_level(const Diagram& d, const Ordering& w);

// Letters in index order, f_{v,w} copies of each.
Ordering natural_ordering(const Diagram& d);

// Uniform random order on each r^-1(v), levels 2..probe_depth. The stream for
// (level, vertex) depends only on (seed, level, vertex).
Ordering random_ordering(const Diagram& d, std::uint64_t seed, int probe_depth);
Word random_word(const Matrix& f, int row, std::uint64_t seed, int level);

// Sources of the maximal (last) and minimal (first) edge into each vertex of level n.
std::vector<int> max_sources(const Ordering& w, int n);
std::vector<int> min_sources(const Ordering& w, int n);

// w(v, m, n) for v in V_n, letters in V_m. Throws WordTooLong past max_length.
Word order_word(const Diagram& d, const Ordering& w, int v, int m, int n,
                std::size_t max_length = std::size_t{1} << 26);

// L(w) on telescope(d, cuts).
std::pair<Diagram, Ordering> lexicographic_image(const Diagram& d, const Ordering& w,
                                                 const std::vector<int>& cuts);
// Same for cuts first, first + step, ...; keeps repeating schedules repeating.
std::pair<Diagram, Ordering> lexicographic_image_uniform(const Diagram& d, const Ordering& w, int first,
                                                         int step);

struct ExtremalSide {
  int count = 0;
  bool stabilized = false;
  int stabilization_level = -1;   // first top level from which the level-1 set stays fixed
  std::vector<int> level1_vertices;
  // One entry per path: the vertex at levels 1..probe_depth.
  std::vector<std::vector<int>> trajectories;
  bool vertical() const;
};

struct ExtremalReport {
  int probe_depth = 0;
  int window = 0;
  ExtremalSide max;
  ExtremalSide min;
};

ExtremalReport extremal_paths(const Diagram& d, const Ordering& w, int probe_depth, int window);

// A path from the root. edges[0] enters level 1 (source is the root, reported as 0);
// edges[i] enters level i + 1 from vertex edges[i].source of level i.
struct PathEdge {
  int source = 0;
  long long rank = 0;  // rank within E(source, range)
  bool operator==(const PathEdge& o) const { return source == o.source && rank == o.rank; }
};

struct FinitePath {
  std::vector<PathEdge> edges;
  int range = 0;  // vertex at level edges.size()
  int level() const { return static_cast<int>(edges.size()); }
  int vertex_at(int n) const;  // 1 <= n <= level()
  bool operator==(const FinitePath& o) const { return edges == o.edges && range == o.range; }
};

FinitePath successor(const Diagram& d, const Ordering& w, const FinitePath& x);

struct IndexedVertex {
  BigInt index;
  int vertex = 0;
};
using AssociatedSequence = std::vector<IndexedVertex>;  // entry n - 1 describes level n

AssociatedSequence associated_sequence(const Diagram& d, const Ordering& w, const FinitePath& x);

// Inverse of the associated index: the path into v at level n with the given rank.
FinitePath path_at_index(const Diagram& d, const Ordering& w, int v, int n, const BigInt& index);

}  // namespace bratteli
