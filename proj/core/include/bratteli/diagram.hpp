#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bratteli/matrix.hpp"

namespace bratteli {

enum class ScheduleMode { Stationary, Periodic, Explicit };

std::string to_string(ScheduleMode m);
ScheduleMode schedule_mode_from_string(std::string_view s);

// Unvalidated description as read from a file or built in code.
struct RawDiagram {
  // One list shared by every level, or one list per level 1..depth.
  std::vector<std::vector<std::string>> labels;
  ScheduleMode mode = ScheduleMode::Stationary;
  std::vector<Matrix> matrices;  // F_1, F_2, ... (one for stationary, one period for periodic)
  std::vector<BigInt> top_row;   // F_0: edges from the root into level 1
  int depth = 0;                 // 0 picks a default
};

class Diagram {
 public:
  ScheduleMode mode() const { return mode_; }
  int depth() const { return depth_; }
  // Largest level with matrix data; unbounded schedules report a large sentinel.
  int max_level() const;
  int period() const { return static_cast<int>(schedule_.size()); }

  // F_n, mapping level n to level n+1 (rows = V_{n+1}, cols = V_n). n >= 1.
  const Matrix& matrix(int n) const;
  const std::vector<Matrix>& schedule() const { return schedule_; }
  const std::vector<BigInt>& top_row() const { return top_row_; }

  std::size_t size(int n) const;  // |V_n|, n >= 1
  const std::vector<std::string>& labels(int n) const;
  bool strict_rank() const { return labels_.size() == 1; }
  std::size_t rank() const { return labels_.front().size(); }
  int index_of(int n, std::string_view label) const;  // -1 when absent
  bool single_char_labels() const;

  RawDiagram raw() const;

 private:
  friend Diagram validate(RawDiagram raw);

  ScheduleMode mode_ = ScheduleMode::Stationary;
  std::vector<Matrix> schedule_;
  std::vector<BigInt> top_row_;
  std::vector<std::vector<std::string>> labels_;
  int depth_ = 0;
};

// Checks row/column positivity, shape chaining and connectivity up to depth.
// Errors: ZeroRow, ZeroColumn, ShapeMismatch, DisjointUnion, LevelOutOfRange.
Diagram validate(RawDiagram raw);

// h^(n): number of paths from the root to each vertex of level n.
std::vector<BigInt> heights(const Diagram& d, int n);

// Telescope to cut levels 0 = n_0 < n_1 < ... < n_K. Result is Explicit with depth K.
Diagram telescope(const Diagram& d, const std::vector<int>& cuts);

// Telescope to levels first, first + step, first + 2 step, ... keeping the schedule
// Stationary/Periodic when the input is. Depth counts the new levels inside d.depth().
Diagram telescope_uniform(const Diagram& d, int first, int step);

// Product F_{b-1} ... F_a (maps level a to level b). Identity when a == b.
Matrix product(const Diagram& d, int a, int b);

struct BlockForm {
  bool detected = false;
  std::vector<std::vector<int>> minimal_components;  // vertex indices per A-block
  std::vector<int> c_block;
  std::vector<int> positive_c_rows;  // C-block rows that are strictly positive
  std::vector<int> permutation;      // A-blocks in order, then the C-block
  std::string reason;                // why detection failed, when it did

  std::vector<int> component_sizes() const;
};

// Class-A block form of a single square matrix, read off its support.
BlockForm detect_block_form(const Matrix& f);

struct ClassificationReport {
  int probe_depth = 0;
  std::size_t rank_lower = 0;  // smallest |V_n| over the tail half of the probe
  std::size_t rank_upper = 0;  // largest |V_n| over the same levels
  bool simple_at_depth = false;
  int simple_level = -1;  // first n with F_{n-1}...F_1 strictly positive
  bool multi_edge_at_depth = false;  // every |r^-1(v)| >= 2 after telescoping
  int multi_edge_level = -1;
  std::vector<BlockForm> per_level;  // entry i describes F_{i+1}
  BlockForm uniform;                 // one form valid at every probed level
  BlockForm telescoped;              // same, after telescoping with telescoped_step
  int telescoped_step = 0;
};

ClassificationReport classify(const Diagram& d, int probe_depth);

}  // namespace bratteli
