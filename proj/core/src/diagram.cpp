#include "bratteli/diagram.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

// disjoint_sets must precede the graph headers, which pull in its detail part.
#include <boost/property_map/property_map.hpp>
#include <boost/pending/disjoint_sets.hpp>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

#include "bratteli/error.hpp"

namespace bratteli {

namespace {

constexpr int kDefaultDepth = 10;
constexpr int kUnbounded = INT_MAX / 2;

void check_nonnegative(const Matrix& m, int level) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) < 0) throw Error("NegativeEntry", {{"level", level}, {"row", r}, {"col", c}});
}

}  // namespace

std::string to_string(ScheduleMode m) {
  switch (m) {
    case ScheduleMode::Stationary: return "stationary";
    case ScheduleMode::Periodic: return "periodic";
    case ScheduleMode::Explicit: return "explicit";
  }
  return "explicit";
}

ScheduleMode schedule_mode_from_string(std::string_view s) {
  if (s == "stationary") return ScheduleMode::Stationary;
  if (s == "periodic") return ScheduleMode::Periodic;
  if (s == "explicit") return ScheduleMode::Explicit;
  throw Error("UnknownScheduleMode", {{"mode", std::string(s)}});
}

int Diagram::max_level() const {
  if (mode_ == ScheduleMode::Explicit) return static_cast<int>(schedule_.size()) + 1;
  return kUnbounded;
}

const Matrix& Diagram::matrix(int n) const {
  if (n < 1 || n >= max_level()) throw Error("LevelOutOfRange", {{"level", n}, {"max_level", max_level()}});
  if (mode_ == ScheduleMode::Explicit) return schedule_[n - 1];
  return schedule_[(n - 1) % schedule_.size()];
}

std::size_t Diagram::size(int n) const { return labels(n).size(); }

const std::vector<std::string>& Diagram::labels(int n) const {
  if (n < 1 || n > max_level()) throw Error("LevelOutOfRange", {{"level", n}, {"max_level", max_level()}});
  if (strict_rank()) return labels_.front();
  return labels_[n - 1];
}

int Diagram::index_of(int n, std::string_view label) const {
  const auto& ls = labels(n);
  for (std::size_t i = 0; i < ls.size(); ++i)
    if (ls[i] == label) return static_cast<int>(i);
  return -1;
}

bool Diagram::single_char_labels() const {
  for (const auto& level : labels_)
    for (const auto& l : level)
      if (l.size() != 1) return false;
  return true;
}

RawDiagram Diagram::raw() const {
  RawDiagram r;
  r.labels = labels_;
  r.mode = mode_;
  r.matrices = schedule_;
  r.top_row = top_row_;
  r.depth = depth_;
  return r;
}

Diagram validate(RawDiagram raw) {
  Diagram d;
  d.mode_ = raw.mode;
  d.schedule_ = std::move(raw.matrices);
  d.top_row_ = std::move(raw.top_row);
  d.labels_ = std::move(raw.labels);

  if (d.labels_.empty() || d.labels_.front().empty()) throw Error("ShapeMismatch", {{"level", 1}, {"reason", "no labels"}});
  for (const auto& level : d.labels_) {
    auto sorted = level;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("DuplicateLabel", {{"labels", level}});
  }

  if (d.mode_ != ScheduleMode::Explicit) {
    if (d.schedule_.empty()) throw Error("ShapeMismatch", {{"level", 1}, {"reason", "empty schedule"}});
    if (d.mode_ == ScheduleMode::Stationary && d.schedule_.size() != 1)
      throw Error("ShapeMismatch", {{"level", 1}, {"reason", "stationary schedule needs exactly one matrix"}});
    if (!d.strict_rank()) throw Error("ShapeMismatch", {{"level", 1}, {"reason", "repeating schedules need shared labels"}});
  }

  const int max_level = d.max_level();
  d.depth_ = raw.depth > 0 ? raw.depth
                           : (d.mode_ == ScheduleMode::Explicit ? max_level
                                                                : std::max(kDefaultDepth, d.period() + 1));
  if (d.depth_ > max_level) throw Error("LevelOutOfRange", {{"level", d.depth_}, {"max_level", max_level}});
  if (!d.strict_rank() && static_cast<int>(d.labels_.size()) < d.depth_)
    throw Error("ShapeMismatch", {{"level", static_cast<int>(d.labels_.size()) + 1}, {"reason", "missing labels"}});

  // Levels whose matrices are checked: one full period, or every explicit level.
  const int last_matrix = d.mode_ == ScheduleMode::Explicit ? max_level - 1 : d.period();

  if (d.top_row_.size() != d.size(1)) throw Error("ShapeMismatch", {{"level", 0}, {"reason", "top_row length"}});
  for (std::size_t v = 0; v < d.top_row_.size(); ++v) {
    if (d.top_row_[v] < 0) throw Error("NegativeEntry", {{"level", 0}, {"row", v}});
    if (d.top_row_[v] == 0) throw Error("ZeroRow", {{"level", 0}, {"vertex", d.labels(1)[v]}});
  }
  for (int n = 1; n <= last_matrix; ++n) {
    const Matrix& f = d.schedule_[n - 1];
    const std::size_t want_rows = d.strict_rank() ? d.rank() : (n < static_cast<int>(d.labels_.size()) ? d.labels_[n].size() : f.rows());
    if (f.cols() != d.size(n) || f.rows() != want_rows) throw Error("ShapeMismatch", {{"level", n}});
    check_nonnegative(f, n);
  }
  for (int n = 1; n <= last_matrix; ++n) {
    const Matrix& f = d.schedule_[n - 1];
    for (std::size_t r = 0; r < f.rows(); ++r)
      if (f.row_sum(r) == 0) throw Error("ZeroRow", {{"level", n}, {"vertex", d.labels(n + 1)[r]}});
    for (std::size_t c = 0; c < f.cols(); ++c)
      if (f.col_sum(c) == 0) throw Error("ZeroColumn", {{"level", n}, {"vertex", d.labels(n)[c]}});
  }

  // Connectivity of levels 1..L without the root.
  const int levels = d.mode_ == ScheduleMode::Explicit ? d.depth_ : std::max(d.depth_, d.period() + 1);
  std::vector<std::size_t> offset(levels + 1, 0);
  for (int n = 1; n <= levels; ++n) offset[n] = offset[n - 1] + (n == 1 ? 0 : d.size(n - 1));
  const std::size_t total = offset[levels] + d.size(levels);
  boost::disjoint_sets_with_storage<> ds(total);
  for (std::size_t i = 0; i < total; ++i) ds.make_set(i);
  for (int n = 1; n < levels; ++n) {
    const Matrix& f = d.matrix(n);
    for (std::size_t r = 0; r < f.rows(); ++r)
      for (std::size_t c = 0; c < f.cols(); ++c)
        if (f(r, c) > 0) ds.union_set(offset[n] + c, offset[n + 1] + r);
  }
  const std::size_t root = ds.find_set(0);
  for (int n = 1; n <= levels; ++n)
    for (std::size_t v = 0; v < d.size(n); ++v)
      if (ds.find_set(offset[n] + v) != root)
        throw Error("DisjointUnion", {{"level", n}, {"vertex", d.labels(n)[v]}, {"checked_depth", levels}});

  return d;
}

std::vector<BigInt> heights(const Diagram& d, int n) {
  if (n < 1 || n > d.max_level()) throw Error("LevelOutOfRange", {{"level", n}});
  std::vector<BigInt> h = d.top_row();
  for (int m = 1; m < n; ++m) h = d.matrix(m).apply(h);
  return h;
}

Matrix product(const Diagram& d, int a, int b) {
  if (a < 1 || b < a || b > d.max_level()) throw Error("LevelOutOfRange", {{"from", a}, {"to", b}});
  Matrix m = Matrix::identity(d.size(a));
  for (int n = a; n < b; ++n) m = d.matrix(n) * m;
  return m;
}

Diagram telescope(const Diagram& d, const std::vector<int>& cuts) {
  if (cuts.size() < 2 || cuts.front() != 0) throw Error("InvalidCuts", {{"reason", "cuts must start at 0 and contain a level"}});
  for (std::size_t i = 1; i < cuts.size(); ++i)
    if (cuts[i] <= cuts[i - 1]) throw Error("InvalidCuts", {{"reason", "cuts must be strictly increasing"}});
  if (cuts.back() > d.max_level()) throw Error("LevelOutOfRange", {{"level", cuts.back()}, {"max_level", d.max_level()}});
  if (d.mode() == ScheduleMode::Explicit && cuts.back() > d.depth())
    throw Error("LevelOutOfRange", {{"level", cuts.back()}, {"depth", d.depth()}});

  RawDiagram r;
  r.mode = ScheduleMode::Explicit;
  r.top_row = heights(d, cuts[1]);
  for (std::size_t k = 1; k + 1 < cuts.size(); ++k) r.matrices.push_back(product(d, cuts[k], cuts[k + 1]));
  if (d.strict_rank()) {
    r.labels = {d.labels(1)};
  } else {
    for (std::size_t k = 1; k < cuts.size(); ++k) r.labels.push_back(d.labels(cuts[k]));
  }
  r.depth = static_cast<int>(cuts.size()) - 1;
  return validate(std::move(r));
}

Diagram telescope_uniform(const Diagram& d, int first, int step) {
  if (first < 1 || step < 1) throw Error("InvalidCuts", {{"first", first}, {"step", step}});
  if (d.mode() == ScheduleMode::Explicit) {
    std::vector<int> cuts{0};
    for (int n = first; n <= d.depth(); n += step) cuts.push_back(n);
    return telescope(d, cuts);
  }
  const int p = d.period();
  const int new_period = p / std::gcd(p, step);
  RawDiagram r;
  r.labels = {d.labels(1)};
  r.top_row = heights(d, first);
  for (int k = 0; k < new_period; ++k) r.matrices.push_back(product(d, first + k * step, first + (k + 1) * step));
  r.mode = new_period == 1 ? ScheduleMode::Stationary : ScheduleMode::Periodic;
  r.depth = std::max(2, (d.depth() - first) / step + 1);
  return validate(std::move(r));
}

std::vector<int> BlockForm::component_sizes() const {
  std::vector<int> s;
  for (const auto& c : minimal_components) s.push_back(static_cast<int>(c.size()));
  return s;
}

BlockForm detect_block_form(const Matrix& f) {
  BlockForm out;
  if (!f.square()) {
    out.reason = "matrix is not square";
    return out;
  }
  const std::size_t n = f.rows();
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  Graph g(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      if (f(v, w) > 0) boost::add_edge(w, v, g);
  std::vector<int> comp(n);
  const int ncomp = boost::strong_components(g, comp.data());

  // A-blocks are components closed under taking sources.
  std::vector<bool> closed(ncomp, true);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      if (f(v, w) > 0 && comp[w] != comp[v]) closed[comp[v]] = false;

  std::vector<std::vector<int>> blocks(ncomp);
  for (std::size_t v = 0; v < n; ++v) blocks[comp[v]].push_back(static_cast<int>(v));
  for (int c = 0; c < ncomp; ++c) {
    if (closed[c]) out.minimal_components.push_back(blocks[c]);
    else out.c_block.insert(out.c_block.end(), blocks[c].begin(), blocks[c].end());
  }
  std::sort(out.minimal_components.begin(), out.minimal_components.end());
  std::sort(out.c_block.begin(), out.c_block.end());

  auto fail = [&](std::string why) {
    out.detected = false;
    out.reason = std::move(why);
    return out;
  };
  if (out.c_block.empty()) return fail("no C-block: every component is closed");
  for (const auto& a : out.minimal_components)
    for (int v : a)
      for (int w : a)
        if (f(v, w) == 0) return fail("A-block not strictly positive");
  for (int v : out.c_block) {
    for (const auto& a : out.minimal_components)
      for (int w : a)
        if (f(v, w) == 0) return fail("B-block not strictly positive");
    for (int w : out.c_block)
      if (f(v, w) == 0) return fail("C-block not strictly positive");
  }
  for (int v : out.c_block) {
    bool all = true;
    for (std::size_t w = 0; w < n; ++w) all = all && f(v, w) > 0;
    if (all) out.positive_c_rows.push_back(v);
  }
  if (out.positive_c_rows.empty()) return fail("no strictly positive row");
  for (const auto& a : out.minimal_components) out.permutation.insert(out.permutation.end(), a.begin(), a.end());
  out.permutation.insert(out.permutation.end(), out.c_block.begin(), out.c_block.end());
  out.detected = true;
  return out;
}

namespace {

bool same_form(const BlockForm& a, const BlockForm& b) {
  return a.detected && b.detected && a.minimal_components == b.minimal_components && a.c_block == b.c_block;
}

BlockForm intersect_rows(BlockForm base, const std::vector<BlockForm>& forms) {
  // The positive-row condition must hold at every level with a common row.
  std::vector<int> rows = base.positive_c_rows;
  for (const auto& f : forms) {
    std::vector<int> keep;
    std::set_intersection(rows.begin(), rows.end(), f.positive_c_rows.begin(), f.positive_c_rows.end(),
                          std::back_inserter(keep));
    rows = keep;
  }
  base.positive_c_rows = rows;
  if (rows.empty()) {
    base.detected = false;
    base.reason = "no row strictly positive at every level";
  }
  return base;
}

BlockForm uniform_form(const std::vector<BlockForm>& forms) {
  BlockForm none;
  if (forms.empty()) {
    none.reason = "no levels probed";
    return none;
  }
  for (const auto& f : forms)
    if (!same_form(f, forms.front())) {
      none.reason = f.detected ? "block structure changes between levels" : f.reason;
      return none;
    }
  return intersect_rows(forms.front(), forms);
}

}  // namespace

ClassificationReport classify(const Diagram& d, int probe_depth) {
  if (probe_depth < 2) throw Error("LevelOutOfRange", {{"probe_depth", probe_depth}});
  if (d.mode() == ScheduleMode::Explicit && probe_depth > d.depth())
    throw Error("LevelOutOfRange", {{"probe_depth", probe_depth}, {"depth", d.depth()}});
  ClassificationReport rep;
  rep.probe_depth = probe_depth;

  rep.rank_lower = SIZE_MAX;
  for (int n = std::max(1, probe_depth / 2); n <= probe_depth; ++n) {
    rep.rank_lower = std::min(rep.rank_lower, d.size(n));
    rep.rank_upper = std::max(rep.rank_upper, d.size(n));
  }

  Matrix acc = Matrix::identity(d.size(1));
  for (int n = 2; n <= probe_depth; ++n) {
    acc = d.matrix(n - 1) * acc;
    if (!rep.simple_at_depth && acc.positive()) {
      rep.simple_at_depth = true;
      rep.simple_level = n;
    }
    if (!rep.multi_edge_at_depth) {
      bool ok = true;
      for (std::size_t r = 0; r < acc.rows(); ++r) ok = ok && acc.row_sum(r) >= 2;
      if (ok) {
        rep.multi_edge_at_depth = true;
        rep.multi_edge_level = n;
      }
    }
  }

  for (int n = 1; n < probe_depth; ++n) rep.per_level.push_back(detect_block_form(d.matrix(n)));
  rep.uniform = uniform_form(rep.per_level);
  if (rep.uniform.detected) {
    rep.telescoped = rep.uniform;
    rep.telescoped_step = 1;
    return rep;
  }
  for (int step = 2; 1 + 2 * step <= probe_depth; ++step) {
    std::vector<BlockForm> forms;
    for (int a = 1; a + step <= probe_depth; a += step) forms.push_back(detect_block_form(product(d, a, a + step)));
    BlockForm u = uniform_form(forms);
    if (u.detected) {
      rep.telescoped = u;
      rep.telescoped_step = step;
      return rep;
    }
  }
  rep.telescoped.reason = "not detected at this depth";
  return rep;
}

}  // namespace bratteli
