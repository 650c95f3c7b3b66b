#include "bratteli/ordering.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <random>

#include "bratteli/error.hpp"

namespace bratteli {

namespace {

constexpr int kUnbounded = INT_MAX / 2;

std::vector<int> letter_counts(const Word& w, std::size_t alphabet) {
  std::vector<int> c(alphabet, 0);
  for (int x : w) {
    if (x < 0 || static_cast<std::size_t>(x) >= alphabet) return {};
    ++c[x];
  }
  return c;
}

}  // namespace

Ordering Ordering::stationary(LevelWords words) {
  Ordering o;
  o.mode_ = ScheduleMode::Stationary;
  o.entries_.push_back(std::move(words));
  return o;
}

Ordering Ordering::periodic(std::vector<LevelWords> phases) {
  if (phases.empty()) throw Error("OrderingMismatch", {{"reason", "empty period"}});
  Ordering o;
  o.mode_ = phases.size() == 1 ? ScheduleMode::Stationary : ScheduleMode::Periodic;
  o.entries_ = std::move(phases);
  return o;
}

Ordering Ordering::explicit_levels(std::vector<LevelWords> levels) {
  Ordering o;
  o.mode_ = ScheduleMode::Explicit;
  o.entries_ = std::move(levels);
  return o;
}

int Ordering::max_level() const {
  if (mode_ == ScheduleMode::Explicit) return static_cast<int>(entries_.size()) + 1;
  return kUnbounded;
}

const LevelWords& Ordering::words(int n) const {
  if (n < 2 || n > max_level() || entries_.empty())
    throw Error("LevelOutOfRange", {{"level", n}, {"max_level", max_level()}});
  if (mode_ == ScheduleMode::Explicit) return entries_[n - 2];
  return entries_[(n - 2) % entries_.size()];
}

int joint_max_level(const Diagram& d, const Ordering& w) {
  const int dl = d.mode() == ScheduleMode::Explicit ? d.depth() : kUnbounded;
  return std::min(dl, w.max_level());
}

void check_ordering(const Diagram& d, const Ordering& w) {
  int last = joint_max_level(d, w);
  if (last >= kUnbounded) last = std::lcm(d.period(), w.period()) + 1;
  for (int n = 2; n <= last; ++n) {
    const Matrix& f = d.matrix(n - 1);
    const LevelWords& ws = w.words(n);
    if (ws.size() != f.rows())
      throw Error("OrderingMismatch", {{"level", n}, {"reason", "vertex count"}, {"expected", f.rows()}});
    for (std::size_t v = 0; v < f.rows(); ++v) {
      const auto counts = letter_counts(ws[v], f.cols());
      bool ok = !counts.empty();
      for (std::size_t c = 0; ok && c < f.cols(); ++c) ok = f(v, c) == counts[c];
      if (!ok) throw Error("OrderingMismatch", {{"level", n}, {"vertex", d.labels(n)[v]}});
    }
  }
}

Ordering natural_ordering(const Diagram& d) {
  auto level_words = [](const Matrix& f) {
    LevelWords ws(f.rows());
    for (std::size_t v = 0; v < f.rows(); ++v)
      for (std::size_t c = 0; c < f.cols(); ++c) ws[v].insert(ws[v].end(), f.small(v, c), static_cast<int>(c));
    return ws;
  };
  std::vector<LevelWords> entries;
  const int count = d.mode() == ScheduleMode::Explicit ? d.depth() - 1 : d.period();
  for (int n = 2; n <= count + 1; ++n) entries.push_back(level_words(d.matrix(n - 1)));
  if (d.mode() == ScheduleMode::Explicit) return Ordering::explicit_levels(std::move(entries));
  return Ordering::periodic(std::move(entries));
}

Word random_word(const Matrix& f, int row, std::uint64_t seed, int level) {
  Word w;
  for (std::size_t c = 0; c < f.cols(); ++c) w.insert(w.end(), f.small(row, c), static_cast<int>(c));
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(level), static_cast<std::uint32_t>(row)};
  std::mt19937_64 rng(seq);
  std::shuffle(w.begin(), w.end(), rng);
  return w;
}

Ordering random_ordering(const Diagram& d, std::uint64_t seed, int probe_depth) {
  if (probe_depth < 2) throw Error("LevelOutOfRange", {{"level", probe_depth}});
  if (d.mode() == ScheduleMode::Explicit && probe_depth > d.depth())
    throw Error("LevelOutOfRange", {{"level", probe_depth}, {"depth", d.depth()}});
  std::vector<LevelWords> levels;
  for (int n = 2; n <= probe_depth; ++n) {
    const Matrix& f = d.matrix(n - 1);
    LevelWords ws(f.rows());
    for (std::size_t v = 0; v < f.rows(); ++v) ws[v] = random_word(f, static_cast<int>(v), seed, n);
    levels.push_back(std::move(ws));
  }
  return Ordering::explicit_levels(std::move(levels));
}

std::vector<int> max_sources(const Ordering& w, int n) {
  std::vector<int> out;
  for (const Word& x : w.words(n)) out.push_back(x.back());
  return out;
}

std::vector<int> min_sources(const Ordering& w, int n) {
  std::vector<int> out;
  for (const Word& x : w.words(n)) out.push_back(x.front());
  return out;
}

Word order_word(const Diagram& d, const Ordering& w, int v, int m, int n, std::size_t max_length) {
  if (m < 1 || n <= m || n > joint_max_level(d, w))
    throw Error("LevelOutOfRange", {{"from", m}, {"to", n}});
  Word cur{v};
  for (int level = n; level > m; --level) {
    const LevelWords& ws = w.words(level);
    std::size_t total = 0;
    for (int u : cur) total += ws[u].size();
    if (total > max_length) throw Error("WordTooLong", {{"from", m}, {"to", n}, {"limit", max_length}});
    Word next;
    next.reserve(total);
    for (int u : cur) next.insert(next.end(), ws[u].begin(), ws[u].end());
    cur = std::move(next);
  }
  return cur;
}

std::pair<Diagram, Ordering> lexicographic_image(const Diagram& d, const Ordering& w,
                                                 const std::vector<int>& cuts) {
  Diagram t = telescope(d, cuts);
  if (cuts.back() > joint_max_level(d, w))
    throw Error("LevelOutOfRange", {{"level", cuts.back()}, {"max_level", joint_max_level(d, w)}});
  std::vector<LevelWords> levels;
  for (std::size_t k = 1; k + 1 < cuts.size(); ++k) {
    LevelWords ws(d.size(cuts[k + 1]));
    for (std::size_t v = 0; v < ws.size(); ++v) ws[v] = order_word(d, w, static_cast<int>(v), cuts[k], cuts[k + 1]);
    levels.push_back(std::move(ws));
  }
  return {std::move(t), Ordering::explicit_levels(std::move(levels))};
}

std::pair<Diagram, Ordering> lexicographic_image_uniform(const Diagram& d, const Ordering& w, int first,
                                                         int step) {
  if (first < 1 || step < 1) throw Error("InvalidCuts", {{"first", first}, {"step", step}});
  if (d.mode() == ScheduleMode::Explicit || w.mode() == ScheduleMode::Explicit) {
    const int last = std::min(d.depth(), joint_max_level(d, w));
    std::vector<int> cuts{0};
    for (int c = first; c <= last; c += step) cuts.push_back(c);
    return lexicographic_image(d, w, cuts);
  }
  Diagram t = telescope_uniform(d, first, step);
  const int p = std::lcm(d.period(), w.period());
  const int new_period = p / std::gcd(p, step);
  std::vector<LevelWords> phases;
  for (int k = 1; k <= new_period; ++k) {
    const int lo = first + (k - 1) * step;
    const int hi = first + k * step;
    LevelWords ws(d.size(hi));
    for (std::size_t v = 0; v < ws.size(); ++v) ws[v] = order_word(d, w, static_cast<int>(v), lo, hi);
    phases.push_back(std::move(ws));
  }
  return {std::move(t), Ordering::periodic(std::move(phases))};
}

bool ExtremalSide::vertical() const {
  for (const auto& t : trajectories)
    if (std::adjacent_find(t.begin(), t.end(), std::not_equal_to<>()) != t.end()) return false;
  return true;
}

namespace {

ExtremalSide trace_side(const Diagram& d, const Ordering& w, int probe_depth, int window, bool maximal) {
  ExtremalSide side;
  // maps[n] sends V_n to V_{n-1} for n >= 2.
  std::vector<std::vector<int>> maps(probe_depth + 1);
  for (int n = 2; n <= probe_depth; ++n) maps[n] = maximal ? max_sources(w, n) : min_sources(w, n);

  // Level-1 image of V_N for N = 1..probe_depth, built by extending the composite upward.
  std::vector<std::set<int>> images(probe_depth + 1);
  std::vector<int> down(d.size(1));
  std::iota(down.begin(), down.end(), 0);
  images[1] = std::set<int>(down.begin(), down.end());
  for (int n = 2; n <= probe_depth; ++n) {
    std::vector<int> next(d.size(n));
    for (std::size_t v = 0; v < next.size(); ++v) next[v] = down[maps[n][v]];
    down = std::move(next);
    images[n] = std::set<int>(down.begin(), down.end());
  }

  side.level1_vertices.assign(images[probe_depth].begin(), images[probe_depth].end());
  side.count = static_cast<int>(side.level1_vertices.size());
  int from = probe_depth;
  while (from > 1 && images[from - 1] == images[probe_depth]) --from;
  side.stabilization_level = from;
  side.stabilized = probe_depth - from + 1 >= window;

  for (int target : side.level1_vertices) {
    int r = 0;
    while (down[r] != target) ++r;
    std::vector<int> traj(probe_depth);
    traj[probe_depth - 1] = r;
    for (int n = probe_depth; n >= 2; --n) traj[n - 2] = maps[n][traj[n - 1]];
    side.trajectories.push_back(std::move(traj));
  }
  return side;
}

}  // namespace

ExtremalReport extremal_paths(const Diagram& d, const Ordering& w, int probe_depth, int window) {
  if (window < 1 || probe_depth < window) throw Error("InvalidWindow", {{"probe_depth", probe_depth}, {"window", window}});
  if (probe_depth > joint_max_level(d, w))
    throw Error("LevelOutOfRange", {{"level", probe_depth}, {"max_level", joint_max_level(d, w)}});
  ExtremalReport r;
  r.probe_depth = probe_depth;
  r.window = window;
  r.max = trace_side(d, w, probe_depth, window, true);
  r.min = trace_side(d, w, probe_depth, window, false);
  return r;
}

int FinitePath::vertex_at(int n) const {
  if (n < 1 || n > level()) throw Error("LevelOutOfRange", {{"level", n}});
  if (n == level()) return range;
  return edges[n].source;
}

namespace {

// Position of the edge (source, rank) within the word of its range vertex.
long long position_in_word(const Word& word, const PathEdge& e) {
  long long seen = 0;
  for (std::size_t i = 0; i < word.size(); ++i)
    if (word[i] == e.source && seen++ == e.rank) return static_cast<long long>(i);
  throw Error("InvalidPath", {{"source", e.source}, {"rank", e.rank}});
}

PathEdge edge_at_position(const Word& word, std::size_t pos) {
  long long rank = 0;
  for (std::size_t i = 0; i < pos; ++i)
    if (word[i] == word[pos]) ++rank;
  return {word[pos], rank};
}

void check_path(const Diagram& d, const FinitePath& x) {
  if (x.edges.empty()) throw Error("InvalidPath", {{"reason", "empty"}});
  for (int n = 1; n <= x.level(); ++n) {
    const int v = x.vertex_at(n);
    if (v < 0 || static_cast<std::size_t>(v) >= d.size(n)) throw Error("InvalidPath", {{"level", n}});
    const PathEdge& e = x.edges[n - 1];
    if (n == 1) {
      if (e.rank < 0 || e.rank >= d.top_row()[v]) throw Error("InvalidPath", {{"level", 1}});
    } else if (e.source < 0 || static_cast<std::size_t>(e.source) >= d.size(n - 1) || e.rank < 0 ||
               e.rank >= d.matrix(n - 1)(v, e.source)) {
      throw Error("InvalidPath", {{"level", n}});
    }
  }
}

}  // namespace

FinitePath successor(const Diagram& d, const Ordering& w, const FinitePath& x) {
  check_path(d, x);
  FinitePath y = x;
  for (int k = 1; k <= x.level(); ++k) {
    const int v = x.vertex_at(k);
    if (k == 1) {
      if (x.edges[0].rank + 1 < d.top_row()[v]) {
        y.edges[0].rank += 1;
        return y;
      }
      continue;
    }
    const Word& word = w.words(k)[v];
    const long long pos = position_in_word(word, x.edges[k - 1]);
    if (pos + 1 >= static_cast<long long>(word.size())) continue;
    y.edges[k - 1] = edge_at_position(word, static_cast<std::size_t>(pos + 1));
    // Minimal path from the root into the new source.
    int u = y.edges[k - 1].source;
    for (int n = k - 1; n >= 1; --n) {
      if (n == 1) {
        y.edges[0] = {0, 0};
      } else {
        y.edges[n - 1] = {w.words(n)[u].front(), 0};
        u = y.edges[n - 1].source;
      }
    }
    return y;
  }
  throw Error("MaximalPath", {{"level", x.level()}, {"vertex", d.labels(x.level())[x.range]}});
}

AssociatedSequence associated_sequence(const Diagram& d, const Ordering& w, const FinitePath& x) {
  check_path(d, x);
  AssociatedSequence seq;
  std::vector<BigInt> h = d.top_row();
  BigInt index = x.edges[0].rank;
  seq.push_back({index, x.vertex_at(1)});
  for (int n = 2; n <= x.level(); ++n) {
    const int v = x.vertex_at(n);
    const Word& word = w.words(n)[v];
    const long long pos = position_in_word(word, x.edges[n - 1]);
    BigInt before = 0;
    for (long long i = 0; i < pos; ++i) before += h[word[i]];
    index += before;
    h = d.matrix(n - 1).apply(h);
    seq.push_back({index, v});
  }
  return seq;
}

FinitePath path_at_index(const Diagram& d, const Ordering& w, int v, int n, const BigInt& index) {
  std::vector<std::vector<BigInt>> hs{d.top_row()};
  for (int m = 1; m < n; ++m) hs.push_back(d.matrix(m).apply(hs.back()));
  if (index < 0 || index >= hs[n - 1][v]) throw Error("IndexOutOfRange", {{"level", n}, {"index", to_string(index)}});
  FinitePath x;
  x.range = v;
  x.edges.resize(n);
  BigInt rest = index;
  int u = v;
  for (int m = n; m >= 2; --m) {
    const Word& word = w.words(m)[u];
    std::size_t pos = 0;
    while (rest >= hs[m - 2][word[pos]]) rest -= hs[m - 2][word[pos++]];
    x.edges[m - 1] = edge_at_position(word, pos);
    u = word[pos];
  }
  x.edges[0] = {0, static_cast<long long>(rest)};
  return x;
}

}  // namespace bratteli
