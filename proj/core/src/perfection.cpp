#include "bratteli/perfection.hpp"

#include <algorithm>
#include <numeric>

#include "bratteli/error.hpp"
#include "bratteli/language.hpp"

namespace bratteli {

namespace {

constexpr int kMaxRepeats = 64;

using Map = std::vector<int>;

bool idempotent(const Map& f) {
  for (std::size_t v = 0; v < f.size(); ++v)
    if (f[f[v]] != f[v]) return false;
  return true;
}

std::vector<int> image(const Map& f) {
  std::set<int> s(f.begin(), f.end());
  return {s.begin(), s.end()};
}

// Composite extremal-source map from level hi down to level lo.
Map composite(const Ordering& w, int lo, int hi, bool maximal, std::size_t top_size) {
  Map f(top_size);
  std::iota(f.begin(), f.end(), 0);
  for (int n = hi; n > lo; --n) {
    const Map g = maximal ? max_sources(w, n) : min_sources(w, n);
    for (int& x : f) x = g[x];
  }
  return f;
}

bool rows_at_least_two(const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (m.row_sum(r) < 2) return false;
  return true;
}

bool repeating(const Diagram& d, const Ordering& w) {
  return d.mode() != ScheduleMode::Explicit && w.mode() != ScheduleMode::Explicit;
}

// Cut blocks [first + k step, first + (k+1) step] with identical idempotent extremal maps.
bool blocks_work(const Diagram& d, const Ordering& w, int first, int step, int last) {
  std::optional<Map> max_ref, min_ref;
  bool any = false;
  for (int lo = first; lo + step <= last; lo += step) {
    const int hi = lo + step;
    const Map fmax = composite(w, lo, hi, true, d.size(hi));
    const Map fmin = composite(w, lo, hi, false, d.size(hi));
    if (!idempotent(fmax) || !idempotent(fmin)) return false;
    if (max_ref && (*max_ref != fmax || *min_ref != fmin)) return false;
    if (!rows_at_least_two(product(d, lo, hi))) return false;
    max_ref = fmax;
    min_ref = fmin;
    any = true;
  }
  return any;
}

Witness make_witness(std::string kind, int vertex, const std::vector<int>& partners,
                     const std::vector<std::pair<int, int>>& levels) {
  Witness w;
  w.kind = std::move(kind);
  w.vertex = vertex;
  w.partners = partners;
  w.levels = levels;
  return w;
}

// Shared bijection test on a relation between maximal and minimal items.
void judge(PerfectionVerdict& v, const std::vector<int>& maxs, const std::vector<int>& mins,
           const std::map<std::pair<int, int>, std::pair<int, int>>& seen, bool certify) {
  std::map<int, std::vector<int>> succ, pred;
  for (const auto& [pair, lv] : seen) {
    succ[pair.first].push_back(pair.second);
    pred[pair.second].push_back(pair.first);
    v.adjacency.insert(pair);
  }
  auto levels_of = [&](int a, const std::vector<int>& bs, bool forward) {
    std::vector<std::pair<int, int>> out;
    for (int b : bs) out.push_back(seen.at(forward ? std::make_pair(a, b) : std::make_pair(b, a)));
    return out;
  };
  for (int x : maxs)
    if (succ[x].size() >= 2) {
      v.status = Status::Imperfect;
      v.witness = make_witness("two_successors", x, succ[x], levels_of(x, succ[x], true));
      return;
    }
  for (int y : mins)
    if (pred[y].size() >= 2) {
      v.status = Status::Imperfect;
      v.witness = make_witness("two_predecessors", y, pred[y], levels_of(y, pred[y], false));
      return;
    }
  bool bijection = maxs.size() == mins.size();
  for (int x : maxs) bijection = bijection && succ[x].size() == 1;
  for (int y : mins) bijection = bijection && pred[y].size() == 1;
  if (bijection && certify) {
    v.status = Status::Perfect;
    for (int x : maxs) v.sigma[x] = succ[x].front();
    return;
  }
  if (!bijection && certify) {
    v.status = Status::Imperfect;
    for (int x : maxs)
      if (succ[x].empty()) {
        v.witness = make_witness("unmatched", x, {}, {});
        return;
      }
    for (int y : mins)
      if (pred[y].empty()) {
        v.witness = make_witness("unmatched", y, {}, {});
        return;
      }
    v.witness = make_witness("unmatched", -1, {}, {});
    return;
  }
  v.status = Status::Inconclusive;
  v.note = "no conflicting adjacency within horizon";
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Perfect: return "Perfect";
    case Status::Imperfect: return "Imperfect";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

bool is_well_telescoped(const Diagram& d, const Ordering& w, int probe_depth) {
  if (!d.strict_rank()) return false;
  const int last = repeating(d, w) ? joint_period(d, w) + 1 : std::min(probe_depth, joint_max_level(d, w));
  return blocks_work(d, w, 1, 1, last);
}

WellTelescoped well_telescope(const Diagram& d, const Ordering& w, int probe_depth) {
  if (!d.strict_rank()) throw Error("NotStabilized", {{"depth", probe_depth}, {"reason", "vertex set varies"}});
  WellTelescoped out;
  if (repeating(d, w)) {
    const int p = joint_period(d, w);
    int found = 0;
    for (int t = 1; t <= kMaxRepeats && !found; ++t)
      if (blocks_work(d, w, 1, t * p, 1 + t * p)) found = t * p;
    if (!found) throw Error("NotStabilized", {{"depth", 1 + kMaxRepeats * p}});
    out.first = 1;
    out.step = found;
    if (out.identity()) {
      out.diagram = d;
      out.ordering = w;
    } else {
      auto [td, tw] = lexicographic_image_uniform(d, w, out.first, out.step);
      out.diagram = std::move(td);
      out.ordering = std::move(tw);
    }
  } else {
    const int last = std::min(probe_depth, joint_max_level(d, w));
    int found = 0;
    for (int step = 1; 1 + 2 * step <= last && !found; ++step)
      if (blocks_work(d, w, 1, step, last)) found = step;
    if (!found) throw Error("NotStabilized", {{"depth", last}});
    out.first = 1;
    out.step = found;
    std::vector<int> cuts{0};
    for (int c = 1; c <= last; c += found) cuts.push_back(c);
    auto [td, tw] = lexicographic_image(d, w, cuts);
    out.diagram = std::move(td);
    out.ordering = std::move(tw);
  }
  out.max_vertices = image(max_sources(out.ordering, 2));
  out.min_vertices = image(min_sources(out.ordering, 2));
  return out;
}

std::map<std::pair<int, int>, std::pair<int, int>> thread_adjacency(const Diagram& d, const Ordering& w,
                                                                    const ExtremalReport& ex) {
  const int top = ex.probe_depth;
  std::map<std::pair<int, int>, std::pair<int, int>> seen;
  for (int m = std::max(1, top / 2); m < top; ++m) {
    std::vector<int> max_at(d.size(m), -1), min_at(d.size(m), -1);
    for (std::size_t i = 0; i < ex.max.trajectories.size(); ++i) max_at[ex.max.trajectories[i][m - 1]] = static_cast<int>(i);
    for (std::size_t j = 0; j < ex.min.trajectories.size(); ++j) min_at[ex.min.trajectories[j][m - 1]] = static_cast<int>(j);
    std::vector<FactorSummary> s(d.size(m));
    for (std::size_t u = 0; u < s.size(); ++u) s[u] = FactorSummary::letter(static_cast<int>(u), 2);
    for (int n = m + 1; n <= top; ++n) {
      s = lift_summaries(d, w, s, n, 2);
      for (const auto& fs : s)
        for (const Word& x : fs.factors) {
          if (x.size() != 2 || max_at[x[0]] < 0 || min_at[x[1]] < 0) continue;
          seen.emplace(std::make_pair(max_at[x[0]], min_at[x[1]]), std::make_pair(m, n));
        }
    }
  }
  return seen;
}

PerfectionVerdict check_perfect(const Diagram& d, const Ordering& w, int horizon) {
  PerfectionVerdict v;
  v.horizon = horizon;
  if (repeating(d, w)) {
    if (!is_well_telescoped(d, w, horizon)) throw Error("NotWellTelescoped", {{"hint", "run well_telescope first"}});
    v.max_vertices = image(max_sources(w, 2));
    v.min_vertices = image(min_sources(w, 2));
    const ExactLanguage lang = exact_language(d, w, 2);
    v.horizon = lang.levels_scanned;
    std::map<std::pair<int, int>, std::pair<int, int>> seen;
    const std::set<int> maxs(v.max_vertices.begin(), v.max_vertices.end());
    const std::set<int> mins(v.min_vertices.begin(), v.min_vertices.end());
    for (const auto& [word, lv] : lang.first_seen)
      if (word.size() == 2 && maxs.count(word[0]) && mins.count(word[1])) seen.emplace(std::make_pair(word[0], word[1]), lv);
    v.exact = lang.exact;
    judge(v, v.max_vertices, v.min_vertices, seen, lang.exact);
    return v;
  }

  const int top = std::min(horizon, joint_max_level(d, w));
  const ExtremalReport ex = extremal_paths(d, w, top, std::max(2, top / 4));
  v.horizon = top;
  v.max_vertices = ex.max.level1_vertices;
  v.min_vertices = ex.min.level1_vertices;
  if (!ex.max.stabilized || !ex.min.stabilized) {
    v.status = Status::Inconclusive;
    v.note = "extremal paths not stabilized within horizon";
    return v;
  }
  // Relation on path indices, reported through each path's level-1 vertex.
  std::map<std::pair<int, int>, std::pair<int, int>> seen;
  for (const auto& [pair, lv] : thread_adjacency(d, w, ex))
    seen.emplace(std::make_pair(ex.max.level1_vertices[pair.first], ex.min.level1_vertices[pair.second]), lv);
  judge(v, v.max_vertices, v.min_vertices, seen, false);
  return v;
}

PerfectionVerdict analyze_perfection(const Diagram& d, const Ordering& w, int horizon) {
  if (repeating(d, w)) {
    const WellTelescoped wt = well_telescope(d, w, horizon);
    PerfectionVerdict v = check_perfect(wt.diagram, wt.ordering, horizon);
    v.telescope_first = wt.first;
    v.telescope_step = wt.step;
    return v;
  }
  return check_perfect(d, w, horizon);
}

bool SuccPred::all_singletons() const {
  for (const auto& s : succ)
    if (s.size() != 1) return false;
  for (const auto& s : pred)
    if (s.size() != 1) return false;
  return succ.size() == pred.size();
}

SuccPred succ_pred_sets(const Diagram& d, const Ordering& w, int probe_depth) {
  SuccPred sp;
  const int top = std::min(probe_depth, joint_max_level(d, w));
  sp.extremal = extremal_paths(d, w, top, std::max(2, top / 4));
  if (!sp.extremal.max.stabilized || !sp.extremal.min.stabilized) throw Error("NotStabilized", {{"depth", top}});
  sp.succ.resize(sp.extremal.max.trajectories.size());
  sp.pred.resize(sp.extremal.min.trajectories.size());
  for (const auto& [pair, lv] : thread_adjacency(d, w, sp.extremal)) {
    sp.succ[pair.first].insert(pair.second);
    sp.pred[pair.second].insert(pair.first);
  }
  return sp;
}

StabilityReport verify_telescoping_stability(const Diagram& d, const Ordering& w, const std::vector<int>& cuts,
                                             int horizon) {
  StabilityReport r;
  r.before = analyze_perfection(d, w, horizon);
  // Cuts 0, a, a + s, a + 2s, ... on a repeating pair keep the result repeating.
  bool uniform = repeating(d, w) && cuts.size() >= 3 && cuts.front() == 0 && cuts[1] >= 1;
  for (std::size_t i = 2; uniform && i < cuts.size(); ++i) uniform = cuts[i] - cuts[i - 1] == cuts[2] - cuts[1];
  if (uniform) {
    auto [td, tw] = lexicographic_image_uniform(d, w, cuts[1], cuts[2] - cuts[1]);
    r.after = analyze_perfection(td, tw, horizon);
  } else {
    auto [td, tw] = lexicographic_image(d, w, cuts);
    r.after = analyze_perfection(td, tw, static_cast<int>(cuts.size()) - 1);
  }
  return r;
}

}  // namespace bratteli
