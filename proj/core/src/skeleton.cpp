#include "bratteli/skeleton.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/connected_components.hpp>
#include <boost/graph/strong_components.hpp>

#include "bratteli/error.hpp"
#include "bratteli/perfection.hpp"

namespace bratteli {

namespace {

using Digraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
using Undigraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;

bool contains(const std::vector<int>& sorted, int x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

int sigma_of(const Sigma& s, int x) {
  auto it = s.find(x);
  if (it == s.end()) throw Error("SigmaNotBijective", {{"missing", x}});
  return it->second;
}

std::vector<int> sorted_image(const std::vector<int>& f) {
  std::vector<int> s(f);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// Letters as edges between minimal vertices: w runs from min_source(w) to
// sigma(max_source(w)). A word is then a trail, and a valid word for row u is a
// trail that uses every letter of the row, starts with min_source(u) and ends
// with max_source(u).
struct LetterGraph {
  std::vector<int> from, to;
};

LetterGraph letter_graph(const Skeleton& sk, const Sigma& sigma) {
  LetterGraph lg;
  for (std::size_t w = 0; w < sk.size(); ++w) {
    lg.from.push_back(sk.min_source[w]);
    lg.to.push_back(sigma_of(sigma, sk.max_source[w]));
  }
  return lg;
}

// Can the letters in counts be laid out as a trail starting at node `at` and ending
// at node `end`? Degree balance plus connectivity of the used letters.
bool trail_exists(const LetterGraph& lg, const std::vector<long long>& counts, int at, int end, std::size_t nodes) {
  std::vector<long long> bal(nodes, 0);
  bool any = false;
  for (std::size_t w = 0; w < counts.size(); ++w) {
    if (counts[w] < 0) return false;
    if (counts[w] == 0) continue;
    any = true;
    bal[lg.from[w]] += counts[w];
    bal[lg.to[w]] -= counts[w];
  }
  if (!any) return at == end;
  for (std::size_t z = 0; z < nodes; ++z) {
    const long long want = (static_cast<int>(z) == at ? 1 : 0) - (static_cast<int>(z) == end ? 1 : 0);
    if (bal[z] != want) return false;
  }
  std::vector<int> parent(nodes);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (std::size_t w = 0; w < counts.size(); ++w)
    if (counts[w] > 0) parent[find(lg.from[w])] = find(lg.to[w]);
  const int root = find(at);
  for (std::size_t w = 0; w < counts.size(); ++w)
    if (counts[w] > 0 && find(lg.from[w]) != root) return false;
  return true;
}

std::vector<long long> row_counts(const Matrix& f, int u) { return f.small_row(static_cast<std::size_t>(u)); }

}  // namespace

void check_skeleton(const Skeleton& sk) {
  const std::size_t n = sk.size();
  if (sk.min_source.size() != n || sk.max_vertices.size() != sk.min_vertices.size() || sk.max_vertices.empty())
    throw Error("InvalidSkeleton", {{"reason", "sizes"}});
  if (!std::is_sorted(sk.max_vertices.begin(), sk.max_vertices.end()) ||
      !std::is_sorted(sk.min_vertices.begin(), sk.min_vertices.end()))
    throw Error("InvalidSkeleton", {{"reason", "vertex sets must be sorted"}});
  for (std::size_t w = 0; w < n; ++w) {
    if (!contains(sk.max_vertices, sk.max_source[w])) throw Error("InvalidSkeleton", {{"vertex", w}, {"reason", "maximal source outside the maximal set"}});
    if (!contains(sk.min_vertices, sk.min_source[w])) throw Error("InvalidSkeleton", {{"vertex", w}, {"reason", "minimal source outside the minimal set"}});
  }
  for (int v : sk.max_vertices)
    if (v < 0 || static_cast<std::size_t>(v) >= n || sk.max_source[v] != v) throw Error("InvalidSkeleton", {{"vertex", v}, {"reason", "maximal path not vertical"}});
  for (int v : sk.min_vertices)
    if (v < 0 || static_cast<std::size_t>(v) >= n || sk.min_source[v] != v) throw Error("InvalidSkeleton", {{"vertex", v}, {"reason", "minimal path not vertical"}});
}

void check_skeleton_against(const Skeleton& sk, const Matrix& f, int level) {
  check_skeleton(sk);
  if (f.rows() != sk.size() || f.cols() != sk.size()) throw Error("ShapeMismatch", {{"level", level}});
  for (std::size_t u = 0; u < sk.size(); ++u) {
    const int need_max = sk.max_source[u], need_min = sk.min_source[u];
    const BigInt& a = f(u, need_max);
    if (a < (need_max == need_min ? 2 : 1) || f(u, need_min) < 1)
      throw Error("InvalidSkeleton", {{"level", level}, {"vertex", u}, {"reason", "designated extremal edge missing"}});
  }
}

void check_sigma(const Skeleton& sk, const Sigma& sigma) {
  if (sigma.size() != sk.max_vertices.size()) throw Error("SigmaNotBijective", {{"reason", "domain"}});
  std::set<int> seen;
  for (const auto& [x, y] : sigma) {
    if (!contains(sk.max_vertices, x) || !contains(sk.min_vertices, y) || !seen.insert(y).second)
      throw Error("SigmaNotBijective", {{"from", x}, {"to", y}});
  }
}

Skeleton skeleton_of(const Diagram& d, const Ordering& w, int probe_depth) {
  if (!is_well_telescoped(d, w, probe_depth)) throw Error("NotWellTelescoped", {{"depth", probe_depth}});
  Skeleton sk;
  sk.max_source = max_sources(w, 2);
  sk.min_source = min_sources(w, 2);
  sk.max_vertices = sorted_image(sk.max_source);
  sk.min_vertices = sorted_image(sk.min_source);
  if (sk.max_vertices.size() != sk.min_vertices.size())
    throw Error("InvalidSkeleton", {{"reason", "unequal extremal counts"}, {"max", sk.max_vertices.size()}, {"min", sk.min_vertices.size()}});
  check_skeleton(sk);
  return sk;
}

Partitions partitions(const Skeleton& sk) {
  Partitions p;
  for (std::size_t w = 0; w < sk.size(); ++w) {
    p.by_max[sk.max_source[w]].push_back(static_cast<int>(w));
    p.by_min[sk.min_source[w]].push_back(static_cast<int>(w));
  }
  return p;
}

int AssociatedGraph::find(int min_vertex, int max_vertex) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].min_vertex == min_vertex && nodes[i].max_vertex == max_vertex) return static_cast<int>(i);
  return -1;
}

bool AssociatedGraph::has_loop(int node) const {
  const auto& out = edges[node];
  return std::find(out.begin(), out.end(), node) != out.end();
}

AssociatedGraph associated_graph(const Skeleton& sk, const Sigma& sigma) {
  check_skeleton(sk);
  check_sigma(sk, sigma);
  AssociatedGraph g;
  g.sigma = sigma;
  std::map<std::pair<int, int>, std::vector<int>> blocks;
  for (std::size_t w = 0; w < sk.size(); ++w) blocks[{sk.min_source[w], sk.max_source[w]}].push_back(static_cast<int>(w));
  g.node_of.assign(sk.size(), -1);
  for (const auto& [key, members] : blocks) {
    for (int w : members) g.node_of[w] = static_cast<int>(g.nodes.size());
    g.nodes.push_back({key.first, key.second, members});
  }
  g.edges.resize(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const int target = sigma.at(g.nodes[i].max_vertex);
    for (std::size_t j = 0; j < g.nodes.size(); ++j)
      if (g.nodes[j].min_vertex == target) g.edges[i].push_back(static_cast<int>(j));
  }
  return g;
}

std::string to_string(Connectivity c) {
  switch (c) {
    case Connectivity::Strong: return "strong";
    case Connectivity::Weak: return "weak";
    case Connectivity::Disconnected: return "disconnected";
  }
  return "disconnected";
}

bool strongly_connected(const AssociatedGraph& g, const std::vector<bool>& keep) {
  std::vector<int> index(g.nodes.size(), -1);
  int count = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    if (keep[i]) index[i] = count++;
  if (count <= 1) return true;
  Digraph h(count);
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    for (int j : g.edges[i])
      if (keep[i] && keep[j]) boost::add_edge(index[i], index[j], h);
  std::vector<int> comp(count);
  return boost::strong_components(h, comp.data()) == 1;
}

Connectivity connectivity(const AssociatedGraph& g) {
  if (strongly_connected(g, std::vector<bool>(g.nodes.size(), true))) return Connectivity::Strong;
  Undigraph h(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    for (int j : g.edges[i]) boost::add_edge(i, j, h);
  std::vector<int> comp(g.nodes.size());
  return boost::connected_components(h, comp.data()) == 1 ? Connectivity::Weak : Connectivity::Disconnected;
}

std::string to_dot(const AssociatedGraph& g, const std::vector<std::string>& labels) {
  std::ostringstream out;
  out << "digraph H {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    out << "  n" << i << " [label=\"[" << labels[n.min_vertex] << "," << labels[n.max_vertex] << "] {";
    for (std::size_t k = 0; k < n.members.size(); ++k) out << (k ? "," : "") << labels[n.members[k]];
    out << "}\"];\n";
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    for (int j : g.edges[i]) out << "  n" << i << " -> n" << j << ";\n";
  out << "}\n";
  return out.str();
}

BalanceReport balance_check(const Matrix& f, const Skeleton& sk, const Sigma& sigma) {
  check_sigma(sk, sigma);
  if (f.rows() != sk.size() || f.cols() != sk.size()) throw Error("ShapeMismatch", {{"rows", f.rows()}, {"skeleton", sk.size()}});
  BalanceReport r;
  for (std::size_t u = 0; u < f.rows(); ++u) {
    for (int vt : sk.max_vertices) {
      BalanceResidual res;
      res.u = static_cast<int>(u);
      res.max_vertex = vt;
      const int vb = sigma.at(vt);
      for (std::size_t w = 0; w < sk.size(); ++w) {
        if (sk.max_source[w] == vt) res.max_side += f(u, w) - (static_cast<int>(w) == sk.max_source[u] ? 1 : 0);
        if (sk.min_source[w] == vb) res.min_side += f(u, w) - (static_cast<int>(w) == sk.min_source[u] ? 1 : 0);
      }
      r.balanced = r.balanced && res.ok();
      r.table.push_back(std::move(res));
    }
  }
  return r;
}

BalanceReport balance_check(const Diagram& d, const Skeleton& sk, const Sigma& sigma, int n) {
  return balance_check(d.matrix(n), sk, sigma);
}

std::vector<BigInt> crossing_numbers(const Matrix& f, const Skeleton& sk, const AssociatedGraph& g, int u) {
  std::vector<BigInt> p(g.nodes.size());
  for (std::size_t w = 0; w < sk.size(); ++w)
    p[g.node_of[w]] += f(u, w) - (static_cast<int>(w) == sk.max_source[u] ? 1 : 0);
  return p;
}

bool positively_strongly_connected(const Matrix& f, const Skeleton& sk, const AssociatedGraph& g, int u) {
  const auto p = crossing_numbers(f, sk, g, u);
  std::vector<bool> keep(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) keep[i] = p[i] > 0;
  return strongly_connected(g, keep);
}

std::vector<bool> positively_strongly_connected(const Matrix& f, const Skeleton& sk, const AssociatedGraph& g) {
  std::vector<bool> out(f.rows());
  for (std::size_t u = 0; u < f.rows(); ++u) out[u] = positively_strongly_connected(f, sk, g, static_cast<int>(u));
  return out;
}

WordValidity validate_word(const Word& word, const Matrix& f, int u, const Skeleton& sk, const AssociatedGraph& g) {
  WordValidity v;
  std::vector<BigInt> counts(sk.size());
  bool in_range = !word.empty();
  for (int x : word) {
    if (x < 0 || static_cast<std::size_t>(x) >= sk.size()) {
      in_range = false;
      break;
    }
    counts[x] += 1;
  }
  if (!in_range) return v;
  v.multiset = true;
  for (std::size_t w = 0; w < sk.size(); ++w) v.multiset = v.multiset && counts[w] == f(u, w);
  v.endpoints = word.front() == sk.min_source[u] && word.back() == sk.max_source[u];
  v.adjacency = true;
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    v.adjacency = v.adjacency && g.sigma.at(sk.max_source[word[i]]) == sk.min_source[word[i + 1]];
  // Exits from each node: every position except the last one leaves its node.
  std::vector<BigInt> exits(g.nodes.size());
  for (std::size_t i = 0; i + 1 < word.size(); ++i) exits[g.node_of[word[i]]] += 1;
  v.eulerian = exits == crossing_numbers(f, sk, g, u);
  return v;
}

bool row_walk_feasible(const std::vector<long long>& counts, int u, const Skeleton& sk, const Sigma& sigma) {
  const LetterGraph lg = letter_graph(sk, sigma);
  const int first = sk.min_source[u], last = sk.max_source[u];
  if (std::accumulate(counts.begin(), counts.end(), 0LL) == 1) return first == last && counts[first] == 1;
  std::vector<long long> rest = counts;
  if (--rest[first] < 0 || --rest[last] < 0) return false;
  return trail_exists(lg, rest, lg.to[first], lg.from[last], sk.size());
}

Word synthesize_word(const Matrix& f, int u, const Skeleton& sk, const Sigma& sigma) {
  const LetterGraph lg = letter_graph(sk, sigma);
  const std::size_t n = sk.size();
  std::vector<long long> avail = row_counts(f, u);
  const int first = sk.min_source[u], last = sk.max_source[u];
  Word word{first};
  if (std::accumulate(avail.begin(), avail.end(), 0LL) == 1) {
    if (first != last || avail[first] != 1) throw Error("StuckPath", {{"u", u}, {"partial", word}});
    return word;
  }
  if (--avail[first] < 0 || --avail[last] < 0)
    throw Error("StuckPath", {{"u", u}, {"partial", word}, {"reason", "extremal letters missing"}});
  const int end = lg.from[last];
  long long remaining = std::accumulate(avail.begin(), avail.end(), 0LL);
  std::map<int, int> sigma_inv;
  for (const auto& [x, y] : sigma) sigma_inv[y] = x;

  while (remaining > 0) {
    const int at = lg.to[word.back()];
    // Preference order: letters of the looped node at `at` first, then the largest
    // remaining count, lowest index on ties.
    std::vector<int> cand;
    for (std::size_t w = 0; w < n; ++w)
      if (avail[w] > 0 && lg.from[w] == at) cand.push_back(static_cast<int>(w));
    const int looped_max = sigma_inv.count(at) ? sigma_inv[at] : -1;
    std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) {
      const bool la = sk.max_source[a] == looped_max, lb = sk.max_source[b] == looped_max;
      if (la != lb) return la;
      if (la) return a < b;
      if (avail[a] != avail[b]) return avail[a] > avail[b];
      return a < b;
    });
    bool placed = false;
    for (int w : cand) {
      --avail[w];
      if (trail_exists(lg, avail, lg.to[w], end, n)) {
        word.push_back(w);
        placed = true;
        break;
      }
      ++avail[w];
    }
    if (!placed) throw Error("StuckPath", {{"u", u}, {"partial", word}});
    --remaining;
  }
  if (lg.to[word.back()] != end) throw Error("StuckPath", {{"u", u}, {"partial", word}});
  word.push_back(last);
  return word;
}

Ordering synthesize_order(const Diagram& d, const Skeleton& sk, const Sigma& sigma, int horizon) {
  check_sigma(sk, sigma);
  const AssociatedGraph g = associated_graph(sk, sigma);
  const bool repeating = d.mode() != ScheduleMode::Explicit;
  const int levels = repeating ? d.period() : std::min(horizon, d.depth()) - 1;
  std::vector<LevelWords> out;
  for (int k = 0; k < levels; ++k) {
    const int n = k + 1;  // matrix F_n, words of level n + 1
    const Matrix& f = d.matrix(n);
    check_skeleton_against(sk, f, n);
    const BalanceReport bal = balance_check(f, sk, sigma);
    for (const auto& r : bal.table)
      if (!r.ok()) throw Error("BalanceViolated", {{"u", d.labels(n + 1)[r.u]}, {"max_vertex", d.labels(n)[r.max_vertex]}, {"level", n}});
    LevelWords ws(f.rows());
    for (std::size_t u = 0; u < f.rows(); ++u) {
      if (!positively_strongly_connected(f, sk, g, static_cast<int>(u)))
        throw Error("NotPositivelyStronglyConnected", {{"u", d.labels(n + 1)[u]}, {"level", n}});
      ws[u] = synthesize_word(f, static_cast<int>(u), sk, sigma);
    }
    out.push_back(std::move(ws));
  }
  if (repeating) return Ordering::periodic(std::move(out));
  return Ordering::explicit_levels(std::move(out));
}

bool CandidateAnalysis::passes() const {
  return balanced && rows_feasible && connectivity != Connectivity::Disconnected;
}

namespace {

bool eventually_positive(const Diagram& d) {
  Matrix acc = Matrix::identity(d.rank());
  for (int t = 0; t < static_cast<int>(d.rank() * d.rank()) + 2; ++t) {
    for (int n = 1; n <= d.period(); ++n) acc = (d.matrix(n) * acc).support();
    if (acc.positive()) return true;
  }
  return false;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      fn(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

EnumerationReport enumerate_skeletons(const Diagram& d, int k, long long max_candidates) {
  if (d.rank() > 8) throw Error("RankTooLarge", {{"rank", d.rank()}, {"limit", 8}});
  if (d.mode() == ScheduleMode::Explicit || !d.strict_rank())
    throw Error("NotRepeating", {{"reason", "enumeration needs a stationary or periodic schedule"}});
  const int n = static_cast<int>(d.rank());
  EnumerationReport rep;
  rep.k = k;
  rep.simple = eventually_positive(d);
  if (k < 1 || k > n) return rep;

  std::vector<Matrix> mats;
  for (int i = 1; i <= d.period(); ++i) mats.push_back(d.matrix(i));
  auto entry_min = [&](int r, int c) {
    BigInt m = mats[0](r, c);
    for (const auto& f : mats) m = std::min(m, f(r, c));
    return m;
  };

  for_each_subset(n, k, [&](const std::vector<int>& maxs) {
    for_each_subset(n, k, [&](const std::vector<int>& mins) {
      // Extremal vertices are fixed points of their own source map.
      for (int v : maxs)
        if (entry_min(v, v) < (contains(mins, v) ? 2 : 1)) return;
      for (int v : mins)
        if (entry_min(v, v) < 1) return;
      std::vector<std::vector<std::pair<int, int>>> options(n);
      long long combos = 1;
      for (int w = 0; w < n; ++w) {
        const std::vector<int> ms = contains(maxs, w) ? std::vector<int>{w} : maxs;
        const std::vector<int> ns = contains(mins, w) ? std::vector<int>{w} : mins;
        for (int a : ms)
          for (int b : ns)
            if (entry_min(w, a) >= (a == b ? 2 : 1) && entry_min(w, b) >= 1) options[w].emplace_back(a, b);
        if (options[w].empty()) return;
        combos *= static_cast<long long>(options[w].size());
        if (combos > max_candidates) throw Error("SearchTooLarge", {{"limit", max_candidates}});
      }
      std::vector<int> perm(mins);
      std::vector<int> pick(n, 0);
      Skeleton sk;
      sk.max_vertices = maxs;
      sk.min_vertices = mins;
      sk.max_source.assign(n, 0);
      sk.min_source.assign(n, 0);
      while (true) {
        for (int w = 0; w < n; ++w) std::tie(sk.max_source[w], sk.min_source[w]) = options[w][pick[w]];
        std::sort(perm.begin(), perm.end());
        do {
          if (++rep.candidates > max_candidates) throw Error("SearchTooLarge", {{"limit", max_candidates}});
          Sigma sigma;
          for (int i = 0; i < k; ++i) sigma[maxs[i]] = perm[i];
          CandidateAnalysis c;
          c.skeleton = sk;
          c.sigma = sigma;
          const AssociatedGraph g = associated_graph(sk, sigma);
          c.connectivity = connectivity(g);
          const bool connected_enough =
              rep.simple ? c.connectivity == Connectivity::Strong : c.connectivity != Connectivity::Disconnected;
          if (!connected_enough) {
            ++rep.structural_failures;
            continue;
          }
          c.balanced = true;
          c.rows_feasible = true;
          c.positively_connected = true;
          for (const auto& f : mats) {
            c.balanced = c.balanced && balance_check(f, sk, sigma).balanced;
            for (int u = 0; u < n && c.rows_feasible; ++u)
              c.rows_feasible = row_walk_feasible(row_counts(f, u), u, sk, sigma);
            for (int u = 0; u < n; ++u)
              c.positively_connected = c.positively_connected && positively_strongly_connected(f, sk, g, u);
          }
          if (!c.balanced || !c.rows_feasible) {
            ++rep.balance_failures;
            continue;
          }
          rep.passing.push_back(std::move(c));
        } while (std::next_permutation(perm.begin(), perm.end()));
        int w = 0;
        while (w < n && ++pick[w] == static_cast<int>(options[w].size())) pick[w++] = 0;
        if (w == n) break;
      }
    });
  });
  return rep;
}

MatrixClass matrix_class_checks(const Matrix& f) {
  MatrixClass mc;
  mc.square = f.square() && f.rows() > 0;
  if (!mc.square) return mc;
  const std::size_t n = f.rows();
  mc.f.resize(n);
  bool ok = true;
  for (std::size_t i = 0; i < n && ok; ++i) {
    // With one vertex the row is (f + 1).
    const BigInt base = n == 1 ? f(0, 0) - 1 : f(i, i == 0 ? 1 : 0);
    ok = base >= 1 && f(i, i) == base + 1;
    for (std::size_t j = 0; j < n && ok; ++j)
      if (j != i) ok = f(i, j) == base;
    mc.f[i] = base;
  }
  mc.in_class_m = ok;
  if (!ok) mc.f.clear();
  return mc;
}

bool in_class_d(const Diagram& d) {
  if (d.mode() == ScheduleMode::Explicit) {
    for (int n = 1; n < d.depth(); ++n)
      if (!matrix_class_checks(d.matrix(n)).in_class_m) return false;
    return true;
  }
  for (int n = 1; n <= d.period(); ++n)
    if (!matrix_class_checks(d.matrix(n)).in_class_m) return false;
  return true;
}

}  // namespace bratteli
