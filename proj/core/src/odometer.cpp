#include "bratteli/odometer.hpp"

#include <algorithm>
#include <numeric>

#include "bratteli/error.hpp"
#include "bratteli/perfection.hpp"

namespace bratteli {

namespace {

constexpr std::size_t kPrefixCap = std::size_t{1} << 18;
constexpr std::size_t kSampleCap = std::size_t{1} << 14;

bool factor_of_power(const Word& x, const Word& period) {
  const std::size_t p = period.size();
  for (std::size_t off = 0; off < p; ++off) {
    bool ok = true;
    for (std::size_t i = 0; i < x.size() && ok; ++i) ok = x[i] == period[(off + i) % p];
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::size_t minimal_period(const Word& w) {
  if (w.empty()) return 0;
  std::vector<std::size_t> border(w.size() + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    while (k > 0 && w[i] != w[k]) k = border[k];
    if (w[i] == w[k]) ++k;
    border[i + 1] = k;
  }
  return w.size() - border[w.size()];
}

bool is_primitive(const Word& w) {
  const std::size_t p = minimal_period(w);
  return !w.empty() && (p == w.size() || w.size() % p != 0);
}

SplitTable is_sigma_decomposable(const Word& w, const Skeleton& sk, const Sigma& sigma) {
  check_sigma(sk, sigma);
  SplitTable t;
  t.occurrences.assign(sk.size(), 0);
  for (int x : w) {
    if (x < 0 || static_cast<std::size_t>(x) >= sk.size()) {
      t.failure = "letter out of range";
      return t;
    }
    ++t.occurrences[x];
  }
  if (std::count(t.occurrences.begin(), t.occurrences.end(), 0) > 0) {
    t.failure = "missing letter";
    return t;
  }
  const std::size_t len = w.size();
  for (std::size_t i = 0; i < len; ++i) {
    const int x = w[i], y = w[(i + 1) % len];
    if (sigma.at(sk.max_source[x]) != sk.min_source[y]) {
      t.failure = "square is not a path of the associated graph";
      return t;
    }
  }
  for (const auto& [vt, vb] : sigma) {
    for (std::size_t i = 1; i <= len; ++i)
      if (w[i - 1] == vt && w[i % len] == vb) {
        t.split[vt] = static_cast<int>(i);
        break;
      }
    if (!t.split.count(vt)) {
      t.failure = "no split for a maximal vertex";
      return t;
    }
  }
  t.decomposable = true;
  return t;
}

OdometerRows odometer_order_rows(const Skeleton& sk, const Sigma& sigma, const Word& w,
                                 const std::vector<long long>& p_values) {
  const SplitTable t = is_sigma_decomposable(w, sk, sigma);
  if (!t.decomposable) throw Error("WordNotDecomposable", {{"reason", t.failure}});
  if (p_values.size() != sk.size()) throw Error("ShapeMismatch", {{"p_values", p_values.size()}, {"rank", sk.size()}});
  std::map<int, int> sigma_inv;
  for (const auto& [x, y] : sigma) sigma_inv[y] = x;

  OdometerRows out;
  out.matrix = Matrix(sk.size(), sk.size());
  out.words.resize(sk.size());
  for (std::size_t v = 0; v < sk.size(); ++v) {
    if (p_values[v] < 0) throw Error("NegativeEntry", {{"vertex", v}});
    const int vb = sk.min_source[v], vt = sk.max_source[v];
    const int s_start = t.split.at(sigma_inv.at(vb));
    Word& word = out.words[v];
    word.assign(w.begin() + s_start, w.end());
    for (long long k = 0; k < p_values[v]; ++k) word.insert(word.end(), w.begin(), w.end());
    word.insert(word.end(), w.begin(), w.begin() + t.split.at(vt));
    for (int x : word) out.matrix(v, x) += 1;
  }
  return out;
}

Skeleton identity_skeleton(std::size_t rank) {
  Skeleton sk;
  sk.max_source.resize(rank);
  std::iota(sk.max_source.begin(), sk.max_source.end(), 0);
  sk.min_source = sk.max_source;
  sk.max_vertices = sk.max_source;
  sk.min_vertices = sk.max_source;
  return sk;
}

Ordering d_extremal_construction(const Diagram& d, const Sigma& sigma) {
  if (!d.strict_rank()) throw Error("MatrixNotInClassM", {{"reason", "vertex set varies"}});
  const int n = static_cast<int>(d.rank());
  if (static_cast<int>(sigma.size()) != n) throw Error("SigmaNotCyclic", {{"reason", "sigma must cover every vertex"}});
  std::vector<int> next(n, -1);
  for (const auto& [x, y] : sigma) {
    if (x < 0 || x >= n || y < 0 || y >= n) throw Error("SigmaNotCyclic", {{"from", x}, {"to", y}});
    next[x] = y;
  }
  int steps = 0;
  for (int x = next[0]; x != 0 && steps <= n; x = next[x]) {
    if (x < 0) throw Error("SigmaNotCyclic", {{"reason", "not a permutation"}});
    ++steps;
  }
  if (steps + 1 != n) throw Error("SigmaNotCyclic", {{"cycle_length", steps + 1}, {"rank", n}});

  const int levels = d.mode() == ScheduleMode::Explicit ? d.depth() - 1 : d.period();
  std::vector<LevelWords> out;
  for (int k = 1; k <= levels; ++k) {
    const MatrixClass mc = matrix_class_checks(d.matrix(k));
    if (!mc.in_class_m) throw Error("MatrixNotInClassM", {{"level", k}});
    LevelWords ws(n);
    for (int j = 0; j < n; ++j) {
      Word cycle;
      for (int x = j, c = 0; c < n; x = next[x], ++c) cycle.push_back(x);
      const long long f = static_cast<long long>(mc.f[j]);
      for (long long r = 0; r < f; ++r) ws[j].insert(ws[j].end(), cycle.begin(), cycle.end());
      ws[j].push_back(j);
    }
    out.push_back(std::move(ws));
  }
  if (d.mode() == ScheduleMode::Explicit) return Ordering::explicit_levels(std::move(out));
  return Ordering::periodic(std::move(out));
}

PeriodicLanguage periodic_language_check(const Diagram& d, const Ordering& w, int horizon) {
  Diagram dd = d;
  Ordering ww = w;
  if (d.mode() != ScheduleMode::Explicit && w.mode() != ScheduleMode::Explicit) {
    WellTelescoped wt = well_telescope(d, w, horizon);
    const PerfectionVerdict v = check_perfect(wt.diagram, wt.ordering, horizon);
    if (v.status != Status::Perfect) throw Error("NotPerfect", {{"status", to_string(v.status)}});
    dd = std::move(wt.diagram);
    ww = std::move(wt.ordering);
  } else {
    const PerfectionVerdict v = check_perfect(d, w, horizon);
    if (v.status == Status::Imperfect) throw Error("NotPerfect", {{"status", to_string(v.status)}});
  }
  const int top = std::min(horizon, joint_max_level(dd, ww));
  PeriodicLanguage out;
  out.horizon = top;
  if (top < 2) {
    out.note = "horizon too small";
    return out;
  }

  // Words w(vb, 1, n) along a vertical minimal path are prefixes of each other.
  const std::vector<int> mins = min_sources(ww, 2);
  const int vb = *std::min_element(mins.begin(), mins.end());
  Word prefix{vb};
  for (int n = 2; n <= top; ++n) {
    Word next = order_word(dd, ww, vb, 1, n, kPrefixCap * 64);
    if (next.size() > kPrefixCap) break;
    prefix = std::move(next);
  }
  const std::size_t p = minimal_period(prefix);
  if (prefix.size() < 2 * p) {
    out.note = "prefix shorter than two periods";
    out.failure_level = top;
    return out;
  }
  const Word period(prefix.begin(), prefix.begin() + static_cast<long>(p));

  for (int m = 1; m < top; ++m) {
    std::vector<Word> cur(dd.size(m));
    for (std::size_t v = 0; v < cur.size(); ++v) cur[v] = {static_cast<int>(v)};
    for (int n = m + 1; n <= top; ++n) {
      const LevelWords& ws = ww.words(n);
      std::vector<Word> next(ws.size());
      bool too_long = false;
      for (std::size_t v = 0; v < ws.size() && !too_long; ++v) {
        for (int u : ws[v]) next[v].insert(next[v].end(), cur[u].begin(), cur[u].end());
        too_long = next[v].size() > kSampleCap;
      }
      if (too_long) break;
      for (const Word& x : next)
        if (!factor_of_power(x, period)) {
          out.failure_level = n;
          out.note = "sampled word is not a factor of the periodic word";
          return out;
        }
      cur = std::move(next);
    }
  }
  out.periodic = true;
  out.word = period;
  return out;
}

TowerCounts tower_counts(const Diagram& d, int n_max) {
  TowerCounts t;
  std::vector<BigInt> h = d.top_row();
  t.law_holds = true;
  for (int n = 1; n <= n_max; ++n) {
    BigInt total = 0;
    for (const auto& x : h) total += x;
    t.counts.push_back(total);
    if (n == n_max) break;
    const Matrix& f = d.matrix(n);
    const MatrixClass mc = matrix_class_checks(f);
    BigInt expected = 0;
    if (mc.in_class_m) {
      expected = 1;
      for (const auto& x : mc.f) expected += x;
    } else {
      t.law_holds = false;
    }
    t.expected.push_back(expected);
    h = f.apply(h);
  }
  for (std::size_t i = 0; i + 1 < t.counts.size(); ++i) {
    t.ratios.emplace_back(Rational(t.counts[i + 1], t.counts[i]));
    if (t.ratios.back() != Rational(t.expected[i])) t.law_holds = false;
  }
  return t;
}

}  // namespace bratteli
