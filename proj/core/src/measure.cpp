#include "bratteli/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "bratteli/error.hpp"
#include "bratteli/ordering.hpp"
#include "bratteli/perfection.hpp"

namespace bratteli {

namespace {

constexpr std::size_t kExactRankLimit = 5;

// Class label per vertex, relabelled in order of first appearance.
using Partition = std::vector<int>;

Partition canonical(const std::vector<int>& labels) {
  std::map<int, int> rename;
  Partition p(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = rename.emplace(labels[i], static_cast<int>(rename.size())).first;
    p[i] = it->second;
  }
  return p;
}

int classes(const Partition& p) { return p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1; }

void check_levels(const Diagram& d, int k, int n) {
  if (k < 1 || n <= k) throw Error("LevelOutOfRange", {{"from", k}, {"to", n}});
  if (d.mode() == ScheduleMode::Explicit && n > d.depth()) throw Error("LevelOutOfRange", {{"level", n}, {"depth", d.depth()}});
}

// Level-k image size of the maximal-edge composite from level n, for one sample.
int sampled_image_size(const Diagram& d, int k, int n, std::uint64_t seed) {
  std::vector<int> cur(d.size(n));
  for (std::size_t v = 0; v < cur.size(); ++v) cur[v] = static_cast<int>(v);
  for (int level = n; level > k; --level) {
    const Matrix& f = d.matrix(level - 1);
    std::vector<int> source(f.rows());
    for (std::size_t v = 0; v < f.rows(); ++v) source[v] = random_word(f, static_cast<int>(v), seed, level).back();
    for (int& x : cur) x = source[x];
  }
  return static_cast<int>(std::set<int>(cur.begin(), cur.end()).size());
}

double to_double(const Rational& r) { return static_cast<double>(r); }

}  // namespace

void parallel_for(long long count, int threads, const std::function<void(long long)>& body) {
  threads = std::max(1, threads);
  if (threads == 1 || count < 2) {
    for (long long i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (long long i = t; i < count; i += threads) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<std::vector<Rational>> markov_matrix(const Matrix& f) {
  std::vector<std::vector<Rational>> m(f.rows(), std::vector<Rational>(f.cols()));
  for (std::size_t r = 0; r < f.rows(); ++r) {
    const BigInt s = f.row_sum(r);
    for (std::size_t c = 0; c < f.cols(); ++c) m[r][c] = Rational(f(r, c), s);
  }
  return m;
}

std::vector<std::vector<Rational>> composed_markov(const Diagram& d, int a, int b) {
  std::vector<std::vector<Rational>> acc(d.size(a), std::vector<Rational>(d.size(a)));
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i][i] = 1;
  for (int n = a; n < b; ++n) {
    const auto m = markov_matrix(d.matrix(n));
    std::vector<std::vector<Rational>> next(m.size(), std::vector<Rational>(acc[0].size()));
    for (std::size_t r = 0; r < m.size(); ++r)
      for (std::size_t k = 0; k < m[r].size(); ++k) {
        if (m[r][k] == 0) continue;
        for (std::size_t c = 0; c < acc[k].size(); ++c) next[r][c] += m[r][k] * acc[k][c];
      }
    acc = std::move(next);
  }
  return acc;
}

std::vector<Rational> exact_G_distribution(const Diagram& d, int k, int n) {
  check_levels(d, k, n);
  for (int m = k; m <= n; ++m)
    if (d.size(m) > kExactRankLimit) throw Error("RankTooLarge", {{"rank", d.size(m)}, {"limit", kExactRankLimit}});

  std::map<Partition, Rational> dist;
  Partition start(d.size(k));
  for (std::size_t i = 0; i < start.size(); ++i) start[i] = static_cast<int>(i);
  dist[start] = 1;

  for (int m = k; m < n; ++m) {
    const auto mk = markov_matrix(d.matrix(m));
    const std::size_t rows = mk.size();
    std::map<Partition, Rational> next;
    for (const auto& [part, mass] : dist) {
      const int c = classes(part);
      // Probability that vertex v of level m + 1 draws its maximal edge from class j.
      std::vector<std::vector<Rational>> pc(rows, std::vector<Rational>(c));
      for (std::size_t v = 0; v < rows; ++v)
        for (std::size_t w = 0; w < part.size(); ++w) pc[v][part[w]] += mk[v][w];
      std::vector<int> pick(rows, 0);
      while (true) {
        Rational p = mass;
        for (std::size_t v = 0; v < rows && p != 0; ++v) p *= pc[v][pick[v]];
        if (p != 0) next[canonical(pick)] += p;
        std::size_t v = 0;
        while (v < rows && ++pick[v] == c) pick[v++] = 0;
        if (v == rows) break;
      }
    }
    dist = std::move(next);
  }

  std::vector<Rational> out(d.size(k) + 1);
  for (const auto& [part, mass] : dist) out[classes(part)] += mass;
  return out;
}

Rational exact_G_probability(const Diagram& d, int k, int n, int j) {
  const auto dist = exact_G_distribution(d, k, n);
  if (j < 0 || static_cast<std::size_t>(j) >= dist.size()) return 0;
  return dist[j];
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x5eedu};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

double Frequency::sigma() const {
  if (samples == 0) return 0.0;
  const double p = estimate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
}

std::pair<double, double> Frequency::wilson95() const {
  if (samples == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(samples);
  const double p = estimate();
  const double denom = 1.0 + z * z / nn;
  const double centre = (p + z * z / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Frequency monte_carlo_G(const Diagram& d, int k, int n, int j, long long samples, std::uint64_t seed, int threads) {
  check_levels(d, k, n);
  std::vector<char> hit(samples, 0);
  parallel_for(samples, threads, [&](long long i) {
    hit[i] = sampled_image_size(d, k, n, sample_seed(seed, static_cast<std::uint64_t>(i))) == j;
  });
  Frequency f;
  f.samples = samples;
  f.hits = std::count(hit.begin(), hit.end(), 1);
  return f;
}

GenericJReport estimate_generic_j(const Diagram& d, int depth, long long samples, int window, std::uint64_t seed,
                                  int threads) {
  GenericJReport r;
  r.depth = depth;
  r.window = window;
  r.samples = samples;
  r.seed = seed;
  std::vector<int> jmax(samples, 0), jmin(samples, 0);  // 0 marks "not stabilized"
  parallel_for(samples, threads, [&](long long i) {
    const Ordering w = random_ordering(d, sample_seed(seed, static_cast<std::uint64_t>(i)), depth);
    const ExtremalReport ex = extremal_paths(d, w, depth, window);
    jmax[i] = ex.max.stabilized ? ex.max.count : 0;
    jmin[i] = ex.min.stabilized ? ex.min.count : 0;
  });
  for (long long i = 0; i < samples; ++i) {
    if (jmax[i]) ++r.max_histogram[jmax[i]]; else ++r.max_unstabilized;
    if (jmin[i]) ++r.min_histogram[jmin[i]]; else ++r.min_unstabilized;
  }
  auto modal = [](const std::map<int, long long>& h) {
    int best = 0;
    long long count = -1;
    for (const auto& [j, c] : h)
      if (c > count) best = j, count = c;
    return std::make_pair(best, std::max(0LL, count));
  };
  const auto [a, ca] = modal(r.max_histogram);
  const auto [b, cb] = modal(r.min_histogram);
  r.j_max = a;
  r.j_min = b;
  r.max_modal = {ca, samples};
  r.min_modal = {cb, samples};
  return r;
}

DivergenceReport divergence_diagnostic(const Diagram& d, int j, const std::vector<int>& levels, long long samples,
                                       std::uint64_t seed, bool exact_only, int threads) {
  if (levels.size() < 2) throw Error("InvalidCuts", {{"reason", "need at least two levels"}});
  DivergenceReport r;
  r.j = j;
  r.all_exact = true;
  double running = 0.0;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    DivergenceTerm t;
    t.from = levels[i];
    t.to = levels[i + 1];
    bool small = true;
    for (int m = t.from; m <= t.to; ++m) small = small && d.size(m) <= kExactRankLimit;
    if (small || exact_only) {
      t.exact = true;
      t.value = exact_G_probability(d, t.from, t.to, j);
      t.estimate = to_double(t.value);
      r.exact_partial_sum += t.value;
    } else {
      const Frequency f = monte_carlo_G(d, t.from, t.to, j, samples, sample_seed(seed, i), threads);
      t.estimate = f.estimate();
      t.sigma = f.sigma();
      r.all_exact = false;
    }
    running += t.estimate;
    t.partial_sum = running;
    r.terms.push_back(std::move(t));
  }
  const double n = static_cast<double>(r.terms.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    const double x = static_cast<double>(i + 1), y = r.terms[i].partial_sum;
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  r.slope = den != 0 ? (n * sxy - sx * sy) / den : 0.0;
  r.intercept = (sy - r.slope * sx) / n;
  return r;
}

GenericOneReport generic_one_check(const Diagram& d, const Rational& epsilon, int depth) {
  GenericOneReport r;
  r.epsilon = epsilon;
  r.depth = depth;
  if (d.mode() == ScheduleMode::Explicit && depth > d.depth()) throw Error("LevelOutOfRange", {{"level", depth}});
  int from = 1;
  while (from < depth) {
    bool found = false;
    std::vector<std::vector<Rational>> acc;
    for (int to = from + 1; to <= depth && !found; ++to) {
      acc = composed_markov(d, from, to);
      for (std::size_t c = 0; c < acc[0].size() && !found; ++c) {
        Rational lo = acc[0][c];
        for (const auto& row : acc) lo = std::min(lo, row[c]);
        if (lo >= epsilon) {
          r.witnesses.push_back({from, to, static_cast<int>(c), lo});
          from = to;
          found = true;
        }
      }
    }
    if (!found) break;
  }
  r.reached_depth = from >= depth;
  return r;
}

ImperfectionReport imperfection_genericity_experiment(const Diagram& d, long long samples, int depth, int horizon,
                                                      std::uint64_t seed, int q, int threads) {
  ImperfectionReport r;
  r.samples = samples;
  r.q = q;
  // 0 = unstabilized, 1 = at most q pairs, 2 = imperfect, 3 = inconclusive, 4 = perfect
  std::vector<int> outcome(samples, 0);
  const int window = std::max(2, depth / 4);
  parallel_for(samples, threads, [&](long long i) {
    const Ordering w = random_ordering(d, sample_seed(seed, static_cast<std::uint64_t>(i)), depth);
    const ExtremalReport ex = extremal_paths(d, w, depth, window);
    if (!ex.max.stabilized || !ex.min.stabilized) return;
    if (ex.max.count <= q && ex.min.count <= q) {
      outcome[i] = 1;
      return;
    }
    const PerfectionVerdict v = check_perfect(d, w, std::min(horizon, depth));
    outcome[i] = v.status == Status::Imperfect ? 2 : v.status == Status::Inconclusive ? 3 : 4;
  });
  for (int o : outcome) {
    if (o >= 1) ++r.stabilized;
    if (o >= 2) ++r.above_q;
    if (o == 2) ++r.imperfect;
    if (o == 3) ++r.inconclusive;
  }
  r.imperfect_fraction = {r.imperfect, r.above_q};
  return r;
}

}  // namespace bratteli
