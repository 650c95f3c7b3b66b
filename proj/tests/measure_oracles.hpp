#pragma once

#include <set>
#include <utility>
#include <vector>

#include <bratteli/diagram.hpp>

namespace bratteli::testing {

// Sums over every joint choice of maximal-edge source, one per vertex of levels k+1..n,
// weighted by f_{v,s} / (row sum of v).
inline std::vector<Rational> brute_force_G(const Diagram& d, int k, int n) {
  std::vector<std::pair<int, int>> slots;  // (level, vertex)
  for (int m = k + 1; m <= n; ++m)
    for (std::size_t v = 0; v < d.size(m); ++v) slots.emplace_back(m, static_cast<int>(v));
  std::vector<int> choice(slots.size(), 0);
  std::vector<Rational> out(d.size(k) + 1);
  while (true) {
    Rational p = 1;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const Matrix& f = d.matrix(slots[i].first - 1);
      p *= Rational(f(slots[i].second, choice[i]), f.row_sum(slots[i].second));
    }
    if (p != 0) {
      std::set<int> image;
      for (std::size_t v = 0; v < d.size(n); ++v) {
        int x = static_cast<int>(v);
        for (int m = n; m > k; --m) {
          std::size_t idx = 0;
          while (slots[idx] != std::make_pair(m, x)) ++idx;
          x = choice[idx];
        }
        image.insert(x);
      }
      out[image.size()] += p;
    }
    std::size_t i = 0;
    while (i < slots.size() && ++choice[i] == static_cast<int>(d.size(slots[i].first - 1))) choice[i++] = 0;
    if (i == slots.size()) break;
  }
  return out;
}

// Morse only: every vertex orders its two edges in one of two ways; count orderings
// (not source choices) whose maximal paths from level n meet at level k.
inline Rational morse_orderings_oracle(int levels) {
  const int slots = 2 * levels;
  int good = 0;
  for (int mask = 0; mask < (1 << slots); ++mask) {
    // bit set: word "ba", so the maximal edge comes from a; clear: "ab", from b
    std::set<int> image;
    for (int v = 0; v < 2; ++v) {
      int x = v;
      for (int m = levels - 1; m >= 0; --m) x = (mask >> (2 * m + x)) & 1 ? 0 : 1;
      image.insert(x);
    }
    good += image.size() == 1;
  }
  return Rational(good, 1 << slots);
}

}  // namespace bratteli::testing
