#pragma once

#include <map>
#include <set>
#include <utility>

#include "bratteli/ordering.hpp"

namespace bratteli {

// Bounded summary of a long word: every factor of length <= ell, plus the border
// letters needed to find factors that straddle a concatenation.
struct FactorSummary {
  std::size_t length = 0;  // saturates at ell
  Word prefix;             // first min(length, ell - 1) letters
  Word suffix;             // last min(length, ell - 1) letters
  std::set<Word> factors;

  static FactorSummary letter(int u, int ell);
  void append(const FactorSummary& next, int ell);
};

// Summaries of w(v, m, n) for every v in V_n, given those of w(., m, n - 1).
std::vector<FactorSummary> lift_summaries(const Diagram& d, const Ordering& w,
                                          const std::vector<FactorSummary>& below, int n, int ell);

struct LevelWindow {
  int m_lo = 1;
  int m_hi = 1;
  int n_hi = 2;
};

LevelWindow default_window(int horizon);

struct LanguageSample {
  LevelWindow window;
  int max_len = 0;
  std::set<Word> persistent;  // seen at every sampled n
  std::set<Word> sometimes;   // seen at some sampled n only
};

// Factors of w(v, m, n) for m in [m_lo, m_hi] and n in [m_hi + 1, n_hi].
LanguageSample language_sample(const Diagram& d, const Ordering& w, int max_len, LevelWindow window);

struct ExactLanguage {
  bool exact = false;  // false when the iteration cap was hit first
  int levels_scanned = 0;
  // Each factor with the (m, n) of its first sighting.
  std::map<Word, std::pair<int, int>> first_seen;
};

// All factors of length <= ell that appear in w(v, m, n) for infinitely many n.
// Needs repeating diagram and ordering. Each lower level m in one joint period is
// iterated until the border state repeats, after which no new factor can appear.
ExactLanguage exact_language(const Diagram& d, const Ordering& w, int ell, int max_iterations = 4096);

// Joint period of a repeating diagram and ordering.
int joint_period(const Diagram& d, const Ordering& w);

}  // namespace bratteli
