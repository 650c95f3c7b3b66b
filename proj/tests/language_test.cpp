#include <gtest/gtest.h>

#include "support.hpp"

using namespace bratteli;
using namespace bratteli::testing;

namespace {

std::set<std::string> as_text(const Diagram& d, const std::set<Word>& ws, std::size_t len) {
  std::set<std::string> out;
  for (const auto& w : ws)
    if (w.size() == len) out.insert(text(d, w));
  return out;
}

std::set<Word> exact_words(const ExactLanguage& l, std::size_t len) {
  std::set<Word> out;
  for (const auto& [w, _] : l.first_seen)
    if (w.size() == len) out.insert(w);
  return out;
}

}  // namespace

TEST(Language, StationaryExamplePairs) {
  const Diagram d = load("stationary_example_a");
  const Ordering w = load_order(d, "stationary_example_a.ordering");
  const std::set<std::string> expected{"aa", "ac", "bb", "bd", "cb", "cd", "da", "dc"};
  EXPECT_EQ(as_text(d, language_sample(d, w, 2, default_window(10)).persistent, 2), expected);
  const ExactLanguage exact = exact_language(d, w, 2);
  EXPECT_TRUE(exact.exact);
  EXPECT_EQ(as_text(d, exact_words(exact, 2), 2), expected);
}

TEST(Language, SummariesAgreeWithExpandedWords) {
  for (const auto& [dn, on] : std::vector<std::pair<std::string, std::string>>{
           {"stationary_example_a", "stationary_example_a.ordering"},
           {"looped_example", "looped_example.ordering"},
           {"language_telescoping", "language_telescoping.ordering"},
           {"morse_example", "morse_example.ordering_ab"}}) {
    const Diagram d = load(dn);
    const Ordering w = load_order(d, on);
    for (int ell = 1; ell <= 4; ++ell) {
      std::vector<FactorSummary> cur;
      for (std::size_t v = 0; v < d.size(1); ++v) cur.push_back(FactorSummary::letter(static_cast<int>(v), ell));
      for (int n = 2; n <= 5; ++n) {
        cur = lift_summaries(d, w, cur, n, ell);
        for (std::size_t v = 0; v < cur.size(); ++v) {
          const Word full = expand(w, static_cast<int>(v), 1, n);
          std::set<Word> brute;
          for (std::size_t len = 1; len <= static_cast<std::size_t>(ell); ++len)
            for (const auto& f : factors(full, len)) brute.insert(f);
          ASSERT_EQ(cur[v].factors, brute) << dn << " ell=" << ell << " n=" << n;
        }
      }
    }
  }
}

TEST(Language, ExactScanMatchesBruteForcePersistence) {
  for (const auto& [dn, on] : std::vector<std::pair<std::string, std::string>>{
           {"stationary_example_a", "stationary_example_a.ordering"},
           {"looped_example", "looped_example.ordering"},
           {"language_telescoping", "language_telescoping.ordering"},
           {"morse_example", "morse_example.ordering_ba"}}) {
    const Diagram d = load(dn);
    const Ordering w = load_order(d, on);
    EXPECT_EQ(exact_words(exact_language(d, w, 2), 2), persistent_pairs(d, w, 3, 6, 8)) << dn;
  }
}

TEST(Language, TelescopingCanShrinkTheLanguage) {
  const Diagram d = load("language_telescoping");
  const Ordering w = load_order(d, "language_telescoping.ordering");
  EXPECT_EQ(as_text(d, exact_words(exact_language(d, w, 2), 2), 2), (std::set<std::string>{"aa", "ab", "ba", "bb"}));
  const auto [t, tw] = lexicographic_image_uniform(d, w, 1, 2);
  EXPECT_EQ(as_text(t, exact_words(exact_language(t, tw, 2), 2), 2), (std::set<std::string>{"aa", "ab", "ba"}));
}

TEST(Language, JointPeriod) {
  const Diagram d = load("language_telescoping");
  EXPECT_EQ(joint_period(d, load_order(d, "language_telescoping.ordering")), 2);
}
