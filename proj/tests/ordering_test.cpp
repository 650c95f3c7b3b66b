#include <algorithm>

#include <gtest/gtest.h>

#include <bratteli/error.hpp>

#include "support.hpp"

using namespace bratteli;
using namespace bratteli::testing;

namespace {

// Every path from the root into v at level n, in increasing order.
std::vector<FinitePath> all_paths(const Diagram& d, const Ordering& w, int v, int n) {
  std::vector<FinitePath> out;
  if (n == 1) {
    for (long long r = 0; r < static_cast<long long>(d.top_row()[v]); ++r) {
      FinitePath p;
      p.edges = {{0, r}};
      p.range = v;
      out.push_back(p);
    }
    return out;
  }
  const Word& word = w.words(n)[v];
  std::map<int, long long> seen;
  for (int s : word) {
    const long long rank = seen[s]++;
    for (FinitePath p : all_paths(d, w, s, n - 1)) {
      p.edges.push_back({s, rank});
      p.range = v;
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace

TEST(Ordering, ComposedWordsFollowTheSubstitutions) {
  const Diagram d = load("language_telescoping");
  const Ordering w = load_order(d, "language_telescoping.ordering");
  EXPECT_EQ(text(d, order_word(d, w, 0, 2, 3)), "bab");
  EXPECT_EQ(text(d, order_word(d, w, 0, 1, 3)), "aabaabaaaba");
  EXPECT_EQ(order_word(d, w, 1, 1, 5), expand(w, 1, 1, 5));
}

TEST(Ordering, LexicographicImageComposesWords) {
  const Diagram d = load("language_telescoping");
  const Ordering w = load_order(d, "language_telescoping.ordering");
  const auto [t, tw] = lexicographic_image(d, w, {0, 1, 3, 5});
  EXPECT_EQ(t.matrix(1), Matrix::from_rows({{8, 3}, {10, 4}}));
  // the composed substitution read at the telescoped level
  EXPECT_EQ(text(t, tw.words(2)[0]), "aabaabaaaba");
  EXPECT_EQ(text(t, tw.words(2)[1]), "abaaabaaabaaba");
  const auto [u, uw] = lexicographic_image_uniform(d, w, 1, 2);
  EXPECT_EQ(uw.mode(), ScheduleMode::Stationary);
  EXPECT_EQ(uw.words(5), tw.words(2));
}

TEST(Ordering, ExtremalSourcesAreWordEnds) {
  const Diagram d = load("stationary_example_a");
  const Ordering w = load_order(d, "stationary_example_a.ordering");
  EXPECT_EQ(max_sources(w, 2), (std::vector<int>{0, 1, 1, 0}));
  EXPECT_EQ(min_sources(w, 2), (std::vector<int>{0, 1, 0, 1}));
  const ExtremalReport ex = extremal_paths(d, w, 12, 5);
  EXPECT_EQ(ex.max.count, 2);
  EXPECT_EQ(ex.min.count, 2);
  EXPECT_TRUE(ex.max.stabilized);
  EXPECT_TRUE(ex.max.vertical());
  EXPECT_EQ(ex.max.level1_vertices, (std::vector<int>{0, 1}));
}

TEST(Ordering, SuccessorMatchesEnumeration) {
  for (const auto& [dn, on] : std::vector<std::pair<std::string, std::string>>{
           {"stationary_example_a", "stationary_example_a.ordering"},
           {"looped_example", "looped_example.ordering"},
           {"language_telescoping", "language_telescoping.ordering"}}) {
    const Diagram d = load(dn);
    const Ordering w = load_order(d, on);
    for (std::size_t v = 0; v < d.size(4); ++v) {
      const auto paths = all_paths(d, w, static_cast<int>(v), 4);
      for (std::size_t i = 0; i + 1 < paths.size(); ++i) {
        ASSERT_EQ(successor(d, w, paths[i]), paths[i + 1]) << dn << " v=" << v << " i=" << i;
        ASSERT_EQ(associated_sequence(d, w, paths[i]).back().index, BigInt(i));
        ASSERT_EQ(path_at_index(d, w, static_cast<int>(v), 4, BigInt(i)), paths[i]);
      }
      EXPECT_THROW(successor(d, w, paths.back()), Error);
    }
  }
}

TEST(Ordering, RandomOrderingIsDeterministicAndValid) {
  const Diagram d = load("looped_example");
  const Ordering a = random_ordering(d, 42, 9);
  const Ordering b = random_ordering(d, 42, 9);
  EXPECT_EQ(a, b);
  EXPECT_NO_THROW(check_ordering(d, a));
  EXPECT_FALSE(a == random_ordering(d, 43, 9));
  // the word for (level, vertex) does not depend on the requested depth
  EXPECT_EQ(random_ordering(d, 42, 5).words(4), a.words(4));
}

TEST(Ordering, RejectsWrongLetterCounts) {
  const Diagram d = load("morse_example");
  EXPECT_THROW(check_ordering(d, Ordering::stationary({{0, 0}, {1, 0}})), Error);
}

TEST(Ordering, MaximalEdgeIsUniformOverEdges) {
  // the last letter of a random word is w with probability f_w / row sum
  const Matrix f = Matrix::from_rows({{3, 1, 2}});
  std::vector<int> hits(3, 0);
  const int trials = 6000;
  for (int s = 0; s < trials; ++s) ++hits[random_word(f, 0, static_cast<std::uint64_t>(s), 2).back()];
  EXPECT_NEAR(hits[0] / double(trials), 0.5, 0.03);
  EXPECT_NEAR(hits[1] / double(trials), 1.0 / 6, 0.03);
}
