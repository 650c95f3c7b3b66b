#include <random>

#include <gtest/gtest.h>

#include <bratteli/error.hpp>

#include "support.hpp"

using namespace bratteli;
using namespace bratteli::testing;

namespace {

std::size_t brute_period(const Word& w) {
  for (std::size_t p = 1; p <= w.size(); ++p) {
    bool ok = true;
    for (std::size_t i = p; i < w.size() && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return p;
  }
  return w.size();
}

bool brute_primitive(const Word& w) {
  for (std::size_t p = 1; p < w.size(); ++p) {
    if (w.size() % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < w.size() && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return false;
  }
  return !w.empty();
}

Sigma cyclic(int rank) {
  Sigma s;
  for (int i = 0; i < rank; ++i) s[i] = (i + 1) % rank;
  return s;
}

}  // namespace

TEST(Odometer, PeriodAndPrimitivityMatchBruteForce) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 2000; ++t) {
    Word w(1 + rng() % 12);
    for (int& x : w) x = static_cast<int>(rng() % 2);
    ASSERT_EQ(minimal_period(w), brute_period(w));
    ASSERT_EQ(is_primitive(w), brute_primitive(w));
  }
}

TEST(Odometer, ExtremalConstructionWords) {
  const Diagram d2 = load("d_max_min_paths_d2");
  const Ordering w2 = d_extremal_construction(d2, cyclic(2));
  EXPECT_EQ(text(d2, w2.words(2)[0]), "aba");
  EXPECT_EQ(text(d2, w2.words(2)[1]), "bab");
  const Diagram d3 = load("d_max_min_paths_d3");
  const Ordering w3 = d_extremal_construction(d3, cyclic(3));
  EXPECT_EQ(text(d3, w3.words(2)[0]), "abca");
  EXPECT_EQ(text(d3, w3.words(2)[2]), "cabcabcabc");
}

TEST(Odometer, ExtremalConstructionIsPerfectAndPeriodic) {
  for (const std::string name : {"d_max_min_paths_d2", "d_max_min_paths_d3"}) {
    const Diagram d = load(name);
    const int r = static_cast<int>(d.rank());
    const Ordering w = d_extremal_construction(d, cyclic(r));
    const PerfectionVerdict v = analyze_perfection(d, w, 10);
    EXPECT_EQ(v.status, Status::Perfect);
    EXPECT_EQ(v.sigma, cyclic(r));
    const PeriodicLanguage p = periodic_language_check(d, w, 10);
    ASSERT_TRUE(p.periodic) << p.note;
    EXPECT_TRUE(is_primitive(p.word));
    EXPECT_EQ(p.word.size(), static_cast<std::size_t>(r));
  }
}

TEST(Odometer, NonCyclicSigmaRejected) {
  const Diagram d = load("d_max_min_paths_d3");
  try {
    d_extremal_construction(d, {{0, 1}, {1, 0}, {2, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "SigmaNotCyclic");
  }
  EXPECT_THROW(d_extremal_construction(load("looped_example"), cyclic(3)), Error);
}

TEST(Odometer, TowerCountsMultiply) {
  const TowerCounts t = tower_counts(load("d_max_min_paths_d3"), 8);
  EXPECT_TRUE(t.law_holds);
  EXPECT_EQ(t.counts[0], BigInt(3));
  EXPECT_EQ(t.counts[1], BigInt(21));
  for (const auto& r : t.ratios) EXPECT_EQ(r, Rational(7));
  EXPECT_FALSE(tower_counts(load("looped_example"), 4).law_holds);
}

TEST(Odometer, SigmaDecomposableWords) {
  // a_1..a_3 extremal with sigma cyclic, a_4 in [a_1, a_3]
  const int n = 3;
  Skeleton sk;
  sk.max_vertices = {0, 1, 2};
  sk.min_vertices = {0, 1, 2};
  sk.max_source = {0, 1, 2, 2};
  sk.min_source = {0, 1, 2, 0};
  const Sigma sigma = cyclic(n);
  // starts at a_i, ends at sigma^-1(a_i), contains every letter
  const std::vector<Word> good{{0, 1, 2, 3, 0, 1, 2}, {1, 2, 3, 0, 1, 2, 0}, {2, 3, 0, 1, 2, 0, 1}};
  for (const Word& w : good) {
    const SplitTable t = is_sigma_decomposable(w, sk, sigma);
    EXPECT_TRUE(t.decomposable) << t.failure;
  }
  EXPECT_FALSE(is_sigma_decomposable({0, 2, 3, 1}, sk, sigma).decomposable);
  EXPECT_FALSE(is_sigma_decomposable({0, 1, 2}, sk, sigma).decomposable);
}

TEST(Odometer, OrderRowsFromDecomposableWord) {
  const Skeleton sk = identity_skeleton(2);
  const Sigma sigma{{0, 1}, {1, 0}};
  const OdometerRows rows = odometer_order_rows(sk, sigma, {0, 1}, {1, 1});
  for (std::size_t v = 0; v < 2; ++v) {
    const Word& w = rows.words[v];
    EXPECT_EQ(w.front(), sk.min_source[v]);
    EXPECT_EQ(w.back(), sk.max_source[v]);
  }
  EXPECT_TRUE(matrix_class_checks(rows.matrix).in_class_m);
}

TEST(Odometer, ImperfectOrderingRejected) {
  const Diagram d = load("morse_example");
  try {
    periodic_language_check(d, load_order(d, "morse_example.ordering_ab"), 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "NotPerfect");
  }
}
