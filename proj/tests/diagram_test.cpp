#include <random>

#include <gtest/gtest.h>

#include <bratteli/error.hpp>

#include "support.hpp"

using namespace bratteli;
using namespace bratteli::testing;

namespace {

Diagram random_explicit(std::mt19937_64& rng, int depth, int max_rank) {
  RawDiagram raw;
  raw.mode = ScheduleMode::Explicit;
  std::uniform_int_distribution<int> rank(1, max_rank), entry(0, 3);
  std::vector<int> sizes;
  for (int n = 0; n < depth; ++n) sizes.push_back(rank(rng));
  for (int n = 0; n < depth; ++n) {
    std::vector<std::string> ls;
    for (int i = 0; i < sizes[n]; ++i) ls.push_back("v" + std::to_string(i));
    raw.labels.push_back(ls);
  }
  for (int n = 0; n + 1 < depth; ++n) {
    Matrix f(sizes[n + 1], sizes[n]);
    // every entry positive keeps the diagram connected without zero rows or columns
    for (std::size_t r = 0; r < f.rows(); ++r)
      for (std::size_t c = 0; c < f.cols(); ++c) f(r, c) = 1 + entry(rng);
    raw.matrices.push_back(f);
  }
  raw.top_row.assign(sizes[0], 1);
  raw.depth = depth;
  return validate(raw);
}

}  // namespace

TEST(Diagram, PeriodicProductMatchesHandComputation) {
  const Diagram d = load("language_telescoping");
  EXPECT_EQ(product(d, 1, 3), Matrix::from_rows({{8, 3}, {10, 4}}));
  const Diagram t = telescope(d, {0, 1, 3, 5});
  EXPECT_EQ(t.matrix(1), Matrix::from_rows({{8, 3}, {10, 4}}));
  EXPECT_EQ(t.matrix(2), t.matrix(1));
}

TEST(Diagram, UniformTelescopingStaysStationary) {
  const Diagram d = load("language_telescoping");
  const Diagram t = telescope_uniform(d, 1, 2);
  EXPECT_EQ(t.mode(), ScheduleMode::Stationary);
  EXPECT_EQ(t.matrix(7), Matrix::from_rows({{8, 3}, {10, 4}}));
}

TEST(Diagram, HeightsCountRootPaths) {
  const Diagram d = load("morse_example");
  EXPECT_EQ(heights(d, 1), (std::vector<BigInt>{1, 1}));
  EXPECT_EQ(heights(d, 4), (std::vector<BigInt>{8, 8}));
  const Diagram big = load("summable_offdiagonal");
  // 2^n on the diagonal: heights grow past 64 bits by level 13
  BigInt total = 0;
  for (const auto& h : heights(big, 14)) total += h;
  EXPECT_GT(total, BigInt(std::numeric_limits<long long>::max()));
}

TEST(Diagram, TelescopingIsAssociative) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Diagram d = random_explicit(rng, 8, 3);
    const Diagram once = telescope(d, {0, 2, 5, 7});
    const Diagram twice = telescope(telescope(d, {0, 1, 2, 4, 5, 7}), {0, 2, 4, 5});
    EXPECT_EQ(once.matrix(1), twice.matrix(1));
    EXPECT_EQ(once.matrix(2), twice.matrix(2));
    EXPECT_EQ(once.top_row(), twice.top_row());
  }
}

TEST(Diagram, TelescopedHeightsAgree) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const Diagram d = random_explicit(rng, 9, 4);
    const std::vector<int> cuts{0, 1, 3, 4, 8};
    const Diagram t = telescope(d, cuts);
    for (std::size_t k = 1; k < cuts.size(); ++k) EXPECT_EQ(heights(t, static_cast<int>(k)), heights(d, cuts[k]));
  }
}

TEST(Diagram, ValidationErrors) {
  RawDiagram raw;
  raw.labels = {{"a", "b"}};
  raw.matrices = {Matrix::from_rows({{1, 1}, {0, 0}})};
  raw.top_row = {1, 1};
  try {
    validate(raw);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "ZeroRow");
  }
  raw.matrices = {Matrix::from_rows({{1, 0}, {1, 0}})};
  try {
    validate(raw);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "ZeroColumn");
  }
  raw.matrices = {Matrix::from_rows({{1, 0}, {0, 1}})};
  try {
    validate(raw);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "DisjointUnion");
  }
}

TEST(Diagram, ClassifiesBlockForm) {
  const Diagram d = load("corollary_1");
  const ClassificationReport r = classify(d, 6);
  ASSERT_TRUE(r.uniform.detected);
  EXPECT_EQ(r.uniform.minimal_components, (std::vector<std::vector<int>>{{0, 1}, {2, 3}, {4}}));
  EXPECT_EQ(r.uniform.c_block, (std::vector<int>{5, 6}));
  EXPECT_FALSE(r.simple_at_depth);
  EXPECT_EQ(r.rank_lower, 7u);
}

TEST(Diagram, SimpleDiagramHasNoBlockForm) {
  const ClassificationReport r = classify(load("stationary_example_a"), 6);
  EXPECT_TRUE(r.simple_at_depth);
  EXPECT_EQ(r.simple_level, 2);
}
