#include <gtest/gtest.h>

#include <bratteli/error.hpp>

#include "support.hpp"

using namespace bratteli;
using namespace bratteli::testing;

namespace {

struct Case {
  std::string diagram;
  std::string ordering;
  Status status;
};

const std::vector<Case> kCases{
    {"stationary_example_a", "stationary_example_a.ordering", Status::Perfect},
    {"looped_example", "looped_example.ordering", Status::Perfect},
    {"language_telescoping", "language_telescoping.ordering", Status::Perfect},
    {"morse_example", "morse_example.ordering_ab", Status::Imperfect},
    {"morse_example", "morse_example.ordering_ba", Status::Imperfect},
};

// The witness must be visible in the expanded words it points at.
void expect_witness_holds(const Diagram& d, const Ordering& w, const Witness& wit) {
  ASSERT_EQ(wit.partners.size(), wit.levels.size());
  for (std::size_t i = 0; i < wit.partners.size(); ++i) {
    const auto [m, n] = wit.levels[i];
    Word pair = wit.kind == "two_predecessors" ? Word{wit.partners[i], wit.vertex} : Word{wit.vertex, wit.partners[i]};
    bool seen = false;
    for (std::size_t v = 0; v < d.size(n) && !seen; ++v) seen = factors(expand(w, static_cast<int>(v), m, n), 2).count(pair) > 0;
    EXPECT_TRUE(seen) << wit.kind << " partner " << i;
  }
}

}  // namespace

TEST(Perfection, FixtureVerdicts) {
  for (const auto& c : kCases) {
    const Diagram d = load(c.diagram);
    const Ordering w = load_order(d, c.ordering);
    const PerfectionVerdict v = analyze_perfection(d, w, 12);
    EXPECT_EQ(v.status, c.status) << c.ordering;
    EXPECT_TRUE(v.exact);
    if (v.status == Status::Imperfect) {
      ASSERT_TRUE(v.witness.has_value());
      // levels refer to the well-telescoped diagram
      const WellTelescoped wt = well_telescope(d, w, 12);
      EXPECT_EQ(v.telescope_first, wt.first);
      EXPECT_EQ(v.telescope_step, wt.step);
      expect_witness_holds(wt.diagram, wt.ordering, *v.witness);
    }
  }
}

TEST(Perfection, StationaryExampleSigma) {
  const Diagram d = load("stationary_example_a");
  const PerfectionVerdict v = analyze_perfection(d, load_order(d, "stationary_example_a.ordering"), 10);
  EXPECT_EQ(v.sigma, (std::map<int, int>{{0, 0}, {1, 1}}));
}

TEST(Perfection, SuccessorSetsAreSingletonsExactlyWhenPerfect) {
  for (const auto& c : kCases) {
    const Diagram d = load(c.diagram);
    const Ordering w = load_order(d, c.ordering);
    EXPECT_EQ(succ_pred_sets(d, w, 12).all_singletons(), c.status == Status::Perfect) << c.ordering;
  }
}

TEST(Perfection, VerdictSurvivesTelescoping) {
  for (const auto& c : kCases) {
    const Diagram d = load(c.diagram);
    const Ordering w = load_order(d, c.ordering);
    for (const auto& cuts : std::vector<std::vector<int>>{{0, 1, 3, 5, 7, 9}, {0, 2, 4, 6, 8, 10}, {0, 1, 4, 7, 10}}) {
      const StabilityReport r = verify_telescoping_stability(d, w, cuts, 10);
      EXPECT_TRUE(r.stable()) << c.ordering << " " << to_string(r.before.status) << " -> " << to_string(r.after.status);
    }
  }
}

TEST(Perfection, NotWellTelescopedInputIsRejected) {
  const Diagram d = load("language_telescoping");
  const Ordering w = load_order(d, "language_telescoping.ordering");
  EXPECT_FALSE(is_well_telescoped(d, w, 12));
  EXPECT_THROW(check_perfect(d, w, 12), Error);
  const WellTelescoped wt = well_telescope(d, w, 12);
  EXPECT_EQ(wt.step % 2, 0);
}

TEST(Perfection, ExplicitScheduleIsNeverCertifiedPerfect) {
  const Diagram d = load("stationary_example_a");
  const Ordering w = load_order(d, "stationary_example_a.ordering");
  std::vector<LevelWords> levels(11, w.words(2));
  RawDiagram raw = d.raw();
  raw.mode = ScheduleMode::Explicit;
  raw.matrices.assign(11, d.matrix(1));
  raw.depth = 12;
  const Diagram e = validate(raw);
  const PerfectionVerdict v = check_perfect(e, Ordering::explicit_levels(levels), 12);
  EXPECT_NE(v.status, Status::Perfect);
  EXPECT_FALSE(v.exact);
}

TEST(Perfection, ExplicitImperfectionIsFound) {
  const Diagram d = load("morse_example");
  RawDiagram raw = d.raw();
  raw.mode = ScheduleMode::Explicit;
  raw.matrices.assign(15, d.matrix(1));
  raw.depth = 16;
  const Diagram e = validate(raw);
  const Ordering w = load_order(d, "morse_example.ordering_ab");
  const PerfectionVerdict v = check_perfect(e, Ordering::explicit_levels(std::vector<LevelWords>(15, w.words(2))), 16);
  EXPECT_EQ(v.status, Status::Imperfect);
  ASSERT_TRUE(v.witness.has_value());
}
