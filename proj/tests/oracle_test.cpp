#include "flsched/oracle.hpp"

#include <gtest/gtest.h>

#include "flsched/schedulers.hpp"
#include "test_support.hpp"

using namespace flsched;
using flsched::fixtures::overshoot_instance;
using flsched::fixtures::resource;

TEST(DpOptimal, OvershootInstance) {
  const auto opt = dp_optimal(overshoot_instance());
  EXPECT_EQ(opt.makespan, 1.0);
  // (1,2) and (2,1) both reach 1; the lexicographically smaller one is returned.
  EXPECT_EQ(opt.assignment.counts, (std::vector<TaskCount>{1, 2}));
}

TEST(DpOptimal, ForcedAssignment) {
  Instance inst(5, {resource({0, 1, 2, 3, 4, 5}, 2, 4), resource({0, 3, 6, 9, 12, 15}, 3, 5)});
  const auto opt = dp_optimal(inst);
  EXPECT_EQ(opt.makespan, 9.0);
  EXPECT_EQ(opt.assignment.counts, (std::vector<TaskCount>{2, 3}));
}

TEST(DpOptimal, SingleResource) {
  Instance inst(3, {resource({1, 2, 4, 8}, 0, 3)});
  EXPECT_EQ(dp_optimal(inst).makespan, 8.0);
}

TEST(DpOptimal, InfeasibleThrows) {
  Instance inst(4, {resource({0, 1, 2, 3, 4}, 0, 1), resource({0, 1, 2, 3, 4}, 0, 2)});
  EXPECT_THROW(dp_optimal(inst), ScheduleError);
}

TEST(EnumerateOptimal, OvershootInstance) {
  EXPECT_EQ(enumerate_optimal(overshoot_instance()), 1.0);
}

TEST(EnumerateOptimal, EmptyWorkload) {
  Instance inst(0, {resource({2}, 0, 0), resource({5}, 0, 0), resource({3}, 0, 0)});
  EXPECT_EQ(enumerate_optimal(inst), 5.0);
}

TEST(EnumerateOptimal, ScaleGuard) {
  std::vector<double> c(14, 1.0);
  Instance big_t(13, {resource(c, 0, 13)});
  EXPECT_THROW(enumerate_optimal(big_t), ScheduleError);
  std::vector<Resource> five(5, resource({0, 1}, 0, 1));
  EXPECT_THROW(enumerate_optimal(Instance(1, five)), ScheduleError);
}

TEST(Oracles, AgreeOnRandomTinyInstances) {
  RngState rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    const auto tiny = fixtures::random_tiny(rng, kAllGroups[rng.index(5)], rng.index(2) == 1);
    const Instance& inst = tiny.instance;
    const auto dp = dp_optimal(inst);
    EXPECT_EQ(dp.makespan, enumerate_optimal(inst));
    EXPECT_TRUE(validate(inst, dp.assignment).ok());
    EXPECT_EQ(makespan(inst, dp.assignment), dp.makespan);
  }
}

TEST(Oracles, ReconstructionIsLexicographicallySmallest) {
  // Brute force over all compositions for the smallest optimal vector.
  RngState rng(612);
  for (int trial = 0; trial < 200; ++trial) {
    const auto tiny = fixtures::random_tiny(rng, Group::Linear, true, 3, 8);
    const Instance& inst = tiny.instance;
    const auto dp = dp_optimal(inst);
    std::vector<TaskCount> counts(inst.size()), smallest;
    auto walk = [&](auto&& self, std::size_t i, TaskCount left) -> void {
      if (i + 1 == inst.size()) {
        counts[i] = left;
        if (validate(inst, Assignment{counts, 0}).ok() &&
            makespan(inst, counts) == dp.makespan && (smallest.empty() || counts < smallest)) {
          smallest = counts;
        }
        return;
      }
      for (TaskCount x = 0; x <= left; ++x) {
        counts[i] = x;
        self(self, i + 1, left - x);
      }
    };
    walk(walk, 0, inst.tasks());
    EXPECT_EQ(dp.assignment.counts, smallest);
  }
}

TEST(Oracles, OptimumMonotoneInTasks) {
  RngState rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.index(4);
    const auto group = gen_group(kAllGroups[rng.index(5)], n, 30, rng.next());
    double previous = 0.0;
    for (TaskCount t = 0; t <= 30; ++t) {
      std::vector<Resource> rs;
      for (const auto& r : group) rs.emplace_back(r.cost, 0, 30);
      const double opt = dp_optimal(Instance(t, rs)).makespan;
      EXPECT_GE(opt, previous);
      previous = opt;
    }
  }
}

TEST(Oracles, OlarMatchesDpAtModerateScale) {
  RngState rng(8080);
  for (int trial = 0; trial < 60; ++trial) {
    const auto tiny = fixtures::random_tiny(rng, kAllGroups[rng.index(5)], rng.index(2) == 1,
                                           10, 200);
    EXPECT_EQ(makespan(tiny.instance, olar(tiny.instance)), dp_optimal(tiny.instance).makespan);
  }
}
