#include "record/topology.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace record {
namespace {

TEST(LevelCount, FrozenValues) {
  EXPECT_EQ(level_count(64.0, 4), 3);
  EXPECT_EQ(level_count(2.0, 2), 1);
  EXPECT_EQ(level_count(1000.0, 10), 3);
  EXPECT_EQ(level_count(1024.0, 2), 10);
  EXPECT_EQ(level_count(1025.0, 2), 11);
  EXPECT_EQ(level_count(2.5, 2), 2);
}

TEST(LevelCount, RejectsDegenerateInputs) {
  EXPECT_THROW(level_count(1.0, 2), std::invalid_argument);
  EXPECT_THROW(level_count(0.5, 2), std::invalid_argument);
  EXPECT_THROW(level_count(16.0, 1), std::invalid_argument);
  EXPECT_THROW(level_count(16.0, 0), std::invalid_argument);
}

TEST(IntervalBounds, FrozenValues) {
  // n_est=16, k=4 has c=2 levels. Level 1 splits the circle in four.
  const Interval a = interval_bounds(RingId(0.0), 16.0, 4, 1, 2);
  EXPECT_EQ(a.arc.lo, RingId(0.25));
  EXPECT_EQ(a.arc.hi, RingId(0.5));

  const Interval b = interval_bounds(RingId(0.0), 16.0, 4, 2, 1);
  EXPECT_EQ(b.arc.lo, RingId(0.0));
  EXPECT_EQ(b.arc.hi, RingId(0.0625));

  // Offsets relative to a nonzero node id wrap around the circle; an
  // offset of exactly 1 closes back onto the id itself.
  const Interval c = interval_bounds(RingId(0.9), 4.0, 2, 1, 2);
  EXPECT_NEAR(c.arc.lo.value(), 0.4, 1e-12);
  EXPECT_EQ(c.arc.hi, RingId(0.9));
}

TEST(IntervalBounds, RejectsOutOfRangeLevelOrSlot) {
  const RingId s(0.3);
  EXPECT_THROW(interval_bounds(s, 16.0, 4, 0, 1), std::invalid_argument);
  EXPECT_THROW(interval_bounds(s, 16.0, 4, 3, 1), std::invalid_argument);
  EXPECT_THROW(interval_bounds(s, 16.0, 4, 1, 0), std::invalid_argument);
  EXPECT_THROW(interval_bounds(s, 16.0, 4, 1, 5), std::invalid_argument);
  EXPECT_THROW(interval_bounds(s, 1.0, 4, 1, 1), std::invalid_argument);
}

TEST(IntervalBounds, SlotsAtOneLevelTileTheirParent) {
  // Slot j's upper bound is slot j+1's lower bound, bit for bit.
  const RingId s(0.77);
  for (int level = 1; level <= 3; ++level) {
    for (int slot = 1; slot < 4; ++slot) {
      const Interval cur = interval_bounds(s, 64.0, 4, level, slot);
      const Interval next = interval_bounds(s, 64.0, 4, level, slot + 1);
      ASSERT_EQ(cur.arc.hi, next.arc.lo)
          << "level " << level << " slot " << slot;
    }
  }
}

TEST(IntervalBounds, SlotOneNestsAcrossLevels) {
  // The level-(l+1) division subdivides slot 1 of level l: slot 1 arcs
  // share their lower bound, and level l+1's slot k ends exactly where
  // level l's slot 1 ends.
  const RingId s(0.3);
  const int k = 3;
  for (int level = 1; level < level_count(100.0, k); ++level) {
    const Interval outer = interval_bounds(s, 100.0, k, level, 1);
    const Interval first = interval_bounds(s, 100.0, k, level + 1, 1);
    const Interval last = interval_bounds(s, 100.0, k, level + 1, k);
    ASSERT_EQ(outer.arc.lo, first.arc.lo);
    ASSERT_EQ(outer.arc.hi, last.arc.hi);
  }
}

TEST(LinkedIntervals, CountMatchesClosedForm) {
  // (c-1)(k-1) slots at the shallow levels plus k at the deepest.
  struct Case {
    double n_est;
    int k;
    int expected;
  };
  for (const Case& c : std::vector<Case>{{64.0, 4, 10},
                                         {16.0, 4, 7},
                                         {1024.0, 2, 11},
                                         {4.0, 2, 3},
                                         {9.0, 3, 5}}) {
    EXPECT_EQ(linked_intervals(RingId(0.42), c.n_est, c.k).size(),
              static_cast<std::size_t>(c.expected))
        << "n_est=" << c.n_est << " k=" << c.k;
  }
}

TEST(LinkedIntervals, TwoLevelBinaryShape) {
  // n_est=4, k=2: one far half plus the two quarters nearest the node.
  const RingId s(0.0);
  const std::vector<Interval> ivs = linked_intervals(s, 4.0, 2);
  ASSERT_EQ(ivs.size(), 3u);
  EXPECT_EQ(ivs[0].level, 1);
  EXPECT_EQ(ivs[0].slot, 2);
  EXPECT_EQ(ivs[0].arc.lo, RingId(0.5));
  EXPECT_EQ(ivs[0].arc.hi, RingId(0.0));
  EXPECT_EQ(ivs[1].level, 2);
  EXPECT_EQ(ivs[1].slot, 1);
  EXPECT_EQ(ivs[1].arc.lo, RingId(0.0));
  EXPECT_EQ(ivs[1].arc.hi, RingId(0.25));
  EXPECT_EQ(ivs[2].level, 2);
  EXPECT_EQ(ivs[2].slot, 2);
  EXPECT_EQ(ivs[2].arc.lo, RingId(0.25));
  EXPECT_EQ(ivs[2].arc.hi, RingId(0.5));
}

TEST(LinkedIntervals, ArcsTileTheFullCircle) {
  // Sorted by distance from the node, the linked arcs chain end to start
  // bit-exactly and close the full circle at the node id itself.
  struct Case {
    RingId s;
    double n_est;
    int k;
  };
  for (const Case& c : std::vector<Case>{{RingId(0.3), 100.0, 3},
                                         {RingId(0.77), 64.0, 4},
                                         {RingId(0.5), 9.0, 3},
                                         {RingId(0.9), 1000.0, 10},
                                         {RingId(0.0), 1024.0, 2}}) {
    std::vector<Interval> ivs = linked_intervals(c.s, c.n_est, c.k);
    std::sort(ivs.begin(), ivs.end(), [&](const Interval& a, const Interval& b) {
      return clockwise_distance(c.s, a.arc.lo) <
             clockwise_distance(c.s, b.arc.lo);
    });
    ASSERT_EQ(ivs.front().arc.lo, c.s);
    for (std::size_t i = 0; i + 1 < ivs.size(); ++i) {
      ASSERT_EQ(ivs[i].arc.hi, ivs[i + 1].arc.lo)
          << "gap after interval " << i << " (level " << ivs[i].level
          << " slot " << ivs[i].slot << ")";
    }
    ASSERT_EQ(ivs.back().arc.hi, c.s);
    double total = 0.0;
    for (const Interval& iv : ivs) total += arc_length(iv.arc);
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(LinkedIntervals, BinaryCaseMatchesDoublingSpans) {
  // k=2 with n_est=2^c: the slot-2 arcs are exactly the classic doubling
  // spans [s + 2^(i-1)/n, s + 2^i/n), plus one extra arc [s, s+1/n).
  const int c = 6;
  const double n = 64.0;
  const RingId s(0.375);
  for (int i = 1; i <= c; ++i) {
    const Interval iv = interval_bounds(s, n, 2, c - i + 1, 2);
    const RingId lo(s.value() + std::pow(2.0, i - 1) / n);
    const RingId hi(s.value() + std::pow(2.0, i) / n);
    EXPECT_EQ(iv.arc.lo, lo) << "i=" << i;
    EXPECT_EQ(iv.arc.hi, hi) << "i=" << i;
  }
  const Interval succ_slot = interval_bounds(s, n, 2, c, 1);
  EXPECT_EQ(succ_slot.arc.lo, s);
  EXPECT_EQ(succ_slot.arc.hi, RingId(s.value() + 1.0 / n));
}

class DirectoryTest : public ::testing::Test {
 protected:
  void SetUp() override {
    for (double v : {0.1, 0.5, 0.9}) {
      NodeState node;
      node.id = RingId(v);
      dir_.insert(node);
    }
  }
  RingDirectory dir_;
};

TEST_F(DirectoryTest, SuccessorFrozenValues) {
  EXPECT_EQ(dir_.successor_of(RingId(0.6)).id, RingId(0.9));
  EXPECT_EQ(dir_.successor_of(RingId(0.95)).id, RingId(0.1));  // wraps
  EXPECT_EQ(dir_.successor_of(RingId(0.5)).id, RingId(0.5));   // owns itself
  EXPECT_EQ(dir_.successor_of(RingId(0.0)).id, RingId(0.1));
}

TEST_F(DirectoryTest, PredecessorFrozenValues) {
  EXPECT_EQ(dir_.predecessor_of(RingId(0.6)).id, RingId(0.5));
  EXPECT_EQ(dir_.predecessor_of(RingId(0.05)).id, RingId(0.9));  // wraps
  EXPECT_EQ(dir_.predecessor_of(RingId(0.5)).id, RingId(0.1));   // strict
  EXPECT_EQ(dir_.predecessor_of(RingId(0.1)).id, RingId(0.9));
}

TEST_F(DirectoryTest, InsertRejectsCollision) {
  NodeState dup;
  dup.id = RingId(0.5);
  EXPECT_THROW(dir_.insert(dup), std::invalid_argument);
  EXPECT_EQ(dir_.size(), 3u);
}

TEST_F(DirectoryTest, MissingIdsThrow) {
  EXPECT_THROW(dir_.at(RingId(0.123)), std::out_of_range);
  EXPECT_THROW(dir_.erase(RingId(0.123)), std::out_of_range);
}

TEST_F(DirectoryTest, IdsAreSorted) {
  const std::vector<RingId> ids = dir_.ids();
  ASSERT_EQ(ids.size(), 3u);
  EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
}

TEST(Directory, EmptyQueriesThrow) {
  RingDirectory dir;
  EXPECT_THROW(dir.successor_of(RingId(0.5)), std::invalid_argument);
  EXPECT_THROW(dir.predecessor_of(RingId(0.5)), std::invalid_argument);
}

TEST(Directory, NeighborQueriesMatchBruteForce) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    RingDirectory dir;
    const int n = 1 + static_cast<int>(uniform_index(rng, 20));
    for (int i = 0; i < n; ++i) {
      NodeState node;
      do {
        node.id = sample_uniform_id(rng);
      } while (dir.contains(node.id));
      dir.insert(node);
    }
    const std::vector<RingId> ids = dir.ids();
    for (int q = 0; q < 50; ++q) {
      const RingId x = sample_uniform_id(rng);
      RingId best_succ = ids[0];
      RingId best_pred = ids[0];
      for (const RingId& id : ids) {
        if (clockwise_distance(x, id) < clockwise_distance(x, best_succ)) {
          best_succ = id;
        }
        const double d = clockwise_distance(id, x);
        const double bd = clockwise_distance(best_pred, x);
        if (d > 0.0 && (bd == 0.0 || d < bd)) best_pred = id;
      }
      ASSERT_EQ(dir.successor_of(x).id, best_succ);
      ASSERT_EQ(dir.predecessor_of(x).id, best_pred);
    }
  }
}

}  // namespace
}  // namespace record
