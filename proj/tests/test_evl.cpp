#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "tpmine/evl.hpp"
#include "tpmine/ftpm.hpp"
#include "tpmine/oracle.hpp"
#include "tpmine/pattern_key.hpp"
#include "tpmine/synthetic.hpp"

using namespace tpmine;
using tpmine::testing::hr_bp_dataset;
using tpmine::testing::pattern;

namespace {

using U = std::vector<std::uint32_t>;

U one_based(U v) {
  for (auto& x : v) ++x;
  return v;
}

Dataset copies(const Dataset& one, std::size_t n) {
  std::vector<LabeledMss> records;
  for (std::size_t i = 0; i < n; ++i) records.push_back({one.mss(0), "0"});
  return Dataset(one.variables(), std::move(records));
}

Dataset doubled(const Dataset& d) {
  std::vector<LabeledMss> records;
  for (int rep = 0; rep < 2; ++rep) {
    for (RecordId r = 0; r < d.size(); ++r) records.push_back({d.mss(r), d.class_name(d.label(r))});
  }
  return Dataset(d.variables(), std::move(records));
}

Dataset small(std::vector<StateInterval> intervals) {
  VariableTable vars;
  vars.intern("X");
  vars.intern("Y");
  std::vector<LabeledMss> recs{{Mss(std::move(intervals)), "0"}};
  return Dataset(std::move(vars), std::move(recs));
}

EvlStore mined_store(const Dataset& d, double theta, std::size_t max_k) {
  MiningConfig cfg;
  cfg.theta = theta;
  cfg.max_k = max_k;
  EvlStore store;
  mine_evl(d, cfg, &store);
  return store;
}

}  // namespace

TEST(EvlSize1, HrBp) {
  const Dataset d = hr_bp_dataset();
  const auto lists = evl_size1(d);
  auto find = [&](const std::string& key) -> const Evl& {
    const auto p = pattern(key, d);
    for (const auto& [s, evl] : lists) {
      if (TemporalPattern(s) == p) return evl;
    }
    throw std::runtime_error("missing " + key);
  };
  ASSERT_EQ(find("<HR=L|>").size(), 1u);
  EXPECT_EQ(one_based(find("<HR=L|>")[0].pos), (U{3, 6, 9}));
  EXPECT_TRUE(find("<HR=L|>")[0].ind.empty());
  EXPECT_EQ(one_based(find("<BP=N|>")[0].pos), (U{5, 13}));
  for (const auto& [s, evl] : lists) EXPECT_NE(s.symbol, Symbol::High);  // absent states get no list
}

TEST(EvlStore, WorkedExample) {
  const Dataset d = copies(hr_bp_dataset(), 4);
  const EvlStore store = mined_store(d, 1.0, 3);
  const auto p = store.find(pattern("<HR=N,BP=N,HR=L|cbc>", d));
  const auto p0 = store.find(pattern("<BP=N,HR=L|c>", d));
  const auto p00 = store.find(pattern("<HR=L|>", d));
  ASSERT_TRUE(p && p0 && p00);
  EXPECT_EQ(store.parent(*p), *p0);
  EXPECT_EQ(store.parent(*p0), *p00);
  for (RecordId r = 0; r < 4; ++r) {
    EXPECT_EQ(one_based(store.evl(*p00, r)->pos), (U{3, 6, 9}));
    EXPECT_EQ(one_based(store.evl(*p0, r)->pos), (U{5}));
    EXPECT_EQ(one_based(store.evl(*p0, r)->ind), (U{2}));
    EXPECT_EQ(one_based(store.evl(*p, r)->pos), (U{4}));
    EXPECT_EQ(one_based(store.evl(*p, r)->ind), (U{1}));
  }
}

TEST(PotentialPositions, WorkedExample) {
  const Dataset d = hr_bp_dataset();
  const EvlStore store = mined_store(d, 1.0, 2);
  const auto p0 = store.find(pattern("<BP=N,HR=L|c>", d));
  ASSERT_TRUE(p0);
  EvlCandidate cand{pattern("<HR=N,BP=N,HR=L|cbc>", d), *p0, {}};
  ASSERT_TRUE(find_potential_positions_and_indices(d, cand, store, 1.0));
  ASSERT_EQ(cand.evl.size(), 1u);
  EXPECT_EQ(one_based(cand.evl[0].pos), (U{4}));
  EXPECT_EQ(one_based(cand.evl[0].ind), (U{1}));
}

TEST(PotentialPositions, EmptyIntersectionPrunes) {
  // <X=L,Y=L|c> starts only at X=L@0 and <X=L,Y=H|c> only at X=L@5
  const Dataset d = small({{0, Symbol::Low, 0, 0}, {1, Symbol::Low, 0, 0}, {0, Symbol::High, 2, 2},
                           {0, Symbol::Low, 5, 6}, {1, Symbol::High, 6, 6}});
  const EvlStore store = mined_store(d, 0.0, 2);
  const auto parent_ref = store.find(pattern("<Y=L,Y=H|b>", d));
  ASSERT_TRUE(parent_ref);
  ASSERT_TRUE(store.find(pattern("<X=L,Y=L|c>", d)));
  ASSERT_TRUE(store.find(pattern("<X=L,Y=H|c>", d)));
  EvlCandidate cand{pattern("<X=L,Y=L,Y=H|ccb>", d), *parent_ref, {}};
  EXPECT_FALSE(find_potential_positions_and_indices(d, cand, store, 0.0));
  EXPECT_TRUE(cand.evl.empty());
  EXPECT_FALSE(contains(d.mss(0), cand.pattern));

  // a missing subpattern prunes as well
  const auto xh_yh = store.find(pattern("<X=H,Y=H|b>", d));
  ASSERT_TRUE(xh_yh);
  EvlCandidate same_var{pattern("<X=L,X=H,Y=H|cbb>", d), *xh_yh, {}};
  EXPECT_FALSE(find_potential_positions_and_indices(d, same_var, store, 0.0));
}

TEST(PotentialPositions, NoLaterParentStartDropsPosition) {
  // Y starts only before X, so <X b Y> has nowhere to go
  const Dataset d = small({{1, Symbol::Low, 0, 0}, {0, Symbol::Low, 2, 3}});
  const EvlStore store = mined_store(d, 0.0, 1);
  const auto parent = store.find(pattern("<Y=L|>", d));
  ASSERT_TRUE(parent);
  EvlCandidate cand{pattern("<X=L,Y=L|b>", d), *parent, {}};
  EXPECT_FALSE(find_potential_positions_and_indices(d, cand, store, 0.5));
  EXPECT_TRUE(cand.evl.empty());
  EXPECT_FALSE(contains(d.mss(0), cand.pattern));
}

TEST(Search, WorkedExample) {
  const Dataset d = hr_bp_dataset();
  const EvlStore store = mined_store(d, 1.0, 2);
  const auto p = pattern("<HR=N,BP=N,HR=L|cbc>", d);
  const auto p0 = store.find(parent(p));
  ASSERT_TRUE(p0);
  std::vector<std::uint32_t> chosen{3};  // E4
  EXPECT_EQ(search(store, d, *p0, 0, 0, chosen, p, exposure(p)), std::optional<std::size_t>(0));
  EXPECT_EQ(chosen, (U{3}));  // restored on return
}

TEST(Search, ExhaustedExposureReturnsStart) {
  const Dataset d = hr_bp_dataset();
  const EvlStore store = mined_store(d, 1.0, 2);
  const auto p = pattern("<HR=N,HR=L|b>", d);
  std::vector<std::uint32_t> chosen{0};
  EXPECT_EQ(search(store, d, *store.find(parent(p)), 0, 2, chosen, p, 1), std::optional<std::size_t>(2));
}

TEST(Search, CoOccurringWhereBeforeIsRequiredFails) {
  const Dataset d = small({{0, Symbol::Low, 0, 5}, {1, Symbol::Low, 2, 3}});
  const EvlStore store = mined_store(d, 0.0, 1);
  const auto p = pattern("<X=L,Y=L|b>", d);
  const auto parent_ref = store.find(parent(p));
  ASSERT_TRUE(parent_ref);
  std::vector<std::uint32_t> chosen{0};
  EXPECT_EQ(search(store, d, *parent_ref, 0, 0, chosen, p, exposure(p)), std::nullopt);
  EXPECT_FALSE(contains(d.mss(0), p));

  EvlCandidate cand{p, *parent_ref, {}};
  ASSERT_TRUE(find_potential_positions_and_indices(d, cand, store, 0.5));
  verify_candidate(store, d, cand);
  EXPECT_TRUE(cand.evl.empty());
}

TEST(EvlMemory, Estimates) {
  EXPECT_EQ(EvlStore{}.memory_bytes(), 0u);
  const Evl one{{0, {3}, {0}}};
  EXPECT_EQ(evl_memory_estimate(one), kEvlIdBytes + 2 * kEvlEntryBytes);
  EXPECT_EQ(evl_memory_estimate(one), 12u);
}

TEST(EvlMemory, DoublingDatasetDoublesEntries) {
  SyntheticSpec spec;
  spec.seed = 5;
  spec.records = 10;
  const Dataset d = generate_synthetic(spec);
  const Dataset dd = doubled(d);
  const EvlStore a = mined_store(d, 0.3, 4);
  const EvlStore b = mined_store(dd, 0.3, 4);
  ASSERT_EQ(a.max_size(), b.max_size());
  for (std::uint32_t size = 1; size <= a.max_size(); ++size) {
    ASSERT_EQ(a.patterns(size).size(), b.patterns(size).size());
    for (std::uint32_t i = 0; i < a.patterns(size).size(); ++i) {
      const auto ref_b = b.find(a.patterns(size)[i]);
      ASSERT_TRUE(ref_b);
      auto entries = [](const Evl& e) {
        std::size_t n = 0;
        for (const auto& r : e) n += r.pos.size() + r.ind.size();
        return n;
      };
      EXPECT_EQ(2 * entries(a.evl({size, i})), entries(b.evl(*ref_b)));
    }
  }
  EXPECT_EQ(2 * a.memory_bytes(), b.memory_bytes());
}

TEST(MineEvl, MaxK1IsFilteredSize1) {
  const Dataset d = hr_bp_dataset();
  MiningConfig cfg;
  cfg.theta = 1.0;
  cfg.max_k = 1;
  const auto r = mine_evl(d, cfg);
  EXPECT_EQ(r.ftps.size(), evl_size1(d).size());
  for (const auto& f : r.ftps) EXPECT_EQ(f.pattern.size(), 1u);
}

TEST(MineEvl, MatchesBaselineAndOracle) {
  std::mt19937_64 rng(51);
  for (int iter = 0; iter < 60; ++iter) {
    SyntheticSpec spec;
    spec.seed = rng();
    spec.records = 1 + rng() % 6;
    spec.variables = 2 + rng() % 2;
    spec.alphabet = 2 + rng() % 3;
    spec.intervals_per_record = 3 + rng() % 8;
    const Dataset d = generate_synthetic(spec);
    MiningConfig cfg;
    cfg.theta = std::array{0.0, 0.3, 0.5, 1.0}[rng() % 4];
    cfg.max_k = 3;
    const auto evl = mine_evl(d, cfg);
    ASSERT_EQ(evl.ftps, tpmine::testing::brute_force_ftps(d, cfg.theta, 3)) << "iteration " << iter;
    ASSERT_EQ(evl.ftps, mine_ftpm(d, cfg).ftps) << "iteration " << iter;
  }
}

TEST(MineEvl, TimeLimitMarksIncomplete) {
  SyntheticSpec spec;
  spec.records = 30;
  spec.intervals_per_record = 20;
  const Dataset d = generate_synthetic(spec);
  MiningConfig cfg;
  cfg.theta = 0.0;
  cfg.time_limit = std::chrono::milliseconds(0);
  const auto r = mine_evl(d, cfg);
  EXPECT_FALSE(r.complete);
  EXPECT_EQ(r.deepest_complete_size, 1u);
}
