#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "tpmine/model.hpp"
#include "tpmine/oracle.hpp"
#include "tpmine/pattern_key.hpp"

using namespace tpmine;
using tpmine::testing::hr_bp_dataset;
using tpmine::testing::pattern;

namespace {

constexpr State kA{0, Symbol::Low};
constexpr State kB{1, Symbol::Normal};
constexpr State kC{2, Symbol::High};

constexpr auto b = Relation::Before;
constexpr auto c = Relation::CoOccur;

std::vector<std::size_t> one_based(std::vector<std::size_t> v) {
  for (auto& x : v) ++x;
  return v;
}

}  // namespace

TEST(Relation, Examples) {
  const Dataset d = hr_bp_dataset();
  const Mss& z = d.mss(0);
  EXPECT_EQ(relation(z[3], z[4]), Relation::CoOccur);  // HR N 8-11, BP N 10-17
  EXPECT_EQ(relation(z[0], z[2]), Relation::Before);   // HR N 0-3, HR L 4-7
  EXPECT_EQ(relation(StateInterval{0, Symbol::Low, 0, 5}, StateInterval{1, Symbol::Low, 5, 9}),
            Relation::CoOccur);
  EXPECT_THROW(relation(z[4], z[3]), std::invalid_argument);
}

TEST(Mss, RejectsBrokenInvariants) {
  EXPECT_THROW(Mss({{0, Symbol::Low, 5, 6}, {1, Symbol::Low, 0, 2}}), std::invalid_argument);
  EXPECT_THROW(Mss({{0, Symbol::Low, 0, 4}, {0, Symbol::High, 4, 6}}), std::invalid_argument);
  EXPECT_THROW(Mss({{0, Symbol::Low, 0, 2}, {0, Symbol::Low, 4, 6}}), std::invalid_argument);
  EXPECT_THROW(Mss({{0, Symbol::Low, 3, 2}}), std::invalid_argument);
  EXPECT_NO_THROW(Mss({{0, Symbol::Low, 0, 2}, {1, Symbol::Low, 1, 1}, {0, Symbol::High, 3, 6}}));
}

TEST(Pattern, CoherenceIsValidated) {
  EXPECT_NO_THROW(TemporalPattern({kA, kB, kC}, {c, b, c}));
  EXPECT_THROW(TemporalPattern({kA, kB, kC}, {b, c, c}), std::invalid_argument);
  EXPECT_THROW(TemporalPattern({kA, kB}, {}), std::invalid_argument);
  EXPECT_EQ(TemporalPattern::relation_offset(4, 0, 1), 0u);
  EXPECT_EQ(TemporalPattern::relation_offset(4, 1, 2), 3u);
  EXPECT_EQ(TemporalPattern::relation_offset(4, 2, 3), 5u);
}

TEST(Containment, HrBp) {
  const Dataset d = hr_bp_dataset();
  const Mss& z = d.mss(0);
  EXPECT_TRUE(contains(z, pattern("<HR=N,BP=N,HR=L|cbc>", d)));
  EXPECT_TRUE(contains(z, pattern("<HR=L|>", d)));
  EXPECT_FALSE(contains(z, TemporalPattern(State{*d.variables().find("HR"), Symbol::VeryHigh})));
  EXPECT_FALSE(contains(Mss{}, pattern("<HR=L|>", d)));
}

TEST(Containment, OccurrenceCounts) {
  const Dataset d = hr_bp_dataset();
  const Mss& z = d.mss(0);
  EXPECT_EQ(count_occurrences(z, pattern("<HR=N,HR=L|b>", d)), 5u);
  EXPECT_EQ(count_occurrences(z, pattern("<HR=L|>", d)), 3u);
  EXPECT_EQ(count_occurrences(Mss{}, pattern("<HR=L|>", d)), 0u);
}

TEST(Containment, StartingPositions) {
  const Dataset d = hr_bp_dataset();
  const Mss& z = d.mss(0);
  using V = std::vector<std::size_t>;
  EXPECT_EQ(one_based(starting_positions_oracle(z, pattern("<HR=N,BP=N|c>", d))), (V{4, 12}));
  EXPECT_EQ(one_based(starting_positions_oracle(z, pattern("<HR=N,HR=L|b>", d))), (V{1, 4}));
  EXPECT_EQ(one_based(starting_positions_oracle(z, pattern("<HR=N,BP=N,HR=L|cbc>", d))), (V{4}));
}

TEST(Pattern, DropStateAndParent) {
  const Dataset d = hr_bp_dataset();
  const auto p = pattern("<HR=N,BP=N,HR=L|cbc>", d);
  EXPECT_EQ(drop_state(p, 2), pattern("<HR=N,BP=N|c>", d));
  EXPECT_EQ(drop_state(p, 1), pattern("<HR=N,HR=L|b>", d));
  EXPECT_EQ(drop_state(p, 0), pattern("<BP=N,HR=L|c>", d));
  EXPECT_EQ(parent(p), pattern("<BP=N,HR=L|c>", d));
  EXPECT_EQ(parent(parent(p)), pattern("<HR=L|>", d));
  EXPECT_EQ(parent(TemporalPattern({kA, kB}, {b})), TemporalPattern(kB));
  EXPECT_THROW(drop_state(TemporalPattern(kA), 0), std::invalid_argument);
  EXPECT_THROW(drop_state(p, 3), std::invalid_argument);

  const auto subs = subpatterns(p);
  ASSERT_EQ(subs.size(), 3u);
  EXPECT_EQ(subs[0], parent(p));

  const TemporalPattern aaa({kA, kA, kA}, {b, b, b});
  for (const auto& s : subpatterns(aaa)) EXPECT_EQ(s, TemporalPattern({kA, kA}, {b}));

  const auto two = subpatterns(TemporalPattern({kA, kB}, {c}));
  EXPECT_EQ(two[0], TemporalPattern(kB));
  EXPECT_EQ(two[1], TemporalPattern(kA));
}

TEST(Pattern, ChainAndExposure) {
  const TemporalPattern abc({kA, kB, kC}, {b, b, c});
  EXPECT_EQ(chain_length(abc), 1u);
  EXPECT_EQ(exposure(abc), 2u);

  const TemporalPattern cbc({kA, kB, kC}, {c, b, c});
  EXPECT_EQ(chain_length(cbc), 3u);
  EXPECT_EQ(exposure(cbc), 3u);

  EXPECT_EQ(chain_length(TemporalPattern(kA)), 1u);
  EXPECT_EQ(exposure(TemporalPattern(kA)), 1u);

  const TemporalPattern two_then_one({kA, kB, kC}, {c, b, b});
  EXPECT_EQ(chain_length(two_then_one), 2u);
  EXPECT_EQ(exposure(two_then_one), 3u);
}

TEST(Candidates, FirstRows) {
  const Dataset d = hr_bp_dataset();
  const State s{*d.variables().find("HR"), Symbol::Normal};
  const std::vector<TemporalPattern> one{pattern("<BP=L|>", d)};
  const std::vector<State> singles{s};
  const auto c1 = create_candidates(one, singles);
  ASSERT_EQ(c1.size(), 2u);
  EXPECT_EQ(c1[0].pattern, pattern("<HR=N,BP=L|b>", d));
  EXPECT_EQ(c1[1].pattern, pattern("<HR=N,BP=L|c>", d));

  const std::vector<TemporalPattern> p0{pattern("<BP=N,HR=L|c>", d)};
  const auto c2 = create_candidates(p0, singles);
  ASSERT_EQ(c2.size(), 3u);
  // (b,c) is never produced
  EXPECT_EQ(c2[0].pattern, pattern("<HR=N,BP=N,HR=L|bbc>", d));
  EXPECT_EQ(c2[1].pattern, pattern("<HR=N,BP=N,HR=L|cbc>", d));
  EXPECT_EQ(c2[2].pattern, pattern("<HR=N,BP=N,HR=L|ccc>", d));
  for (const auto& cand : c2) EXPECT_EQ(parent(cand.pattern), p0[0]);
}

TEST(PatternKey, EncodeDecode) {
  const Dataset d = hr_bp_dataset();
  const auto p = pattern("<HR=N,BP=N,HR=L|cbc>", d);
  EXPECT_EQ(encode_key(p, d.variables()), "<HR=N,BP=N,HR=L|cbc>");
  VariableTable vars = d.variables();
  EXPECT_THROW(decode_key("<HR=N,BP=N|>", vars), KeyError);
  EXPECT_THROW(decode_key("<HR=N,BP=N|bc>", vars), KeyError);
  EXPECT_THROW(decode_key("<HR=N,BP=N,HR=L|bcc>", vars), KeyError);
  EXPECT_THROW(decode_key("<HR=Q|>", vars), KeyError);
  EXPECT_THROW(decode_key("HR=N|", vars), KeyError);
  EXPECT_THROW(decode_key("<|>", vars), KeyError);
}

// Random-case properties of the pattern algebra.

TEST(ModelProperty, KeyRoundTrip) {
  std::mt19937_64 rng(11);
  const VariableTable vars = [] {
    VariableTable v;
    for (const char* n : {"v0", "v1", "v2", "v3"}) v.intern(n);
    return v;
  }();
  for (int i = 0; i < 10000; ++i) {
    const auto k = tpmine::testing::uniform(rng, 1, 7);
    const auto p = tpmine::testing::random_pattern(rng, 4, 5, k);
    VariableTable copy = vars;
    ASSERT_EQ(decode_key(encode_key(p, vars), copy), p);
  }
}

TEST(ModelProperty, DropStateCommutes) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 10000; ++i) {
    const auto k = tpmine::testing::uniform(rng, 3, 7);
    const auto p = tpmine::testing::random_pattern(rng, 3, 4, k);
    const auto j = tpmine::testing::uniform(rng, 0, k - 1);
    auto j2 = tpmine::testing::uniform(rng, 0, k - 2);
    if (j2 >= j) ++j2;  // j2 != j, index in p
    const auto left = drop_state(drop_state(p, j), j2 > j ? j2 - 1 : j2);
    const auto right = drop_state(drop_state(p, j2), j > j2 ? j - 1 : j);
    ASSERT_EQ(left, right);
  }
}

TEST(ModelProperty, CandidatesCoherentWithParent) {
  std::mt19937_64 rng(13);
  std::size_t checked = 0;
  while (checked < 10000) {
    const auto k = tpmine::testing::uniform(rng, 1, 6);
    const std::vector<TemporalPattern> ftps{tpmine::testing::random_pattern(rng, 3, 4, k)};
    const std::vector<State> singles{{static_cast<VariableId>(rng() % 3), static_cast<Symbol>(rng() % 4)}};
    const auto cands = create_candidates(ftps, singles);
    ASSERT_EQ(cands.size(), k + 1);
    for (const auto& cand : cands) {
      ASSERT_TRUE(is_coherent(cand.pattern.size(), cand.pattern.relations()));
      ASSERT_EQ(parent(cand.pattern), ftps[0]);
      ASSERT_EQ(cand.pattern.state(0), singles[0]);
      ++checked;
    }
  }
}

TEST(ModelProperty, RelationExclusive) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 10000; ++i) {
    const Tick s1 = static_cast<Tick>(rng() % 20), s2 = s1 + static_cast<Tick>(rng() % 20);
    const StateInterval a{0, Symbol::Low, s1, s1 + static_cast<Tick>(rng() % 20)};
    const StateInterval x{1, Symbol::Low, s2, s2 + static_cast<Tick>(rng() % 5)};
    const auto r = relation(a, x);
    ASSERT_EQ(r == Relation::Before, a.end < x.start);
    ASSERT_EQ(r, relation(a, x));
  }
}
