#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "matset/bisim.hpp"
#include "matset/canon.hpp"
#include "matset/logic.hpp"
#include "matset/random.hpp"
#include "oracles.hpp"

namespace matset {
namespace {

const HfSet kEmpty = HfSet::empty();

TEST(HfSetTest, InterningGivesIdentity) {
  HfSet a = HfSet::set({kEmpty, HfSet::set({kEmpty})});
  HfSet b = HfSet::set({HfSet::set({kEmpty}), kEmpty, kEmpty});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.id(), b.id());
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(HfSet::atom("a"), HfSet::atom("a"));
  EXPECT_NE(HfSet::atom("a"), HfSet::atom("b"));
  EXPECT_EQ(HfSet::atom("x").atom_name(), "x");
  EXPECT_THROW(kEmpty.atom_name(), std::logic_error);
  EXPECT_TRUE(a.contains(kEmpty));
  EXPECT_FALSE(kEmpty.contains(kEmpty));
}

TEST(Render, BracesNotation) {
  EXPECT_EQ(render(kEmpty), "{}");
  EXPECT_EQ(render(oracle::numeral(2)), "{{},{{}}}");
  EXPECT_EQ(render(HfSet::set({HfSet::atom("b"), kEmpty, HfSet::atom("a")})), "{@a,@b,{}}");
}

TEST(Canonicalize, Examples) {
  EXPECT_EQ(canonicalize(validate(RawGraph(1), 0)), kEmpty);

  // Two presentations of vn(2) with different node numbering.
  WfApg p = validate(RawGraph::from_edges(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}), 2);
  WfApg q = validate(RawGraph::from_edges(3, std::vector<Edge>{{2, 0}, {1, 0}, {2, 1}}), 0);
  EXPECT_EQ(canonicalize(p), canonicalize(q));
  EXPECT_EQ(canonicalize(p), oracle::numeral(2));

  RawGraph leaf(1);
  leaf.set_label(0, "a");
  EXPECT_EQ(canonicalize(validate(leaf, 0)), HfSet::atom("a"));
}

TEST(Canonicalize, QuotientsNonExtensionalInput) {
  WfApg dup = validate(RawGraph::from_edges(3, std::vector<Edge>{{0, 2}, {1, 2}}), 2);
  EXPECT_EQ(canonicalize(dup), oracle::numeral(1));
  std::vector<HfSet> nodes = canonicalize_nodes(dup);
  EXPECT_EQ(nodes[0], kEmpty);
  EXPECT_EQ(nodes[1], kEmpty);
}

TEST(Canonicalize, EqualIffQuotientsIsomorphic) {
  std::mt19937_64 rng(43);
  std::vector<WfApg> graphs;
  for (int i = 0; i < 120; ++i) graphs.push_back(random_apg(rng, {6, 8, 1, 0.3}));
  for (const WfApg& a : graphs) {
    for (const WfApg& b : graphs) {
      bool same = canonicalize(a) == canonicalize(b);
      ASSERT_EQ(same, iso(ext_quotient(a).apg, ext_quotient(b).apg).has_value());
    }
  }
}

TEST(ToApg, Examples) {
  WfApg e = to_apg(kEmpty);
  EXPECT_EQ(e.node_count(), 1u);
  EXPECT_EQ(e.edge_count(), 0u);

  // Memberships inside vn(3): 0∈1, 0∈2, 1∈2, plus 0, 1, 2 ∈ root.
  WfApg three = to_apg(oracle::numeral(3));
  EXPECT_EQ(three.node_count(), 4u);
  EXPECT_EQ(three.edge_count(), 6u);
  EXPECT_EQ(three.edge_count(), oracle::membership_edges(oracle::numeral(3)));

  WfApg atom = to_apg(HfSet::atom("a"));
  EXPECT_EQ(atom.node_count(), 1u);
  EXPECT_EQ(atom.label(0), std::optional<std::string>("a"));
}

TEST(ToApg, MinimalPresentation) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    HfSet s = random_set(rng, {5, 3, 2, 0.2});
    WfApg a = to_apg(s);
    EXPECT_EQ(a.node_count(), hereditary_members(s).size() + 1);
    EXPECT_EQ(a.edge_count(), oracle::membership_edges(s));
    EXPECT_TRUE(is_extensional(a));
    EXPECT_EQ(a.root() + 1, a.node_count());
  }
}

TEST(RoundTrip, ExhaustiveRankFour) {
  const auto& universe = enumerate_rank(4);
  ASSERT_EQ(universe.size(), 16u);
  for (const HfSet& s : universe) EXPECT_EQ(canonicalize(to_apg(s)), s) << render(s);
}

TEST(RoundTrip, RandomWithAtoms) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 500; ++trial) {
    HfSet s = random_set(rng, {6, 3, 3, 0.15});
    ASSERT_EQ(canonicalize(to_apg(s)), s) << render(s);
  }
}

TEST(Compare, Examples) {
  EXPECT_EQ(compare(kEmpty, oracle::numeral(1)), std::strong_ordering::less);
  EXPECT_EQ(compare(HfSet::atom("a"), kEmpty), std::strong_ordering::less);
  EXPECT_EQ(compare(HfSet::atom("a"), HfSet::atom("b")), std::strong_ordering::less);
  EXPECT_EQ(compare(kEmpty, kEmpty), std::strong_ordering::equal);

  std::vector<HfSet> sets = oracle::universe(3);
  std::sort(sets.begin(), sets.end(), [](const HfSet& a, const HfSet& b) { return compare(a, b) < 0; });
  ASSERT_EQ(sets.size(), 4u);
  for (std::size_t i = 0; i + 1 < sets.size(); ++i) EXPECT_TRUE(compare(sets[i], sets[i + 1]) < 0);
  EXPECT_EQ(sets, enumerate_rank(3));
}

TEST(Compare, StrictTotalOrder) {
  std::mt19937_64 rng(59);
  RandomSetOptions opts{3, 3, 2, 0.3};
  for (int trial = 0; trial < 2000; ++trial) {
    HfSet a = random_set(rng, opts);
    HfSet b = random_set(rng, opts);
    HfSet c = random_set(rng, opts);
    EXPECT_EQ(compare(a, b) == 0, a == b);
    EXPECT_EQ(compare(a, b) < 0, compare(b, a) > 0);
    if (compare(a, b) < 0 && compare(b, c) < 0) {
      EXPECT_TRUE(compare(a, c) < 0);
    }
    EXPECT_EQ(compare(a, b), a <=> b);
  }
}

TEST(Members, AscendingAndAcyclic) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    HfSet s = random_set(rng, {5, 3, 2, 0.2});
    auto ms = s.members();
    for (std::size_t i = 0; i + 1 < ms.size(); ++i) EXPECT_TRUE(compare(ms[i], ms[i + 1]) < 0);
    std::vector<HfSet> tc = hereditary_members(s);
    EXPECT_EQ(std::count(tc.begin(), tc.end(), s), 0) << render(s);
    for (const HfSet& m : tc) {
      std::vector<HfSet> below = hereditary_members(m);
      EXPECT_EQ(std::count(below.begin(), below.end(), m), 0);
    }
  }
}

TEST(Rank, Values) {
  EXPECT_EQ(rank(kEmpty), 0u);
  EXPECT_EQ(rank(HfSet::atom("a")), 0u);
  EXPECT_EQ(rank(oracle::numeral(5)), 5u);
  EXPECT_EQ(rank(HfSet::set({HfSet::atom("a")})), 1u);
}

TEST(HereditaryMembers, NumeralThree) {
  std::vector<HfSet> expected = {oracle::numeral(0), oracle::numeral(1), oracle::numeral(2)};
  EXPECT_EQ(hereditary_members(oracle::numeral(3)), expected);
  EXPECT_TRUE(hereditary_members(HfSet::atom("a")).empty());
}

TEST(Ackermann, NumeralCodes) {
  const unsigned expected[] = {0, 1, 3, 11, 2059};
  for (std::size_t n = 0; n < 5; ++n) {
    HfSet v = oracle::numeral(n);
    EXPECT_EQ(ack_encode(v), expected[n]);
    EXPECT_EQ(ack_encode(v), oracle::ack(v));
  }
  EXPECT_EQ(ack_encode(kEmpty), 0);
  EXPECT_EQ(ack_encode(oracle::numeral(1)), 1);
}

TEST(Ackermann, RoundTripOnCodesAndSets) {
  for (std::uint64_t n = 0; n < (1u << 12); ++n) {
    HfSet s = ack_decode(Natural(n));
    ASSERT_EQ(s, oracle::unack(n)) << n;
    ASSERT_EQ(ack_encode(s), n);
  }
  for (const HfSet& s : enumerate_rank(4)) {
    EXPECT_EQ(ack_decode(ack_encode(s)), s);
    EXPECT_EQ(ack_encode(s), oracle::ack(s));
  }
}

TEST(Ackermann, Errors) {
  try {
    ack_encode(HfSet::set({HfSet::atom("a")}));
    FAIL();
  } catch (const AckError& e) {
    EXPECT_EQ(e.kind(), AckError::Kind::kAtomNotEncodable);
  }
  // vn(5) has code 2^2059 + 2059, far beyond any bit position.
  try {
    ack_encode(oracle::numeral(6));
    FAIL();
  } catch (const AckError& e) {
    EXPECT_EQ(e.kind(), AckError::Kind::kCodeTooLarge);
  }
  EXPECT_NO_THROW(ack_encode(oracle::numeral(5)));
}

}  // namespace
}  // namespace matset
