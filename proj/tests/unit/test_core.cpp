#include <random>
#include <set>

#include <gtest/gtest.h>

#include "multislice/core/composition.hpp"
#include "multislice/core/energy.hpp"
#include "multislice/core/graph.hpp"
#include "multislice/core/vertex.hpp"
#include "oracles.hpp"

using namespace multislice;

TEST(Composition, ParseAndPrint) {
  auto k = Composition::parse("2,1,1");
  EXPECT_EQ(k.total(), 4u);
  EXPECT_EQ(k.levels(), 3u);
  EXPECT_EQ(k.to_string(), "2,1,1");
  EXPECT_EQ(Composition::parse(" 3 , 0,2").to_string(), "3,0,2");
}

TEST(Composition, MalformedInputIsAParseError) {
  for (const char* bad : {"", "2,,1", "a", "2,-1", "1.5", "2,"}) {
    try {
      Composition::parse(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Parse) << bad;
    }
  }
}

TEST(Composition, Cardinality) {
  EXPECT_EQ(cardinality(Composition{5}), 1);
  EXPECT_EQ(cardinality(Composition{1, 1}), 2);
  EXPECT_EQ(cardinality(Composition{2, 1, 1}), 12);
  for (auto& k : partitions(6)) {
    EXPECT_EQ(cardinality(k), oracle::arrangements(k.to_vector()).size()) << k.to_string();
  }
}

TEST(Composition, Degree) {
  EXPECT_EQ(degree(Composition{4}), 0u);
  EXPECT_EQ(degree(Composition{1, 1}), 1u);
  EXPECT_EQ(degree(Composition{2, 1, 1}), 5u);
  for (auto& k : reduced_compositions(5)) {
    auto vs = oracle::arrangements(k.to_vector());
    std::size_t count = 0;
    for (auto& y : vs) count += oracle::adjacent(vs.front(), y);
    EXPECT_EQ(degree(k), count) << k.to_string();
  }
}

TEST(Composition, Reduce) {
  auto r = reduce(Composition{2, 0, 1});
  EXPECT_EQ(r.reduced, (Composition{2, 1}));
  EXPECT_EQ(r.level_map, (std::vector<int>{0, -1, 1}));
  auto id = reduce(Composition{1, 1});
  EXPECT_EQ(id.reduced, (Composition{1, 1}));
  EXPECT_EQ(id.level_map, (std::vector<int>{0, 1}));
}

TEST(Composition, Generators) {
  EXPECT_EQ(reduced_compositions(5).size(), 16u);
  EXPECT_EQ(partitions(6).size(), 11u);
  EXPECT_EQ(weak_compositions(4, 3).size(), 15u);
  for (auto& k : reduced_compositions(6)) EXPECT_TRUE(k.is_reduced());
}

TEST(Composition, TrivialAndActive) {
  EXPECT_TRUE((Composition{3}).trivial());
  EXPECT_TRUE((Composition{0, 3, 0}).trivial());
  EXPECT_FALSE((Composition{2, 1}).trivial());
  EXPECT_EQ((Composition{2, 0, 1}).active_levels(), 2u);
}

TEST(Composition, BudgetIsEnforced) {
  try {
    VertexSet vs(Composition{1, 1, 1, 1, 1, 1, 1, 1}, 1000);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(Vertex, EnumerationOrder) {
  std::vector<Vertex> got;
  for (const Vertex& v : enumerate(Composition{1, 1})) got.push_back(v);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0], (Vertex{0, 1}));
  EXPECT_EQ(got[1], (Vertex{1, 0}));

  got.clear();
  for (const Vertex& v : enumerate(Composition{2, 0})) got.push_back(v);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0], (Vertex{0, 0}));

  std::size_t n = 0;
  for (const Vertex& v : enumerate(Composition{2, 2})) {
    (void)v;
    ++n;
  }
  EXPECT_EQ(n, 6u);
}

TEST(Vertex, RankUnrankRoundTrip) {
  EXPECT_EQ(unrank({0}, Composition{1, 1}), (Vertex{0, 1}));
  for (std::uint64_t i = 0; i < 3; ++i)
    EXPECT_EQ(rank(unrank({i}, Composition{2, 1}), Composition{2, 1}).value, i);
  for (auto& k : partitions(6)) {
    auto ref = oracle::arrangements(k.to_vector());
    for (std::uint64_t i = 0; i < ref.size(); ++i) {
      auto x = unrank({i}, k);
      EXPECT_EQ(std::vector<int>(x.levels().begin(), x.levels().end()), ref[i]);
      EXPECT_EQ(rank(x, k).value, i);
    }
  }
  Vertex last{1, 1, 0, 0};
  EXPECT_EQ(rank(last, Composition{2, 2}).value, 5u);
}

TEST(Vertex, RankRejectsWrongComposition) {
  try {
    rank(Vertex{0, 0}, Composition{1, 1});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Vertex, Transpose) {
  EXPECT_EQ(transpose(Vertex{0, 1}, 0, 1), (Vertex{1, 0}));
  EXPECT_EQ(transpose(Vertex{2, 0, 2}, 0, 2), (Vertex{2, 0, 2}));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    auto x = unrank({rng() % 60}, Composition{2, 2, 1, 1});
    std::size_t i = rng() % 5;
    std::size_t j = i + 1 + rng() % (5 - i);
    EXPECT_EQ(transpose(transpose(x, i, j), i, j), x);
  }
}

TEST(Vertex, Neighbors) {
  auto nb = neighbors(Vertex{0, 1});
  ASSERT_EQ(nb.size(), 1u);
  EXPECT_EQ(nb[0], (Vertex{1, 0}));
  EXPECT_EQ(neighbors(Vertex{0, 1, 0, 2}).size(), 5u);
  EXPECT_TRUE(neighbors(Vertex{0, 0, 0}).empty());
  const VertexSet vs(Composition{2, 1, 1});
  for (std::size_t v = 0; v < vs.size(); ++v) {
    std::set<std::size_t> seen;
    vs.for_each_neighbor(v, [&](std::size_t, std::size_t, std::size_t w) { seen.insert(w); });
    EXPECT_EQ(seen.size(), 5u);
    EXPECT_FALSE(seen.count(v));
  }
}

TEST(Energy, DirectSum) {
  EnergyTable e{0, 1, 3};
  Vertex x{0, 1, 1, 1, 1, 2};
  EXPECT_EQ(energy(x, e), 7);
  EXPECT_EQ(energy(Composition{1, 4, 1}, e), 7);
  EXPECT_EQ(energy(transpose(x, 0, 5), e), energy(x, e));
}

TEST(Energy, LevelSets) {
  auto a = level_sets(4, EnergyTable{0, 1}, 2);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0], (Composition{2, 2}));
  auto b = level_sets(6, EnergyTable{0, 1, 3}, 7);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0], (Composition{1, 4, 1}));
  EXPECT_EQ(b[1], (Composition{3, 1, 2}));
  EXPECT_TRUE(level_sets(4, EnergyTable{0, 1}, 9).empty());
}

TEST(Graph, Connected) {
  EXPECT_TRUE(is_connected(Composition{1, 1, 1}));
  EXPECT_TRUE(is_connected(Composition{4}));
  EXPECT_TRUE(is_connected(Composition{3, 2}));
  for (auto& k : reduced_compositions(5)) EXPECT_TRUE(is_connected(k));
}

TEST(Graph, EdgesMatchOracle) {
  for (auto& k : partitions(5)) {
    const VertexSet vs(k);
    auto ref = oracle::arrangements(k.to_vector());
    std::size_t count = 0;
    for (std::size_t a = 0; a < ref.size(); ++a)
      for (std::size_t b = a + 1; b < ref.size(); ++b) count += oracle::adjacent(ref[a], ref[b]);
    auto es = edges(vs);
    EXPECT_EQ(es.size(), count);
    for (auto [u, v] : es) EXPECT_TRUE(oracle::adjacent(ref[u], ref[v]));
  }
}

TEST(Graph, CompositionJsonRoundTrip) {
  Composition k{3, 0, 2};
  EXPECT_EQ(composition_from_json(to_json(k)), k);
  try {
    composition_from_json(nlohmann::json("2,1"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
  }
}
