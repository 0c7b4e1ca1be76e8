// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <sstream>

#include "dyntdd/topology.hpp"

using namespace dyntdd;

TEST(Topology, Distance) {
  EXPECT_DOUBLE_EQ(distance({0, 0}, {3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(distance({7.5, -2}, {7.5, -2}), 0.0);
  EXPECT_DOUBLE_EQ(distance({0, 0}, {500, 0}), 500.0);
}

TEST(Topology, HexSitesAreOneIsdApartInFirstRing) {
  const auto sites = hex_site_positions(7, 500.0);
  ASSERT_EQ(sites.size(), 7u);
  EXPECT_DOUBLE_EQ(distance(sites[0], {0, 0}), 0.0);
  for (int i = 1; i < 7; ++i) EXPECT_NEAR(distance(sites[0], sites[i]), 500.0, 1e-9);
  EXPECT_EQ(hex_site_positions(19, 500.0).size(), 19u);
}

TEST(Topology, FullScaleCounts) {
  const auto layout = generate_layout(19, 4, 10, 7);
  EXPECT_EQ(layout.num_picos(), 228);
  EXPECT_EQ(layout.num_ues(), 2280);
}

TEST(Topology, MinimalLayout) {
  const auto layout = generate_layout(1, 1, 1, 3);
  EXPECT_EQ(layout.num_picos(), 3);
  EXPECT_EQ(layout.num_ues(), 3);
}

TEST(Topology, Deterministic) {
  const auto a = generate_layout(1, 4, 10, 42);
  const auto b = generate_layout(1, 4, 10, 42);
  EXPECT_EQ(a.picos, b.picos);
  EXPECT_EQ(a.ues, b.ues);
  EXPECT_EQ(a.serving, b.serving);
  const auto c = generate_layout(1, 4, 10, 43);
  EXPECT_NE(a.picos, c.picos);
}

// Drop constraints over a spread of seeds.
TEST(Topology, DropInvariants) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto l = generate_layout(3, 4, 10, seed);
    ASSERT_EQ(l.num_ues(), l.num_picos() * 10);
    for (int u = 0; u < l.num_ues(); ++u) {
      EXPECT_LE(distance(l.ues[u], l.picos[l.serving[u]]), 40.0 + 1e-9);
      for (const Point& p : l.picos) EXPECT_GE(distance(l.ues[u], p), 10.0);
      for (int v = u + 1; v < l.num_ues(); ++v) EXPECT_GE(distance(l.ues[u], l.ues[v]), 3.0);
    }
    for (int i = 0; i < l.num_picos(); ++i) {
      EXPECT_EQ(static_cast<int>(l.cell_ues[i].size()), 10);
      for (int j = i + 1; j < l.num_picos(); ++j) EXPECT_GE(distance(l.picos[i], l.picos[j]), 40.0);
    }
  }
}

TEST(Topology, PicosStayInTheirSiteHexagon) {
  const auto l = generate_layout(7, 4, 1, 5);
  for (int i = 0; i < l.num_picos(); ++i) {
    const Point site = l.sites[i / 12];
    EXPECT_LE(distance(l.picos[i], site), 500.0 / std::sqrt(3.0) + 1e-9);
  }
}

TEST(Topology, InfeasibleDropFails) {
  LayoutParams p;
  p.n_sites = 1;
  p.picos_per_sector = 200;
  p.max_attempts = 500;
  EXPECT_THROW(generate_layout(p, 1), TopologyError);
  EXPECT_THROW(generate_layout(0, 4, 10, 1), TopologyError);
}

TEST(Topology, DumpHasOneLinePerNode) {
  const auto l = generate_layout(1, 1, 2, 9);
  std::ostringstream os;
  dump_layout(l, os);
  std::istringstream is(os.str());
  std::string line;
  int lines = 0;
  std::getline(is, line);
  EXPECT_EQ(line, "id kind x y serving");
  while (std::getline(is, line)) ++lines;
  EXPECT_EQ(lines, l.num_nodes());
}
