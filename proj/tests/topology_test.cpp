/*
 * Copyright (c) 2026, The macsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
*/

#include "macsim/topology.hpp"

#include <cstdio>
#include <filesystem>

#include "gtest/gtest.h"

using namespace macsim;

namespace {

// Independent eccentricity oracle: Floyd-Warshall instead of repeated BFS.
int fw_diameter(const Topology& t) {
  const int INF = 1 << 20;
  std::vector<std::vector<int>> d(t.n, std::vector<int>(t.n, INF));
  for (NodeId u = 0; u < t.n; ++u) {
    d[u][u] = 0;
    for (NodeId v : t.adj[u]) d[u][v] = 1;
  }
  for (NodeId k = 0; k < t.n; ++k)
    for (NodeId i = 0; i < t.n; ++i)
      for (NodeId j = 0; j < t.n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  int dia = 0;
  for (NodeId i = 0; i < t.n; ++i)
    for (NodeId j = 0; j < t.n; ++j) dia = std::max(dia, d[i][j]);
  return dia;
}

TEST(Clique, SizesAndDiameter) {
  auto c2 = build_clique(2);
  EXPECT_EQ(c2.edge_count(), 1u);
  EXPECT_EQ(c2.diameter, 1);
  auto c5 = build_clique(5);
  EXPECT_EQ(c5.edge_count(), 10u);  // n(n-1)/2
  EXPECT_EQ(c5.diameter, 1);
  auto c8 = build_clique(8);
  EXPECT_EQ(c8.edge_count(), 28u);
  EXPECT_THROW(build_clique(1), TopologyError);
}

TEST(Line, SizesAndDiameter) {
  auto l1 = build_line(1);
  EXPECT_EQ(l1.n, 2u);
  EXPECT_EQ(l1.edge_count(), 1u);
  auto l4 = build_line(4);
  EXPECT_EQ(l4.n, 5u);
  EXPECT_EQ(l4.diameter, 4);
  auto l9 = build_line(9);
  EXPECT_EQ(l9.n, 10u);
  EXPECT_EQ(l9.diameter, 9);
  EXPECT_THROW(build_line(0), TopologyError);
}

TEST(Kd, ConstructionRule) {
  // node count = 2(D+1) + D from the construction rule
  auto k2 = build_kd(2);
  EXPECT_EQ(k2.n, 8u);
  EXPECT_EQ(k2.diameter, 2);
  auto k4 = build_kd(4);
  EXPECT_EQ(k4.n, 14u);
  EXPECT_EQ(k4.diameter, 4);
  // the short line has D nodes
  EXPECT_EQ(k4.nodes_with_prefix("M:").size(), 4u);
  auto k6 = build_kd(6);
  EXPECT_EQ(k6.diameter, 6);
  EXPECT_THROW(build_kd(1), TopologyError);
  // every node of both copies is adjacent to the shared endpoint
  NodeId e = k4.node_by_label("M:0");
  for (NodeId v : k4.nodes_with_prefix("L1:")) EXPECT_TRUE(k4.has_edge(v, e));
  for (NodeId v : k4.nodes_with_prefix("L2:")) EXPECT_TRUE(k4.has_edge(v, e));
}

TEST(Kd, DiameterSweep) {
  for (std::uint32_t d = 2; d <= 12; ++d) {
    auto t = build_kd(d);
    EXPECT_EQ(t.diameter, static_cast<int>(d)) << "D=" << d;
    EXPECT_EQ(t.diameter, fw_diameter(t));
  }
}

TEST(GadgetParams, Formula) {
  auto p = GadgetParams::from(4, 4);
  EXPECT_EQ(p.d, 1u);
  EXPECT_EQ(p.k, 0u);
  EXPECT_EQ(p.n_prime, 15u);  // 3((D-2)/2 + k) + 12 at D=4, k=0
  auto q = GadgetParams::from(6, 30);
  EXPECT_EQ(q.d, 2u);
  EXPECT_EQ(q.k, 4u);  // smallest k with 3(2+k)+12 >= 30
  EXPECT_EQ(q.n_prime, 30u);
  EXPECT_THROW(GadgetParams::from(5, 5), TopologyError);
  EXPECT_THROW(GadgetParams::from(2, 2), TopologyError);
  // d=1 leaves no chain node for the extra leaves
  EXPECT_THROW(GadgetParams::from(4, 16), TopologyError);
}

TEST(NetworkA, SizeAndGadget) {
  auto a = build_network_a(4, 4);
  EXPECT_EQ(a.topo.n, 15u);
  // gadget size d+k+4 = 5 at d=1, k=0
  EXPECT_EQ(a.topo.nodes_with_prefix("g0:").size(), 5u);
  EXPECT_EQ(a.topo.nodes_with_prefix("g1:").size(), 5u);
  NodeId q = a.topo.node_by_label("q");
  EXPECT_TRUE(a.topo.has_edge(q, a.topo.node_by_label("g0:c")));
  EXPECT_TRUE(a.topo.has_edge(q, a.topo.node_by_label("g1:c")));
  for (NodeId c : a.topo.nodes_with_prefix("C")) EXPECT_TRUE(a.topo.has_edge(q, c));
}

TEST(NetworkA, DiameterMatchesParameterFromSix) {
  for (std::uint32_t D : {6u, 8u, 10u}) {
    auto a = build_network_a(D, D);
    EXPECT_EQ(a.topo.n, a.params.n_prime);
    EXPECT_EQ(a.topo.diameter, static_cast<int>(D)) << "D=" << D;
    EXPECT_EQ(a.topo.diameter, fw_diameter(a.topo));
  }
}

TEST(NetworkA, DiameterAtFourIsSix) {
  // The connector path keeps ap2 at graph distance 2 from c, so the two-copy
  // network bottoms out at diameter 6 no matter how short the chain is.
  auto a = build_network_a(4, 4);
  EXPECT_EQ(a.topo.diameter, 6);
}

TEST(NetworkB, SizeDiameterAndSymmetry) {
  for (std::uint32_t D : {4u, 6u, 8u, 10u}) {
    auto b = build_network_b(D, D);
    EXPECT_EQ(b.topo.n, b.params.n_prime) << "D=" << D;
    EXPECT_EQ(b.topo.diameter, static_cast<int>(D)) << "D=" << D;
    std::string why;
    EXPECT_TRUE(validate_copy_symmetry(b.topo, b.params, b.mapping, &why)) << why;
  }
}

TEST(NetworkB, MutationBreaksSymmetry) {
  auto b = build_network_b(6, 6);
  // rewire one inter-copy connector edge: c of copy 0 swaps its ap3 neighbor
  // from copy 1 to copy 2
  NodeId c0 = b.topo.node_by_label("g0:c");
  NodeId ap3_1 = b.topo.node_by_label("g1:ap3");
  NodeId ap3_2 = b.topo.node_by_label("g2:ap3");
  Topology mutated = b.topo;
  auto drop_edge = [](Topology& t, NodeId u, NodeId v) {
    std::erase(t.adj[u], v);
    std::erase(t.adj[v], u);
  };
  drop_edge(mutated, c0, ap3_1);
  mutated.add_edge(c0, ap3_2);
  mutated.finalize();
  std::string why;
  EXPECT_FALSE(validate_copy_symmetry(mutated, b.params, b.mapping, &why));
  EXPECT_FALSE(why.empty());
}

TEST(NetworkB, SuPairsCoverGadget) {
  auto a = build_network_a(6, 6);
  auto b = build_network_b(6, 6);
  auto pairs0 = su_pairs(a, b, 0);
  // three B-copies per gadget node
  EXPECT_EQ(pairs0.size(), 3u * a.topo.nodes_with_prefix("g0:").size());
  auto pairs1 = su_pairs(a, b, 1);
  EXPECT_EQ(pairs1.size(), pairs0.size());
}

TEST(Loader, RoundTripAndErrors) {
  auto k4 = build_kd(4);
  std::string path = (std::filesystem::temp_directory_path() / "macsim_k4.edges").string();
  save_topology(k4, path);
  auto loaded = load_topology(path);
  EXPECT_EQ(loaded.n, k4.n);
  EXPECT_EQ(loaded.edge_count(), k4.edge_count());
  EXPECT_EQ(loaded.diameter, k4.diameter);
  for (NodeId u = 0; u < k4.n; ++u) EXPECT_EQ(loaded.adj[u], k4.adj[u]);
  std::remove(path.c_str());

  std::string bad = (std::filesystem::temp_directory_path() / "macsim_bad.edges").string();
  {
    std::ofstream out(bad);
    out << "# two disconnected pairs\n4\n0 1\n2 3\n";
  }
  EXPECT_THROW(load_topology(bad), TopologyError);
  std::remove(bad.c_str());
}

TEST(RandomGraph, DeterministicAndConnected) {
  auto g1 = build_random_connected(12, 7);
  auto g2 = build_random_connected(12, 7);
  EXPECT_EQ(g1.adj, g2.adj);
  auto g3 = build_random_connected(12, 8);
  EXPECT_NE(g1.adj, g3.adj);
  EXPECT_GE(g1.diameter, 1);
}

TEST(Diameter, KnownGraphs) {
  EXPECT_EQ(build_clique(6).diameter, 1);
  EXPECT_EQ(build_line(7).diameter, 7);
  EXPECT_EQ(build_kd(6).diameter, 6);
}

}  // namespace
