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

#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "macsim/core.hpp"

namespace macsim {

/// Undirected connected graph over node indices 0..n-1 plus role labels.
/// The diameter is always the BFS-computed eccentricity maximum.
struct Topology {
  std::uint32_t n = 0;
  std::vector<std::vector<NodeId>> adj;  // sorted neighbor lists
  std::vector<std::string> labels;       // per-node role label, may be empty
  int diameter = 0;
  std::string family;

  void add_edge(NodeId u, NodeId v) {
    if (u == v) throw TopologyError("self-loop rejected");
    if (u >= n || v >= n) throw TopologyError("edge endpoint out of range");
    if (has_edge(u, v)) return;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  bool has_edge(NodeId u, NodeId v) const {
    return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
  }

  std::size_t edge_count() const {
    std::size_t d = 0;
    for (const auto& a : adj) d += a.size();
    return d / 2;
  }

  std::vector<int> bfs_dist(NodeId src) const {
    std::vector<int> dist(n, -1);
    std::deque<NodeId> q{src};
    dist[src] = 0;
    while (!q.empty()) {
      NodeId u = q.front();
      q.pop_front();
      for (NodeId v : adj[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push_back(v);
        }
    }
    return dist;
  }

  /// Sorts adjacency, checks connectivity, computes the diameter.
  void finalize() {
    int dia = 0;
    for (auto& a : adj) std::sort(a.begin(), a.end());
    for (NodeId s = 0; s < n; ++s) {
      auto d = bfs_dist(s);
      for (NodeId v = 0; v < n; ++v) {
        if (d[v] < 0) throw TopologyError("graph is disconnected");
        dia = std::max(dia, d[v]);
      }
    }
    diameter = dia;
  }

  NodeId node_by_label(std::string_view label) const {
    for (NodeId v = 0; v < n; ++v)
      if (labels[v] == label) return v;
    throw TopologyError("no node labeled '" + std::string(label) + "'");
  }

  std::vector<NodeId> nodes_with_prefix(std::string_view prefix) const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < n; ++v)
      if (labels[v].rfind(prefix, 0) == 0) out.push_back(v);
    return out;
  }

  static Topology empty(std::uint32_t n, std::string family) {
    Topology t;
    t.n = n;
    t.adj.resize(n);
    t.labels.resize(n);
    t.family = std::move(family);
    return t;
  }
};

inline Topology build_clique(std::uint32_t n) {
  if (n < 2) throw TopologyError("clique needs n >= 2");
  auto t = Topology::empty(n, "clique");
  for (NodeId u = 0; u < n; ++u) {
    t.labels[u] = "v" + std::to_string(u);
    for (NodeId v = u + 1; v < n; ++v) t.add_edge(u, v);
  }
  t.finalize();
  return t;
}

/// L_d: d+1 nodes in a line, indices in line order.
inline Topology build_line(std::uint32_t d) {
  if (d < 1) throw TopologyError("line needs d >= 1");
  auto t = Topology::empty(d + 1, "line");
  for (NodeId u = 0; u <= d; ++u) t.labels[u] = "u" + std::to_string(u);
  for (NodeId u = 0; u < d; ++u) t.add_edge(u, u + 1);
  t.finalize();
  return t;
}

/// K_D: two copies of L_D plus the line L_{D-1} (D nodes), with an edge from
/// every node of both copies to one fixed endpoint of the short line.
/// Index layout: copy 1 = 0..D, copy 2 = D+1..2D+1, short line = 2D+2..3D+1
/// with the shared endpoint at index 2D+2.
inline Topology build_kd(std::uint32_t capD) {
  if (capD <= 1) throw TopologyError("kd needs D > 1");
  const std::uint32_t n = 2 * (capD + 1) + capD;
  auto t = Topology::empty(n, "kd");
  auto l1 = [&](std::uint32_t i) { return NodeId(i); };
  auto l2 = [&](std::uint32_t i) { return NodeId(capD + 1 + i); };
  auto m = [&](std::uint32_t i) { return NodeId(2 * (capD + 1) + i); };
  for (std::uint32_t i = 0; i <= capD; ++i) {
    t.labels[l1(i)] = "L1:" + std::to_string(i);
    t.labels[l2(i)] = "L2:" + std::to_string(i);
    if (i < capD) {
      t.add_edge(l1(i), l1(i + 1));
      t.add_edge(l2(i), l2(i + 1));
    }
  }
  for (std::uint32_t i = 0; i < capD; ++i) {
    t.labels[m(i)] = "M:" + std::to_string(i);
    if (i + 1 < capD) t.add_edge(m(i), m(i + 1));
  }
  for (std::uint32_t i = 0; i <= capD; ++i) {
    t.add_edge(l1(i), m(0));
    t.add_edge(l2(i), m(0));
  }
  t.finalize();
  return t;
}

/// Parameters shared by the gadget networks: d = (D-2)/2 and the smallest k
/// with 3(d+k)+12 >= n; the resulting node count is n' = 3(d+k)+12.
struct GadgetParams {
  std::uint32_t d = 0;
  std::uint32_t k = 0;
  std::uint32_t n_prime = 0;

  static GadgetParams from(std::uint32_t capD, std::uint32_t n) {
    if (capD < 4 || capD % 2 != 0) throw TopologyError("gadget networks need even D >= 4");
    if (n < capD) throw TopologyError("gadget networks need n >= D");
    GadgetParams p;
    p.d = (capD - 2) / 2;
    while (3 * (p.d + p.k) + 12 < n) ++p.k;
    p.n_prime = 3 * (p.d + p.k) + 12;
    if (p.d == 1 && p.k > 0)
      throw TopologyError("infeasible gadget: with d=1 there is no chain node to carry the k extra leaves");
    return p;
  }
};

namespace detail {

/// Abstract gadget: position names and edges. Positions: a1..a<d> (chain,
/// with a<d> hanging off a<d-1>), as1..as<k> (leaves on a<d-1>), ap2..ap4
/// (the connector path), and c. The connector-level edges are those at c.
struct GadgetShape {
  std::vector<std::string> positions;
  std::vector<std::pair<std::string, std::string>> inner_edges;      // copied per copy
  std::vector<std::pair<std::string, std::string>> connector_edges;  // edges at c

  static GadgetShape make(const GadgetParams& p) {
    GadgetShape g;
    for (std::uint32_t i = 1; i <= p.d; ++i) g.positions.push_back("a" + std::to_string(i));
    for (std::uint32_t j = 1; j <= p.k; ++j) g.positions.push_back("as" + std::to_string(j));
    g.positions.push_back("ap2");
    g.positions.push_back("ap3");
    g.positions.push_back("ap4");
    g.positions.push_back("c");
    for (std::uint32_t i = 1; i + 1 < p.d; ++i)
      g.inner_edges.emplace_back("a" + std::to_string(i), "a" + std::to_string(i + 1));
    if (p.d >= 2) g.inner_edges.emplace_back("a" + std::to_string(p.d - 1), "a" + std::to_string(p.d));
    for (std::uint32_t j = 1; j <= p.k; ++j)
      g.inner_edges.emplace_back("a" + std::to_string(p.d - 1), "as" + std::to_string(j));
    g.inner_edges.emplace_back("a1", "ap2");
    g.inner_edges.emplace_back("ap2", "ap3");
    g.inner_edges.emplace_back("ap3", "ap4");
    g.connector_edges.emplace_back("c", "a1");
    g.connector_edges.emplace_back("c", "ap3");
    g.connector_edges.emplace_back("c", "ap4");
    return g;
  }

  std::vector<std::pair<std::string, std::string>> all_edges() const {
    auto e = inner_edges;
    e.insert(e.end(), connector_edges.begin(), connector_edges.end());
    return e;
  }
};

}  // namespace detail

struct NetworkA {
  Topology topo;
  GadgetParams params;
};

/// S_u classes: for each gadget position, the three nodes of network B that
/// occupy that position (one per copy).
struct NodeMapping {
  std::vector<std::pair<std::string, std::array<NodeId, 3>>> classes;

  const std::array<NodeId, 3>& of(std::string_view position) const {
    for (const auto& [p, trio] : classes)
      if (p == position) return trio;
    throw TopologyError("unknown gadget position '" + std::string(position) + "'");
  }
};

struct NetworkB {
  Topology topo;
  GadgetParams params;
  NodeMapping mapping;
};

/// Two gadget copies joined through the bridge q at their c nodes, plus a
/// clique C on q sized so the total matches network B's node count.
inline NetworkA build_network_a(std::uint32_t capD, std::uint32_t n) {
  auto params = GadgetParams::from(capD, n);
  auto shape = detail::GadgetShape::make(params);
  const std::uint32_t gsz = static_cast<std::uint32_t>(shape.positions.size());  // d+k+4
  const std::uint32_t csz = params.n_prime - 2 * gsz - 1;                        // d+k+3
  auto t = Topology::empty(params.n_prime, "netA");

  std::array<std::vector<NodeId>, 2> copy_ids;
  NodeId next = 0;
  for (int cp = 0; cp < 2; ++cp) {
    for (const auto& pos : shape.positions) {
      t.labels[next] = "g" + std::to_string(cp) + ":" + pos;
      copy_ids[cp].push_back(next++);
    }
  }
  const NodeId q = next++;
  t.labels[q] = "q";
  std::vector<NodeId> cnodes;
  for (std::uint32_t i = 0; i < csz; ++i) {
    t.labels[next] = "C" + std::to_string(i);
    cnodes.push_back(next++);
  }

  auto pos_index = [&](const std::string& p) {
    auto it = std::find(shape.positions.begin(), shape.positions.end(), p);
    return static_cast<std::uint32_t>(it - shape.positions.begin());
  };
  for (int cp = 0; cp < 2; ++cp)
    for (const auto& [a, b] : shape.all_edges())
      t.add_edge(copy_ids[cp][pos_index(a)], copy_ids[cp][pos_index(b)]);
  t.add_edge(q, copy_ids[0][pos_index("c")]);
  t.add_edge(q, copy_ids[1][pos_index("c")]);
  for (NodeId cn : cnodes) t.add_edge(q, cn);
  for (std::size_t i = 0; i < cnodes.size(); ++i)
    for (std::size_t j = i + 1; j < cnodes.size(); ++j) t.add_edge(cnodes[i], cnodes[j]);
  t.finalize();
  return NetworkA{std::move(t), params};
}

/// Checks the copy-symmetry property on a built network B: every copy u' of
/// a gadget node u is adjacent to exactly one member of S_v for each gadget
/// neighbor v of u, and has no other edges.
inline bool validate_copy_symmetry(const Topology& b, const GadgetParams& params,
                                   const NodeMapping& mapping, std::string* why = nullptr) {
  auto shape = detail::GadgetShape::make(params);
  std::vector<std::pair<std::string, std::string>> edges = shape.all_edges();
  auto neighbors_of = [&](const std::string& p) {
    std::vector<std::string> out;
    for (const auto& [x, y] : edges) {
      if (x == p) out.push_back(y);
      if (y == p) out.push_back(x);
    }
    return out;
  };
  for (const auto& pos : shape.positions) {
    auto nbrs = neighbors_of(pos);
    for (int cp = 0; cp < 3; ++cp) {
      NodeId u = mapping.of(pos)[cp];
      if (b.adj[u].size() != nbrs.size()) {
        if (why) *why = "degree of " + b.labels[u] + " is " + std::to_string(b.adj[u].size()) +
                        ", expected " + std::to_string(nbrs.size());
        return false;
      }
      for (const auto& v : nbrs) {
        const auto& trio = mapping.of(v);
        int hits = 0;
        for (NodeId w : trio)
          if (b.has_edge(u, w)) ++hits;
        if (hits != 1) {
          if (why) *why = b.labels[u] + " has " + std::to_string(hits) +
                          " edges into the copy class of '" + v + "', expected 1";
          return false;
        }
      }
    }
  }
  return true;
}

/// Three gadget copies, with the connector-level edges rewired by cyclic
/// permutations: c_i keeps a1 of its own copy, takes ap3 from copy i+1 and
/// ap4 from copy i+2. Construction aborts if the symmetry validator fails.
inline NetworkB build_network_b(std::uint32_t capD, std::uint32_t n) {
  auto params = GadgetParams::from(capD, n);
  auto shape = detail::GadgetShape::make(params);
  const std::uint32_t gsz = static_cast<std::uint32_t>(shape.positions.size());
  auto t = Topology::empty(3 * gsz, "netB");

  std::array<std::vector<NodeId>, 3> copy_ids;
  NodeId next = 0;
  for (int cp = 0; cp < 3; ++cp) {
    for (const auto& pos : shape.positions) {
      t.labels[next] = "g" + std::to_string(cp) + ":" + pos;
      copy_ids[cp].push_back(next++);
    }
  }
  auto pos_index = [&](const std::string& p) {
    auto it = std::find(shape.positions.begin(), shape.positions.end(), p);
    return static_cast<std::uint32_t>(it - shape.positions.begin());
  };
  for (int cp = 0; cp < 3; ++cp)
    for (const auto& [a, b] : shape.inner_edges)
      t.add_edge(copy_ids[cp][pos_index(a)], copy_ids[cp][pos_index(b)]);
  // Connector rewiring: (c,a1) stays in-copy, (c,ap3) shifts by one copy,
  // (c,ap4) shifts by two.
  for (int cp = 0; cp < 3; ++cp) {
    t.add_edge(copy_ids[cp][pos_index("c")], copy_ids[cp][pos_index("a1")]);
    t.add_edge(copy_ids[cp][pos_index("c")], copy_ids[(cp + 1) % 3][pos_index("ap3")]);
    t.add_edge(copy_ids[cp][pos_index("c")], copy_ids[(cp + 2) % 3][pos_index("ap4")]);
  }
  t.finalize();

  NodeMapping mapping;
  for (const auto& pos : shape.positions) {
    std::uint32_t pi = pos_index(pos);
    mapping.classes.push_back({pos, {copy_ids[0][pi], copy_ids[1][pi], copy_ids[2][pi]}});
  }
  std::string why;
  if (!validate_copy_symmetry(t, params, mapping, &why))
    throw TopologyError("network B construction violates copy symmetry: " + why);
  return NetworkB{std::move(t), params, std::move(mapping)};
}

/// Pairs (node of network A, node of network B) for one gadget copy of A:
/// each A-node of copy `a_copy` maps to all three B-nodes at its position.
inline std::vector<std::pair<NodeId, NodeId>> su_pairs(const NetworkA& a, const NetworkB& b,
                                                       int a_copy) {
  std::vector<std::pair<NodeId, NodeId>> out;
  std::string prefix = "g" + std::to_string(a_copy) + ":";
  for (NodeId v = 0; v < a.topo.n; ++v) {
    const std::string& lab = a.topo.labels[v];
    if (lab.rfind(prefix, 0) != 0) continue;
    const auto& trio = b.mapping.of(lab.substr(prefix.size()));
    for (NodeId w : trio) out.emplace_back(v, w);
  }
  return out;
}

inline int diameter(const Topology& t) { return t.diameter; }

/// Seeded random connected graph: a random attachment tree plus extra edges.
inline Topology build_random_connected(std::uint32_t n, std::uint64_t seed, double extra = 0.25) {
  if (n < 2) throw TopologyError("random graph needs n >= 2");
  std::mt19937_64 rng(mix64(seed ^ 0xc0ffee));
  auto t = Topology::empty(n, "random");
  for (NodeId v = 0; v < n; ++v) t.labels[v] = "v" + std::to_string(v);
  for (NodeId v = 1; v < n; ++v) {
    std::uniform_int_distribution<NodeId> pick(0, v - 1);
    t.add_edge(v, pick(rng));
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (!t.has_edge(u, v) && coin(rng) < extra) t.add_edge(u, v);
  t.finalize();
  return t;
}

/// Edge-list file: first line `n`, then `u v` pairs (0-based); `#` comments.
inline Topology load_topology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TopologyError("cannot open topology file: " + path);
  std::string line;
  Topology t;
  bool have_n = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    if (!have_n) {
      std::int64_t n;
      if (!(is >> n)) continue;
      if (n < 1) throw TopologyError("bad node count at line " + std::to_string(lineno));
      t = Topology::empty(static_cast<std::uint32_t>(n), "file");
      for (NodeId v = 0; v < t.n; ++v) t.labels[v] = "v" + std::to_string(v);
      have_n = true;
      continue;
    }
    std::int64_t u, v;
    if (!(is >> u)) continue;
    if (!(is >> v)) throw TopologyError("dangling edge endpoint at line " + std::to_string(lineno));
    if (u < 0 || v < 0 || u >= t.n || v >= t.n)
      throw TopologyError("edge endpoint out of range at line " + std::to_string(lineno));
    t.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  if (!have_n) throw TopologyError("empty topology file: " + path);
  t.finalize();  // rejects disconnected graphs
  return t;
}

inline void save_topology(const Topology& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw TopologyError("cannot write topology file: " + path);
  out << t.n << "\n";
  for (NodeId u = 0; u < t.n; ++u)
    for (NodeId v : t.adj[u])
      if (u < v) out << u << " " << v << "\n";
}

}  // namespace macsim
