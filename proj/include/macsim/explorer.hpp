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

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "macsim/engine.hpp"

namespace macsim {

struct ExploreConfig {
  int crash_budget = 0;
  std::uint32_t max_depth = 100000;
  std::uint64_t max_states = 50000000;
  bool memoize = true;  // prune by state digest; off = enumerate raw paths
};

struct ExploreStats {
  std::uint64_t states_visited = 0;
  std::uint64_t terminal_states = 0;  // every alive node decided
  std::uint64_t blocked_states = 0;   // no valid step left, someone undecided
  std::uint64_t paths = 0;            // complete executions (memoize = false)
  bool truncated = false;
  std::uint64_t agreement_violations = 0;
  std::uint64_t validity_violations = 0;
  bool decided0_reachable = false;
  bool decided1_reachable = false;
  // valency classification of explored states, from cached reachability
  std::uint64_t bivalent_states = 0;
  std::uint64_t univalent0_states = 0;
  std::uint64_t univalent1_states = 0;
  std::uint64_t undecided_states = 0;  // no deciding extension found
  std::vector<std::vector<ValidStep>> violation_examples;
  std::optional<std::vector<ValidStep>> decided0_example;
  std::optional<std::vector<ValidStep>> decided1_example;
};

namespace detail {
constexpr std::uint8_t kReach0 = 1;
constexpr std::uint8_t kReach1 = 2;
constexpr std::uint8_t kReachBlocked = 4;
constexpr std::uint8_t kReachViolation = 8;
constexpr std::uint8_t kTruncated = 128;
}  // namespace detail

/// Exhaustively explores every valid-step interleaving (plus crash choices
/// up to the budget) from the initial configuration. With memoization the
/// walk covers every reachable state once; every execution's states are a
/// subset of the explored graph, so per-execution properties (agreement,
/// validity, termination of complete runs) are checked exhaustively.
template <class P>
class Explorer {
 public:
  Explorer(const Topology& topo, SimConfig cfg, std::vector<P> initial, ExploreConfig ec)
      : topo_(&topo), cfg_(std::move(cfg)), initial_(std::move(initial)), ec_(ec) {}

  ExploreStats run() {
    Engine<P> root(*topo_, cfg_, initial_);
    root.init_all();
    std::vector<ValidStep> path;
    dfs(root, ec_.crash_budget, 0, path);
    stats_.states_visited = ec_.memoize ? memo_.size() : dfs_nodes_;
    for (const auto& [k, m] : memo_) {
      bool r0 = m & detail::kReach0, r1 = m & detail::kReach1;
      if (r0 && r1)
        ++stats_.bivalent_states;
      else if (r0)
        ++stats_.univalent0_states;
      else if (r1)
        ++stats_.univalent1_states;
      else
        ++stats_.undecided_states;
    }
    return stats_;
  }

 private:
  std::uint8_t dfs(Engine<P>& e, int budget, std::uint32_t depth, std::vector<ValidStep>& path) {
    ++dfs_nodes_;
    if (e.all_alive_decided()) return classify_terminal(e, path);
    if (depth >= ec_.max_depth || dfs_nodes_ > ec_.max_states) {
      stats_.truncated = true;
      return detail::kTruncated;
    }
    std::pair<std::uint64_t, std::uint64_t> key{0, 0};
    if (ec_.memoize) {
      key = e.memo_hash();
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    auto steps = e.valid_steps(budget > 0);
    if (steps.empty()) {
      ++stats_.blocked_states;
      return detail::kReachBlocked;
    }
    std::uint8_t mask = 0;
    bool truncated_below = false;
    for (const auto& s : steps) {
      Engine<P> child = e;
      child.apply_step(s);
      path.push_back(s);
      std::uint8_t r = dfs(child, s.kind == ValidStep::Kind::Crash ? budget - 1 : budget,
                           depth + 1, path);
      path.pop_back();
      if (r & detail::kTruncated) truncated_below = true;
      mask |= static_cast<std::uint8_t>(r & ~detail::kTruncated);
    }
    if (truncated_below) return static_cast<std::uint8_t>(mask | detail::kTruncated);
    if (ec_.memoize && memo_.size() < ec_.max_states) memo_.emplace(key, mask);
    return mask;
  }

  std::uint8_t classify_terminal(Engine<P>& e, const std::vector<ValidStep>& path) {
    ++stats_.terminal_states;
    ++stats_.paths;
    std::set<int> decided;
    bool valid = true;
    for (NodeId v = 0; v < topo_->n; ++v) {
      auto d = e.decision(v);
      if (!d) continue;
      decided.insert(*d);
      bool found = false;
      for (NodeId u = 0; u < topo_->n; ++u)
        if (initial_[u].initial_value() == *d) found = true;
      if (!found) valid = false;
    }
    std::uint8_t mask = 0;
    if (decided.count(0)) {
      mask |= detail::kReach0;
      stats_.decided0_reachable = true;
      if (!stats_.decided0_example) stats_.decided0_example = path;
    }
    if (decided.count(1)) {
      mask |= detail::kReach1;
      stats_.decided1_reachable = true;
      if (!stats_.decided1_example) stats_.decided1_example = path;
    }
    if (decided.size() > 1) {
      ++stats_.agreement_violations;
      mask |= detail::kReachViolation;
      if (stats_.violation_examples.size() < 3) stats_.violation_examples.push_back(path);
    }
    if (!valid) {
      ++stats_.validity_violations;
      mask |= detail::kReachViolation;
      if (stats_.violation_examples.size() < 3) stats_.violation_examples.push_back(path);
    }
    return mask;
  }

  const Topology* topo_;
  SimConfig cfg_;
  std::vector<P> initial_;
  ExploreConfig ec_;
  ExploreStats stats_;
  std::uint64_t dfs_nodes_ = 0;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint8_t> memo_;
};

template <class P>
ExploreStats enumerate_valid_executions(const Topology& topo, const SimConfig& cfg,
                                        std::vector<P> initial, int crash_budget,
                                        std::uint32_t depth = 100000, bool memoize = true) {
  ExploreConfig ec;
  ec.crash_budget = crash_budget;
  ec.max_depth = depth;
  ec.memoize = memoize;
  Explorer<P> ex(topo, cfg, std::move(initial), ec);
  return ex.run();
}

/// Number of distinct valid-step sequences of exactly `depth` steps.
template <class P>
std::uint64_t count_step_sequences(const Topology& topo, const SimConfig& cfg,
                                   const std::vector<P>& initial, std::uint32_t depth) {
  Engine<P> root(topo, cfg, initial);
  root.init_all();
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, Engine<P>& e, std::uint32_t left) -> void {
    if (left == 0) {
      ++count;
      return;
    }
    for (const auto& s : e.valid_steps(false)) {
      Engine<P> child = e;
      child.apply_step(s);
      self(self, child, left - 1);
    }
  };
  rec(rec, root, depth);
  return count;
}

/// Replays an explored step path with full trace recording.
template <class P>
ExecutionTrace replay_steps(const Topology& topo, const SimConfig& cfg, std::vector<P> initial,
                            const std::vector<ValidStep>& path,
                            typename Engine<P>::RunMeta meta = {}) {
  Engine<P> e(topo, cfg, std::move(initial));
  return e.run_steps(path, std::move(meta));
}

}  // namespace macsim
