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
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "macsim/core.hpp"
#include "macsim/topology.hpp"

namespace macsim {

struct ScheduledDelivery {
  NodeId target = 0;
  VTime time = 0;
};

struct InstanceInfo {
  NodeId sender = 0;
  std::uint64_t seq = 0;
  VTime issue = 0;
};

/// Timing policy: at each broadcast it fixes every neighbor's receive time
/// and the ack time. The engine enforces the model contract on the result:
/// receives strictly after the issue and no later than the ack, ack within
/// f_ack of the release point (the release equals the issue unless the
/// policy deliberately withholds the message).
class Scheduler {
 public:
  virtual ~Scheduler() = default;
  virtual std::string name() const = 0;
  virtual void schedule(const InstanceInfo& info, std::span<const NodeId> targets, VTime f_ack,
                        std::vector<ScheduledDelivery>& deliveries, VTime& ack_time,
                        VTime& release_time) = 0;
};

/// Lock-step rounds one time unit apart: deliver everything pending, then
/// ack every sender.
class SynchronousScheduler final : public Scheduler {
 public:
  std::string name() const override { return "sync"; }
  void schedule(const InstanceInfo& info, std::span<const NodeId> targets, VTime,
                std::vector<ScheduledDelivery>& deliveries, VTime& ack_time,
                VTime& release_time) override {
    for (NodeId t : targets) deliveries.push_back({t, info.issue + 1});
    ack_time = info.issue + 1;
    release_time = info.issue;
  }
};

/// Lock-step rounds spaced exactly f_ack apart; with f_ack=1 this reduces to
/// the synchronous scheduler.
class MaxDelayScheduler final : public Scheduler {
 public:
  std::string name() const override { return "maxdelay"; }
  void schedule(const InstanceInfo& info, std::span<const NodeId> targets, VTime f_ack,
                std::vector<ScheduledDelivery>& deliveries, VTime& ack_time,
                VTime& release_time) override {
    for (NodeId t : targets) deliveries.push_back({t, info.issue + f_ack});
    ack_time = info.issue + f_ack;
    release_time = info.issue;
  }
};

/// Per-receiver delays drawn uniformly from [1, f_ack]; the ack lands
/// between the last receive and the f_ack bound. Reproducible per seed.
class RandomScheduler final : public Scheduler {
 public:
  explicit RandomScheduler(std::uint64_t seed) : seed_(seed), rng_(mix64(seed)) {}
  std::string name() const override { return "random:seed=" + std::to_string(seed_); }
  void schedule(const InstanceInfo& info, std::span<const NodeId> targets, VTime f_ack,
                std::vector<ScheduledDelivery>& deliveries, VTime& ack_time,
                VTime& release_time) override {
    std::uniform_int_distribution<VTime> delay(1, f_ack);
    VTime last = 1;
    for (NodeId t : targets) {
      VTime d = delay(rng_);
      last = std::max(last, d);
      deliveries.push_back({t, info.issue + d});
    }
    std::uniform_int_distribution<VTime> ackd(last, f_ack);
    ack_time = info.issue + ackd(rng_);
    release_time = info.issue;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

/// For K_D runs: synchronous everywhere, except that messages from the
/// shared endpoint of the short line towards either L_D copy are withheld
/// until round t+1. A withheld broadcast's delay window restarts at its
/// release, and the run's exhibited F_ack grows accordingly.
class SemiSynchronousScheduler final : public Scheduler {
 public:
  SemiSynchronousScheduler(const Topology& topo, VTime t) : t_(t) {
    if (topo.family != "kd")
      throw ConfigError("the semi-synchronous scheduler requires a kd topology");
    endpoint_ = topo.node_by_label("M:0");
    copy_member_.assign(topo.n, false);
    for (NodeId v : topo.nodes_with_prefix("L1:")) copy_member_[v] = true;
    for (NodeId v : topo.nodes_with_prefix("L2:")) copy_member_[v] = true;
  }
  std::string name() const override { return "semisync:t=" + std::to_string(t_); }
  void schedule(const InstanceInfo& info, std::span<const NodeId> targets, VTime,
                std::vector<ScheduledDelivery>& deliveries, VTime& ack_time,
                VTime& release_time) override {
    VTime last = info.issue + 1;
    for (NodeId tgt : targets) {
      VTime when = info.issue + 1;
      if (info.sender == endpoint_ && copy_member_[tgt] && info.issue <= t_)
        when = std::max(when, t_ + 1);
      last = std::max(last, when);
      deliveries.push_back({tgt, when});
    }
    ack_time = last;
    release_time = last - 1;
  }

 private:
  VTime t_;
  NodeId endpoint_;
  std::vector<bool> copy_member_;
};

/// For network A runs: synchronous everywhere, except that every delivery
/// from the bridge node q is withheld until round t+1.
class DelayedBridgeScheduler final : public Scheduler {
 public:
  DelayedBridgeScheduler(const Topology& topo, VTime t) : t_(t) {
    if (topo.family != "netA")
      throw ConfigError("the delayed-bridge scheduler requires a netA topology");
    bridge_ = topo.node_by_label("q");
  }
  std::string name() const override { return "bridge:t=" + std::to_string(t_); }
  void schedule(const InstanceInfo& info, std::span<const NodeId> targets, VTime,
                std::vector<ScheduledDelivery>& deliveries, VTime& ack_time,
                VTime& release_time) override {
    VTime when = info.issue + 1;
    if (info.sender == bridge_ && info.issue <= t_) when = std::max(when, t_ + 1);
    for (NodeId tgt : targets) deliveries.push_back({tgt, when});
    ack_time = when;
    release_time = when - 1;
  }

 private:
  VTime t_;
  NodeId bridge_;
};

/// Parses `sync | semisync:t=<int> | bridge:t=<int> | maxdelay |
/// random:seed=<int>`. The exhaustive explorer is driven separately (see
/// explorer.hpp); harness code handles that spec before calling this.
inline std::unique_ptr<Scheduler> make_scheduler(const std::string& spec, const Topology& topo) {
  auto arg_of = [&](const std::string& s, const std::string& key) -> std::int64_t {
    auto pos = s.find(key + "=");
    if (pos == std::string::npos) throw ConfigError("scheduler spec '" + s + "' needs " + key + "=<int>");
    return std::stoll(s.substr(pos + key.size() + 1));
  };
  if (spec == "sync") return std::make_unique<SynchronousScheduler>();
  if (spec == "maxdelay") return std::make_unique<MaxDelayScheduler>();
  if (spec.rfind("random", 0) == 0)
    return std::make_unique<RandomScheduler>(static_cast<std::uint64_t>(arg_of(spec, "seed")));
  if (spec.rfind("semisync", 0) == 0)
    return std::make_unique<SemiSynchronousScheduler>(topo, arg_of(spec, "t"));
  if (spec.rfind("bridge", 0) == 0)
    return std::make_unique<DelayedBridgeScheduler>(topo, arg_of(spec, "t"));
  throw ConfigError("unknown scheduler spec: " + spec);
}

}  // namespace macsim
