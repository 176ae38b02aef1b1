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

#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "macsim/core.hpp"
#include "macsim/topology.hpp"

namespace macsim {

enum class EventKind : std::uint8_t { Receive = 0, Ack = 1, Crash = 2, Decide = 3 };

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::Receive: return "receive";
    case EventKind::Ack: return "ack";
    case EventKind::Crash: return "crash";
    case EventKind::Decide: return "decide";
  }
  return "?";
}

inline constexpr std::uint32_t kNoInstance = std::numeric_limits<std::uint32_t>::max();

struct SimEvent {
  std::uint32_t step = 0;  // global sequence number, strictly increasing
  VTime time = 0;
  EventKind kind = EventKind::Receive;
  NodeId node = 0;    // receive target / acked sender / crashed node / decider
  NodeId sender = 0;  // broadcast sender (receive/ack), else == node
  std::uint64_t seq = 0;
  std::uint32_t instance = kNoInstance;
  std::string summary;
};

// ---------------------------------------------------------------------------
// Structured payload records for the count audit. The wire carries at most
// one aggregated acceptor response per bundle; its fields are mirrored here
// so a post-hoc checker can re-derive every queue/in-flight count.

struct AuditPropNum {
  std::uint64_t tag = 0;
  NodeId id = 0;
  friend auto operator<=>(const AuditPropNum&, const AuditPropNum&) = default;
};

struct AuditPropKey {
  NodeId proposer = 0;
  std::uint8_t type = 0;  // 0 = prepare, 1 = propose
  AuditPropNum num;
  friend auto operator<=>(const AuditPropKey&, const AuditPropKey&) = default;
};

struct AuditResp {
  AuditPropKey key;
  bool positive = true;
  std::uint64_t count = 1;
  bool has_prior = false;
  AuditPropNum prior_num;
  int prior_value = 0;
  bool has_committed = false;
  AuditPropNum committed;
  NodeId dest = kNoNode;
};

struct AuditEvent {
  enum class Kind : std::uint8_t {
    RespGen,        // acceptor generated a response (count 1)
    RespRelay,      // relay re-queued a received response under a new dest
    RespConsume,    // originator absorbed an addressed response
    RespDrop,       // a queued/received response was discarded
    ChangeGen,      // a node observed a leader/tree change
    ProposalStart,  // proposer began a proposition
    StatusAssigned, // two-phase status choice at the phase-1 ack
    DecideOrigin,   // a proposer reached majority accepts
  };
  Kind kind = Kind::RespGen;
  std::uint32_t step = 0;
  NodeId node = 0;
  AuditResp resp;
  std::uint64_t a = 0;  // kind-specific scalar (timestamp, tag, status, value)
  std::uint64_t b = 0;
  std::string note;
};

struct ReceiveRecord {
  NodeId target = 0;
  VTime time = 0;
  std::uint32_t step = 0;
};

struct InstanceRecord {
  std::uint32_t id = 0;
  NodeId sender = 0;
  std::uint64_t seq = 0;
  VTime issue_time = 0;
  VTime release_time = 0;        // == issue_time unless the scheduler withheld it
  std::int64_t ack_time = -1;    // -1: never acked (run truncation or crash)
  std::uint32_t ack_step = 0;
  std::uint32_t issue_step = 0;  // step count at the moment of issue
  std::vector<NodeId> planned;   // alive neighbors at issue
  std::vector<ReceiveRecord> receives;
  int id_fields = 0;
  std::string summary;
  std::vector<AuditResp> resp_components;  // aggregated responses on this wire message
};

struct StateHashRecord {
  std::uint32_t step = 0;
  VTime time = 0;
  std::uint64_t hash = 0;
};

/// Complete record of one run: the event sequence, every broadcast instance,
/// decisions, per-node state digests, and protocol-level audit records.
struct ExecutionTrace {
  // config record
  VTime f_ack = 1;
  int id_capacity = 12;
  bool anonymous_mode = false;
  VTime horizon = 0;
  std::string protocol_name, scheduler_name;
  std::uint64_t seed = 0;

  Topology topo;
  std::vector<NodeId> ext_ids;     // protocol-visible id per node index
  std::vector<int> initial_values;

  std::vector<SimEvent> events;
  std::vector<InstanceRecord> instances;
  std::vector<AuditEvent> audits;
  std::vector<std::vector<StateHashRecord>> state_hashes;

  std::vector<std::optional<int>> decisions;
  std::vector<VTime> decide_times;
  std::vector<std::uint32_t> decide_steps;
  std::vector<bool> crashed;
  std::vector<VTime> crash_times;

  enum class StopReason : std::uint8_t { AllDecided, Horizon, Quiescent, Aborted };
  StopReason stop_reason = StopReason::Quiescent;
  bool terminated = false;  // every non-crashed node decided
  bool aborted = false;
  std::string abort_reason;
  int discarded = 0;              // broadcasts rejected while one was pending
  int discarded_after_crash = 0;  // broadcast attempts by crashed nodes
  VTime end_time = 0;

  bool all_decided() const {
    for (NodeId v = 0; v < topo.n; ++v)
      if (!crashed[v] && !decisions[v].has_value()) return false;
    return true;
  }

  /// Max observed broadcast-to-ack delay; the run's exhibited F_ack.
  VTime effective_fack() const {
    VTime m = 0;
    for (const auto& i : instances)
      if (i.ack_time >= 0) m = std::max<VTime>(m, i.ack_time - i.issue_time);
    return m;
  }

  std::uint64_t hash() const {
    StateHasher h;
    for (const auto& e : events) {
      h.add(std::uint64_t(e.step));
      h.add_i(e.time);
      h.add(std::uint64_t(e.kind));
      h.add(std::uint64_t(e.node));
      h.add(std::uint64_t(e.sender));
      h.add(e.seq);
      h.add(e.summary);
    }
    for (NodeId v = 0; v < topo.n; ++v)
      if (decisions[v]) h.add(std::uint64_t(*decisions[v] + 1));
    return h.digest();
  }

  /// Latest state digest of `node` at the end of virtual time `t`.
  std::uint64_t state_at(NodeId node, VTime t) const {
    std::uint64_t h = 0;
    for (const auto& r : state_hashes[node]) {
      if (r.time > t) break;
      h = r.hash;
    }
    return h;
  }

  /// Latest state digest of `node` at or before global step `step`.
  std::uint64_t state_at_step(NodeId node, std::uint32_t step) const {
    std::uint64_t h = 0;
    for (const auto& r : state_hashes[node]) {
      if (r.step > step) break;
      h = r.hash;
    }
    return h;
  }

  void write_jsonl(std::ostream& os) const {
    nlohmann::json hdr{{"type", "config"},
                       {"f_ack", f_ack},
                       {"id_capacity", id_capacity},
                       {"anonymous", anonymous_mode},
                       {"horizon", horizon},
                       {"n", topo.n},
                       {"diameter", topo.diameter},
                       {"protocol", protocol_name},
                       {"scheduler", scheduler_name},
                       {"seed", seed},
                       {"terminated", terminated}};
    os << hdr.dump() << "\n";
    for (const auto& e : events) {
      nlohmann::json j{{"step", e.step},        {"time", e.time},
                       {"kind", to_string(e.kind)}, {"node", e.node},
                       {"sender", e.sender},    {"seq", e.seq},
                       {"payload_summary", e.summary}};
      os << j.dump() << "\n";
    }
  }
};

}  // namespace macsim
