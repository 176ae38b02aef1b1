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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "macsim/engine.hpp"

namespace macsim::proto {

/// Two-phase consensus for single-hop networks. Unique ids, no knowledge of
/// n. Phase 1 floods the initial value; at the phase-1 ack a node fixes its
/// status (decided(v) if it saw no opposing value and no bivalent report,
/// else bivalent) and floods it as phase 2. After the phase-2 ack, a node
/// with a decided status may decide immediately; a bivalent node freezes a
/// witness list of every id heard so far and waits for a phase-2 message
/// from each witness, then decides 0 exactly when some decided(0) status was
/// seen, defaulting to 1.
///
/// `strict_wait` makes decided-status nodes run the same witness wait
/// instead of deciding early; both variants satisfy the same properties.
class TwoPhase {
 public:
  static constexpr int kBivalent = 2;

  struct Message {
    std::uint8_t phase = 1;  // 1 or 2
    NodeId id = 0;
    std::uint8_t body = 0;  // phase 1: initial value; phase 2: status (0/1/kBivalent)
  };

  struct Params {
    NodeId id = 0;
    int value = 0;
    bool strict_wait = false;
  };

  TwoPhase() = default;
  explicit TwoPhase(Params p) : id_(p.id), v_(p.value), strict_wait_(p.strict_wait) {}

  void on_init(Engine<TwoPhase>::Ctx& ctx) {
    if (inited_) throw std::logic_error("two-phase node initialized twice");
    inited_ = true;
    Message own{1, id_, static_cast<std::uint8_t>(v_)};
    r1_.push_back(own);
    ctx.broadcast(own);
  }

  void on_receive(Engine<TwoPhase>::Ctx& ctx, const Message& m, NodeId) {
    switch (phase_) {
      case Phase::One:
        r1_.push_back(m);
        break;
      case Phase::Two:
        r2_.push_back(m);
        break;
      case Phase::Wait:
        if (m.phase == 2) {
          r2_.push_back(m);
          try_finish(ctx);
        }
        break;
      case Phase::Done:
        break;
    }
  }

  void on_ack(Engine<TwoPhase>::Ctx& ctx) {
    if (phase_ == Phase::One) {
      bool opposing = false;
      for (const auto& m : r1_) {
        if (m.phase == 1 && m.body == 1 - v_) opposing = true;
        if (m.phase == 2 && m.body == kBivalent) opposing = true;
      }
      status_ = opposing ? kBivalent : v_;
      {
        AuditEvent ev;
        ev.kind = AuditEvent::Kind::StatusAssigned;
        ev.a = static_cast<std::uint64_t>(status_);
        ctx.audit(std::move(ev));
      }
      phase_ = Phase::Two;
      Message own{2, id_, static_cast<std::uint8_t>(status_)};
      ctx.broadcast(own);
      r2_.push_back(own);
      return;
    }
    if (phase_ == Phase::Two) {
      if (!strict_wait_ && status_ != kBivalent) {
        decide(ctx, status_);
        return;
      }
      for (const auto& m : r1_) witness_.insert(m.id);
      for (const auto& m : r2_) witness_.insert(m.id);
      phase_ = Phase::Wait;
      try_finish(ctx);
    }
  }

  void hash_state(StateHasher& h, bool anonymous) const {
    if (!anonymous) h.add(std::uint64_t(id_));
    h.add(std::uint64_t(phase_));
    h.add(std::uint64_t(v_));
    h.add_i(status_);
    h.add(decision_ ? std::uint64_t(*decision_ + 1) : 0ull);
    auto feed = [&h](const std::vector<Message>& ms) {
      std::uint64_t acc = 0;
      for (const auto& m : ms)
        acc += mix64((std::uint64_t(m.phase) << 40) | (std::uint64_t(m.id) << 8) | m.body);
      h.add(acc);  // order-insensitive: these are sets
    };
    feed(r1_);
    feed(r2_);
    std::uint64_t w = 0;
    for (NodeId x : witness_) w += mix64(x);
    h.add(w);
  }

  int initial_value() const { return v_; }
  int status() const { return status_; }
  std::optional<int> decision() const { return decision_; }

  static int id_fields(const Message&) { return 1; }

  static std::string summarize(const Message& m) {
    if (m.phase == 1) return "p1(id=" + std::to_string(m.id) + ",v=" + std::to_string(m.body) + ")";
    std::string s = m.body == kBivalent ? "biv" : ("dec" + std::to_string(m.body));
    return "p2(id=" + std::to_string(m.id) + "," + s + ")";
  }

 private:
  enum class Phase : std::uint8_t { One, Two, Wait, Done };

  void try_finish(Engine<TwoPhase>::Ctx& ctx) {
    for (NodeId w : witness_) {
      bool seen = false;
      for (const auto& m : r1_)
        if (m.phase == 2 && m.id == w) seen = true;
      for (const auto& m : r2_)
        if (m.phase == 2 && m.id == w) seen = true;
      if (!seen) return;
    }
    // The wait condition reads phase-2 messages wherever they were stored,
    // and so does the decision test: a decided(0) report that arrived before
    // our phase-1 ack lives in R1 and must still force the 0 decision.
    bool any_dec0 = false;
    for (const auto& m : r1_)
      if (m.phase == 2 && m.body == 0) any_dec0 = true;
    for (const auto& m : r2_)
      if (m.phase == 2 && m.body == 0) any_dec0 = true;
    decide(ctx, any_dec0 ? 0 : 1);
  }

  void decide(Engine<TwoPhase>::Ctx& ctx, int v) {
    decision_ = v;
    phase_ = Phase::Done;
    ctx.decide(v);
  }

  NodeId id_ = 0;
  int v_ = 0;
  bool strict_wait_ = false;
  bool inited_ = false;
  Phase phase_ = Phase::One;
  int status_ = -1;
  std::vector<Message> r1_, r2_;
  std::set<NodeId> witness_;
  std::optional<int> decision_;
};

inline std::vector<TwoPhase> make_twophase_nodes(const std::vector<int>& values,
                                                 bool strict_wait = false) {
  std::vector<TwoPhase> out;
  for (NodeId v = 0; v < values.size(); ++v)
    out.emplace_back(TwoPhase::Params{v, values[v], strict_wait});
  return out;
}

}  // namespace macsim::proto
