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
#include <string>
#include <vector>

#include "macsim/engine.hpp"

namespace macsim::proto {

/// Anonymous min-flooder: keeps re-broadcasting the smallest value seen and
/// decides it after `rounds` own acks (one ack per lock-step round). Correct
/// on any graph under the synchronous scheduler when rounds >= diameter.
/// Carries no ids at all.
class AnonFlood {
 public:
  struct Message {
    int min = 0;
  };

  struct Params {
    int value = 0;
    std::uint32_t rounds = 1;
  };

  AnonFlood() = default;
  explicit AnonFlood(Params p) : min_(p.value), v_(p.value), rounds_(p.rounds) {}

  void on_init(Engine<AnonFlood>::Ctx& ctx) { ctx.broadcast({min_}); }

  void on_receive(Engine<AnonFlood>::Ctx&, const Message& m, NodeId) {
    min_ = std::min(min_, m.min);
  }

  void on_ack(Engine<AnonFlood>::Ctx& ctx) {
    if (done_) return;
    ++acks_;
    if (acks_ >= rounds_) {
      done_ = true;
      decision_ = min_;
      ctx.decide(min_);
    } else {
      ctx.broadcast({min_});
    }
  }

  void hash_state(StateHasher& h, bool) const {
    h.add_i(min_);
    h.add(std::uint64_t(acks_));
    h.add(std::uint64_t(rounds_));
    h.add(done_);
    h.add(decision_ ? std::uint64_t(*decision_ + 1) : 0ull);
  }

  int initial_value() const { return v_; }
  static int id_fields(const Message&) { return 0; }
  static std::string summarize(const Message& m) { return "min=" + std::to_string(m.min); }

 private:
  int min_ = 0;
  int v_ = 0;
  std::uint32_t rounds_ = 1;
  std::uint32_t acks_ = 0;
  bool done_ = false;
  std::optional<int> decision_;
};

/// Same flooding rule but id-bearing: messages carry the sender id and the
/// node keeps its own id in state. Knows the diameter, not the network size.
class IdFlood {
 public:
  struct Message {
    NodeId id = 0;
    int min = 0;
  };

  struct Params {
    NodeId id = 0;
    int value = 0;
    std::uint32_t rounds = 1;
  };

  IdFlood() = default;
  explicit IdFlood(Params p) : id_(p.id), min_(p.value), v_(p.value), rounds_(p.rounds) {}

  void on_init(Engine<IdFlood>::Ctx& ctx) { ctx.broadcast({id_, min_}); }

  void on_receive(Engine<IdFlood>::Ctx&, const Message& m, NodeId) {
    min_ = std::min(min_, m.min);
  }

  void on_ack(Engine<IdFlood>::Ctx& ctx) {
    if (done_) return;
    ++acks_;
    if (acks_ >= rounds_) {
      done_ = true;
      decision_ = min_;
      ctx.decide(min_);
    } else {
      ctx.broadcast({id_, min_});
    }
  }

  void hash_state(StateHasher& h, bool anonymous) const {
    if (!anonymous) h.add(std::uint64_t(id_));
    h.add_i(min_);
    h.add(std::uint64_t(acks_));
    h.add(std::uint64_t(rounds_));
    h.add(done_);
    h.add(decision_ ? std::uint64_t(*decision_ + 1) : 0ull);
  }

  int initial_value() const { return v_; }
  static int id_fields(const Message&) { return 1; }
  static std::string summarize(const Message& m) {
    return "flood(id=" + std::to_string(m.id) + ",min=" + std::to_string(m.min) + ")";
  }

 private:
  NodeId id_ = 0;
  int min_ = 0;
  int v_ = 0;
  std::uint32_t rounds_ = 1;
  std::uint32_t acks_ = 0;
  bool done_ = false;
  std::optional<int> decision_;
};

/// Degenerate protocol for engine tests: broadcast the value once, decide it
/// at the ack.
class OnceProto {
 public:
  struct Message {
    int v = 0;
  };
  OnceProto() = default;
  explicit OnceProto(int v) : v_(v) {}

  void on_init(Engine<OnceProto>::Ctx& ctx) { ctx.broadcast({v_}); }
  void on_receive(Engine<OnceProto>::Ctx&, const Message& m, NodeId) { seen_.push_back(m.v); }
  void on_ack(Engine<OnceProto>::Ctx& ctx) { ctx.decide(v_); }

  void hash_state(StateHasher& h, bool) const {
    h.add_i(v_);
    for (int s : seen_) h.add_i(s);
  }
  int initial_value() const { return v_; }
  static int id_fields(const Message&) { return 0; }
  static std::string summarize(const Message& m) { return "v=" + std::to_string(m.v); }

 private:
  int v_ = 0;
  std::vector<int> seen_;
};

}  // namespace macsim::proto
