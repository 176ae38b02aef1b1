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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace macsim {

/// Node identity. Within a topology nodes are indexed 0..n-1; a run may
/// remap them to external ids (see RunMeta::id_map) so that the same line
/// graph can be replayed under different identity assignments.
using NodeId = std::uint32_t;

/// Discrete virtual clock. Local computation takes zero time; only message
/// receive/ack scheduling advances it.
using VTime = std::int64_t;

inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct TopologyError : std::runtime_error {
  explicit TopologyError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a scheduler or protocol breaks the delivery model contract
/// (ack past the allowed window, receive outside the broadcast interval).
struct ContractViolation : std::runtime_error {
  explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

/// A scheduled crash: `node` halts at `time`. If it has a broadcast in
/// flight, only the neighbors in `still_receive` get the message; nobody
/// acks it.
struct CrashDirective {
  NodeId node = 0;
  VTime time = 0;
  std::vector<NodeId> still_receive;
};

struct SimConfig {
  VTime f_ack = 1;          // max broadcast-to-ack delay the scheduler may use
  int id_capacity = 12;     // max id-sized fields per wire message
  bool anonymous_mode = false;
  std::vector<CrashDirective> crash_plan;

  void validate() const {
    if (f_ack < 1) throw ConfigError("f_ack must be >= 1");
    if (id_capacity < 1) throw ConfigError("id_capacity must be >= 1");
  }
};

/// Incremental FNV-1a, used for node state digests, trace hashes and the
/// explorer's state memo. Not cryptographic; equality of digests is the
/// artifact's proxy for equality of states.
class StateHasher {
 public:
  void add(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      step(static_cast<unsigned char>(x & 0xff));
      x >>= 8;
    }
  }
  void add_i(std::int64_t x) { add(static_cast<std::uint64_t>(x)); }
  void add(bool b) { step(b ? 1 : 2); }
  void add(std::string_view s) {
    add(static_cast<std::uint64_t>(s.size()));
    for (char c : s) step(static_cast<unsigned char>(c));
  }
  std::uint64_t digest() const { return h_; }

 private:
  void step(unsigned char b) {
    h_ ^= b;
    h_ *= 1099511628211ull;
  }
  std::uint64_t h_ = 1469598103934665603ull;
};

/// splitmix64; used wherever a cheap keyed hash or derived seed is needed.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace macsim
