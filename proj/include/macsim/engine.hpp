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
#include <cassert>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "macsim/core.hpp"
#include "macsim/scheduler.hpp"
#include "macsim/topology.hpp"
#include "macsim/trace.hpp"

namespace macsim {

// A protocol type P plugs into the engine with:
//   using Message = ...;
//   void on_init(Ctx&);
//   void on_receive(Ctx&, const Message&, NodeId sender);
//   void on_ack(Ctx&);
//   void hash_state(StateHasher&, bool anonymous) const;
//   int initial_value() const;
//   static int id_fields(const Message&);
//   static std::string summarize(const Message&);
// and optionally `static std::vector<AuditResp> resp_components(const Message&)`
// for wire messages that carry aggregated acceptor responses.

template <class P, class M>
concept HasRespComponents = requires(const M& m) {
  { P::resp_components(m) } -> std::convertible_to<std::vector<AuditResp>>;
};

/// One step of the restricted (valid-step) scheduler: deliver a pending
/// broadcast to its next eligible receiver, complete a broadcast with an
/// ack, or crash a node. Receives go to the smallest not-yet-served alive
/// neighbor, so the only nondeterminism is which broadcast advances.
struct ValidStep {
  enum class Kind : std::uint8_t { Recv, Ack, Crash } kind = Kind::Recv;
  std::uint32_t inst = kNoInstance;
  NodeId node = kNoNode;  // Crash only

  friend bool operator==(const ValidStep&, const ValidStep&) = default;
};

/// Deterministic event engine for the acknowledged-local-broadcast model.
/// One engine drives one run; it is copyable (for state-space exploration)
/// as long as no trace is attached.
template <class P>
class Engine {
 public:
  using Message = typename P::Message;

  class Ctx {
   public:
    NodeId my_id() const { return e_->ext_ids_[idx_]; }
    std::uint32_t n_nodes() const { return e_->topo_->n; }
    VTime now() const { return e_->now_; }
    bool broadcast(Message m) { return e_->issue_broadcast(idx_, std::move(m)); }
    void decide(int v) { e_->record_decide(idx_, v); }
    void audit(AuditEvent ev) { e_->record_audit(idx_, std::move(ev)); }

   private:
    friend class Engine;
    Ctx(Engine* e, NodeId idx) : e_(e), idx_(idx) {}
    Engine* e_;
    NodeId idx_;
  };

  Engine(const Topology& topo, SimConfig cfg, std::vector<P> nodes,
         std::vector<NodeId> ext_ids = {})
      : topo_(&topo), cfg_(std::move(cfg)), nodes_(std::move(nodes)) {
    cfg_.validate();
    if (nodes_.size() != topo.n) throw ConfigError("one protocol instance per node required");
    ext_ids_ = std::move(ext_ids);
    if (ext_ids_.empty()) {
      ext_ids_.resize(topo.n);
      for (NodeId v = 0; v < topo.n; ++v) ext_ids_[v] = v;
    }
    crashed_.assign(topo.n, false);
    decision_.assign(topo.n, std::nullopt);
    pending_of_.assign(topo.n, kNoInstance);
    next_seq_.assign(topo.n, 0);
    idx_of_ext_.assign(topo.n, 0);
    for (NodeId v = 0; v < topo.n; ++v) idx_of_ext_[v] = v;  // informational only
  }

  const P& node(NodeId idx) const { return nodes_[idx]; }
  P& node(NodeId idx) { return nodes_[idx]; }
  bool crashed(NodeId idx) const { return crashed_[idx]; }
  std::optional<int> decision(NodeId idx) const { return decision_[idx]; }
  VTime now() const { return now_; }
  bool aborted() const { return aborted_; }
  const std::string& abort_reason() const { return abort_reason_; }

  bool all_alive_decided() const {
    for (NodeId v = 0; v < topo_->n; ++v)
      if (!crashed_[v] && !decision_[v].has_value()) return false;
    return true;
  }

  // -- sim-core operation: issue_broadcast ---------------------------------
  // Returns false (payload discarded) while a broadcast from this node is
  // still pending its ack, and for crashed senders. Oversized payloads abort
  // the run with a message-size violation recorded on the trace.
  bool issue_broadcast(NodeId idx, Message payload) {
    if (crashed_[idx]) {
      ++discarded_after_crash_;
      if (tb_) tb_->discarded_after_crash = discarded_after_crash_;
      return false;
    }
    if (pending_of_[idx] != kNoInstance) {
      ++discarded_;
      if (tb_) tb_->discarded = discarded_;
      return false;
    }
    int ids = P::id_fields(payload);
    if (ids > cfg_.id_capacity) {
      aborted_ = true;
      abort_reason_ = "message-size violation: " + std::to_string(ids) + " id fields > capacity " +
                      std::to_string(cfg_.id_capacity);
      if (tb_) {
        tb_->aborted = true;
        tb_->abort_reason = abort_reason_;
      }
      return false;
    }

    Inst inst;
    inst.id = static_cast<std::uint32_t>(insts_.size());
    inst.sender = idx;
    inst.seq = next_seq_[idx]++;
    inst.issue = now_;
    inst.release = now_;
    for (NodeId v : topo_->adj[idx])
      if (!crashed_[v]) inst.pending.push_back(v);  // sorted: adj is sorted
    inst.payload = std::move(payload);
    pending_of_[idx] = inst.id;

    if (tb_) {
      InstanceRecord rec;
      rec.id = inst.id;
      rec.sender = idx;
      rec.seq = inst.seq;
      rec.issue_time = now_;
      rec.release_time = now_;
      rec.issue_step = step_;
      rec.planned = inst.pending;
      rec.id_fields = ids;
      rec.summary = P::summarize(inst.payload);
      if constexpr (HasRespComponents<P, Message>) rec.resp_components = P::resp_components(inst.payload);
      tb_->instances.push_back(std::move(rec));
    }

    if (scheduler_) {
      InstanceInfo info{idx, inst.seq, now_};
      std::vector<ScheduledDelivery> ds;
      VTime ack = 0, release = now_;
      scheduler_->schedule(info, inst.pending, cfg_.f_ack, ds, ack, release);
      if (release < now_ || ack <= release || ack - release > cfg_.f_ack)
        throw ContractViolation("scheduler put the ack outside the allowed window (issue " +
                                std::to_string(now_) + ", release " + std::to_string(release) +
                                ", ack " + std::to_string(ack) + ", f_ack " +
                                std::to_string(cfg_.f_ack) + ")");
      if (ds.size() != inst.pending.size())
        throw ContractViolation("scheduler must schedule exactly the alive neighbors");
      for (const auto& d : ds) {
        if (d.time <= now_ || d.time > ack)
          throw ContractViolation("scheduler put a receive outside (issue, ack]");
        push_event({d.time, EventKind::Receive, d.target, idx, inst.seq, inst.id});
      }
      push_event({ack, EventKind::Ack, idx, idx, inst.seq, inst.id});
      inst.release = release;
      if (tb_) tb_->instances.back().release_time = release;
    }
    insts_.push_back(std::move(inst));
    return true;
  }

  // -- timed mode -----------------------------------------------------------
  struct RunMeta {
    std::string protocol_name, scheduler_name;
    std::uint64_t seed = 0;
  };

  ExecutionTrace run(Scheduler& sched, VTime horizon, RunMeta meta = {}) {
    if (horizon < 1) throw ConfigError("horizon must be >= 1");
    ExecutionTrace trace;
    trace.f_ack = cfg_.f_ack;
    trace.id_capacity = cfg_.id_capacity;
    trace.anonymous_mode = cfg_.anonymous_mode;
    trace.horizon = horizon;
    trace.protocol_name = meta.protocol_name;
    trace.scheduler_name = meta.scheduler_name.empty() ? sched.name() : meta.scheduler_name;
    trace.seed = meta.seed;
    trace.topo = *topo_;
    trace.ext_ids = ext_ids_;
    trace.state_hashes.resize(topo_->n);
    trace.decisions.assign(topo_->n, std::nullopt);
    trace.decide_times.assign(topo_->n, -1);
    trace.decide_steps.assign(topo_->n, 0);
    trace.crashed.assign(topo_->n, false);
    trace.crash_times.assign(topo_->n, -1);
    for (NodeId v = 0; v < topo_->n; ++v) trace.initial_values.push_back(nodes_[v].initial_value());
    tb_ = &trace;
    scheduler_ = &sched;

    for (const auto& c : cfg_.crash_plan) {
      if (c.node >= topo_->n) throw ConfigError("crash_plan names an unknown node");
      push_event({c.time, EventKind::Crash, c.node, c.node, 0, kNoInstance});
    }

    init_all();
    bool done = all_alive_decided();
    bool horizon_hit = false;
    while (!done && !aborted_ && !pq_.empty()) {
      TimedEvent ev = pq_.top();
      pq_.pop();
      if (ev.time > horizon) {
        horizon_hit = true;
        break;
      }
      if (stale(ev)) continue;
      apply_timed(ev);
      done = all_alive_decided();
    }
    trace.terminated = all_alive_decided() && !aborted_;
    if (aborted_)
      trace.stop_reason = ExecutionTrace::StopReason::Aborted;
    else if (trace.terminated)
      trace.stop_reason = ExecutionTrace::StopReason::AllDecided;
    else if (horizon_hit)
      trace.stop_reason = ExecutionTrace::StopReason::Horizon;
    else
      trace.stop_reason = ExecutionTrace::StopReason::Quiescent;
    trace.end_time = now_;
    for (NodeId v = 0; v < topo_->n; ++v) {
      trace.decisions[v] = decision_[v];
      trace.crashed[v] = crashed_[v];
    }
    tb_ = nullptr;
    scheduler_ = nullptr;
    return trace;
  }

  /// Replays an explicit valid-step sequence with full trace recording.
  ExecutionTrace run_steps(const std::vector<ValidStep>& path, RunMeta meta = {}) {
    ExecutionTrace trace;
    trace.f_ack = cfg_.f_ack;
    trace.id_capacity = cfg_.id_capacity;
    trace.anonymous_mode = cfg_.anonymous_mode;
    trace.horizon = static_cast<VTime>(path.size()) + 1;
    trace.protocol_name = meta.protocol_name;
    trace.scheduler_name = meta.scheduler_name.empty() ? "steps" : meta.scheduler_name;
    trace.seed = meta.seed;
    trace.topo = *topo_;
    trace.ext_ids = ext_ids_;
    trace.state_hashes.resize(topo_->n);
    trace.decisions.assign(topo_->n, std::nullopt);
    trace.decide_times.assign(topo_->n, -1);
    trace.decide_steps.assign(topo_->n, 0);
    trace.crashed.assign(topo_->n, false);
    trace.crash_times.assign(topo_->n, -1);
    for (NodeId v = 0; v < topo_->n; ++v) trace.initial_values.push_back(nodes_[v].initial_value());
    tb_ = &trace;
    init_all();
    for (const auto& s : path) {
      if (aborted_) break;
      apply_step(s);
    }
    trace.terminated = all_alive_decided() && !aborted_;
    trace.stop_reason = aborted_ ? ExecutionTrace::StopReason::Aborted
                       : trace.terminated ? ExecutionTrace::StopReason::AllDecided
                                          : ExecutionTrace::StopReason::Horizon;
    trace.end_time = now_;
    for (NodeId v = 0; v < topo_->n; ++v) {
      trace.decisions[v] = decision_[v];
      trace.crashed[v] = crashed_[v];
    }
    tb_ = nullptr;
    return trace;
  }

  // -- step mode (valid-step exploration) ------------------------------------
  void init_all() {
    for (NodeId v = 0; v < topo_->n; ++v) {
      Ctx ctx(this, v);
      nodes_[v].on_init(ctx);
      record_state(v);
    }
  }

  std::vector<ValidStep> valid_steps(bool allow_crash = false) const {
    std::vector<ValidStep> out;
    for (const auto& inst : insts_) {
      if (inst.acked || crashed_[inst.sender]) continue;
      if (!inst.pending.empty())
        out.push_back({ValidStep::Kind::Recv, inst.id, kNoNode});
      else
        out.push_back({ValidStep::Kind::Ack, inst.id, kNoNode});
    }
    if (allow_crash)
      for (NodeId v = 0; v < topo_->n; ++v)
        if (!crashed_[v]) out.push_back({ValidStep::Kind::Crash, kNoInstance, v});
    return out;
  }

  void apply_step(const ValidStep& s) {
    now_ += 1;  // one virtual tick per valid step, for trace ordering only
    switch (s.kind) {
      case ValidStep::Kind::Recv: {
        Inst& inst = insts_[s.inst];
        assert(!inst.pending.empty());
        do_deliver(s.inst, inst.pending.front(), now_);
        break;
      }
      case ValidStep::Kind::Ack:
        do_ack(s.inst, now_);
        break;
      case ValidStep::Kind::Crash: {
        // Under valid steps the receivers so far are exactly the prefix the
        // interleaving chose; whoever is still pending never gets it.
        do_crash(s.node, {}, now_);
        break;
      }
    }
  }

  /// Digest of everything that determines future behavior under valid steps.
  std::pair<std::uint64_t, std::uint64_t> memo_hash() const {
    StateHasher h1, h2;
    h2.add(std::uint64_t{0x5bd1e9955bd1e995ull});
    feed_state(h1);
    feed_state(h2);
    return {h1.digest(), h2.digest()};
  }

  // -- sim-core operation: apply_crash --------------------------------------
  void do_crash(NodeId node, const std::vector<NodeId>& still_receive, VTime time) {
    now_ = time;
    ++step_;
    if (tb_) {
      tb_->events.push_back({step_, time, EventKind::Crash, node, node, 0, kNoInstance, ""});
      tb_->crashed[node] = true;
      tb_->crash_times[node] = time;
    }
    crashed_[node] = true;
    if (pending_of_[node] != kNoInstance) {
      Inst& inst = insts_[pending_of_[node]];
      std::vector<NodeId> keep;
      for (NodeId v : inst.pending)
        if (std::find(still_receive.begin(), still_receive.end(), v) != still_receive.end())
          keep.push_back(v);
      inst.pending = std::move(keep);
      inst.ack_cancelled = true;
    }
    // A crashed node takes no further steps: drop it from every pending set.
    for (auto& inst : insts_) {
      if (inst.acked) continue;
      auto it = std::find(inst.pending.begin(), inst.pending.end(), node);
      if (it != inst.pending.end() && inst.sender != node) inst.pending.erase(it);
    }
    record_state(node);
  }

  std::uint32_t instance_count() const { return static_cast<std::uint32_t>(insts_.size()); }
  const std::vector<NodeId>& instance_pending(std::uint32_t i) const { return insts_[i].pending; }
  bool instance_acked(std::uint32_t i) const { return insts_[i].acked; }
  NodeId instance_sender(std::uint32_t i) const { return insts_[i].sender; }

 private:
  struct Inst {
    std::uint32_t id = 0;
    NodeId sender = 0;
    std::uint64_t seq = 0;
    VTime issue = 0;
    VTime release = 0;
    Message payload{};
    std::vector<NodeId> pending;  // sorted ascending
    bool acked = false;
    bool ack_cancelled = false;
  };

  struct TimedEvent {
    VTime time;
    EventKind kind;
    NodeId node;
    NodeId sender;
    std::uint64_t seq;
    std::uint32_t inst;

    bool operator>(const TimedEvent& o) const {
      auto key = [](const TimedEvent& e) {
        return std::tuple(e.time, static_cast<int>(e.kind), e.node, e.sender, e.seq, e.inst);
      };
      return key(*this) > key(o);
    }
  };

  void push_event(TimedEvent ev) { pq_.push(ev); }

  bool stale(const TimedEvent& ev) const {
    switch (ev.kind) {
      case EventKind::Receive: {
        const Inst& inst = insts_[ev.inst];
        if (crashed_[ev.node]) return true;
        return std::find(inst.pending.begin(), inst.pending.end(), ev.node) == inst.pending.end();
      }
      case EventKind::Ack: {
        const Inst& inst = insts_[ev.inst];
        return inst.ack_cancelled || crashed_[inst.sender] || inst.acked;
      }
      case EventKind::Crash:
        return crashed_[ev.node];
      default:
        return true;
    }
  }

  void apply_timed(const TimedEvent& ev) {
    switch (ev.kind) {
      case EventKind::Receive:
        do_deliver(ev.inst, ev.node, ev.time);
        break;
      case EventKind::Ack:
        do_ack(ev.inst, ev.time);
        break;
      case EventKind::Crash: {
        const CrashDirective* dir = nullptr;
        for (const auto& c : cfg_.crash_plan)
          if (c.node == ev.node && c.time == ev.time) dir = &c;
        do_crash(ev.node, dir ? dir->still_receive : std::vector<NodeId>{}, ev.time);
        break;
      }
      default:
        break;
    }
  }

  void do_deliver(std::uint32_t inst_id, NodeId target, VTime time) {
    Inst& inst = insts_[inst_id];
    now_ = time;
    ++step_;
    auto it = std::find(inst.pending.begin(), inst.pending.end(), target);
    assert(it != inst.pending.end());
    inst.pending.erase(it);
    if (tb_) {
      tb_->events.push_back({step_, time, EventKind::Receive, target, inst.sender, inst.seq,
                             inst_id, tb_->instances[inst_id].summary});
      tb_->instances[inst_id].receives.push_back({target, time, step_});
    }
    Ctx ctx(this, target);
    nodes_[target].on_receive(ctx, inst.payload, ext_ids_[inst.sender]);
    record_state(target);
  }

  void do_ack(std::uint32_t inst_id, VTime time) {
    Inst& inst = insts_[inst_id];
    now_ = time;
    ++step_;
    inst.acked = true;
    pending_of_[inst.sender] = kNoInstance;
    if (tb_) {
      tb_->events.push_back({step_, time, EventKind::Ack, inst.sender, inst.sender, inst.seq,
                             inst_id, tb_->instances[inst_id].summary});
      tb_->instances[inst_id].ack_time = time;
      tb_->instances[inst_id].ack_step = step_;
    }
    Ctx ctx(this, inst.sender);
    nodes_[inst.sender].on_ack(ctx);
    record_state(inst.sender);
  }

  void record_decide(NodeId idx, int v) {
    if (decision_[idx].has_value()) {
      if (*decision_[idx] != v) {
        aborted_ = true;
        abort_reason_ = "node " + std::to_string(idx) + " attempted to re-decide a different value";
        if (tb_) {
          tb_->aborted = true;
          tb_->abort_reason = abort_reason_;
        }
      }
      return;
    }
    decision_[idx] = v;
    ++step_;
    if (tb_) {
      tb_->events.push_back({step_, now_, EventKind::Decide, idx, idx,
                             static_cast<std::uint64_t>(v), kNoInstance,
                             "decide=" + std::to_string(v)});
      tb_->decisions[idx] = v;
      tb_->decide_times[idx] = now_;
      tb_->decide_steps[idx] = step_;
    }
  }

  void record_audit(NodeId idx, AuditEvent ev) {
    if (!tb_) return;
    ev.step = step_;
    ev.node = idx;
    tb_->audits.push_back(std::move(ev));
  }

  void record_state(NodeId idx) {
    if (!tb_) return;
    StateHasher h;
    nodes_[idx].hash_state(h, cfg_.anonymous_mode);
    auto& seq = tb_->state_hashes[idx];
    if (!seq.empty() && seq.back().step == step_ && seq.back().time == now_)
      seq.back().hash = h.digest();
    else
      seq.push_back({step_, now_, h.digest()});
  }

  void feed_state(StateHasher& h) const {
    for (NodeId v = 0; v < topo_->n; ++v) {
      h.add(crashed_[v]);
      h.add(decision_[v] ? std::uint64_t(*decision_[v] + 1) : 0ull);
      nodes_[v].hash_state(h, cfg_.anonymous_mode);
    }
    for (const auto& inst : insts_) {
      if (inst.acked) continue;
      h.add(std::uint64_t(inst.sender));
      h.add(crashed_[inst.sender]);
      h.add(std::uint64_t(inst.pending.size()));
      for (NodeId v : inst.pending) h.add(std::uint64_t(v));
      h.add(P::summarize(inst.payload));
    }
  }

  const Topology* topo_;
  SimConfig cfg_;
  std::vector<P> nodes_;
  std::vector<NodeId> ext_ids_;
  std::vector<NodeId> idx_of_ext_;
  std::vector<bool> crashed_;
  std::vector<std::optional<int>> decision_;
  std::vector<std::uint32_t> pending_of_;
  std::vector<std::uint64_t> next_seq_;
  std::vector<Inst> insts_;
  VTime now_ = 0;
  std::uint32_t step_ = 0;
  bool aborted_ = false;
  std::string abort_reason_;
  int discarded_ = 0;
  int discarded_after_crash_ = 0;
  ExecutionTrace* tb_ = nullptr;
  Scheduler* scheduler_ = nullptr;
  std::priority_queue<TimedEvent, std::vector<TimedEvent>, std::greater<TimedEvent>> pq_;
};

/// Runs one simulation to quiescence, universal decision, or the horizon.
/// Identical inputs produce byte-identical traces.
template <class P>
ExecutionTrace run_simulation(const Topology& topo, std::vector<P> nodes, Scheduler& sched,
                              const SimConfig& cfg, VTime horizon,
                              typename Engine<P>::RunMeta meta = {},
                              std::vector<NodeId> ext_ids = {}) {
  Engine<P> engine(topo, cfg, std::move(nodes), std::move(ext_ids));
  return engine.run(sched, horizon, std::move(meta));
}

}  // namespace macsim
