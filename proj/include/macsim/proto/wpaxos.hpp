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
#include <compare>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "macsim/engine.hpp"

namespace macsim::proto {

namespace wpx {

/// Proposal numbers order lexicographically by (tag, id).
struct PropNum {
  std::uint64_t tag = 0;
  NodeId id = 0;
  friend auto operator<=>(const PropNum&, const PropNum&) = default;
  bool null() const { return tag == 0; }
  std::string str() const { return "(" + std::to_string(tag) + "," + std::to_string(id) + ")"; }
};

/// Lamport timestamps with node-id tie-break; (0,0) acts as minus infinity.
struct Timestamp {
  std::uint64_t c = 0;
  NodeId id = 0;
  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

struct LeaderMsg {
  NodeId id = 0;
};

struct ChangeMsg {
  Timestamp t;
  NodeId origin = 0;
};

struct SearchMsg {
  NodeId id = 0;
  std::uint32_t h = 0;
};

struct PropMsg {
  std::uint8_t type = 0;  // 0 = prepare, 1 = propose
  PropNum num;
  int value = 0;  // propose only
};

struct Prior {
  PropNum num;
  int value = 0;
};

/// Aggregated acceptor response: a count per (proposition, polarity),
/// carrying the max-numbered prior proposal (positives to prepare) or the
/// max committed number (negatives), addressed to one tree parent.
struct RespMsg {
  std::uint8_t type = 0;  // proposition message type
  PropNum num;            // proposition number; num.id is the proposer
  bool positive = true;
  std::uint64_t count = 1;
  std::optional<Prior> prior;
  PropNum committed;  // negatives: the larger number the acceptor holds
  NodeId dest = kNoNode;

  NodeId proposer() const { return num.id; }
  auto key() const { return std::tuple(type, num.tag, num.id); }
};

struct DecideMsg {
  int value = 0;
};

/// One wire message: at most one entry per service queue, multiplexed.
struct Bundle {
  std::optional<LeaderMsg> leader;
  std::optional<ChangeMsg> change;
  std::optional<SearchMsg> search;
  std::optional<PropMsg> prop;
  std::optional<RespMsg> resp;
  std::optional<DecideMsg> decide;
  std::uint64_t clock = 0;
};

enum class Mutation : std::uint8_t {
  None,
  DoubleCount,   // merged counts gain a phantom unit
  DropMergeMax,  // merges keep the smaller prior/committed number
};

}  // namespace wpx

/// wPAXOS: PAXOS proposer/acceptor logic over four support services (leader
/// election, shortest-path tree building, change notification, broadcast
/// multiplexing), with acceptor responses aggregated up the leader's tree.
/// Assumes unique ids and knowledge of n; no crash tolerance.
class WPaxos {
 public:
  using Message = wpx::Bundle;

  struct Params {
    NodeId id = 0;
    int value = 0;
    std::uint32_t n = 0;  // majority threshold base
    wpx::Mutation mutation = wpx::Mutation::None;
  };

  WPaxos() = default;
  explicit WPaxos(Params p) : id_(p.id), value_(p.value), n_(p.n), mutation_(p.mutation) {}

  // -- engine hooks ----------------------------------------------------------

  void on_init(Engine<WPaxos>::Ctx& ctx) {
    clock_ = 1;
    omega_ = id_;
    dist_[id_] = 0;
    parent_[id_] = id_;
    leader_q_ = wpx::LeaderMsg{id_};
    tree_enqueue({id_, 1});
    on_change(ctx);  // the initial assignment of omega/dist counts as a change
    maybe_send(ctx);
  }

  void on_receive(Engine<WPaxos>::Ctx& ctx, const Message& b, NodeId sender) {
    clock_ = std::max(clock_, b.clock) + 1;
    if (b.leader) handle_leader(ctx, *b.leader);
    if (b.change) handle_change(ctx, *b.change);
    if (b.search) handle_search(ctx, *b.search, sender);
    if (b.prop) handle_prop(ctx, *b.prop);
    if (b.resp) handle_resp(ctx, *b.resp);
    if (b.decide) handle_decide(ctx, *b.decide);
    maybe_send(ctx);
  }

  void on_ack(Engine<WPaxos>::Ctx& ctx) {
    ++clock_;
    sending_ = false;
    maybe_send(ctx);
  }

  void hash_state(StateHasher& h, bool) const {
    h.add(std::uint64_t(id_));
    h.add(std::uint64_t(omega_));
    h.add(clock_);
    h.add(last_change_.c);
    h.add(std::uint64_t(last_change_.id));
    for (const auto& [k, v] : dist_) {
      h.add(std::uint64_t(k));
      h.add(std::uint64_t(v));
    }
    h.add(std::uint64_t(phase_));
    h.add(cur_num_.tag);
    h.add(max_tag_seen_);
    h.add(promised_.tag);
    h.add(std::uint64_t(promised_.id));
    h.add(accepted_ ? accepted_->num.tag : 0);
    h.add(decision_ ? std::uint64_t(*decision_ + 1) : 0ull);
    h.add(std::uint64_t(accq_.size()));
    h.add(std::uint64_t(flood_q_.size()));
    h.add(std::uint64_t(tree_q_.size()));
    h.add(sending_);
  }

  int initial_value() const { return value_; }
  std::optional<int> decision() const { return decision_; }
  NodeId leader_estimate() const { return omega_; }
  std::optional<std::uint32_t> distance_to(NodeId v) const {
    auto it = dist_.find(v);
    if (it == dist_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<NodeId> parent_toward(NodeId v) const {
    auto it = parent_.find(v);
    if (it == parent_.end()) return std::nullopt;
    return it->second;
  }
  std::uint64_t max_tag_seen() const { return max_tag_seen_; }

  // -- wire accounting -------------------------------------------------------

  static int id_fields(const Message& b) {
    int ids = 0;
    if (b.leader) ids += 1;
    if (b.change) ids += 2;  // origin + timestamp tie-break id
    if (b.search) ids += 1;
    if (b.prop) ids += 1;
    if (b.resp) {
      ids += 2;  // proposition number id + destination
      if (b.resp->prior) ids += 1;
      if (!b.resp->committed.null()) ids += 1;
    }
    return ids;
  }

  static std::string summarize(const Message& b) {
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
      if (!first) os << "|";
      first = false;
    };
    if (b.leader) {
      sep();
      os << "L(" << b.leader->id << ")";
    }
    if (b.change) {
      sep();
      os << "C(" << b.change->t.c << "." << b.change->t.id << ")";
    }
    if (b.search) {
      sep();
      os << "S(" << b.search->id << "," << b.search->h << ")";
    }
    if (b.prop) {
      sep();
      os << (b.prop->type == 0 ? "Prep" : "Prop") << b.prop->num.str();
      if (b.prop->type == 1) os << "=" << b.prop->value;
    }
    if (b.resp) {
      sep();
      os << "R(" << (b.resp->positive ? "+" : "-") << b.resp->count << ","
         << (b.resp->type == 0 ? "prep" : "prop") << b.resp->num.str() << "->" << b.resp->dest;
      if (b.resp->prior) os << ",pri" << b.resp->prior->num.str() << "=" << b.resp->prior->value;
      if (!b.resp->committed.null()) os << ",com" << b.resp->committed.str();
      os << ")";
    }
    if (b.decide) {
      sep();
      os << "D(" << b.decide->value << ")";
    }
    return os.str();
  }

  static std::vector<AuditResp> resp_components(const Message& b) {
    std::vector<AuditResp> out;
    if (b.resp) out.push_back(to_audit(*b.resp));
    return out;
  }

 private:
  enum class Phase : std::uint8_t { Idle, Preparing, Proposing, Done };

  static AuditResp to_audit(const wpx::RespMsg& r) {
    AuditResp a;
    a.key.proposer = r.proposer();
    a.key.type = r.type;
    a.key.num = {r.num.tag, r.num.id};
    a.positive = r.positive;
    a.count = r.count;
    if (r.prior) {
      a.has_prior = true;
      a.prior_num = {r.prior->num.tag, r.prior->num.id};
      a.prior_value = r.prior->value;
    }
    if (!r.committed.null()) {
      a.has_committed = true;
      a.committed = {r.committed.tag, r.committed.id};
    }
    a.dest = r.dest;
    return a;
  }

  bool majority(std::uint64_t cnt) const { return 2 * cnt > n_; }
  bool majority_unreachable(std::uint64_t neg) const { return 2 * neg >= n_; }

  // -- leader election service ----------------------------------------------

  void handle_leader(Engine<WPaxos>::Ctx& ctx, const wpx::LeaderMsg& m) {
    if (m.id <= omega_) return;
    omega_ = m.id;
    leader_q_ = m;  // empty the leader queue and enqueue
    on_leader_change(ctx);
    on_change(ctx);
  }

  void on_leader_change(Engine<WPaxos>::Ctx& ctx) {
    // move the leader's search message (if any) to the queue front
    tree_prioritize_leader();
    max_seen_num_.reset();
    flood_q_.clear();
    purge_accq(ctx, [&](const wpx::RespMsg& r) { return r.proposer() != omega_; }, "leader-change");
    if (phase_ == Phase::Preparing || phase_ == Phase::Proposing) {
      if (omega_ != id_) phase_ = Phase::Idle;  // lost leadership mid-round
    }
  }

  // -- change service ---------------------------------------------------------

  void on_change(Engine<WPaxos>::Ctx& ctx) {
    ++clock_;
    wpx::Timestamp ts{clock_, id_};
    last_change_ = ts;
    change_q_ = wpx::ChangeMsg{ts, id_};
    AuditEvent ev;
    ev.kind = AuditEvent::Kind::ChangeGen;
    ev.a = ts.c;
    ev.b = ts.id;
    ctx.audit(std::move(ev));
    if (omega_ == id_) generate_new_proposal(ctx);
  }

  void handle_change(Engine<WPaxos>::Ctx& ctx, const wpx::ChangeMsg& m) {
    if (!(m.t > last_change_)) return;  // stale
    last_change_ = m.t;
    change_q_ = m;  // forward the newest change
    if (omega_ == id_) generate_new_proposal(ctx);
  }

  // -- tree building service ---------------------------------------------------

  void handle_search(Engine<WPaxos>::Ctx& ctx, const wpx::SearchMsg& m, NodeId sender) {
    auto it = dist_.find(m.id);
    std::uint32_t cur = (it == dist_.end()) ?~0u : it->second;
    if (m.h >= cur) return;  // stale or no improvement
    dist_[m.id] = m.h;
    parent_[m.id] = sender;
    tree_enqueue({m.id, m.h + 1});
    if (m.id == omega_) on_change(ctx);  // the leader tree moved under us
  }

  void tree_enqueue(const wpx::SearchMsg& m) {
    // at most one queued search per id; improvements strictly shrink h
    for (auto it = tree_q_.begin(); it != tree_q_.end();) {
      if (it->id == m.id && it->h > m.h)
        it = tree_q_.erase(it);
      else
        ++it;
    }
    for (const auto& q : tree_q_)
      if (q.id == m.id) return;  // an equal-or-better message is already queued
    tree_q_.push_back(m);
    tree_prioritize_leader();
  }

  void tree_prioritize_leader() {
    for (auto it = tree_q_.begin(); it != tree_q_.end(); ++it) {
      if (it->id == omega_) {
        wpx::SearchMsg m = *it;
        tree_q_.erase(it);
        tree_q_.push_front(m);
        return;
      }
    }
  }

  // -- proposer ----------------------------------------------------------------

  void generate_new_proposal(Engine<WPaxos>::Ctx& ctx) {
    if (phase_ == Phase::Done) return;
    attempts_left_ = 2;
    start_proposal(ctx);
  }

  void start_proposal(Engine<WPaxos>::Ctx& ctx) {
    --attempts_left_;
    max_tag_seen_ += 1;
    cur_num_ = wpx::PropNum{max_tag_seen_, id_};
    phase_ = Phase::Preparing;
    pos_count_ = neg_count_ = 0;
    best_prior_.reset();
    learned_ = wpx::PropNum{};
    AuditEvent ev;
    ev.kind = AuditEvent::Kind::ProposalStart;
    ev.a = cur_num_.tag;
    ev.b = 0;
    ctx.audit(std::move(ev));
    wpx::PropMsg prep{0, cur_num_, 0};
    accept_proposition(ctx, prep);  // own acceptor replies directly
    flood_enqueue(ctx, prep);
  }

  void launch_propose(Engine<WPaxos>::Ctx& ctx) {
    phase_ = Phase::Proposing;
    cur_value_ = best_prior_ ? best_prior_->value : value_;
    pos_count_ = neg_count_ = 0;
    AuditEvent ev;
    ev.kind = AuditEvent::Kind::ProposalStart;
    ev.a = cur_num_.tag;
    ev.b = 1;
    ctx.audit(std::move(ev));
    wpx::PropMsg prop{1, cur_num_, cur_value_};
    accept_proposition(ctx, prop);
    flood_enqueue(ctx, prop);
  }

  void fail_round(Engine<WPaxos>::Ctx& ctx) {
    bool learned_larger = !learned_.null() && learned_ > cur_num_;
    if (attempts_left_ > 0 && learned_larger && omega_ == id_) {
      max_tag_seen_ = std::max(max_tag_seen_, learned_.tag);
      start_proposal(ctx);
    } else {
      phase_ = Phase::Idle;  // wait for the change service
    }
  }

  void consume_resp(Engine<WPaxos>::Ctx& ctx, const wpx::RespMsg& r) {
    AuditEvent ev;
    ev.kind = AuditEvent::Kind::RespConsume;
    ev.resp = to_audit(r);
    ctx.audit(std::move(ev));
    if (phase_ != Phase::Preparing && phase_ != Phase::Proposing) return;
    if (r.num != cur_num_) return;
    std::uint8_t want = (phase_ == Phase::Preparing) ? 0 : 1;
    if (r.type != want) return;
    if (r.positive) {
      pos_count_ += r.count;
      if (r.prior && (!best_prior_ || r.prior->num > best_prior_->num)) best_prior_ = *r.prior;
      if (majority(pos_count_)) {
        if (phase_ == Phase::Preparing) {
          launch_propose(ctx);
        } else {
          decision_ = cur_value_;
          phase_ = Phase::Done;
          ctx.decide(cur_value_);
          AuditEvent dv;
          dv.kind = AuditEvent::Kind::DecideOrigin;
          dv.a = static_cast<std::uint64_t>(cur_value_);
          ctx.audit(std::move(dv));
          decide_q_ = wpx::DecideMsg{cur_value_};
        }
      }
    } else {
      neg_count_ += r.count;
      if (!r.committed.null()) learned_ = std::max(learned_, r.committed);
      max_tag_seen_ = std::max(max_tag_seen_, r.committed.tag);
      if (majority_unreachable(neg_count_)) fail_round(ctx);
    }
  }

  // -- proposer message flooding ------------------------------------------------

  void note_num_seen(Engine<WPaxos>::Ctx& ctx, const wpx::PropNum& num) {
    if (num.id != omega_) return;
    if (max_seen_num_ && !(num > *max_seen_num_)) return;
    max_seen_num_ = num;
    for (auto it = flood_q_.begin(); it != flood_q_.end();) {
      if (it->num < num)
        it = flood_q_.erase(it);
      else
        ++it;
    }
    purge_accq(ctx, [&](const wpx::RespMsg& r) { return r.num < num; }, "superseded-number");
  }

  void flood_enqueue(Engine<WPaxos>::Ctx& ctx, const wpx::PropMsg& m) {
    if (m.num.id != omega_) return;  // only the current leader's messages
    note_num_seen(ctx, m.num);
    if (max_seen_num_ && m.num < *max_seen_num_) return;
    flood_q_.push_back(m);
  }

  void handle_prop(Engine<WPaxos>::Ctx& ctx, const wpx::PropMsg& m) {
    max_tag_seen_ = std::max(max_tag_seen_, m.num.tag);
    auto k = std::tuple(m.type, m.num.tag, m.num.id);
    if (seen_props_.count(k)) return;
    seen_props_.insert(k);
    note_num_seen(ctx, m.num);
    accept_proposition(ctx, m);
    flood_enqueue(ctx, m);
  }

  // -- acceptor ------------------------------------------------------------------

  void accept_proposition(Engine<WPaxos>::Ctx& ctx, const wpx::PropMsg& m) {
    auto k = std::tuple(m.type, m.num.tag, m.num.id);
    if (responded_.count(k)) return;
    responded_.insert(k);
    seen_props_.insert(k);
    wpx::RespMsg r;
    r.type = m.type;
    r.num = m.num;
    r.count = 1;
    if (m.type == 0) {
      if (m.num > promised_) {
        promised_ = m.num;
        r.positive = true;
        if (accepted_) r.prior = *accepted_;
      } else {
        r.positive = false;
        r.committed = promised_;  // append the larger committed number
      }
    } else {
      if (m.num >= promised_) {
        promised_ = m.num;
        accepted_ = wpx::Prior{m.num, m.value};
        r.positive = true;
      } else {
        r.positive = false;
        r.committed = promised_;
      }
    }
    NodeId proposer = m.num.id;
    // Disposition codes on the RespGen record: 0 = enqueued, 1 = handed
    // straight to the local proposer, 2 = discarded before queueing.
    if (proposer == id_) {
      r.dest = id_;
      emit_gen(ctx, r, 1);
      consume_resp(ctx, r);  // skip the queue entirely
      return;
    }
    auto pit = parent_.find(proposer);
    const char* discard = nullptr;
    if (pit == parent_.end())
      discard = "no-parent";  // no route toward the proposer yet; losing a response is safe
    else
      r.dest = pit->second;
    if (!discard && proposer != omega_) discard = "not-leader";
    if (!discard && max_seen_num_ && r.num < *max_seen_num_) discard = "superseded-number";
    if (discard) {
      emit_gen(ctx, r, 2);
      emit_drop(ctx, r, 1, discard);
      return;
    }
    emit_gen(ctx, r, 0);
    enqueue_resp(ctx, r);
  }

  void emit_gen(Engine<WPaxos>::Ctx& ctx, const wpx::RespMsg& r, std::uint64_t disposition) {
    AuditEvent ev;
    ev.kind = AuditEvent::Kind::RespGen;
    ev.resp = to_audit(r);
    ev.b = disposition;
    ctx.audit(std::move(ev));
  }

  void emit_drop(Engine<WPaxos>::Ctx& ctx, const wpx::RespMsg& r, std::uint64_t pre_queue,
                 const char* why) {
    AuditEvent ev;
    ev.kind = AuditEvent::Kind::RespDrop;
    ev.resp = to_audit(r);
    ev.b = pre_queue;  // 1 = discarded before queueing, 0 = purged from the queue
    ev.note = why;
    ctx.audit(std::move(ev));
  }

  void handle_resp(Engine<WPaxos>::Ctx& ctx, const wpx::RespMsg& r) {
    if (r.dest != id_) return;  // unicast over broadcast: not for us
    if (r.proposer() == id_) {
      consume_resp(ctx, r);
      return;
    }
    // relay toward the proposer along our own tree edge
    wpx::RespMsg fwd = r;
    if (r.proposer() != omega_) {
      emit_drop(ctx, r, 1, "not-leader");
      return;
    }
    if (max_seen_num_ && r.num < *max_seen_num_) {
      emit_drop(ctx, r, 1, "superseded-number");
      return;
    }
    auto pit = parent_.find(r.proposer());
    if (pit == parent_.end()) {
      emit_drop(ctx, r, 1, "no-parent");
      return;
    }
    fwd.dest = pit->second;
    AuditEvent ev;
    ev.kind = AuditEvent::Kind::RespRelay;
    ev.resp = to_audit(fwd);
    ctx.audit(std::move(ev));
    enqueue_resp(ctx, fwd);
  }

  void enqueue_resp(Engine<WPaxos>::Ctx&, const wpx::RespMsg& r) {
    for (auto& q : accq_) {
      if (q.key() == r.key() && q.positive == r.positive && q.dest == r.dest) {
        q.count += r.count;
        if (mutation_ == wpx::Mutation::DoubleCount) q.count += 1;
        bool keep_max = mutation_ != wpx::Mutation::DropMergeMax;
        if (r.prior && (!q.prior || (keep_max ? r.prior->num > q.prior->num
                                              : r.prior->num < q.prior->num)))
          q.prior = r.prior;
        if (keep_max ? r.committed > q.committed : (!r.committed.null() && (q.committed.null() || r.committed < q.committed)))
          q.committed = r.committed;
        return;
      }
    }
    accq_.push_back(r);
  }

  template <class Pred>
  void purge_accq(Engine<WPaxos>::Ctx& ctx, Pred drop, const char* why) {
    for (auto it = accq_.begin(); it != accq_.end();) {
      if (drop(*it)) {
        emit_drop(ctx, *it, 0, why);
        it = accq_.erase(it);
      } else {
        ++it;
      }
    }
  }

  // -- deciding ----------------------------------------------------------------

  void handle_decide(Engine<WPaxos>::Ctx& ctx, const wpx::DecideMsg& m) {
    if (decision_) return;  // duplicate receipt is a no-op
    decision_ = m.value;
    phase_ = Phase::Done;
    ctx.decide(m.value);
    decide_q_ = m;  // re-flood once
  }

  // -- broadcast service (the multiplexer loop, event-driven) -------------------

  void maybe_send(Engine<WPaxos>::Ctx& ctx) {
    if (sending_) return;
    wpx::Bundle b;
    bool any = false;
    if (decide_q_) {
      b.decide = *decide_q_;
      decide_q_.reset();
      any = true;
    }
    if (leader_q_) {
      b.leader = *leader_q_;
      leader_q_.reset();
      any = true;
    }
    if (change_q_) {
      b.change = *change_q_;
      change_q_.reset();
      any = true;
    }
    if (!tree_q_.empty()) {
      b.search = tree_q_.front();
      tree_q_.pop_front();
      any = true;
    }
    if (!flood_q_.empty()) {
      b.prop = flood_q_.front();
      flood_q_.pop_front();
      any = true;
    }
    if (!accq_.empty()) {
      b.resp = accq_.front();
      accq_.erase(accq_.begin());
      any = true;
    }
    if (!any) return;
    b.clock = clock_;
    bool ok = ctx.broadcast(std::move(b));
    (void)ok;
    sending_ = true;
  }

  // -- state -------------------------------------------------------------------

  NodeId id_ = 0;
  int value_ = 0;
  std::uint32_t n_ = 0;
  wpx::Mutation mutation_ = wpx::Mutation::None;

  std::uint64_t clock_ = 0;
  NodeId omega_ = 0;
  wpx::Timestamp last_change_;

  std::map<NodeId, std::uint32_t> dist_;
  std::map<NodeId, NodeId> parent_;

  std::optional<wpx::LeaderMsg> leader_q_;
  std::optional<wpx::ChangeMsg> change_q_;
  std::deque<wpx::SearchMsg> tree_q_;
  std::deque<wpx::PropMsg> flood_q_;
  std::vector<wpx::RespMsg> accq_;
  std::optional<wpx::DecideMsg> decide_q_;
  bool sending_ = false;

  Phase phase_ = Phase::Idle;
  wpx::PropNum cur_num_;
  int cur_value_ = 0;
  std::uint64_t max_tag_seen_ = 0;
  int attempts_left_ = 0;
  std::uint64_t pos_count_ = 0, neg_count_ = 0;
  std::optional<wpx::Prior> best_prior_;
  wpx::PropNum learned_;
  std::optional<wpx::Prior> accepted_;
  wpx::PropNum promised_;
  std::set<std::tuple<std::uint8_t, std::uint64_t, NodeId>> responded_;
  std::set<std::tuple<std::uint8_t, std::uint64_t, NodeId>> seen_props_;
  std::optional<int> decision_;
};

inline std::vector<WPaxos> make_wpaxos_nodes(const std::vector<int>& values, std::uint32_t n_known = 0,
                                             wpx::Mutation mutation = wpx::Mutation::None) {
  std::vector<WPaxos> out;
  std::uint32_t n = n_known ? n_known : static_cast<std::uint32_t>(values.size());
  for (NodeId v = 0; v < values.size(); ++v)
    out.emplace_back(WPaxos::Params{v, values[v], n, mutation});
  return out;
}

}  // namespace macsim::proto
