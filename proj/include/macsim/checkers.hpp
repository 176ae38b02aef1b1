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
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "macsim/trace.hpp"

namespace macsim {

/// Post-hoc validators. All checkers are pure functions of the trace; a fail
/// verdict always names a concrete witness from it.
struct CheckReport {
  enum class Verdict : std::uint8_t { Pass, Fail, Inapplicable };
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::string witness;
  std::map<std::string, double> metrics;

  bool passed() const { return verdict == Verdict::Pass; }
  static CheckReport pass(std::string name) { return {std::move(name), Verdict::Pass, "", {}}; }
  static CheckReport fail(std::string name, std::string w) {
    return {std::move(name), Verdict::Fail, std::move(w), {}};
  }
  static CheckReport na(std::string name, std::string w = "") {
    return {std::move(name), Verdict::Inapplicable, std::move(w), {}};
  }
};

inline nlohmann::json to_json(const CheckReport& r) {
  const char* v = r.verdict == CheckReport::Verdict::Pass ? "pass"
                  : r.verdict == CheckReport::Verdict::Fail ? "fail"
                                                            : "inapplicable";
  nlohmann::json j{{"check", r.name}, {"verdict", v}};
  if (!r.witness.empty()) j["witness"] = r.witness;
  if (!r.metrics.empty()) j["metrics"] = r.metrics;
  return j;
}

// ---------------------------------------------------------------------------
// Consensus properties

inline CheckReport check_agreement(const ExecutionTrace& t) {
  std::optional<int> first;
  NodeId first_node = 0;
  for (NodeId v = 0; v < t.topo.n; ++v) {
    if (!t.decisions[v]) continue;
    if (!first) {
      first = t.decisions[v];
      first_node = v;
    } else if (*t.decisions[v] != *first) {
      std::ostringstream os;
      os << "node " << first_node << " decided " << *first << " but node " << v << " decided "
         << *t.decisions[v] << " (step " << t.decide_steps[v] << ")";
      return CheckReport::fail("agreement", os.str());
    }
  }
  return CheckReport::pass("agreement");
}

inline CheckReport check_validity(const ExecutionTrace& t) {
  std::set<int> inputs(t.initial_values.begin(), t.initial_values.end());
  for (NodeId v = 0; v < t.topo.n; ++v) {
    if (t.decisions[v] && !inputs.count(*t.decisions[v])) {
      std::ostringstream os;
      os << "node " << v << " decided " << *t.decisions[v] << " which no node proposed";
      return CheckReport::fail("validity", os.str());
    }
  }
  return CheckReport::pass("validity");
}

inline CheckReport check_termination(const ExecutionTrace& t, VTime bound = -1) {
  auto r = CheckReport::pass("termination");
  VTime last = 0;
  for (NodeId v = 0; v < t.topo.n; ++v) {
    if (t.crashed[v]) continue;
    if (!t.decisions[v]) {
      std::ostringstream os;
      os << "node " << v << " never decided (run ended at time " << t.end_time << ")";
      return CheckReport::fail("termination", os.str());
    }
    last = std::max(last, t.decide_times[v]);
  }
  r.metrics["decision_time"] = static_cast<double>(last);
  if (bound >= 0 && last > bound) {
    std::ostringstream os;
    os << "last decision at time " << last << " exceeds bound " << bound;
    auto f = CheckReport::fail("termination", os.str());
    f.metrics = r.metrics;
    return f;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Model contract: delivery window, single pending broadcast, fairness

inline CheckReport check_model_contract(const ExecutionTrace& t) {
  bool truncated = t.stop_reason != ExecutionTrace::StopReason::Quiescent;
  for (const auto& inst : t.instances) {
    std::set<NodeId> seen;
    for (const auto& r : inst.receives) {
      if (!seen.insert(r.target).second)
        return CheckReport::fail("model-contract", "instance " + std::to_string(inst.id) +
                                                       " delivered twice to node " +
                                                       std::to_string(r.target));
      if (std::find(inst.planned.begin(), inst.planned.end(), r.target) == inst.planned.end())
        return CheckReport::fail("model-contract", "instance " + std::to_string(inst.id) +
                                                       " delivered to non-neighbor " +
                                                       std::to_string(r.target));
      if (r.time <= inst.issue_time)
        return CheckReport::fail("model-contract", "instance " + std::to_string(inst.id) +
                                                       " received at/before its issue time");
      if (inst.ack_time >= 0 && (r.time > inst.ack_time || r.step >= inst.ack_step))
        return CheckReport::fail("model-contract", "instance " + std::to_string(inst.id) +
                                                       " received after its ack");
    }
    if (inst.ack_time >= 0) {
      if (inst.release_time < inst.issue_time || inst.ack_time - inst.release_time > t.f_ack) {
        std::ostringstream os;
        os << "instance " << inst.id << " acked outside its window: issue " << inst.issue_time
           << ", release " << inst.release_time << ", ack " << inst.ack_time << ", f_ack "
           << t.f_ack;
        return CheckReport::fail("model-contract", os.str());
      }
    } else if (!truncated && !t.crashed[inst.sender]) {
      return CheckReport::fail("model-contract",
                               "instance " + std::to_string(inst.id) +
                                   " from alive node never acked in a quiescent run (fairness)");
    }
  }
  // one pending broadcast per sender at a time
  std::map<NodeId, std::vector<const InstanceRecord*>> by_sender;
  for (const auto& inst : t.instances) by_sender[inst.sender].push_back(&inst);
  for (auto& [sender, is] : by_sender) {
    std::sort(is.begin(), is.end(),
              [](auto* a, auto* b) { return a->issue_time < b->issue_time; });
    for (std::size_t i = 1; i < is.size(); ++i) {
      const auto* prev = is[i - 1];
      if (prev->ack_time < 0 || is[i]->issue_time < prev->ack_time) {
        std::ostringstream os;
        os << "node " << sender << " had two concurrently pending broadcasts (instances "
           << prev->id << " and " << is[i]->id << ")";
        return CheckReport::fail("model-contract", os.str());
      }
    }
  }
  auto r = CheckReport::pass("model-contract");
  r.metrics["effective_fack"] = static_cast<double>(t.effective_fack());
  return r;
}

// ---------------------------------------------------------------------------
// Message size / tag bounds / timing metrics

inline CheckReport check_message_size(const ExecutionTrace& t, int cap) {
  int worst = 0;
  const InstanceRecord* witness = nullptr;
  for (const auto& inst : t.instances) {
    if (inst.id_fields > worst) {
      worst = inst.id_fields;
      witness = &inst;
    }
  }
  auto r = CheckReport::pass("message-size");
  r.metrics["max_id_fields"] = worst;
  if (worst > cap && witness) {
    std::ostringstream os;
    os << "instance " << witness->id << " (" << witness->summary << ") carries " << worst
       << " id fields > cap " << cap;
    auto f = CheckReport::fail("message-size", os.str());
    f.metrics = r.metrics;
    return f;
  }
  return r;
}

inline std::uint64_t max_tag_in(const ExecutionTrace& t) {
  std::uint64_t worst = 0;
  for (const auto& a : t.audits) {
    if (a.kind == AuditEvent::Kind::ProposalStart) worst = std::max(worst, a.a);
    if (a.kind == AuditEvent::Kind::RespGen || a.kind == AuditEvent::Kind::RespConsume ||
        a.kind == AuditEvent::Kind::RespRelay || a.kind == AuditEvent::Kind::RespDrop)
      worst = std::max(worst, a.resp.key.num.tag);
  }
  return worst;
}

inline CheckReport check_tag_bound(const ExecutionTrace& t, std::uint64_t ceiling) {
  std::uint64_t worst = max_tag_in(t);
  auto r = CheckReport::pass("tag-bound");
  r.metrics["max_tag"] = static_cast<double>(worst);
  r.metrics["ceiling"] = static_cast<double>(ceiling);
  if (worst > ceiling) {
    auto f = CheckReport::fail("tag-bound", "max tag " + std::to_string(worst) +
                                                " exceeds ceiling " + std::to_string(ceiling));
    f.metrics = r.metrics;
    return f;
  }
  return r;
}

inline VTime time_of_step(const ExecutionTrace& t, std::uint32_t step) {
  if (step == 0) return 0;
  auto it = std::lower_bound(t.events.begin(), t.events.end(), step,
                             [](const SimEvent& e, std::uint32_t s) { return e.step < s; });
  if (it == t.events.end()) return t.end_time;
  return it->time;
}

struct TimeMetrics {
  VTime first_decision = -1;
  VTime last_decision = -1;
  double per_fack = -1;
  double per_dfack = -1;
  VTime gst = -1;  // time of the step generating the final change
  std::uint64_t max_tag = 0;
  bool terminated = false;
};

inline TimeMetrics measure_times(const ExecutionTrace& t) {
  TimeMetrics m;
  m.terminated = t.terminated;
  for (NodeId v = 0; v < t.topo.n; ++v) {
    if (!t.decisions[v]) continue;
    if (m.first_decision < 0 || t.decide_times[v] < m.first_decision)
      m.first_decision = t.decide_times[v];
    m.last_decision = std::max(m.last_decision, t.decide_times[v]);
  }
  if (m.last_decision >= 0) {
    m.per_fack = static_cast<double>(m.last_decision) / static_cast<double>(t.f_ack);
    if (t.topo.diameter > 0)
      m.per_dfack = m.per_fack / static_cast<double>(t.topo.diameter);
  }
  for (const auto& a : t.audits)
    if (a.kind == AuditEvent::Kind::ChangeGen) m.gst = std::max(m.gst, time_of_step(t, a.step));
  m.max_tag = max_tag_in(t);
  return m;
}

inline CheckReport measure_times_report(const ExecutionTrace& t) {
  auto m = measure_times(t);
  auto r = CheckReport::pass("timing");
  r.metrics["first_decision"] = static_cast<double>(m.first_decision);
  r.metrics["last_decision"] = static_cast<double>(m.last_decision);
  r.metrics["per_fack"] = m.per_fack;
  r.metrics["per_dfack"] = m.per_dfack;
  r.metrics["gst"] = static_cast<double>(m.gst);
  r.metrics["max_tag"] = static_cast<double>(m.max_tag);
  if (!t.terminated) return CheckReport::fail("timing", "run did not terminate");
  return r;
}

// ---------------------------------------------------------------------------
// Indistinguishability: mapped nodes must carry equal state digests at the
// end of every round r <= t.

inline CheckReport check_indistinguishable(const ExecutionTrace& x, const ExecutionTrace& y,
                                           const std::vector<std::pair<NodeId, NodeId>>& mapping,
                                           VTime t) {
  for (VTime r = 0; r <= t; ++r) {
    for (const auto& [a, b] : mapping) {
      std::uint64_t ha = x.state_at(a, r);
      std::uint64_t hb = y.state_at(b, r);
      if (ha != hb) {
        std::ostringstream os;
        os << "states diverge at round " << r << ": node " << a << " ("
           << x.topo.labels[a] << ") vs node " << b << " (" << y.topo.labels[b] << ")";
        return CheckReport::fail("indistinguishability", os.str());
      }
    }
  }
  auto r = CheckReport::pass("indistinguishability");
  r.metrics["rounds"] = static_cast<double>(t);
  r.metrics["pairs"] = static_cast<double>(mapping.size());
  return r;
}

// ---------------------------------------------------------------------------
// Causal-history bound: the earliest time an endpoint's causal past includes
// any node of `far_set` (node sets as bitmasks; n <= 64).

inline CheckReport check_causal_bound(const ExecutionTrace& t, NodeId endpoint,
                                      const std::vector<NodeId>& far_set, VTime bound) {
  if (t.topo.n > 64) return CheckReport::na("causal-bound", "more than 64 nodes");
  std::uint64_t far = 0;
  for (NodeId v : far_set) far |= (1ull << v);
  std::vector<std::uint64_t> past(t.topo.n);
  for (NodeId v = 0; v < t.topo.n; ++v) past[v] = 1ull << v;
  std::vector<std::uint64_t> snapshot(t.instances.size(), 0);
  // replay issue/receive interleaving in step order
  std::size_t next_inst = 0;
  std::vector<std::size_t> inst_order(t.instances.size());
  for (std::size_t i = 0; i < inst_order.size(); ++i) inst_order[i] = i;
  std::sort(inst_order.begin(), inst_order.end(), [&](std::size_t a, std::size_t b) {
    return t.instances[a].issue_step < t.instances[b].issue_step;
  });
  VTime crossed_at = -1;
  auto take_issues = [&](std::uint32_t upto_step) {
    while (next_inst < inst_order.size() &&
           t.instances[inst_order[next_inst]].issue_step <= upto_step) {
      const auto& inst = t.instances[inst_order[next_inst]];
      snapshot[inst.id] = past[inst.sender];
      ++next_inst;
    }
  };
  take_issues(0);
  for (const auto& e : t.events) {
    take_issues(e.step > 0 ? e.step - 1 : 0);
    if (e.kind == EventKind::Receive && e.instance != kNoInstance) {
      past[e.node] |= snapshot[e.instance];
      if (e.node == endpoint && (past[endpoint] & far) && crossed_at < 0) crossed_at = e.time;
    }
    take_issues(e.step);
  }
  auto r = CheckReport::pass("causal-bound");
  r.metrics["earliest_cross"] = static_cast<double>(crossed_at);
  r.metrics["bound"] = static_cast<double>(bound);
  if (crossed_at >= 0 && crossed_at < bound) {
    std::ostringstream os;
    os << "endpoint " << endpoint << " heard from the far half at time " << crossed_at
       << " < bound " << bound;
    auto f = CheckReport::fail("causal-bound", os.str());
    f.metrics = r.metrics;
    return f;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Counting audit: recomputes every aggregated-response queue, in-flight
// count and future-response indicator per proposition, verifies the
// conservation of counts at every transfer, the max-merge rules, and the
// step-wise inequality  Q(p,s) + c(p,s) <= a(p).

struct CountAudit {
  struct PerProp {
    AuditPropKey key;
    std::uint64_t a = 0;          // acceptors that generated an affirmative response
    std::uint64_t c = 0;          // affirmative count received by the originator
    std::uint64_t worst_q = 0;    // max of Q(p,s)+c(p,s) observed
    std::uint32_t steps_checked = 0;
  };
  std::vector<PerProp> props;
  bool ok = true;
  std::string witness;
};

namespace detail_audit {

struct Item {
  std::uint32_t step = 0;
  int order = 0;  // stable secondary order within a step
  enum class What : std::uint8_t { Gen, Relay, Consume, DropQueued, DropInformational, Issue, RecvAtDest } what;
  NodeId node = 0;
  AuditResp resp;
  std::uint32_t inst = kNoInstance;
};

struct Bucket {
  std::uint64_t count = 0;
  bool has_prior = false;
  AuditPropNum prior_num;
  bool has_committed = false;
  AuditPropNum committed;
};

}  // namespace detail_audit

inline CountAudit audit_counts_full(const ExecutionTrace& t) {
  using detail_audit::Item;
  CountAudit out;
  bool have_records = false;
  for (const auto& a : t.audits)
    if (a.kind == AuditEvent::Kind::RespGen) have_records = true;
  if (!have_records && t.instances.empty()) {
    out.ok = false;
    out.witness = "no component-level payload records";
    return out;
  }

  // collect propositions
  std::set<AuditPropKey> keys;
  for (const auto& a : t.audits)
    switch (a.kind) {
      case AuditEvent::Kind::RespGen:
      case AuditEvent::Kind::RespRelay:
      case AuditEvent::Kind::RespConsume:
      case AuditEvent::Kind::RespDrop:
        keys.insert(a.resp.key);
        break;
      default:
        break;
    }
  for (const auto& inst : t.instances)
    for (const auto& comp : inst.resp_components) keys.insert(comp.key);

  for (const auto& key : keys) {
    // Build the per-proposition item timeline.
    std::vector<Item> items;
    int order = 0;
    for (const auto& a : t.audits) {
      if (a.kind != AuditEvent::Kind::RespGen && a.kind != AuditEvent::Kind::RespRelay &&
          a.kind != AuditEvent::Kind::RespConsume && a.kind != AuditEvent::Kind::RespDrop)
        continue;
      if (!(a.resp.key == key)) continue;
      Item it;
      it.step = a.step;
      it.order = ++order;
      it.node = a.node;
      it.resp = a.resp;
      switch (a.kind) {
        case AuditEvent::Kind::RespGen:
          it.what = Item::What::Gen;
          it.resp.count = 1;
          // a.b: 0 = enqueued, 1 = direct self-consume, 2 = discarded pre-queue
          it.inst = static_cast<std::uint32_t>(a.b);
          break;
        case AuditEvent::Kind::RespRelay:
          it.what = Item::What::Relay;
          break;
        case AuditEvent::Kind::RespConsume:
          it.what = Item::What::Consume;
          break;
        case AuditEvent::Kind::RespDrop:
          it.what = a.b == 0 ? Item::What::DropQueued : Item::What::DropInformational;
          break;
        default:
          break;
      }
      items.push_back(std::move(it));
    }
    for (const auto& inst : t.instances) {
      for (const auto& comp : inst.resp_components) {
        if (!(comp.key == key)) continue;
        Item is;
        is.step = inst.issue_step;
        is.order = ++order;  // issues happen after the handler audits of their step
        is.what = Item::What::Issue;
        is.node = inst.sender;
        is.resp = comp;
        is.inst = inst.id;
        items.push_back(is);
        for (const auto& r : inst.receives) {
          if (r.target != comp.dest) continue;
          Item rc;
          rc.step = r.step;
          rc.order = 0;  // the receive event precedes same-step handler audits
          rc.what = Item::What::RecvAtDest;
          rc.node = r.target;
          rc.resp = comp;
          rc.inst = inst.id;
          items.push_back(rc);
        }
      }
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      if (a.step != b.step) return a.step < b.step;
      return a.order < b.order;
    });

    // Two passes: first mark which acceptors ever respond affirmatively,
    // then walk the timeline evaluating the invariant at each step.
    CountAudit::PerProp pp;
    pp.key = key;
    std::map<NodeId, std::uint32_t> gen_step_pos;  // node -> step of its affirmative response
    std::set<NodeId> gen_seen;
    for (const auto& it : items) {
      if (it.what == Item::What::Gen) {
        if (gen_seen.count(it.node)) {
          out.ok = false;
          out.witness = "acceptor " + std::to_string(it.node) +
                        " generated two responses to one proposition";
          return out;
        }
        gen_seen.insert(it.node);
        if (it.resp.positive) {
          ++pp.a;
          gen_step_pos[it.node] = it.step;
        }
      }
    }

    std::map<std::pair<NodeId, NodeId>, detail_audit::Bucket> qpos, qneg;  // (node,dest)
    std::map<std::uint32_t, AuditResp> inflight;                           // instance -> component
    std::map<NodeId, AuditResp> reg;  // received-but-undisposed component per node
    std::uint64_t future = pp.a;
    std::uint64_t c = 0;

    auto bucket_of = [&](bool positive, NodeId node, NodeId dest) -> detail_audit::Bucket& {
      return positive ? qpos[{node, dest}] : qneg[{node, dest}];
    };
    auto fail = [&](const std::string& msg, std::uint32_t step) {
      out.ok = false;
      std::ostringstream os;
      os << "proposition (proposer " << key.proposer << ", " << (key.type == 0 ? "prepare" : "propose")
         << ", tag " << key.num.tag << ") step " << step << ": " << msg;
      out.witness = os.str();
    };
    auto merge_max = [](detail_audit::Bucket& b, const AuditResp& r) {
      b.count += r.count;
      if (r.has_prior && (!b.has_prior || r.prior_num > b.prior_num)) {
        b.has_prior = true;
        b.prior_num = r.prior_num;
      }
      if (r.has_committed && (!b.has_committed || r.committed > b.committed)) {
        b.has_committed = true;
        b.committed = r.committed;
      }
    };

    std::size_t i = 0;
    while (i < items.size() && out.ok) {
      std::uint32_t step = items[i].step;
      for (; i < items.size() && items[i].step == step; ++i) {
        const Item& it = items[i];
        switch (it.what) {
          case Item::What::Gen: {
            if (it.resp.positive) future -= 1;
            if (it.inst == 0) merge_max(bucket_of(it.resp.positive, it.node, it.resp.dest), it.resp);
            // b==1: direct self-consume (handled by the Consume item);
            // b==2: discarded before queueing.
            break;
          }
          case Item::What::RecvAtDest: {
            auto f = inflight.find(it.inst);
            if (f == inflight.end()) {
              fail("destination received a component that was not in flight", it.step);
              break;
            }
            inflight.erase(f);
            reg[it.node] = it.resp;
            break;
          }
          case Item::What::Relay: {
            auto r = reg.find(it.node);
            if (r == reg.end() || r->second.count != it.resp.count) {
              fail("relayed count does not match the received component", it.step);
              break;
            }
            reg.erase(r);
            merge_max(bucket_of(it.resp.positive, it.node, it.resp.dest), it.resp);
            break;
          }
          case Item::What::Consume: {
            auto r = reg.find(it.node);
            if (r != reg.end()) {
              if (r->second.count != it.resp.count) {
                fail("consumed count does not match the received component", it.step);
                break;
              }
              reg.erase(r);
            }
            // else: the originator's own acceptor answered directly.
            if (it.resp.positive) c += it.resp.count;
            break;
          }
          case Item::What::DropQueued: {
            auto& b = bucket_of(it.resp.positive, it.node, it.resp.dest);
            if (b.count != it.resp.count) {
              fail("queue purge dropped " + std::to_string(it.resp.count) + " but the queue held " +
                       std::to_string(b.count),
                   it.step);
              break;
            }
            b = detail_audit::Bucket{};
            break;
          }
          case Item::What::DropInformational: {
            auto r = reg.find(it.node);
            if (r != reg.end() && r->second.count == it.resp.count) reg.erase(r);
            break;
          }
          case Item::What::Issue: {
            auto& b = bucket_of(it.resp.positive, it.node, it.resp.dest);
            if (b.count != it.resp.count) {
              fail("issued component count " + std::to_string(it.resp.count) +
                       " does not match the recomputed queue content " + std::to_string(b.count),
                   it.step);
              break;
            }
            bool prior_ok = (it.resp.has_prior == b.has_prior) &&
                            (!b.has_prior || it.resp.prior_num == b.prior_num);
            if (!prior_ok) {
              fail("issued component does not carry the max-numbered prior proposal", it.step);
              break;
            }
            bool committed_ok = (it.resp.has_committed == b.has_committed) &&
                                (!b.has_committed || it.resp.committed == b.committed);
            if (!committed_ok) {
              fail("issued component does not carry the max committed number", it.step);
              break;
            }
            b = detail_audit::Bucket{};
            inflight[it.inst] = it.resp;
            break;
          }
        }
        if (!out.ok) break;
      }
      if (!out.ok) break;
      // invariant (*) at the end of this step, affirmative responses only
      std::uint64_t q = future;
      for (const auto& [k2, b] : qpos) q += b.count;
      for (const auto& [k2, comp] : inflight)
        if (comp.positive) q += comp.count;
      for (const auto& [k2, comp] : reg)
        if (comp.positive) q += comp.count;
      pp.worst_q = std::max(pp.worst_q, q + c);
      ++pp.steps_checked;
      if (q + c > pp.a) {
        fail("Q + c = " + std::to_string(q + c) + " exceeds a = " + std::to_string(pp.a), step);
        break;
      }
    }
    pp.c = c;
    if (out.ok && pp.c > pp.a) {
      out.ok = false;
      out.witness = "final count c exceeds a for proposer " + std::to_string(key.proposer);
    }
    out.props.push_back(pp);
    if (!out.ok) break;
  }
  return out;
}

inline CheckReport audit_counts(const ExecutionTrace& t) {
  bool any = false;
  for (const auto& a : t.audits)
    if (a.kind == AuditEvent::Kind::RespGen) any = true;
  if (!any) return CheckReport::na("count-audit", "trace carries no aggregated-response records");
  auto full = audit_counts_full(t);
  if (!full.ok) return CheckReport::fail("count-audit", full.witness);
  auto r = CheckReport::pass("count-audit");
  r.metrics["propositions"] = static_cast<double>(full.props.size());
  return r;
}

// ---------------------------------------------------------------------------

struct StandardCheckOptions {
  VTime termination_bound = -1;
  int message_size_cap = 12;
  std::uint64_t tag_ceiling = 0;  // 0: skip
  bool expect_termination = true;
};

inline std::vector<CheckReport> run_standard_checks(const ExecutionTrace& t,
                                                    const StandardCheckOptions& o = {}) {
  std::vector<CheckReport> out;
  out.push_back(check_agreement(t));
  out.push_back(check_validity(t));
  if (o.expect_termination) out.push_back(check_termination(t, o.termination_bound));
  out.push_back(check_model_contract(t));
  out.push_back(check_message_size(t, o.message_size_cap));
  if (o.tag_ceiling) out.push_back(check_tag_bound(t, o.tag_ceiling));
  bool any_audit = false;
  for (const auto& a : t.audits)
    if (a.kind == AuditEvent::Kind::RespGen) any_audit = true;
  if (any_audit) out.push_back(audit_counts(t));
  return out;
}

}  // namespace macsim
