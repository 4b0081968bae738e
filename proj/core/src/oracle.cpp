// Copyright 2026 The atlkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "atlkd/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace atlkd {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True: return "True";
    case Verdict::False: return "False";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

Verdict kleene_not(Verdict v) {
  if (v == Verdict::True) return Verdict::False;
  if (v == Verdict::False) return Verdict::True;
  return Verdict::Unknown;
}

Verdict kleene_and(Verdict a, Verdict b) {
  if (a == Verdict::False || b == Verdict::False) return Verdict::False;
  if (a == Verdict::True && b == Verdict::True) return Verdict::True;
  return Verdict::Unknown;
}

Verdict kleene_or(Verdict a, Verdict b) {
  if (a == Verdict::True || b == Verdict::True) return Verdict::True;
  if (a == Verdict::False && b == Verdict::False) return Verdict::False;
  return Verdict::Unknown;
}

Verdict kleene_implies(Verdict a, Verdict b) {
  return kleene_or(kleene_not(a), b);
}

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t budget)
    : std::runtime_error("strategy enumeration needs " +
                         std::to_string(required) +
                         " strategies, over the budget of " +
                         std::to_string(budget)),
      required_(required) {}

RunTree::RunTree(const InterpretedSystem& is, int horizon)
    : is_(&is), horizon_(horizon) {
  if (horizon < 0) throw EvalError("horizon must be >= 0");
  if (is.initial().empty()) throw EvalError("system has no initial states");
  level_begin_.push_back(0);
  for (StateId s : is.initial()) {
    states_.push_back(s);
    parent_.push_back(-1);
    action_.push_back(-1);
    level_.push_back(0);
  }
  level_begin_.push_back(static_cast<int>(states_.size()));
  const int na = static_cast<int>(is.num_joint_actions());
  for (int l = 1; l <= horizon; ++l) {
    const int begin = level_begin_[l - 1];
    const int end = level_begin_[l];
    for (int n = begin; n < end; ++n) {
      for (ActionId a = 0; a < na; ++a) {
        states_.push_back(is.successor(states_[n], a));
        parent_.push_back(n);
        action_.push_back(a);
        level_.push_back(l);
      }
    }
    level_begin_.push_back(static_cast<int>(states_.size()));
  }
}

int RunTree::child(int node, ActionId a) const {
  const int l = level_[node];
  if (l >= horizon_) throw EvalError("no children beyond the horizon");
  const int na = static_cast<int>(is_->num_joint_actions());
  return level_begin_[l + 1] + (node - level_begin_[l]) * na + a;
}

Run RunTree::run_of(int node) const {
  Run r;
  std::vector<int> chain;
  for (int n = node; n >= 0; n = parent_[n]) chain.push_back(n);
  std::reverse(chain.begin(), chain.end());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    r.states.push_back(states_[chain[i]]);
    if (i > 0) r.actions.push_back(action_[chain[i]]);
  }
  return r;
}

int RunTree::find_node(const Run& r) const {
  if (static_cast<int>(r.length()) > horizon_) return -1;
  int node = -1;
  for (int n = level_begin_[0]; n < level_begin_[1]; ++n)
    if (states_[n] == r.states[0]) {
      node = n;
      break;
    }
  if (node < 0) return -1;
  for (std::size_t j = 0; j < r.actions.size(); ++j) {
    node = child(node, r.actions[j]);
    if (states_[node] != r.states[j + 1]) return -1;
  }
  return node;
}

const RunTree::Partition& RunTree::partition(const Coalition& g) const {
  auto it = partitions_.find(g);
  if (it != partitions_.end()) return it->second;

  Partition p;
  p.class_of.assign(states_.size(), -1);
  const auto idx = is_->coalition_indices(g);
  int next_class = 0;
  for (int l = 0; l <= horizon_; ++l) {
    std::map<std::vector<int>, int> key_to_class;
    for (int n = level_begin(l); n < level_end(l); ++n) {
      std::vector<int> key;
      if (l > 0) {
        key.push_back(p.class_of[parent_[n]]);
        for (std::size_t i : idx)
          key.push_back(is_->actions().component(action_[n], i));
      }
      for (std::size_t i : idx)
        key.push_back(is_->states().component(states_[n], i));
      const auto [slot, inserted] = key_to_class.try_emplace(key, next_class);
      if (inserted) {
        p.members.emplace_back();
        ++next_class;
      }
      p.class_of[n] = slot->second;
      p.members[slot->second].push_back(n);
    }
  }
  return partitions_.emplace(g, std::move(p)).first->second;
}

std::string local_run_string(const RunTree& tree, int node, std::size_t member) {
  const InterpretedSystem& is = tree.system();
  std::vector<int> chain;
  for (int n = node; n >= 0; n = tree.parent_of(n)) chain.push_back(n);
  std::reverse(chain.begin(), chain.end());
  std::ostringstream os;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i > 0)
      os << " "
         << is.actions().token(
                member, is.actions().component(tree.action_into(chain[i]), member))
         << " ";
    os << is.states().token(
        member, is.states().component(tree.state_of(chain[i]), member));
  }
  return os.str();
}

Evaluator::Evaluator(const RunTree& tree) : tree_(tree) {}

void Evaluator::set_ghost(const std::string& atom, std::vector<Verdict> per_node) {
  if (per_node.size() != static_cast<std::size_t>(tree_.size()))
    throw EvalError("ghost valuation size must match the run tree");
  ghosts_[atom] = std::move(per_node);
  formula_memo_.clear();  // atom verdicts changed
  lfp_memo_.clear();
}

void Evaluator::clear_ghosts() {
  ghosts_.clear();
  formula_memo_.clear();
  lfp_memo_.clear();
}

Verdict Evaluator::eval_atom(int node, const std::string& name) const {
  const auto it = ghosts_.find(name);
  if (it != ghosts_.end()) return it->second[node];
  return as_verdict(tree_.system().prop_holds(name, tree_.state_of(node)));
}

const Evaluator::CoalitionInfo& Evaluator::coalition_info(const Coalition& g) {
  auto it = coalition_info_.find(g);
  if (it != coalition_info_.end()) return it->second;

  const InterpretedSystem& is = tree_.system();
  CoalitionInfo info;
  info.indices = is.coalition_indices(g);
  for (std::size_t i : info.indices)
    info.partial_count *= static_cast<int>(is.actions().set(i).size());
  info.joints.resize(info.partial_count);
  const int na = static_cast<int>(is.num_joint_actions());
  info.partial_of_joint.resize(na);
  for (ActionId a = 0; a < na; ++a) {
    int partial = 0;
    for (std::size_t i : info.indices)
      partial = partial * static_cast<int>(is.actions().set(i).size()) +
                is.actions().component(a, i);
    info.joints[partial].push_back(a);
    info.partial_of_joint[a] = partial;
  }
  return coalition_info_.emplace(g, std::move(info)).first->second;
}

Verdict Evaluator::eval(int node, const Formula& f) {
  auto it = formula_memo_.find(f.id());
  if (it == formula_memo_.end()) {
    MemoEntry entry{f, std::vector<signed char>(tree_.size(), -1)};
    it = formula_memo_.emplace(f.id(), std::move(entry)).first;
  }
  if (it->second.verdict[node] >= 0)
    return static_cast<Verdict>(it->second.verdict[node]);

  Verdict v = Verdict::Unknown;
  switch (f.kind()) {
    case FormulaKind::False:
      v = Verdict::False;
      break;
    case FormulaKind::Atom:
      v = eval_atom(node, f.atom_name());
      break;
    case FormulaKind::Implies:
      v = kleene_implies(eval(node, f.child(0)), eval(node, f.child(1)));
      break;
    case FormulaKind::DKnows: {
      const auto& part = tree_.partition(f.coalition());
      v = Verdict::True;
      for (int m : part.members[part.class_of[node]]) {
        v = kleene_and(v, eval(m, f.child(0)));
        if (v == Verdict::False) break;
      }
      break;
    }
    case FormulaKind::CoopNext: {
      if (tree_.level_of(node) == tree_.horizon()) {
        v = Verdict::Unknown;
        break;
      }
      const auto& part = tree_.partition(f.coalition());
      const auto& info = coalition_info(f.coalition());
      const auto& members = part.members[part.class_of[node]];
      v = Verdict::False;
      for (int partial = 0; partial < info.partial_count; ++partial) {
        Verdict forced = Verdict::True;
        for (int m : members) {
          for (ActionId a : info.joints[partial]) {
            forced = kleene_and(forced, eval(tree_.child(m, a), f.child(0)));
            if (forced == Verdict::False) break;
          }
          if (forced == Verdict::False) break;
        }
        v = kleene_or(v, forced);
        if (v == Verdict::True) break;
      }
      break;
    }
    case FormulaKind::CoopUntil:
      if (is_subset_until(f)) {
        v = eval_guarded_coop_until(node, f);
      } else {
        v = eval_until_enum(node, f.coalition(), f.child(0), f.child(1),
                            /*dual=*/false);
      }
      break;
    case FormulaKind::DualCoopUntil:
      v = eval_until_enum(node, f.coalition(), f.child(0), f.child(1),
                          /*dual=*/true);
      break;
    case FormulaKind::ExistsNext: {
      if (tree_.level_of(node) == tree_.horizon()) {
        v = Verdict::Unknown;
        break;
      }
      v = Verdict::False;
      const int na = static_cast<int>(tree_.system().num_joint_actions());
      for (ActionId a = 0; a < na; ++a) {
        v = kleene_or(v, eval(tree_.child(node, a), f.child(0)));
        if (v == Verdict::True) break;
      }
      break;
    }
    case FormulaKind::ExistsUntil:
    case FormulaKind::ForallUntil: {
      const bool universal = f.kind() == FormulaKind::ForallUntil;
      const Verdict now = eval(node, f.child(1));
      Verdict tail;
      if (tree_.level_of(node) == tree_.horizon()) {
        tail = Verdict::Unknown;
      } else {
        tail = universal ? Verdict::True : Verdict::False;
        const int na = static_cast<int>(tree_.system().num_joint_actions());
        for (ActionId a = 0; a < na; ++a) {
          const Verdict sub = eval(tree_.child(node, a), f);
          tail = universal ? kleene_and(tail, sub) : kleene_or(tail, sub);
          if ((universal && tail == Verdict::False) ||
              (!universal && tail == Verdict::True))
            break;
        }
      }
      v = kleene_or(now, kleene_and(eval(node, f.child(0)), tail));
      break;
    }
  }

  // The recursion may have rehashed the memo map; re-find the slot.
  formula_memo_.find(f.id())->second.verdict[node] =
      static_cast<signed char>(v);
  return v;
}

Verdict Evaluator::eval_guarded_coop_until(int node, const Formula& f) {
  auto it = lfp_memo_.find(f.id());
  if (it == lfp_memo_.end()) {
    LfpEntry entry{f, lfp_until(f.coalition(), f.child(0).child(0),
                                f.child(1).child(0), /*strict=*/false)};
    it = lfp_memo_.emplace(f.id(), std::move(entry)).first;
  }
  return it->second.result.verdict[node];
}

Evaluator::LfpResult Evaluator::lfp_until(const Coalition& g, const Formula& phi,
                                          const Formula& psi, bool strict) {
  const Formula target = Formula::dknows(g, psi);  // K_Γψ
  const Formula guard = Formula::dknows(g, phi);   // K_Γφ

  LfpResult r;
  r.verdict.assign(tree_.size(), Verdict::Unknown);
  r.target_now.resize(tree_.size());
  r.guard_now.resize(tree_.size());
  r.witness.assign(tree_.size(), -1);
  for (int n = 0; n < tree_.size(); ++n) {
    r.target_now[n] = eval(n, target);
    r.guard_now[n] = eval(n, guard);
    if (strict && (r.target_now[n] == Verdict::Unknown ||
                   r.guard_now[n] == Verdict::Unknown))
      throw EvalError(
          "lfp_until precondition: K-guarded arguments must be decided at "
          "every run up to the horizon");
  }

  const auto& part = tree_.partition(g);
  const auto& info = coalition_info(g);
  for (int l = tree_.horizon(); l >= 0; --l) {
    std::map<int, std::pair<Verdict, int>> done;  // class -> (verdict, witness)
    for (int n = tree_.level_begin(l); n < tree_.level_end(l); ++n) {
      const int cls = part.class_of[n];
      auto dit = done.find(cls);
      if (dit == done.end()) {
        const Verdict a = r.target_now[n];
        const Verdict b = r.guard_now[n];
        Verdict v;
        int wit = -1;
        if (l == tree_.horizon()) {
          // Horizon seed: decided only through the target itself.
          v = a == Verdict::True ? Verdict::True : Verdict::Unknown;
        } else {
          Verdict step = Verdict::False;
          for (int partial = 0; partial < info.partial_count; ++partial) {
            Verdict forced = Verdict::True;
            for (int m : part.members[cls]) {
              for (ActionId act : info.joints[partial]) {
                forced = kleene_and(forced, r.verdict[tree_.child(m, act)]);
                if (forced == Verdict::False) break;
              }
              if (forced == Verdict::False) break;
            }
            step = kleene_or(step, forced);
            if (step == Verdict::True) {
              wit = partial;
              break;
            }
          }
          v = kleene_or(a, kleene_and(b, step));
          if (a == Verdict::True || v != Verdict::True) wit = -1;
        }
        dit = done.emplace(cls, std::make_pair(v, wit)).first;
      }
      r.verdict[n] = dit->second.first;
      r.witness[n] = dit->second.second;
    }
  }
  return r;
}

namespace {

// Flattened per-agent local-run slots relevant to an until-objective query.
struct EnumDomain {
  // slot axes in a fixed order: (coalition position, local class id)
  std::vector<std::pair<std::size_t, int>> slots;  // (position in Γ, class)
  std::map<std::pair<std::size_t, int>, std::size_t> slot_index;
  std::vector<int> radix;         // actions of that member
  std::uint64_t count = 1;        // saturating product
};

constexpr std::uint64_t kCountCap = std::uint64_t(1) << 62;

}  // namespace

std::uint64_t Evaluator::strategy_count_for(int node, const Coalition& g) {
  const auto& part = tree_.partition(g);
  const auto& info = coalition_info(g);
  const auto& members = part.members[part.class_of[node]];

  std::uint64_t count = 1;
  std::vector<int> frontier(members.begin(), members.end());
  for (int l = tree_.level_of(node); l < tree_.horizon(); ++l) {
    for (std::size_t pos = 0; pos < info.indices.size(); ++pos) {
      const Coalition solo({g.members()[pos]});
      const auto& local = tree_.partition(solo);
      std::set<int> classes;
      for (int n : frontier) classes.insert(local.class_of[n]);
      const std::uint64_t acts =
          tree_.system().actions().set(info.indices[pos]).size();
      for (std::size_t k = 0; k < classes.size(); ++k) {
        if (count > kCountCap / acts) return kCountCap;
        count *= acts;
      }
    }
    std::vector<int> next;
    next.reserve(frontier.size() * tree_.system().num_joint_actions());
    for (int n : frontier)
      for (ActionId a = 0;
           a < static_cast<ActionId>(tree_.system().num_joint_actions()); ++a)
        next.push_back(tree_.child(n, a));
    frontier = std::move(next);
  }
  return count;
}

Verdict Evaluator::eval_until_enum(int node, const Coalition& g,
                                   const Formula& phi, const Formula& psi,
                                   bool dual) {
  const auto& part = tree_.partition(g);
  const auto& info = coalition_info(g);
  const auto& members = part.members[part.class_of[node]];

  // Collect the relevant local-run slots, walking the forward tree of the
  // class down to horizon-1 (the last step where an action is taken).
  EnumDomain dom;
  std::vector<const RunTree::Partition*> local_parts;
  for (const auto& m : g.members())
    local_parts.push_back(&tree_.partition(Coalition({m})));
  {
    std::vector<int> frontier(members.begin(), members.end());
    for (int l = tree_.level_of(node); l < tree_.horizon(); ++l) {
      for (int n : frontier) {
        for (std::size_t pos = 0; pos < info.indices.size(); ++pos) {
          const auto key = std::make_pair(pos, local_parts[pos]->class_of[n]);
          if (dom.slot_index.emplace(key, dom.slots.size()).second) {
            dom.slots.push_back(key);
            const int acts = static_cast<int>(
                tree_.system().actions().set(info.indices[pos]).size());
            dom.radix.push_back(acts);
            if (dom.count > kCountCap / acts) dom.count = kCountCap;
            else dom.count *= acts;
          }
        }
      }
      std::vector<int> next;
      next.reserve(frontier.size() * tree_.system().num_joint_actions());
      for (int n : frontier)
        for (ActionId a = 0;
             a < static_cast<ActionId>(tree_.system().num_joint_actions()); ++a)
          next.push_back(tree_.child(n, a));
      frontier = std::move(next);
    }
  }
  if (dom.count > budget_) throw BudgetExceeded(dom.count, budget_);

  std::vector<int> choice(dom.slots.size(), 0);

  // Verdict of "the until-objective holds along all (coop) / some (dual)
  // strategy-consistent paths from x", by structural recursion on the tree.
  const std::function<Verdict(int)> from = [&](int x) -> Verdict {
    const Verdict now = eval(x, psi);
    if (now == Verdict::True) return Verdict::True;
    const Verdict guard = eval(x, phi);
    Verdict tail;
    if (tree_.level_of(x) == tree_.horizon()) {
      tail = Verdict::Unknown;
    } else {
      int partial = 0;
      for (std::size_t pos = 0; pos < info.indices.size(); ++pos) {
        const auto key = std::make_pair(pos, local_parts[pos]->class_of[x]);
        partial = partial * dom.radix[dom.slot_index.at(key)] +
                  choice[dom.slot_index.at(key)];
      }
      tail = dual ? Verdict::False : Verdict::True;
      for (ActionId a : info.joints[partial]) {
        const Verdict sub = from(tree_.child(x, a));
        tail = dual ? kleene_or(tail, sub) : kleene_and(tail, sub);
        if ((dual && tail == Verdict::True) ||
            (!dual && tail == Verdict::False))
          break;
      }
    }
    return kleene_or(now, kleene_and(guard, tail));
  };

  // dual: ∀ strategies ∃ outcome; coop: ∃ strategy ∀ outcomes.
  Verdict result = dual ? Verdict::True : Verdict::False;
  while (true) {
    Verdict per_strategy = dual ? Verdict::False : Verdict::True;
    for (int m : members) {
      const Verdict v = from(m);
      per_strategy = dual ? kleene_or(per_strategy, v) : kleene_and(per_strategy, v);
      if ((dual && per_strategy == Verdict::True) ||
          (!dual && per_strategy == Verdict::False))
        break;
    }
    result = dual ? kleene_and(result, per_strategy)
                  : kleene_or(result, per_strategy);
    if ((dual && result == Verdict::False) ||
        (!dual && result == Verdict::True))
      return result;

    // Odometer over slot choices.
    std::size_t k = 0;
    for (; k < choice.size(); ++k) {
      if (++choice[k] < dom.radix[k]) break;
      choice[k] = 0;
    }
    if (k == choice.size()) break;
  }
  return result;
}

Verdict Evaluator::eval_coop_until_enum(int node, const Coalition& g,
                                        const Formula& phi, const Formula& psi) {
  return eval_until_enum(node, g, phi, psi, /*dual=*/false);
}

Verdict Evaluator::eval_dual_coop_until_enum(int node, const Coalition& g,
                                             const Formula& phi,
                                             const Formula& psi) {
  return eval_until_enum(node, g, phi, psi, /*dual=*/true);
}

Verdict Evaluator::sat_at_initial(const Formula& f) {
  Verdict v = Verdict::False;
  for (int n = tree_.level_begin(0); n < tree_.level_end(0); ++n) {
    v = kleene_or(v, eval(n, f));
    if (v == Verdict::True) break;
  }
  return v;
}

Verdict holds(const InterpretedSystem& is, const Run& r, const Formula& f,
              int horizon) {
  if (static_cast<int>(r.length()) > horizon)
    throw EvalError("horizon smaller than the run length");
  RunTree tree(is, horizon);
  const int node = tree.find_node(r);
  if (node < 0) throw EvalError("not a run of the system");
  Evaluator ev(tree);
  return ev.eval(node, f);
}

Verdict sat_at_initial(const InterpretedSystem& is, const Formula& f,
                       int horizon) {
  RunTree tree(is, horizon);
  Evaluator ev(tree);
  return ev.sat_at_initial(f);
}

namespace {

struct FullDomain {
  std::vector<int> representative;  // a node per slot, flattened
  std::vector<std::size_t> member_of_slot;
  std::vector<int> radix;
  std::uint64_t count = 1;
  std::map<std::pair<std::size_t, int>, std::size_t> slot_index;
};

FullDomain full_domain(const RunTree& tree, const Coalition& g) {
  FullDomain dom;
  const InterpretedSystem& is = tree.system();
  const auto indices = is.coalition_indices(g);
  for (std::size_t pos = 0; pos < g.size(); ++pos) {
    const auto& local = tree.partition(Coalition({g.members()[pos]}));
    for (int l = 0; l < tree.horizon(); ++l) {
      for (int n = tree.level_begin(l); n < tree.level_end(l); ++n) {
        const auto key = std::make_pair(pos, local.class_of[n]);
        if (dom.slot_index.emplace(key, dom.representative.size()).second) {
          dom.representative.push_back(n);
          dom.member_of_slot.push_back(pos);
          const int acts = static_cast<int>(is.actions().set(indices[pos]).size());
          dom.radix.push_back(acts);
          if (dom.count > (std::uint64_t(1) << 62) / acts)
            dom.count = std::uint64_t(1) << 62;
          else
            dom.count *= acts;
        }
      }
    }
  }
  return dom;
}

}  // namespace

std::uint64_t count_strategies(const InterpretedSystem& is, const Coalition& g,
                               int horizon) {
  RunTree tree(is, horizon);
  return full_domain(tree, g).count;
}

void enumerate_strategies(const InterpretedSystem& is, const Coalition& g,
                          int horizon, std::uint64_t budget,
                          const std::function<void(const Strategy&)>& fn) {
  RunTree tree(is, horizon);
  FullDomain dom = full_domain(tree, g);
  if (dom.count > budget) throw BudgetExceeded(dom.count, budget);
  const auto indices = is.coalition_indices(g);

  std::vector<int> choice(dom.representative.size(), 0);
  while (true) {
    Strategy s;
    for (std::size_t slot = 0; slot < dom.representative.size(); ++slot) {
      const std::size_t pos = dom.member_of_slot[slot];
      const std::size_t member = indices[pos];
      s.choices[g.members()[pos]][local_run_string(tree, dom.representative[slot],
                                                   member)] =
          is.actions().token(member, choice[slot]);
    }
    fn(s);
    std::size_t k = 0;
    for (; k < choice.size(); ++k) {
      if (++choice[k] < dom.radix[k]) break;
      choice[k] = 0;
    }
    if (k == choice.size()) break;
  }
}

std::set<Run> outcomes(const InterpretedSystem& is, const std::set<Run>& X,
                       const Strategy& s, int horizon) {
  RunTree tree(is, horizon);
  std::set<Run> out;
  // Resolve strategy agents to member indices once.
  std::vector<std::pair<std::size_t, const std::map<std::string, std::string>*>>
      agents;
  for (const auto& [agent, table] : s.choices) {
    const auto idx = is.member_index(agent);
    if (!idx || *idx + 1 == is.num_members())
      throw EvalError("strategy agent \"" + agent + "\" is not a system agent");
    agents.emplace_back(*idx, &table);
  }

  const std::function<void(int)> walk = [&](int node) {
    if (tree.level_of(node) == horizon) {
      out.insert(tree.run_of(node));
      return;
    }
    // Required action per strategy agent at this local run.
    std::vector<std::pair<std::size_t, int>> required;
    for (const auto& [member, table] : agents) {
      const std::string key = local_run_string(tree, node, member);
      const auto it = table->find(key);
      if (it == table->end())
        throw EvalError("strategy undefined at local run \"" + key + "\"");
      const auto tok = is.actions().token_index(member, it->second);
      if (!tok) throw EvalError("strategy action \"" + it->second +
                                "\" unknown for member " + is.member_name(member));
      required.emplace_back(member, *tok);
    }
    for (ActionId a = 0; a < static_cast<ActionId>(is.num_joint_actions()); ++a) {
      bool ok = true;
      for (const auto& [member, tok] : required)
        if (is.actions().component(a, member) != tok) {
          ok = false;
          break;
        }
      if (ok) walk(tree.child(node, a));
    }
  };

  for (const Run& r : X) {
    if (static_cast<int>(r.length()) > horizon)
      throw EvalError("run longer than the horizon");
    const int node = tree.find_node(r);
    if (node < 0) throw EvalError("not a run of the system");
    walk(node);
  }
  return out;
}

std::map<Run, Verdict> lfp_until(const InterpretedSystem& is, const Coalition& g,
                                 const Formula& phi, const Formula& psi,
                                 int horizon) {
  RunTree tree(is, horizon);
  Evaluator ev(tree);
  const auto result = ev.lfp_until(g, phi, psi, /*strict=*/true);
  std::map<Run, Verdict> out;
  for (int n = 0; n < tree.size(); ++n) out[tree.run_of(n)] = result.verdict[n];
  return out;
}

}  // namespace atlkd
