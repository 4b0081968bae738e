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

#include "atlkd/system.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace atlkd {

TokenProduct::TokenProduct(std::vector<std::vector<std::string>> sets)
    : sets_(std::move(sets)) {
  count_ = 1;
  for (const auto& s : sets_) {
    if (s.empty()) throw std::invalid_argument("empty token set in product");
    count_ *= s.size();
  }
  components_.resize(count_);
  std::vector<int> comp(sets_.size(), 0);
  for (std::size_t id = 0; id < count_; ++id) {
    components_[id] = comp;
    for (std::size_t k = sets_.size(); k-- > 0;) {
      if (++comp[k] < static_cast<int>(sets_[k].size())) break;
      comp[k] = 0;
    }
  }
}

std::int32_t TokenProduct::encode(const std::vector<int>& components) const {
  if (components.size() != sets_.size())
    throw std::invalid_argument("component arity mismatch");
  std::int64_t id = 0;
  for (std::size_t k = 0; k < sets_.size(); ++k) {
    if (components[k] < 0 || components[k] >= static_cast<int>(sets_[k].size()))
      throw std::out_of_range("component index out of range");
    id = id * static_cast<std::int64_t>(sets_[k].size()) + components[k];
  }
  return static_cast<std::int32_t>(id);
}

std::optional<int> TokenProduct::token_index(std::size_t member,
                                             const std::string& token) const {
  const auto& s = sets_[member];
  const auto it = std::find(s.begin(), s.end(), token);
  if (it == s.end()) return std::nullopt;
  return static_cast<int>(it - s.begin());
}

std::string TokenProduct::to_string(std::int32_t id) const {
  std::ostringstream os;
  os << "(";
  const auto& comp = components_[id];
  for (std::size_t k = 0; k < sets_.size(); ++k) {
    if (k > 0) os << ",";
    os << sets_[k][comp[k]];
  }
  os << ")";
  return os.str();
}

namespace {

void check_tokens_unique(const std::vector<std::string>& tokens,
                         const std::string& what) {
  std::set<std::string> seen;
  for (const auto& t : tokens) {
    if (t.empty()) throw std::invalid_argument("empty token in " + what);
    if (!seen.insert(t).second)
      throw std::invalid_argument("duplicate token \"" + t + "\" in " + what);
  }
}

}  // namespace

InterpretedSystem::InterpretedSystem(
    std::vector<std::string> members,
    std::vector<std::vector<std::string>> local_states,
    std::vector<std::vector<std::string>> actions)
    : members_(std::move(members)) {
  if (members_.empty() || members_.back() != kEnvironmentAgent)
    throw std::invalid_argument("the last member must be the environment \"e\"");
  check_tokens_unique(members_, "member list");
  if (local_states.size() != members_.size() || actions.size() != members_.size())
    throw std::invalid_argument("per-member set count mismatch");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    check_tokens_unique(local_states[i], "local states of " + members_[i]);
    check_tokens_unique(actions[i], "actions of " + members_[i]);
  }
  states_ = TokenProduct(std::move(local_states));
  actions_ = TokenProduct(std::move(actions));
  transition_.assign(states_.count() * actions_.count(), -1);
}

std::optional<std::size_t> InterpretedSystem::member_index(
    const std::string& name) const {
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i] == name) return i;
  return std::nullopt;
}

void InterpretedSystem::add_initial(StateId s) {
  if (std::find(initial_.begin(), initial_.end(), s) == initial_.end())
    initial_.push_back(s);
}

void InterpretedSystem::set_transition(StateId from, ActionId action, StateId to) {
  transition_.at(static_cast<std::size_t>(from) * actions_.count() + action) = to;
}

bool InterpretedSystem::has_transition(StateId from, ActionId action) const {
  return transition_[static_cast<std::size_t>(from) * actions_.count() + action] >= 0;
}

StateId InterpretedSystem::successor(StateId from, ActionId action) const {
  const StateId to =
      transition_.at(static_cast<std::size_t>(from) * actions_.count() + action);
  if (to < 0)
    throw std::out_of_range("transition unspecified at " +
                            states_.to_string(from) + " / " +
                            actions_.to_string(action));
  return to;
}

void InterpretedSystem::declare_prop(const std::string& prop) {
  valuation_.try_emplace(prop, std::vector<bool>(states_.count(), false));
}

void InterpretedSystem::set_prop(const std::string& prop, StateId s, bool value) {
  declare_prop(prop);
  valuation_[prop][s] = value;
}

bool InterpretedSystem::prop_holds(const std::string& prop, StateId s) const {
  const auto it = valuation_.find(prop);
  if (it == valuation_.end()) return false;
  return it->second[s];
}

bool InterpretedSystem::has_prop(const std::string& prop) const {
  return valuation_.count(prop) > 0;
}

std::vector<std::string> InterpretedSystem::props() const {
  std::vector<std::string> out;
  out.reserve(valuation_.size());
  for (const auto& [name, _] : valuation_) out.push_back(name);
  return out;
}

std::vector<std::size_t> InterpretedSystem::coalition_indices(
    const Coalition& g) const {
  std::vector<std::size_t> out;
  out.reserve(g.size());
  for (const auto& m : g.members()) {
    const auto idx = member_index(m);
    if (!idx || *idx + 1 == members_.size())
      throw std::invalid_argument("coalition member \"" + m +
                                  "\" is not an agent of the system");
    out.push_back(*idx);
  }
  return out;
}

std::vector<Violation> validate(const InterpretedSystem& is) {
  std::vector<Violation> out;
  if (is.initial().empty())
    out.push_back({Violation::Kind::EmptyInitial, "initial state set is empty"});

  const std::size_t ns = is.num_states();
  const std::size_t na = is.num_joint_actions();
  for (StateId s = 0; s < static_cast<StateId>(ns); ++s)
    for (ActionId a = 0; a < static_cast<ActionId>(na); ++a)
      if (!is.has_transition(s, a))
        out.push_back({Violation::Kind::Totality,
                       "no transition from " + is.states().to_string(s) +
                           " under " + is.actions().to_string(a)});
  if (!out.empty() &&
      std::any_of(out.begin(), out.end(), [](const Violation& v) {
        return v.kind == Violation::Kind::Totality;
      }))
    return out;  // locality needs a total table

  // Locality: group states by (own component, environment component); all
  // states in a group must agree on the successor's own component, for every
  // member and joint action.
  const std::size_t env = is.num_members() - 1;
  for (std::size_t i = 0; i < is.num_members(); ++i) {
    std::map<std::pair<int, int>, std::vector<StateId>> groups;
    for (StateId s = 0; s < static_cast<StateId>(ns); ++s)
      groups[{is.states().component(s, i), is.states().component(s, env)}]
          .push_back(s);
    for (const auto& [key, group] : groups) {
      if (group.size() < 2) continue;
      for (ActionId a = 0; a < static_cast<ActionId>(na); ++a) {
        const int expected =
            is.states().component(is.successor(group.front(), a), i);
        for (std::size_t k = 1; k < group.size(); ++k) {
          const int got = is.states().component(is.successor(group[k], a), i);
          if (got != expected) {
            out.push_back(
                {Violation::Kind::Locality,
                 "member " + is.member_name(i) + ": states " +
                     is.states().to_string(group.front()) + " and " +
                     is.states().to_string(group[k]) + " agree on (own,env) but " +
                     "their successors under " + is.actions().to_string(a) +
                     " differ in the member's component"});
          }
        }
      }
    }
  }
  return out;
}

std::string run_to_string(const InterpretedSystem& is, const Run& r) {
  std::ostringstream os;
  for (std::size_t j = 0; j < r.states.size(); ++j) {
    if (j > 0) os << " " << is.actions().to_string(r.actions[j - 1]) << " ";
    os << is.states().to_string(r.states[j]);
  }
  return os.str();
}

std::vector<Run> runs_up_to(const InterpretedSystem& is, std::size_t n) {
  std::vector<Run> out;
  std::vector<Run> frontier;
  for (StateId s : is.initial()) frontier.push_back(Run{{s}, {}});
  out = frontier;
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<Run> next;
    next.reserve(frontier.size() * is.num_joint_actions());
    for (const Run& r : frontier) {
      for (ActionId a = 0; a < static_cast<ActionId>(is.num_joint_actions());
           ++a) {
        Run ext = r;
        ext.actions.push_back(a);
        ext.states.push_back(is.successor(r.last(), a));
        next.push_back(std::move(ext));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

LocalRun project(const InterpretedSystem& is, const Run& r, const Coalition& g) {
  const auto idx = is.coalition_indices(g);
  LocalRun out;
  out.states.reserve(r.states.size());
  out.actions.reserve(r.actions.size());
  for (StateId s : r.states) {
    std::vector<int> tup;
    tup.reserve(idx.size());
    for (std::size_t i : idx) tup.push_back(is.states().component(s, i));
    out.states.push_back(std::move(tup));
  }
  for (ActionId a : r.actions) {
    std::vector<int> tup;
    tup.reserve(idx.size());
    for (std::size_t i : idx) tup.push_back(is.actions().component(a, i));
    out.actions.push_back(std::move(tup));
  }
  return out;
}

bool indistinguishable(const InterpretedSystem& is, const Run& a, const Run& b,
                       const Coalition& g) {
  if (a.length() != b.length()) return false;
  return project(is, a, g) == project(is, b, g);
}

std::vector<Run> equivalence_class(const InterpretedSystem& is, const Run& r,
                                   const Coalition& g) {
  std::vector<Run> out;
  for (Run& cand : runs_up_to(is, r.length())) {
    if (cand.length() != r.length()) continue;
    if (indistinguishable(is, cand, r, g)) out.push_back(std::move(cand));
  }
  return out;
}

namespace {

// An action token doubles as a proposition in IS^Act; on a collision with an
// existing proposition or another member's action token it is renamed with
// an "act_" prefix, then an "act_<member>_" prefix.
std::vector<std::vector<std::string>> action_atom_names(
    const InterpretedSystem& is) {
  std::set<std::string> taken;
  for (const auto& p : is.props()) taken.insert(p);
  std::vector<std::vector<std::string>> out(is.num_members());
  for (std::size_t i = 0; i < is.num_members(); ++i) {
    for (const auto& tok : is.actions().set(i)) {
      std::string name = tok;
      if (taken.count(name)) name = "act_" + tok;
      if (taken.count(name)) name = "act_" + is.member_name(i) + "_" + tok;
      if (taken.count(name))
        throw std::runtime_error("cannot find a fresh atom for action \"" + tok +
                                 "\" of member " + is.member_name(i));
      taken.insert(name);
      out[i].push_back(name);
    }
  }
  return out;
}

}  // namespace

ActionRecordingSystem build_is_act(const InterpretedSystem& is) {
  const std::size_t n = is.num_members();
  std::vector<std::vector<std::string>> locals(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& base = is.states().set(i);
    const auto& acts = is.actions().set(i);
    for (const auto& l : base) {
      locals[i].push_back(l + "#*");
      for (const auto& a : acts) locals[i].push_back(l + "#" + a);
    }
  }
  std::vector<std::vector<std::string>> acts(n);
  for (std::size_t i = 0; i < n; ++i) acts[i] = is.actions().set(i);

  ActionRecordingSystem out{
      InterpretedSystem(is.members(), std::move(locals), acts),
      action_atom_names(is)};
  InterpretedSystem& sys = out.system;

  const std::size_t na = is.num_joint_actions();
  // act-local index = base_local * (|Act_i|+1) + (recorded+1), recorded -1 = "*".
  const auto act_local = [&is](std::size_t member, int base_local, int recorded) {
    const int width = static_cast<int>(is.actions().set(member).size()) + 1;
    return base_local * width + recorded + 1;
  };
  const auto encode_act_state = [&](StateId base, ActionId recorded) {
    std::vector<int> comp(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int rec =
          recorded < 0 ? -1 : is.actions().component(recorded, i);
      comp[i] = act_local(i, is.states().component(base, i), rec);
    }
    return sys.states().encode(comp);
  };

  for (StateId s : is.initial()) sys.add_initial(encode_act_state(s, -1));

  // Transitions and valuation range over every act-state; the recorded
  // components never affect where a joint action leads.
  for (StateId s = 0; s < static_cast<StateId>(sys.num_states()); ++s) {
    const auto& comp = sys.states().components(s);
    std::vector<int> base_comp(n);
    std::vector<int> rec_comp(n);  // -1 = "*"
    for (std::size_t i = 0; i < n; ++i) {
      const int width = static_cast<int>(is.actions().set(i).size()) + 1;
      base_comp[i] = comp[i] / width;
      rec_comp[i] = comp[i] % width - 1;
    }
    const StateId base = is.states().encode(base_comp);
    for (ActionId b = 0; b < static_cast<ActionId>(na); ++b) {
      const StateId base_next = is.successor(base, b);
      sys.set_transition(s, b, encode_act_state(base_next, b));
    }
    for (const auto& p : is.props()) sys.set_prop(p, s, is.prop_holds(p, base));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < is.actions().set(i).size(); ++k)
        sys.set_prop(out.action_atoms[i][k], s,
                     rec_comp[i] == static_cast<int>(k));
  }
  return out;
}

Run ActionRecordingSystem::lift_run(const InterpretedSystem& base,
                                    const Run& r) const {
  const std::size_t n = base.num_members();
  const auto encode = [&](StateId base_state, ActionId recorded) {
    std::vector<int> comp(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int width = static_cast<int>(base.actions().set(i).size()) + 1;
      const int rec = recorded < 0 ? -1 : base.actions().component(recorded, i);
      comp[i] = base.states().component(base_state, i) * width + rec + 1;
    }
    return system.states().encode(comp);
  };
  Run out;
  out.states.push_back(encode(r.states[0], -1));
  for (std::size_t j = 0; j < r.actions.size(); ++j) {
    out.actions.push_back(r.actions[j]);
    out.states.push_back(encode(r.states[j + 1], r.actions[j]));
  }
  return out;
}

CtlStructure::CtlStructure(std::vector<std::string> members,
                           std::vector<std::vector<std::string>> local_states)
    : members_(std::move(members)) {
  if (members_.empty() || members_.back() != kEnvironmentAgent)
    throw std::invalid_argument("the last member must be the environment \"e\"");
  states_ = TokenProduct(std::move(local_states));
  next_.resize(states_.count());
}

void CtlStructure::add_edge(StateId from, StateId to) {
  auto& v = next_.at(from);
  if (std::find(v.begin(), v.end(), to) == v.end()) {
    v.push_back(to);
    std::sort(v.begin(), v.end());
  }
}

void CtlStructure::set_prop(const std::string& prop, StateId s, bool value) {
  auto it = valuation_.try_emplace(prop, std::vector<bool>(states_.count(), false));
  it.first->second[s] = value;
}

bool CtlStructure::prop_holds(const std::string& prop, StateId s) const {
  const auto it = valuation_.find(prop);
  if (it == valuation_.end()) return false;
  return it->second[s];
}

std::vector<std::string> CtlStructure::props() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : valuation_) out.push_back(name);
  return out;
}

InterpretedSystem extract_is_from_ctl_model(
    const CtlStructure& m, const std::vector<std::vector<std::string>>& act_sets) {
  if (act_sets.size() != m.members().size())
    throw std::invalid_argument("act_sets arity must match the member list");
  std::vector<std::vector<std::string>> locals;
  for (std::size_t i = 0; i < m.members().size(); ++i)
    locals.push_back(m.states().set(i));

  InterpretedSystem out(m.members(), std::move(locals), act_sets);
  for (StateId s : m.initial()) out.add_initial(s);
  for (const auto& p : m.props()) {
    out.declare_prop(p);
    for (StateId s = 0; s < static_cast<StateId>(m.num_states()); ++s)
      out.set_prop(p, s, m.prop_holds(p, s));
  }

  const std::size_t na = out.num_joint_actions();
  for (StateId l = 0; l < static_cast<StateId>(m.num_states()); ++l) {
    for (ActionId a = 0; a < static_cast<ActionId>(na); ++a) {
      StateId chosen = -1;
      for (StateId succ : m.successors(l)) {
        bool ok = true;
        for (std::size_t i = 0; i < act_sets.size() && ok; ++i) {
          const std::string& atom =
              act_sets[i][out.actions().component(a, i)];
          ok = m.prop_holds(atom, succ);
        }
        if (ok) {
          chosen = succ;  // successors are kept sorted; first hit is least
          break;
        }
      }
      if (chosen < 0)
        throw ExtractionError(
            m.states().to_string(l), out.actions().to_string(a),
            "no successor of " + m.states().to_string(l) +
                " satisfies every action atom of " +
                out.actions().to_string(a));
      out.set_transition(l, a, chosen);
    }
  }
  return out;
}

}  // namespace atlkd
