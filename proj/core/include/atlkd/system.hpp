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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "atlkd/formula.hpp"

namespace atlkd {

using StateId = std::int32_t;
using ActionId = std::int32_t;

/// Mixed-radix indexing of a product of per-member token sets. Component 0
/// is the most significant digit.
class TokenProduct {
 public:
  TokenProduct() = default;
  explicit TokenProduct(std::vector<std::vector<std::string>> sets);

  std::size_t arity() const { return sets_.size(); }
  std::size_t count() const { return count_; }
  const std::vector<std::string>& set(std::size_t member) const {
    return sets_[member];
  }

  std::int32_t encode(const std::vector<int>& components) const;
  const std::vector<int>& components(std::int32_t id) const {
    return components_[id];
  }
  int component(std::int32_t id, std::size_t member) const {
    return components_[id][member];
  }
  const std::string& token(std::size_t member, int index) const {
    return sets_[member][index];
  }
  /// Index of `token` in member's set, or nullopt.
  std::optional<int> token_index(std::size_t member,
                                 const std::string& token) const;

  /// "(x0,y0,e0)"
  std::string to_string(std::int32_t id) const;

 private:
  std::vector<std::vector<std::string>> sets_;
  std::vector<std::vector<int>> components_;
  std::size_t count_ = 0;
};

/// A finite multi-agent transition structure: per-member local states and
/// actions (the environment "e" is always the last member), a set of initial
/// global states, a total transition table and a valuation. The transition
/// table starts unspecified (-1 entries); validate() reports gaps and
/// locality violations instead of failing.
class InterpretedSystem {
 public:
  InterpretedSystem(std::vector<std::string> members,
                    std::vector<std::vector<std::string>> local_states,
                    std::vector<std::vector<std::string>> actions);

  std::size_t num_members() const { return members_.size(); }
  std::size_t num_agents() const { return members_.size() - 1; }
  const std::vector<std::string>& members() const { return members_; }
  const std::string& member_name(std::size_t i) const { return members_[i]; }
  std::optional<std::size_t> member_index(const std::string& name) const;

  const TokenProduct& states() const { return states_; }
  const TokenProduct& actions() const { return actions_; }
  std::size_t num_states() const { return states_.count(); }
  std::size_t num_joint_actions() const { return actions_.count(); }

  void add_initial(StateId s);
  const std::vector<StateId>& initial() const { return initial_; }

  void set_transition(StateId from, ActionId action, StateId to);
  bool has_transition(StateId from, ActionId action) const;
  StateId successor(StateId from, ActionId action) const;

  void set_prop(const std::string& prop, StateId s, bool value);
  void declare_prop(const std::string& prop);
  bool prop_holds(const std::string& prop, StateId s) const;
  bool has_prop(const std::string& prop) const;
  std::vector<std::string> props() const;

  /// Member indices of a coalition; throws when a member is unknown.
  std::vector<std::size_t> coalition_indices(const Coalition& g) const;

 private:
  std::vector<std::string> members_;
  TokenProduct states_;
  TokenProduct actions_;
  std::vector<StateId> initial_;
  std::vector<StateId> transition_;  // -1 = unspecified
  std::map<std::string, std::vector<bool>> valuation_;
};

struct Violation {
  enum class Kind { Totality, Locality, EmptyInitial };
  Kind kind;
  std::string detail;
};

/// Empty result iff the system satisfies every structural invariant:
/// transition total on states × joint actions, the locality condition of the
/// transition function, and a nonempty initial set.
std::vector<Violation> validate(const InterpretedSystem& is);

/// An alternating state/action sequence l⁰a⁰l¹…lⁿ rooted at an initial state.
struct Run {
  std::vector<StateId> states;   // length n+1
  std::vector<ActionId> actions; // length n

  std::size_t length() const { return actions.size(); }
  StateId last() const { return states.back(); }
  bool operator==(const Run& other) const {
    return states == other.states && actions == other.actions;
  }
  bool operator<(const Run& other) const {
    if (states != other.states) return states < other.states;
    return actions < other.actions;
  }
};

/// Coalition projection of a run: per-step tuples of the members' local
/// state/action components.
struct LocalRun {
  std::vector<std::vector<int>> states;
  std::vector<std::vector<int>> actions;
  bool operator==(const LocalRun& other) const {
    return states == other.states && actions == other.actions;
  }
};

std::string run_to_string(const InterpretedSystem& is, const Run& r);

/// All runs of length 0..n, grouped in length-lexicographic order.
std::vector<Run> runs_up_to(const InterpretedSystem& is, std::size_t n);

LocalRun project(const InterpretedSystem& is, const Run& r, const Coalition& g);

bool indistinguishable(const InterpretedSystem& is, const Run& a, const Run& b,
                       const Coalition& g);

/// [r]_Γ inside R^{|r|}: every run of the same length with the same
/// Γ-projection.
std::vector<Run> equivalence_class(const InterpretedSystem& is, const Run& r,
                                   const Coalition& g);

/// IS with a record of the last joint action in each local state ("*" in
/// initial states), and every action token available as an atomic
/// proposition that holds exactly at the states whose recorded component is
/// that action.
struct ActionRecordingSystem {
  InterpretedSystem system;
  /// Per member, per action index: the proposition naming that action.
  std::vector<std::vector<std::string>> action_atoms;

  /// The unique run of `system` matching a base run (same actions, states
  /// augmented with the actions that led to them).
  Run lift_run(const InterpretedSystem& base, const Run& r) const;
};

ActionRecordingSystem build_is_act(const InterpretedSystem& is);

/// ⟨⟨L_i⟩, I, −, V⟩: the shape of a model of a pure CTL+D formula — local
/// state sets, initial states, a serial time relation and a valuation.
class CtlStructure {
 public:
  CtlStructure(std::vector<std::string> members,
               std::vector<std::vector<std::string>> local_states);

  const std::vector<std::string>& members() const { return members_; }
  const TokenProduct& states() const { return states_; }
  std::size_t num_states() const { return states_.count(); }

  void add_initial(StateId s) { initial_.push_back(s); }
  const std::vector<StateId>& initial() const { return initial_; }

  void add_edge(StateId from, StateId to);
  const std::vector<StateId>& successors(StateId s) const { return next_[s]; }

  void set_prop(const std::string& prop, StateId s, bool value);
  bool prop_holds(const std::string& prop, StateId s) const;
  std::vector<std::string> props() const;

 private:
  std::vector<std::string> members_;
  TokenProduct states_;
  std::vector<StateId> initial_;
  std::vector<std::vector<StateId>> next_;
  std::map<std::string, std::vector<bool>> valuation_;
};

class ExtractionError : public std::runtime_error {
 public:
  ExtractionError(std::string state, std::string action, const std::string& msg)
      : std::runtime_error(msg), state_(std::move(state)),
        action_(std::move(action)) {}
  const std::string& state() const { return state_; }
  const std::string& action() const { return action_; }

 private:
  std::string state_;
  std::string action_;
};

/// Reads a transition function back out of a CTL⁻ structure whose action
/// atoms satisfy the totality constraint: t(l,a) is the least state (in the
/// structure's state order) among the −-successors of l satisfying every
/// a_i atom. Throws ExtractionError naming the witness pair when that set is
/// empty. `act_sets` lists the action atoms per member, environment last.
InterpretedSystem extract_is_from_ctl_model(
    const CtlStructure& m, const std::vector<std::vector<std::string>>& act_sets);

}  // namespace atlkd
