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
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "atlkd/formula.hpp"
#include "atlkd/system.hpp"

namespace atlkd {

/// Bounded-horizon verdict. Unknown records that deciding the query would
/// need runs longer than the working horizon; boolean connectives combine
/// verdicts Kleene-style, so Unknown never flips a decided answer.
enum class Verdict { True, False, Unknown };

std::string verdict_name(Verdict v);
Verdict kleene_not(Verdict v);
Verdict kleene_and(Verdict a, Verdict b);
Verdict kleene_or(Verdict a, Verdict b);
Verdict kleene_implies(Verdict a, Verdict b);
inline Verdict as_verdict(bool b) { return b ? Verdict::True : Verdict::False; }

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget);
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

/// All runs of length ≤ horizon, as a forest with one tree per initial
/// state. Node ids are dense, level-major; every interior node has exactly
/// one child per joint action, so children are addressed arithmetically.
class RunTree {
 public:
  RunTree(const InterpretedSystem& is, int horizon);

  const InterpretedSystem& system() const { return *is_; }
  int horizon() const { return horizon_; }
  int size() const { return static_cast<int>(states_.size()); }

  int level_of(int node) const { return level_[node]; }
  StateId state_of(int node) const { return states_[node]; }
  int parent_of(int node) const { return parent_[node]; }
  ActionId action_into(int node) const { return action_[node]; }

  int level_begin(int level) const { return level_begin_[level]; }
  int level_end(int level) const { return level_begin_[level + 1]; }

  int child(int node, ActionId a) const;

  Run run_of(int node) const;
  /// Node of a run, or -1 when the run does not belong to the system.
  int find_node(const Run& r) const;

  /// Indiscernibility classes per coalition; runs at the same level belong
  /// to one class iff their coalition projections coincide.
  struct Partition {
    std::vector<int> class_of;               // per node
    std::vector<std::vector<int>> members;   // per class
  };
  const Partition& partition(const Coalition& g) const;

 private:
  const InterpretedSystem* is_;
  int horizon_;
  std::vector<StateId> states_;
  std::vector<int> parent_;
  std::vector<ActionId> action_;
  std::vector<int> level_;
  std::vector<int> level_begin_;
  mutable std::map<Coalition, Partition> partitions_;
};

/// Per-agent choices over that agent's local runs (locally indiscernible
/// histories share a slot, so every strategy is uniform by construction).
/// Local runs are keyed by their rendered form, e.g. "q1_0 a1_1 q1_0".
struct Strategy {
  std::map<AgentId, std::map<std::string, std::string>> choices;
};

std::string local_run_string(const RunTree& tree, int node, std::size_t member);

/// Evaluator of the ATLK/CTL+D modelling relations over a run tree.
///
/// "Ghost" atoms supply run-indexed valuations on top of the system's
/// state-indexed ones; the translation suites use them to realize the fresh
/// atoms of the rewrite propositions as labellings of the run tree.
class Evaluator {
 public:
  explicit Evaluator(const RunTree& tree);

  const RunTree& tree() const { return tree_; }

  void set_ghost(const std::string& atom, std::vector<Verdict> per_node);
  void clear_ghosts();

  /// Strategy-enumeration ceiling for until-objectives that are evaluated by
  /// exhaustive quantification (⟦Γ⟧U and unguarded ⟨⟨Γ⟩⟩U).
  void set_strategy_budget(std::uint64_t budget) { budget_ = budget; }

  Verdict eval(int node, const Formula& f);

  /// True iff some 0-length run satisfies f; False iff all falsify it.
  Verdict sat_at_initial(const Formula& f);

  /// Strategy-enumeration semantics of ⟨⟨Γ⟩⟩(φ U ψ) / ⟦Γ⟧(φ U ψ), exactly
  /// as in the modelling relation. Independent of the fixpoint route.
  Verdict eval_coop_until_enum(int node, const Coalition& g, const Formula& phi,
                               const Formula& psi);
  Verdict eval_dual_coop_until_enum(int node, const Coalition& g,
                                    const Formula& phi, const Formula& psi);

  /// Number of strategies the enumeration routes would visit for a query at
  /// `node` (product over the relevant local-run slots), saturating.
  std::uint64_t strategy_count_for(int node, const Coalition& g);

  struct LfpResult {
    std::vector<Verdict> verdict;       // of <<Γ>>(K_Γφ U K_Γψ), per node
    std::vector<Verdict> target_now;    // K_Γψ per node
    std::vector<Verdict> guard_now;     // K_Γφ per node
    std::vector<int> witness;           // forcing partial Γ-action id, or -1
  };

  /// Backward bounded fixpoint of X = K_Γψ ∨ (K_Γφ ∧ ⟨⟨Γ⟩⟩○X): runs at the
  /// horizon are Unknown unless K_Γψ holds there; shorter runs resolve by
  /// one-step forcing over [r]_Γ. With `strict`, an Unknown K_Γφ/K_Γψ is a
  /// precondition failure and throws EvalError.
  LfpResult lfp_until(const Coalition& g, const Formula& phi, const Formula& psi,
                      bool strict = false);

  struct CoalitionInfo {
    std::vector<std::size_t> indices;            // member indices, sorted
    int partial_count = 1;                       // ∏ |Act_i|, i ∈ Γ
    std::vector<std::vector<ActionId>> joints;   // per partial: joint actions
    std::vector<int> partial_of_joint;           // inverse projection
  };
  const CoalitionInfo& coalition_info(const Coalition& g);

 private:
  Verdict eval_atom(int node, const std::string& name) const;
  Verdict eval_guarded_coop_until(int node, const Formula& f);
  Verdict eval_until_enum(int node, const Coalition& g, const Formula& phi,
                          const Formula& psi, bool dual);

  // Memo entries keep the formula alive so node addresses stay unique.
  struct MemoEntry {
    Formula formula;
    std::vector<signed char> verdict;  // -1 unset, else Verdict
  };
  struct LfpEntry {
    Formula formula;
    LfpResult result;
  };

  const RunTree& tree_;
  std::unordered_map<const void*, MemoEntry> formula_memo_;
  std::map<std::string, std::vector<Verdict>> ghosts_;
  std::map<Coalition, CoalitionInfo> coalition_info_;
  std::unordered_map<const void*, LfpEntry> lfp_memo_;
  std::uint64_t budget_ = 100000;
};

// ---------------------------------------------------------------------------
// Convenience entry points matching the module-level operations.

Verdict holds(const InterpretedSystem& is, const Run& r, const Formula& f,
              int horizon);

Verdict sat_at_initial(const InterpretedSystem& is, const Formula& f,
                       int horizon);

std::uint64_t count_strategies(const InterpretedSystem& is, const Coalition& g,
                               int horizon);

/// Exhaustive, duplicate-free enumeration of the uniform strategies
/// restricted to local runs of length < horizon. Throws BudgetExceeded
/// (reporting the count) when the space is larger than `budget`.
void enumerate_strategies(const InterpretedSystem& is, const Coalition& g,
                          int horizon, std::uint64_t budget,
                          const std::function<void(const Strategy&)>& fn);

/// All length-`horizon` extensions of the runs in X in which every coalition
/// member follows the strategy from its current step on; components outside
/// the strategy's coalition range over all actions.
std::set<Run> outcomes(const InterpretedSystem& is, const std::set<Run>& X,
                       const Strategy& s, int horizon);

/// Module-level lfp_until: verdict of ⟨⟨Γ⟩⟩(K_Γφ U K_Γψ) for every run of
/// length ≤ horizon. Throws EvalError when K_Γφ/K_Γψ is Unknown somewhere.
std::map<Run, Verdict> lfp_until(const InterpretedSystem& is, const Coalition& g,
                                 const Formula& phi, const Formula& psi,
                                 int horizon);

}  // namespace atlkd
