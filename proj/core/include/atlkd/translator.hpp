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

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atlkd/formula.hpp"

namespace atlkd {

enum class TranslationMode { Incomplete, Complete };

class TranslateError : public std::runtime_error {
 public:
  explicit TranslateError(const std::string& msg,
                          std::optional<Formula> offending = std::nullopt);
  const std::optional<Formula>& offending() const { return offending_; }

 private:
  std::optional<Formula> offending_;
};

struct AtomInfo {
  std::string atom;
  std::string role;    // p | q | act_agent | act_env | nop
  std::string origin;  // rendered eliminated subformula, "" for nop
};

/// Fresh-proposition registry and per-member action-atom sets threaded
/// through the rewrite pipeline. Member order is the coalition agents of the
/// input (sorted) followed by the environment; every set starts as {_nop_i}.
/// Generated names live in the reserved "_" namespace, so they can never
/// collide with input propositions.
class TranslationContext {
 public:
  explicit TranslationContext(std::vector<AgentId> agents);

  const std::vector<AgentId>& agents() const { return agents_; }
  /// Action-atom sets in member order (agents then "e"), insertion-ordered.
  const std::vector<std::vector<std::string>>& act_sets() const {
    return act_sets_;
  }
  const std::vector<AtomInfo>& dictionary() const { return dictionary_; }

  std::pair<std::string, std::string> fresh_pq(const std::string& origin);

  struct ActionAtoms {
    std::vector<std::pair<AgentId, std::string>> per_agent;  // i ∈ Γ, sorted
    std::string env;                                         // a_{Γ,e,φ}
  };
  /// Extends the action sets with fresh a_{Γ,i,φ} for i ∈ Γ∪{e}.
  ActionAtoms fresh_action_atoms(const Coalition& g, const std::string& origin);

  const std::optional<Formula>& current_constraint() const {
    return current_constraint_;
  }
  void set_current_constraint(Formula f) { current_constraint_ = std::move(f); }

 private:
  std::vector<AgentId> agents_;
  std::vector<std::vector<std::string>> act_sets_;
  int counter_ = 0;
  std::vector<AtomInfo> dictionary_;
  std::optional<Formula> current_constraint_;  // last emitted K{}∀□A(...)
};

/// ⋀ over all action vectors (a₁,…,a_N,a_e) of ∃○(a₁ ∧ … ∧ a_e), vectors in
/// lexicographic order with the first member most significant.
Formula build_A(const std::vector<std::vector<std::string>>& act_sets);

struct UntilElimination {
  Formula rewritten;                  // [p/target]χ
  std::array<Formula, 3> conjuncts;   // the emitted K{}∀□(...) constraints
  std::string p;
  std::string q;
};

/// One step of the until-elimination: target must be <<Γ>>(K_Γφ U K_Γψ).
UntilElimination eliminate_until_parts(const Formula& chi, const Formula& target,
                                       TranslationContext& ctx);
/// The conjunction form: [p/target]χ ∧ c₁ ∧ c₂ ∧ c₃.
Formula eliminate_until(const Formula& chi, const Formula& target,
                        TranslationContext& ctx);

struct NextElimination {
  Formula rewritten;    // [replacement/target]χ (minus a superseded A-conjunct)
  Formula replacement;  // K_Γ∀○(⋀_{i∈Γ} a_{Γ,i,φ} → φ)
  Formula foil;         // K{}∀□(replacement ∨ P_Γ∀○(a_{Γ,e,φ} → ¬φ))
};

/// One step of the next-elimination: target must be <<Γ>> X φ with φ free of
/// cooperation modalities. Extends the context's action sets.
NextElimination eliminate_next_parts(const Formula& chi, const Formula& target,
                                     TranslationContext& ctx);
/// The conjunction form, ending with the superseding K{}∀□A(Act′) conjunct;
/// a trailing A-conjunct previously emitted through this context is removed.
Formula eliminate_next(const Formula& chi, const Formula& target,
                       TranslationContext& ctx);

struct CompleteUntilElimination {
  Formula rewritten;
  std::array<Formula, 3> conjuncts;
  std::string p;
  std::string q;
};

/// Complete-information elimination of [[Γ]](φ U ψ); [[Γ]]○ appears in the
/// output as the dual sugar !<<Γ>>X! and is consumed by eliminate_next later.
CompleteUntilElimination eliminate_until_complete_parts(const Formula& chi,
                                                        const Formula& target,
                                                        TranslationContext& ctx);
Formula eliminate_until_complete(const Formula& chi, const Formula& target,
                                 TranslationContext& ctx);

struct TraceEvent {
  std::string phase;  // "until" | "until-complete" | "next" | "constraint"
  std::optional<Formula> target;
  std::vector<std::string> fresh_atoms;
  std::vector<Formula> emitted;
};

using TraceFn = std::function<void(const TraceEvent&)>;

struct TranslationResult {
  Formula formula;                   // rewritten χ ∧ constraints (A last)
  Formula rewritten_chi;
  std::vector<Formula> constraints;  // emission order; final entry is the A
  std::vector<AtomInfo> dictionary;
  TranslationMode mode;
  std::string guarantee;
};

/// The full pipeline: every until-objective is eliminated bottom-up first
/// (Incomplete: <<Γ>>(K_ΓφUK_Γψ); Complete: also [[Γ]](φUψ)), then every
/// <<Γ>>X occurrence including the ones the until-step introduced, and the
/// single A-constraint over the final action sets is appended. The result is
/// a pure CTL+D formula.
TranslationResult translate(const Formula& f, TranslationMode mode,
                            const TraceFn& trace = {});

/// JSON sidecar with mode, guarantee and the atom dictionary.
std::string serialize_dictionary(const TranslationResult& result);

}  // namespace atlkd
