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

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace atlkd {

using AgentId = std::string;

/// Reserved id of the environment. It participates in systems but never in
/// coalitions.
inline const AgentId kEnvironmentAgent = "e";

/// A finite set of agent ids, kept sorted and duplicate-free. Numeric ids
/// order numerically, so {1,2,10} renders as "1,2,10".
class Coalition {
 public:
  Coalition() = default;
  explicit Coalition(std::vector<AgentId> members);

  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  bool contains(const AgentId& agent) const;
  const std::vector<AgentId>& members() const { return members_; }

  bool is_subset_of(const Coalition& other) const;

  /// Members joined with "," and no braces, e.g. "1,2".
  std::string to_string() const;

  bool operator==(const Coalition& other) const {
    return members_ == other.members_;
  }
  bool operator!=(const Coalition& other) const { return !(*this == other); }
  bool operator<(const Coalition& other) const;

  std::size_t hash() const;

 private:
  std::vector<AgentId> members_;
};

/// Total order used for agent ids and coalition members: all-digit tokens
/// compare numerically and precede symbolic tokens.
bool agent_id_less(const AgentId& a, const AgentId& b);

enum class FormulaKind {
  False,
  Atom,
  Implies,
  DKnows,         // K{Γ}
  CoopNext,       // <<Γ>> X
  CoopUntil,      // <<Γ>> (· U ·)
  DualCoopUntil,  // [[Γ]] (· U ·)
  ExistsNext,     // E X
  ExistsUntil,    // E (· U ·)
  ForallUntil,    // A (· U ·)
};

/// Immutable formula tree over the ten core constructors. Everything else
/// (¬, ∧, ∨, ⇔, ⊤, P, F, G, W, A X, ...) is sugar expanded at construction,
/// so structural equality compares the expanded forms.
///
/// Values share subtrees through shared_ptr and are safe to copy and use
/// across threads.
class Formula {
 public:
  Formula() = delete;

  FormulaKind kind() const { return node_->kind; }
  const std::string& atom_name() const;
  const Coalition& coalition() const;
  std::size_t arity() const { return node_->kids.size(); }
  const Formula& child(std::size_t i) const { return node_->kids.at(i); }

  std::size_t hash() const { return node_->hash; }
  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  /// Stable identity of the shared node, used for memoization.
  const void* id() const { return node_.get(); }

  // Core constructors.
  static Formula falsum();
  static Formula atom(std::string name);
  static Formula implies(Formula a, Formula b);
  static Formula dknows(Coalition g, Formula a);
  static Formula coop_next(Coalition g, Formula a);
  static Formula coop_until(Coalition g, Formula a, Formula b);
  static Formula dual_coop_until(Coalition g, Formula a, Formula b);
  static Formula exists_next(Formula a);
  static Formula exists_until(Formula a, Formula b);
  static Formula forall_until(Formula a, Formula b);

  // Sugar. Each expands to core constructors exactly as in the
  // abbreviation table; see the unit tests for the literal equations.
  static Formula verum();                               // false -> false
  static Formula negation(Formula a);                   // a -> false
  static Formula conjunction(Formula a, Formula b);     // !(a -> !b)
  static Formula disjunction(Formula a, Formula b);     // !a -> b
  static Formula equivalence(Formula a, Formula b);     // (a->b) & (b->a)
  static Formula poss(Coalition g, Formula a);          // !K !a
  static Formula dual_coop_next(Coalition g, Formula a);  // ![[..]] via !<<>>X!
  static Formula coop_eventually(Coalition g, Formula a);
  static Formula coop_globally(Coalition g, Formula a);
  static Formula coop_weak_until(Coalition g, Formula a, Formula b);
  static Formula dual_coop_eventually(Coalition g, Formula a);
  static Formula dual_coop_globally(Coalition g, Formula a);
  static Formula dual_coop_weak_until(Coalition g, Formula a, Formula b);
  static Formula forall_next(Formula a);
  static Formula exists_eventually(Formula a);
  static Formula exists_globally(Formula a);
  static Formula forall_eventually(Formula a);
  static Formula forall_globally(Formula a);
  static Formula exists_weak_until(Formula a, Formula b);
  static Formula forall_weak_until(Formula a, Formula b);

  /// Left fold of conjunction over a nonempty list.
  static Formula conjoin_all(const std::vector<Formula>& fs);

 private:
  struct Node {
    FormulaKind kind;
    std::string atom;
    Coalition coalition;
    std::vector<Formula> kids;
    std::size_t hash = 0;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(FormulaKind kind, std::string atom, Coalition coalition,
                      std::vector<Formula> kids);

  std::shared_ptr<const Node> node_;
};

enum class Fragment { CtlD, AtlkpSubset, AtlkpFull, Mixed };

std::string fragment_name(Fragment fragment);

/// CtlD when no cooperation modality occurs; AtlkpSubset when the formula is
/// generated by the translation-subset grammar (every until-objective is
/// K-guarded with the modality's own coalition, no dual cooperation, no path
/// quantifiers); AtlkpFull when only ATLK constructors occur but not in the
/// subset; Mixed otherwise.
Fragment classify(const Formula& f);

/// True iff the formula matches <<Γ>> (K{Γ}φ U K{Γ}ψ).
bool is_subset_until(const Formula& f);

std::set<std::string> props_of(const Formula& f);
std::set<Coalition> coalitions_of(const Formula& f);

/// Replaces every occurrence of the atom `prop` in `beta` by `alpha`.
Formula substitute(const Formula& beta, const std::string& prop,
                   const Formula& alpha);

/// Replaces every occurrence of the subformula `target` in `beta` by
/// `replacement` (structural equality).
Formula replace_subformula(const Formula& beta, const Formula& target,
                           const Formula& replacement);

}  // namespace atlkd
