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

#include "atlkd/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>

namespace atlkd {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

bool agent_id_less(const AgentId& a, const AgentId& b) {
  const bool na = all_digits(a);
  const bool nb = all_digits(b);
  if (na != nb) return na;
  if (na && nb) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
  return a < b;
}

Coalition::Coalition(std::vector<AgentId> members) : members_(std::move(members)) {
  for (const auto& m : members_) {
    if (m.empty()) throw std::invalid_argument("empty agent id in coalition");
    if (m == kEnvironmentAgent)
      throw std::invalid_argument(
          "the environment \"e\" cannot be a coalition member");
  }
  std::sort(members_.begin(), members_.end(), agent_id_less);
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Coalition::contains(const AgentId& agent) const {
  return std::find(members_.begin(), members_.end(), agent) != members_.end();
}

bool Coalition::is_subset_of(const Coalition& other) const {
  return std::all_of(members_.begin(), members_.end(),
                     [&other](const AgentId& m) { return other.contains(m); });
}

std::string Coalition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i > 0) out += ",";
    out += members_[i];
  }
  return out;
}

bool Coalition::operator<(const Coalition& other) const {
  return std::lexicographical_compare(members_.begin(), members_.end(),
                                      other.members_.begin(),
                                      other.members_.end(), agent_id_less);
}

std::size_t Coalition::hash() const {
  std::size_t h = 0x51ed2701;
  for (const auto& m : members_) h = hash_combine(h, std::hash<std::string>{}(m));
  return h;
}

const std::string& Formula::atom_name() const {
  if (node_->kind != FormulaKind::Atom)
    throw std::logic_error("atom_name() on a non-atom formula");
  return node_->atom;
}

const Coalition& Formula::coalition() const {
  switch (node_->kind) {
    case FormulaKind::DKnows:
    case FormulaKind::CoopNext:
    case FormulaKind::CoopUntil:
    case FormulaKind::DualCoopUntil:
      return node_->coalition;
    default:
      throw std::logic_error("coalition() on a coalition-free constructor");
  }
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash) return false;
  if (node_->kind != other.node_->kind) return false;
  if (node_->atom != other.node_->atom) return false;
  if (node_->coalition != other.node_->coalition) return false;
  if (node_->kids.size() != other.node_->kids.size()) return false;
  for (std::size_t i = 0; i < node_->kids.size(); ++i)
    if (node_->kids[i] != other.node_->kids[i]) return false;
  return true;
}

Formula Formula::make(FormulaKind kind, std::string atom, Coalition coalition,
                      std::vector<Formula> kids) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->atom = std::move(atom);
  node->coalition = std::move(coalition);
  node->kids = std::move(kids);
  std::size_t h = hash_combine(0x243f6a88, static_cast<std::size_t>(kind));
  h = hash_combine(h, std::hash<std::string>{}(node->atom));
  h = hash_combine(h, node->coalition.hash());
  for (const auto& k : node->kids) h = hash_combine(h, k.hash());
  node->hash = h;
  return Formula(std::move(node));
}

Formula Formula::falsum() { return make(FormulaKind::False, "", {}, {}); }

Formula Formula::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty proposition name");
  return make(FormulaKind::Atom, std::move(name), {}, {});
}

Formula Formula::implies(Formula a, Formula b) {
  return make(FormulaKind::Implies, "", {}, {std::move(a), std::move(b)});
}

Formula Formula::dknows(Coalition g, Formula a) {
  return make(FormulaKind::DKnows, "", std::move(g), {std::move(a)});
}

Formula Formula::coop_next(Coalition g, Formula a) {
  return make(FormulaKind::CoopNext, "", std::move(g), {std::move(a)});
}

Formula Formula::coop_until(Coalition g, Formula a, Formula b) {
  return make(FormulaKind::CoopUntil, "", std::move(g),
              {std::move(a), std::move(b)});
}

Formula Formula::dual_coop_until(Coalition g, Formula a, Formula b) {
  return make(FormulaKind::DualCoopUntil, "", std::move(g),
              {std::move(a), std::move(b)});
}

Formula Formula::exists_next(Formula a) {
  return make(FormulaKind::ExistsNext, "", {}, {std::move(a)});
}

Formula Formula::exists_until(Formula a, Formula b) {
  return make(FormulaKind::ExistsUntil, "", {}, {std::move(a), std::move(b)});
}

Formula Formula::forall_until(Formula a, Formula b) {
  return make(FormulaKind::ForallUntil, "", {}, {std::move(a), std::move(b)});
}

Formula Formula::verum() { return implies(falsum(), falsum()); }

Formula Formula::negation(Formula a) { return implies(std::move(a), falsum()); }

Formula Formula::conjunction(Formula a, Formula b) {
  return negation(implies(std::move(a), negation(std::move(b))));
}

Formula Formula::disjunction(Formula a, Formula b) {
  return implies(negation(std::move(a)), std::move(b));
}

Formula Formula::equivalence(Formula a, Formula b) {
  Formula forward = implies(a, b);
  Formula backward = implies(std::move(b), std::move(a));
  return conjunction(std::move(forward), std::move(backward));
}

Formula Formula::poss(Coalition g, Formula a) {
  return negation(dknows(std::move(g), negation(std::move(a))));
}

Formula Formula::dual_coop_next(Coalition g, Formula a) {
  return negation(coop_next(std::move(g), negation(std::move(a))));
}

Formula Formula::coop_eventually(Coalition g, Formula a) {
  return coop_until(std::move(g), verum(), std::move(a));
}

Formula Formula::coop_globally(Coalition g, Formula a) {
  return negation(dual_coop_eventually(std::move(g), negation(std::move(a))));
}

Formula Formula::coop_weak_until(Coalition g, Formula a, Formula b) {
  const Formula nb = negation(b);
  return negation(dual_coop_until(std::move(g), nb,
                                  conjunction(nb, negation(std::move(a)))));
}

Formula Formula::dual_coop_eventually(Coalition g, Formula a) {
  return dual_coop_until(std::move(g), verum(), std::move(a));
}

Formula Formula::dual_coop_globally(Coalition g, Formula a) {
  return negation(coop_eventually(std::move(g), negation(std::move(a))));
}

Formula Formula::dual_coop_weak_until(Coalition g, Formula a, Formula b) {
  const Formula nb = negation(b);
  return negation(coop_until(std::move(g), nb,
                             conjunction(nb, negation(std::move(a)))));
}

Formula Formula::forall_next(Formula a) {
  return negation(exists_next(negation(std::move(a))));
}

Formula Formula::exists_eventually(Formula a) {
  return exists_until(verum(), std::move(a));
}

Formula Formula::exists_globally(Formula a) {
  return negation(forall_eventually(negation(std::move(a))));
}

Formula Formula::forall_eventually(Formula a) {
  return forall_until(verum(), std::move(a));
}

Formula Formula::forall_globally(Formula a) {
  return negation(exists_eventually(negation(std::move(a))));
}

Formula Formula::exists_weak_until(Formula a, Formula b) {
  const Formula nb = negation(b);
  return negation(forall_until(nb, conjunction(nb, negation(std::move(a)))));
}

Formula Formula::forall_weak_until(Formula a, Formula b) {
  const Formula nb = negation(b);
  return negation(exists_until(nb, conjunction(nb, negation(std::move(a)))));
}

Formula Formula::conjoin_all(const std::vector<Formula>& fs) {
  if (fs.empty()) throw std::invalid_argument("conjoin_all of empty list");
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conjunction(acc, fs[i]);
  return acc;
}

std::string fragment_name(Fragment fragment) {
  switch (fragment) {
    case Fragment::CtlD: return "CtlD";
    case Fragment::AtlkpSubset: return "AtlkpSubset";
    case Fragment::AtlkpFull: return "AtlkpFull";
    case Fragment::Mixed: return "Mixed";
  }
  return "?";
}

bool is_subset_until(const Formula& f) {
  if (f.kind() != FormulaKind::CoopUntil) return false;
  const Formula& a = f.child(0);
  const Formula& b = f.child(1);
  return a.kind() == FormulaKind::DKnows && b.kind() == FormulaKind::DKnows &&
         a.coalition() == f.coalition() && b.coalition() == f.coalition();
}

namespace {

struct WalkFlags {
  bool coop = false;   // CoopNext / CoopUntil / DualCoopUntil
  bool dual = false;   // DualCoopUntil
  bool path = false;   // ExistsNext / ExistsUntil / ForallUntil
};

void collect_flags(const Formula& f, WalkFlags& flags,
                   std::set<const void*>& seen) {
  if (!seen.insert(f.id()).second) return;
  switch (f.kind()) {
    case FormulaKind::CoopNext:
    case FormulaKind::CoopUntil:
      flags.coop = true;
      break;
    case FormulaKind::DualCoopUntil:
      flags.coop = true;
      flags.dual = true;
      break;
    case FormulaKind::ExistsNext:
    case FormulaKind::ExistsUntil:
    case FormulaKind::ForallUntil:
      flags.path = true;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < f.arity(); ++i)
    collect_flags(f.child(i), flags, seen);
}

// Membership in the translation-subset grammar:
//   ⊥ | p | φ→ψ | K_Γφ | <<Γ>>Xφ | <<Γ>>(K_Γφ U K_Γψ)
bool in_subset_grammar(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::False:
    case FormulaKind::Atom:
      return true;
    case FormulaKind::Implies:
      return in_subset_grammar(f.child(0)) && in_subset_grammar(f.child(1));
    case FormulaKind::DKnows:
    case FormulaKind::CoopNext:
      return in_subset_grammar(f.child(0));
    case FormulaKind::CoopUntil:
      return is_subset_until(f) && in_subset_grammar(f.child(0).child(0)) &&
             in_subset_grammar(f.child(1).child(0));
    default:
      return false;
  }
}

}  // namespace

Fragment classify(const Formula& f) {
  WalkFlags flags;
  std::set<const void*> seen;
  collect_flags(f, flags, seen);
  if (!flags.coop) return Fragment::CtlD;
  if (flags.path) return Fragment::Mixed;
  if (!flags.dual && in_subset_grammar(f)) return Fragment::AtlkpSubset;
  return Fragment::AtlkpFull;
}

namespace {

void collect_props(const Formula& f, std::set<std::string>& out,
                   std::set<const void*>& seen) {
  if (!seen.insert(f.id()).second) return;
  if (f.kind() == FormulaKind::Atom) out.insert(f.atom_name());
  for (std::size_t i = 0; i < f.arity(); ++i) collect_props(f.child(i), out, seen);
}

void collect_coalitions(const Formula& f, std::set<Coalition>& out,
                        std::set<const void*>& seen) {
  if (!seen.insert(f.id()).second) return;
  switch (f.kind()) {
    case FormulaKind::DKnows:
    case FormulaKind::CoopNext:
    case FormulaKind::CoopUntil:
    case FormulaKind::DualCoopUntil:
      out.insert(f.coalition());
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < f.arity(); ++i)
    collect_coalitions(f.child(i), out, seen);
}

}  // namespace

std::set<std::string> props_of(const Formula& f) {
  std::set<std::string> out;
  std::set<const void*> seen;
  collect_props(f, out, seen);
  return out;
}

std::set<Coalition> coalitions_of(const Formula& f) {
  std::set<Coalition> out;
  std::set<const void*> seen;
  collect_coalitions(f, out, seen);
  return out;
}

namespace {

Formula rewrite(const Formula& f,
                const std::function<const Formula*(const Formula&)>& match,
                std::unordered_map<const void*, Formula>& memo);

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
  switch (f.kind()) {
    case FormulaKind::Implies:
      return Formula::implies(kids[0], kids[1]);
    case FormulaKind::DKnows:
      return Formula::dknows(f.coalition(), kids[0]);
    case FormulaKind::CoopNext:
      return Formula::coop_next(f.coalition(), kids[0]);
    case FormulaKind::CoopUntil:
      return Formula::coop_until(f.coalition(), kids[0], kids[1]);
    case FormulaKind::DualCoopUntil:
      return Formula::dual_coop_until(f.coalition(), kids[0], kids[1]);
    case FormulaKind::ExistsNext:
      return Formula::exists_next(kids[0]);
    case FormulaKind::ExistsUntil:
      return Formula::exists_until(kids[0], kids[1]);
    case FormulaKind::ForallUntil:
      return Formula::forall_until(kids[0], kids[1]);
    default:
      return f;
  }
}

Formula rewrite(const Formula& f,
                const std::function<const Formula*(const Formula&)>& match,
                std::unordered_map<const void*, Formula>& memo) {
  auto it = memo.find(f.id());
  if (it != memo.end()) return it->second;
  Formula out = f;
  if (const Formula* r = match(f)) {
    out = *r;
  } else if (f.arity() > 0) {
    std::vector<Formula> kids;
    kids.reserve(f.arity());
    bool changed = false;
    for (std::size_t i = 0; i < f.arity(); ++i) {
      kids.push_back(rewrite(f.child(i), match, memo));
      if (kids.back() != f.child(i)) changed = true;
    }
    if (changed) out = rebuild(f, std::move(kids));
  }
  memo.emplace(f.id(), out);
  return out;
}

}  // namespace

Formula substitute(const Formula& beta, const std::string& prop,
                   const Formula& alpha) {
  std::unordered_map<const void*, Formula> memo;
  auto match = [&prop, &alpha](const Formula& f) -> const Formula* {
    if (f.kind() == FormulaKind::Atom && f.atom_name() == prop) return &alpha;
    return nullptr;
  };
  return rewrite(beta, match, memo);
}

Formula replace_subformula(const Formula& beta, const Formula& target,
                           const Formula& replacement) {
  std::unordered_map<const void*, Formula> memo;
  auto match = [&target, &replacement](const Formula& f) -> const Formula* {
    if (f == target) return &replacement;
    return nullptr;
  };
  return rewrite(beta, match, memo);
}

}  // namespace atlkd
