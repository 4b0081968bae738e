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

#include "atlkd/translator.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "atlkd/printer.hpp"

namespace atlkd {

TranslateError::TranslateError(const std::string& msg,
                               std::optional<Formula> offending)
    : std::runtime_error(msg), offending_(std::move(offending)) {}

namespace {

std::string coalition_hash(const Coalition& g) {
  // FNV-1a over the canonical member list, rendered as 8 hex digits.
  std::uint32_t h = 2166136261u;
  for (const char c : g.to_string()) {
    h ^= static_cast<unsigned char>(c);
    h *= 16777619u;
  }
  std::ostringstream os;
  os << std::hex << h;
  std::string s = os.str();
  while (s.size() < 8) s = "0" + s;
  return s;
}

Formula k_empty_always(const Formula& body) {
  return Formula::dknows(Coalition(), Formula::forall_globally(body));
}

// ¬x matcher for the expanded core (x -> false).
const Formula* match_not(const Formula& f) {
  if (f.kind() == FormulaKind::Implies &&
      f.child(1).kind() == FormulaKind::False)
    return &f.child(0);
  return nullptr;
}

// a & b matcher: !(a -> !b).
bool match_and(const Formula& f, const Formula** a, const Formula** b) {
  const Formula* inner = match_not(f);
  if (inner == nullptr || inner->kind() != FormulaKind::Implies) return false;
  const Formula* nb = match_not(inner->child(1));
  if (nb == nullptr) return false;
  *a = &inner->child(0);
  *b = nb;
  return true;
}

std::optional<Formula> find_innermost(
    const Formula& f, const std::function<bool(const Formula&)>& pred) {
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (auto r = find_innermost(f.child(i), pred)) return r;
  if (pred(f)) return f;
  return std::nullopt;
}

Formula balanced_conjoin(const std::vector<Formula>& fs, std::size_t lo,
                         std::size_t hi) {
  if (hi - lo == 1) return fs[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return Formula::conjunction(balanced_conjoin(fs, lo, mid),
                              balanced_conjoin(fs, mid, hi));
}

}  // namespace

TranslationContext::TranslationContext(std::vector<AgentId> agents)
    : agents_(std::move(agents)) {
  std::sort(agents_.begin(), agents_.end(), agent_id_less);
  agents_.erase(std::unique(agents_.begin(), agents_.end()), agents_.end());
  for (const auto& a : agents_)
    if (a == kEnvironmentAgent)
      throw TranslateError("the environment is not a translation agent");
  act_sets_.resize(agents_.size() + 1);
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    act_sets_[i].push_back("_nop_" + agents_[i]);
    dictionary_.push_back({act_sets_[i].back(), "nop", ""});
  }
  act_sets_.back().push_back("_nop_e");
  dictionary_.push_back({act_sets_.back().back(), "nop", ""});
}

std::pair<std::string, std::string> TranslationContext::fresh_pq(
    const std::string& origin) {
  const std::string p = "_p" + std::to_string(counter_);
  const std::string q = "_q" + std::to_string(counter_);
  ++counter_;
  dictionary_.push_back({p, "p", origin});
  dictionary_.push_back({q, "q", origin});
  return {p, q};
}

TranslationContext::ActionAtoms TranslationContext::fresh_action_atoms(
    const Coalition& g, const std::string& origin) {
  const std::string tag = coalition_hash(g);
  const int k = counter_++;
  ActionAtoms out;
  for (const auto& agent : g.members()) {
    const auto it = std::find(agents_.begin(), agents_.end(), agent);
    if (it == agents_.end())
      throw TranslateError("coalition agent \"" + agent +
                           "\" missing from the translation context");
    const std::string atom =
        "_act_" + tag + "_" + agent + "_" + std::to_string(k);
    act_sets_[it - agents_.begin()].push_back(atom);
    dictionary_.push_back({atom, "act_agent", origin});
    out.per_agent.emplace_back(agent, atom);
  }
  out.env = "_act_" + tag + "_e_" + std::to_string(k);
  act_sets_.back().push_back(out.env);
  dictionary_.push_back({out.env, "act_env", origin});
  return out;
}

Formula build_A(const std::vector<std::vector<std::string>>& act_sets) {
  if (act_sets.empty()) throw TranslateError("build_A needs the environment set");
  for (const auto& s : act_sets)
    if (s.empty()) throw TranslateError("build_A: empty action set");

  std::vector<Formula> conjuncts;
  std::vector<std::size_t> pick(act_sets.size(), 0);
  bool done = false;
  while (!done) {
    std::vector<Formula> atoms;
    atoms.reserve(act_sets.size());
    for (std::size_t i = 0; i < act_sets.size(); ++i)
      atoms.push_back(Formula::atom(act_sets[i][pick[i]]));
    conjuncts.push_back(Formula::exists_next(Formula::conjoin_all(atoms)));
    // Advance the last member first: lexicographic vector order.
    done = true;
    for (std::size_t k = act_sets.size(); k-- > 0;) {
      if (++pick[k] < act_sets[k].size()) {
        done = false;
        break;
      }
      pick[k] = 0;
    }
  }
  return balanced_conjoin(conjuncts, 0, conjuncts.size());
}

UntilElimination eliminate_until_parts(const Formula& chi, const Formula& target,
                                       TranslationContext& ctx) {
  if (!is_subset_until(target))
    throw TranslateError(
        "until-elimination target must have the shape <<G>>(K{G}a U K{G}b)",
        target);
  const auto [p, q] = ctx.fresh_pq(render(target));
  const Coalition& g = target.coalition();
  const Formula guard = target.child(0);   // K_Γφ
  const Formula goal = target.child(1);    // K_Γψ
  const Formula ap = Formula::atom(p);
  const Formula aq = Formula::atom(q);

  UntilElimination out{
      replace_subformula(chi, target, ap),
      {
          k_empty_always(Formula::implies(
              Formula::disjunction(ap, aq),
              Formula::disjunction(
                  goal, Formula::conjunction(guard, Formula::coop_next(g, aq))))),
          k_empty_always(Formula::equivalence(
              ap, Formula::disjunction(
                      goal,
                      Formula::conjunction(guard, Formula::coop_next(g, ap))))),
          k_empty_always(Formula::implies(
              ap, Formula::disjunction(
                      goal, Formula::conjunction(
                                guard, Formula::forall_next(Formula::forall_until(
                                           Formula::implies(aq, guard),
                                           Formula::implies(aq, goal))))))),
      },
      p,
      q};
  return out;
}

Formula eliminate_until(const Formula& chi, const Formula& target,
                        TranslationContext& ctx) {
  const UntilElimination parts = eliminate_until_parts(chi, target, ctx);
  Formula out = parts.rewritten;
  for (const Formula& c : parts.conjuncts) out = Formula::conjunction(out, c);
  return out;
}

namespace {

Formula next_replacement(const Coalition& g, const Formula& body,
                         const TranslationContext::ActionAtoms& atoms) {
  Formula premise = Formula::verum();
  if (!atoms.per_agent.empty()) {
    std::vector<Formula> parts;
    for (const auto& [agent, atom] : atoms.per_agent)
      parts.push_back(Formula::atom(atom));
    premise = Formula::conjoin_all(parts);
  }
  return Formula::dknows(
      g, Formula::forall_next(Formula::implies(premise, body)));
}

Formula next_foil(const Coalition& g, const Formula& body,
                  const Formula& replacement,
                  const TranslationContext::ActionAtoms& atoms) {
  return k_empty_always(Formula::disjunction(
      replacement,
      Formula::poss(g, Formula::forall_next(Formula::implies(
                           Formula::atom(atoms.env), Formula::negation(body))))));
}

bool contains_coop(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::CoopNext:
    case FormulaKind::CoopUntil:
    case FormulaKind::DualCoopUntil:
      return true;
    default:
      break;
  }
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (contains_coop(f.child(i))) return true;
  return false;
}

}  // namespace

NextElimination eliminate_next_parts(const Formula& chi, const Formula& target,
                                     TranslationContext& ctx) {
  if (target.kind() != FormulaKind::CoopNext)
    throw TranslateError("next-elimination target must have the shape <<G>> X a",
                         target);
  if (contains_coop(target.child(0)))
    throw TranslateError(
        "next-elimination target body must be free of cooperation modalities",
        target);
  const auto atoms = ctx.fresh_action_atoms(target.coalition(), render(target));
  const Formula repl = next_replacement(target.coalition(), target.child(0), atoms);
  return NextElimination{
      replace_subformula(chi, target, repl),
      repl,
      next_foil(target.coalition(), target.child(0), repl, atoms),
  };
}

Formula eliminate_next(const Formula& chi, const Formula& target,
                       TranslationContext& ctx) {
  // The trailing A-conjunct from an earlier call through this context is
  // superseded by the one over the extended action sets.
  Formula body = chi;
  if (ctx.current_constraint()) {
    const Formula* a = nullptr;
    const Formula* b = nullptr;
    if (match_and(chi, &a, &b) && *b == *ctx.current_constraint()) body = *a;
  }
  const NextElimination parts = eliminate_next_parts(body, target, ctx);
  const Formula a_conjunct = k_empty_always(build_A(ctx.act_sets()));
  ctx.set_current_constraint(a_conjunct);
  return Formula::conjunction(
      Formula::conjunction(parts.rewritten, parts.foil), a_conjunct);
}

CompleteUntilElimination eliminate_until_complete_parts(const Formula& chi,
                                                        const Formula& target,
                                                        TranslationContext& ctx) {
  if (target.kind() != FormulaKind::DualCoopUntil)
    throw TranslateError(
        "complete-information elimination target must be [[G]](a U b)", target);
  const auto [p, q] = ctx.fresh_pq(render(target));
  const Coalition& g = target.coalition();
  const Formula phi = target.child(0);
  const Formula psi = target.child(1);
  const Formula ap = Formula::atom(p);
  const Formula aq = Formula::atom(q);

  CompleteUntilElimination out{
      replace_subformula(chi, target, ap),
      {
          Formula::forall_globally(Formula::implies(
              Formula::disjunction(ap, aq),
              Formula::disjunction(
                  psi, Formula::conjunction(phi, Formula::dual_coop_next(g, aq))))),
          Formula::forall_globally(Formula::equivalence(
              ap,
              Formula::disjunction(
                  psi, Formula::conjunction(phi, Formula::dual_coop_next(g, ap))))),
          Formula::forall_globally(Formula::implies(
              ap, Formula::disjunction(
                      psi, Formula::conjunction(
                               phi, Formula::forall_next(Formula::forall_until(
                                        Formula::implies(aq, phi),
                                        Formula::implies(aq, psi))))))),
      },
      p,
      q};
  return out;
}

Formula eliminate_until_complete(const Formula& chi, const Formula& target,
                                 TranslationContext& ctx) {
  const CompleteUntilElimination parts =
      eliminate_until_complete_parts(chi, target, ctx);
  Formula out = parts.rewritten;
  for (const Formula& c : parts.conjuncts) out = Formula::conjunction(out, c);
  return out;
}

namespace {

// First offending node for the mode's fragment, post-order.
std::optional<Formula> fragment_offender(const Formula& f, TranslationMode mode) {
  const auto bad = [mode](const Formula& g) {
    switch (g.kind()) {
      case FormulaKind::CoopUntil:
        return !is_subset_until(g);
      case FormulaKind::DualCoopUntil:
        return mode == TranslationMode::Incomplete;
      default:
        return false;
    }
  };
  if (auto r = find_innermost(f, bad)) return r;
  if (mode == TranslationMode::Incomplete) {
    // Cooperation mixed with path quantifiers falls outside the subset.
    const Fragment frag = classify(f);
    if (frag == Fragment::Mixed) {
      return find_innermost(f, [](const Formula& g) {
        return g.kind() == FormulaKind::CoopNext ||
               g.kind() == FormulaKind::CoopUntil ||
               g.kind() == FormulaKind::DualCoopUntil;
      });
    }
  }
  return std::nullopt;
}

}  // namespace

TranslationResult translate(const Formula& f, TranslationMode mode,
                            const TraceFn& trace) {
  for (const auto& prop : props_of(f))
    if (!prop.empty() && prop[0] == '_')
      throw TranslateError("input proposition \"" + prop +
                           "\" uses the reserved \"_\" namespace");
  if (auto off = fragment_offender(f, mode))
    throw TranslateError(
        "input outside the translation fragment; offending subformula: " +
            render(*off),
        off);

  std::vector<AgentId> agents;
  for (const Coalition& g : coalitions_of(f))
    for (const auto& m : g.members()) agents.push_back(m);
  TranslationContext ctx(std::move(agents));

  Formula chi = f;
  std::vector<Formula> constraints;

  // Phase 1: until-objectives, innermost first.
  const auto until_pred = [mode](const Formula& g) {
    if (is_subset_until(g)) return true;
    return mode == TranslationMode::Complete &&
           g.kind() == FormulaKind::DualCoopUntil;
  };
  while (auto target = find_innermost(chi, until_pred)) {
    if (target->kind() == FormulaKind::CoopUntil) {
      const UntilElimination parts = eliminate_until_parts(chi, *target, ctx);
      chi = parts.rewritten;
      constraints.insert(constraints.end(), parts.conjuncts.begin(),
                         parts.conjuncts.end());
      if (trace)
        trace({"until", *target, {parts.p, parts.q},
               {parts.conjuncts.begin(), parts.conjuncts.end()}});
    } else {
      const CompleteUntilElimination parts =
          eliminate_until_complete_parts(chi, *target, ctx);
      chi = parts.rewritten;
      constraints.insert(constraints.end(), parts.conjuncts.begin(),
                         parts.conjuncts.end());
      if (trace)
        trace({"until-complete", *target, {parts.p, parts.q},
               {parts.conjuncts.begin(), parts.conjuncts.end()}});
    }
  }

  // Phase 2: <<Γ>>X occurrences, innermost first, scanning the rewritten χ
  // and then the emitted constraints in order.
  const auto next_pred = [](const Formula& g) {
    return g.kind() == FormulaKind::CoopNext;
  };
  while (true) {
    std::optional<Formula> target = find_innermost(chi, next_pred);
    for (std::size_t i = 0; !target && i < constraints.size(); ++i)
      target = find_innermost(constraints[i], next_pred);
    if (!target) break;

    const auto atoms = ctx.fresh_action_atoms(target->coalition(), render(*target));
    const Formula repl =
        next_replacement(target->coalition(), target->child(0), atoms);
    chi = replace_subformula(chi, *target, repl);
    for (Formula& c : constraints) c = replace_subformula(c, *target, repl);
    constraints.push_back(
        next_foil(target->coalition(), target->child(0), repl, atoms));
    if (trace) {
      std::vector<std::string> fresh;
      for (const auto& [agent, atom] : atoms.per_agent) fresh.push_back(atom);
      fresh.push_back(atoms.env);
      trace({"next", *target, fresh, {constraints.back()}});
    }
  }

  // The single totality constraint over the final action sets.
  const Formula a_conjunct = k_empty_always(build_A(ctx.act_sets()));
  constraints.push_back(a_conjunct);
  ctx.set_current_constraint(a_conjunct);
  if (trace) trace({"constraint", std::nullopt, {}, {a_conjunct}});

  Formula out = chi;
  for (const Formula& c : constraints) out = Formula::conjunction(out, c);

  TranslationResult result{
      out,
      chi,
      constraints,
      ctx.dictionary(),
      mode,
      mode == TranslationMode::Incomplete
          ? "satisfiability-preserving forward; model-extraction certified "
            "backward"
          : "satisfiability-equivalent (complete information)"};
  return result;
}

std::string serialize_dictionary(const TranslationResult& result) {
  nlohmann::ordered_json doc;
  doc["mode"] = result.mode == TranslationMode::Incomplete ? "incomplete"
                                                           : "complete";
  doc["guarantee"] = result.guarantee;
  nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
  for (const auto& info : result.dictionary) {
    nlohmann::ordered_json entry;
    entry["atom"] = info.atom;
    entry["role"] = info.role;
    entry["origin"] = info.origin;
    atoms.push_back(std::move(entry));
  }
  doc["atoms"] = atoms;
  return doc.dump(2) + "\n";
}

}  // namespace atlkd
