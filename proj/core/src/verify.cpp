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

#include "atlkd/verify.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "atlkd/printer.hpp"
#include "atlkd/translator.hpp"

namespace atlkd {

namespace {

constexpr std::size_t kMaxCounterexamples = 8;

void note(PropertyReport& report, const std::string& message) {
  if (report.counterexamples.size() < kMaxCounterexamples)
    report.counterexamples.push_back(message);
}

std::vector<Coalition> agent_subsets(const std::vector<AgentId>& agents) {
  std::vector<Coalition> out;
  const std::size_t n = agents.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    std::vector<AgentId> members;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t(1) << i)) members.push_back(agents[i]);
    out.emplace_back(std::move(members));
  }
  return out;
}

std::vector<AgentId> system_agents(const InterpretedSystem& is) {
  std::vector<AgentId> out;
  for (std::size_t i = 0; i + 1 < is.num_members(); ++i)
    out.push_back(is.member_name(i));
  return out;
}

// Literals and K-literals over the system's propositions.
std::vector<Formula> literal_pool(const InterpretedSystem& is) {
  std::vector<Formula> out;
  for (const auto& p : is.props()) {
    out.push_back(Formula::atom(p));
    out.push_back(Formula::negation(Formula::atom(p)));
  }
  if (out.empty()) out.push_back(Formula::verum());
  return out;
}

std::vector<Formula> k_literal_pool(const InterpretedSystem& is) {
  std::vector<Formula> out = literal_pool(is);
  const std::vector<Formula> lits = literal_pool(is);
  for (const Coalition& g : agent_subsets(system_agents(is)))
    for (const Formula& lit : lits) out.push_back(Formula::dknows(g, lit));
  return out;
}

std::string run_label(const InterpretedSystem& is, const RunTree& tree, int node) {
  return run_to_string(is, tree.run_of(node));
}

bool decided(Verdict v) { return v != Verdict::Unknown; }

void compare_pair(PropertyReport& report, Verdict a, Verdict b,
                  const std::function<std::string()>& describe) {
  ++report.checks;
  if (decided(a) && decided(b)) {
    if (a != b) {
      ++report.disagreements;
      note(report, describe() + " — " + verdict_name(a) + " vs " +
                       verdict_name(b));
    }
  } else {
    ++report.unknown_pairs;
  }
}

InterpretedSystem small_system(std::uint64_t seed) {
  Rng shape(seed ^ 0xa5a5a5a5ULL);
  const auto pick = [&shape] { return 1 + shape.below(2); };
  const std::vector<int> states = {pick(), pick(), pick()};
  const std::vector<int> actions = {pick(), pick(), pick()};
  return generate_random_shaped(states, actions, 2, seed);
}

// ---------------------------------------------------------------------------
// keyobs: <<Γ>>Xφ on IS versus the action-atom disjunction on IS^Act.

void check_keyobs(const InterpretedSystem& is, const SuiteOptions& options,
                  PropertyReport& report) {
  const ActionRecordingSystem act = build_is_act(is);
  RunTree tree(is, options.horizon);
  RunTree act_tree(act.system, options.horizon);
  Evaluator ev(tree);
  Evaluator act_ev(act_tree);

  const std::vector<Formula> bodies = k_literal_pool(is);
  const std::vector<Coalition> coalitions = agent_subsets(system_agents(is));

  // one step of room below the horizon keeps the next-objectives decided
  const int max_level = std::min(2, options.horizon - 1);
  for (const Coalition& g : coalitions) {
    for (const Formula& phi : bodies) {
      const Formula lhs = Formula::coop_next(g, phi);
      const Formula rhs = key_observation_formula(is, act, g, phi);
      for (int level = 0; level <= max_level; ++level) {
        for (int n = tree.level_begin(level); n < tree.level_end(level); ++n) {
          const Run lifted = act.lift_run(is, tree.run_of(n));
          const int act_node = act_tree.find_node(lifted);
          if (act_node < 0) {
            ++report.disagreements;
            note(report, "lifted run missing in IS^Act: " +
                             run_label(is, tree, n));
            continue;
          }
          const Verdict a = ev.eval(n, lhs);
          const Verdict b = act_ev.eval(act_node, rhs);
          compare_pair(report, a, b, [&] {
            return "keyobs <<" + g.to_string() + ">>X " + render(phi) +
                   " at " + run_label(is, tree, n);
          });
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// emptycoalition: the D_∅/P_∅ bridges between path quantifiers and the
// empty-coalition modalities.

void check_empty_coalition(const InterpretedSystem& is,
                           const SuiteOptions& options, std::uint64_t seed,
                           PropertyReport& report) {
  RunTree tree(is, options.horizon);
  Evaluator ev(tree);
  ev.set_strategy_budget(options.strategy_budget);
  Rng rng(seed ^ 0x5eed);
  const std::vector<std::string> props = is.props();
  const Coalition empty;

  const int max_level = std::min(2, options.horizon);
  for (int k = 0; k < 5; ++k) {
    const Formula phi = random_propositional(rng, props, 2);
    const Formula psi = random_propositional(rng, props, 2);

    struct Pair {
      const char* name;
      Formula lhs;
      Formula rhs;
    };
    const std::vector<Pair> pairs = {
        {"P{}EX / [[0]]X", Formula::poss(empty, Formula::exists_next(phi)),
         Formula::dual_coop_next(empty, phi)},
        {"P{}EU / [[0]]U",
         Formula::poss(empty, Formula::exists_until(phi, psi)),
         Formula::dual_coop_until(empty, phi, psi)},
        {"K{}AU / <<0>>U",
         Formula::dknows(empty, Formula::forall_until(phi, psi)),
         Formula::coop_until(empty, phi, psi)},
    };
    for (const auto& pair : pairs) {
      for (int level = 0; level <= max_level; ++level) {
        for (int n = tree.level_begin(level); n < tree.level_end(level); ++n) {
          const Verdict a = ev.eval(n, pair.lhs);
          const Verdict b = ev.eval(n, pair.rhs);
          compare_pair(report, a, b, [&] {
            return std::string(pair.name) + " with phi=" + render(phi) +
                   " psi=" + render(psi) + " at " + run_label(is, tree, n);
          });
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// fixpoint: backward lfp verdicts against direct strategy enumeration.

void check_fixpoint(const InterpretedSystem& is, const SuiteOptions& options,
                    std::uint64_t seed, PropertyReport& report) {
  RunTree tree(is, options.horizon);
  Evaluator ev(tree);
  ev.set_strategy_budget(options.strategy_budget);
  Rng rng(seed ^ 0xf1f0);
  const std::vector<Formula> lits = literal_pool(is);

  std::vector<std::pair<Formula, Formula>> pairs;
  for (int k = 0; k < 5; ++k)
    pairs.emplace_back(lits[rng.below(static_cast<int>(lits.size()))],
                       lits[rng.below(static_cast<int>(lits.size()))]);

  const int max_level = std::min(2, options.horizon);
  for (const Coalition& g : agent_subsets(system_agents(is))) {
    for (const auto& [phi, psi] : pairs) {
      const auto lfp = ev.lfp_until(g, phi, psi, /*strict=*/false);
      const Formula kphi = Formula::dknows(g, phi);
      const Formula kpsi = Formula::dknows(g, psi);
      for (int level = 0; level <= max_level; ++level) {
        for (int n = tree.level_begin(level); n < tree.level_end(level); ++n) {
          ++report.instances;
          if (ev.strategy_count_for(n, g) > options.strategy_budget) {
            ++report.skipped;
            continue;
          }
          const Verdict enumerated = ev.eval_coop_until_enum(n, g, kphi, kpsi);
          compare_pair(report, lfp.verdict[n], enumerated, [&] {
            return "lfp/enum <<" + g.to_string() + ">>(K " + render(phi) +
                   " U K " + render(psi) + ") at " + run_label(is, tree, n);
          });
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// prop1: the until-elimination conjuncts admit a satisfying valuation of the
// fresh atoms over the run tree whenever the original formula holds.

std::vector<Verdict> pursuit_ghost(Evaluator& ev, const RunTree& tree,
                                   const Coalition& g,
                                   const Evaluator::LfpResult& lfp) {
  const auto& info = ev.coalition_info(g);
  std::vector<Verdict> q(tree.size(), Verdict::False);
  for (int level = 1; level <= tree.horizon(); ++level) {
    for (int n = tree.level_begin(level); n < tree.level_end(level); ++n) {
      const int parent = tree.parent_of(n);
      const bool marked =
          lfp.verdict[parent] == Verdict::True || q[parent] == Verdict::True;
      if (!marked) continue;
      if (lfp.target_now[parent] != Verdict::False) continue;
      if (lfp.witness[parent] < 0) continue;
      if (info.partial_of_joint[tree.action_into(n)] == lfp.witness[parent])
        q[n] = Verdict::True;
    }
  }
  return q;
}

bool exhaustive_prop1_search(Evaluator& ev, const RunTree& tree,
                             const UntilElimination& parts) {
  const int n = tree.size();
  if (2 * n > 16) return false;  // 4^n assignments otherwise
  std::vector<Verdict> p(n), q(n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << (2 * n)); ++bits) {
    for (int i = 0; i < n; ++i) {
      p[i] = as_verdict((bits >> i) & 1);
      q[i] = as_verdict((bits >> (n + i)) & 1);
    }
    ev.set_ghost(parts.p, p);
    ev.set_ghost(parts.q, q);
    bool ok = true;
    for (const Formula& c : parts.conjuncts)
      ok = ok && ev.sat_at_initial(c) != Verdict::False;
    if (ok) return true;
  }
  return false;
}

void check_prop1(const InterpretedSystem& is, const SuiteOptions& options,
                 std::uint64_t seed, PropertyReport& report) {
  RunTree tree(is, options.horizon);
  Rng rng(seed ^ 0x9701);
  const std::vector<AgentId> agents = system_agents(is);
  const std::vector<std::string> props = is.props();

  for (int k = 0; k < options.formulas_per_system; ++k) {
    ++report.instances;
    const Formula f = random_subset_formula_with_until(rng, agents, props, 2);
    const auto target = [&f] {
      struct Find {
        static std::optional<Formula> innermost(const Formula& g) {
          for (std::size_t i = 0; i < g.arity(); ++i)
            if (auto r = innermost(g.child(i))) return r;
          if (is_subset_until(g)) return g;
          return std::nullopt;
        }
      };
      return *Find::innermost(f);
    }();

    Evaluator ev(tree);
    ev.set_strategy_budget(options.strategy_budget);
    const Verdict pre = ev.sat_at_initial(f);
    if (pre == Verdict::Unknown) {
      ++report.unknown_dominated;
      continue;
    }
    if (pre == Verdict::False) continue;  // vacuous for this criterion
    ++report.applicable;

    const Coalition g = target.coalition();
    const auto lfp =
        ev.lfp_until(g, target.child(0).child(0), target.child(1).child(0),
                     /*strict=*/false);
    const std::vector<Verdict> qghost = pursuit_ghost(ev, tree, g, lfp);

    TranslationContext ctx(g.members());
    const UntilElimination parts = eliminate_until_parts(f, target, ctx);
    ev.set_ghost(parts.p, lfp.verdict);
    ev.set_ghost(parts.q, qghost);

    bool ok = ev.sat_at_initial(parts.rewritten) != Verdict::False;
    std::string offender = ok ? "" : "[p/target]chi";
    for (std::size_t c = 0; ok && c < parts.conjuncts.size(); ++c) {
      if (ev.sat_at_initial(parts.conjuncts[c]) == Verdict::False) {
        ok = false;
        offender = "conjunct " + std::to_string(c + 1);
      }
    }
    if (!ok) ok = exhaustive_prop1_search(ev, tree, parts);
    if (!ok) {
      ++report.disagreements;
      note(report, "prop1 violation (" + offender + ") for " + render(f));
    } else {
      ++report.checks;
    }
    ev.clear_ghosts();
  }
}

// ---------------------------------------------------------------------------
// prop3: with p assigned the oracle's ⟦Γ⟧(φUψ) verdicts, the fixpoint
// conjunct p ↔ ψ∨(φ∧⟦Γ⟧○p) is True at every decided run.

void check_prop3(const InterpretedSystem& is, const SuiteOptions& options,
                 std::uint64_t seed, PropertyReport& report) {
  if (!is_complete_information(is)) {
    ++report.disagreements;
    note(report, "generated system is not complete-information");
    return;
  }
  RunTree tree(is, options.horizon);
  Evaluator ev(tree);
  ev.set_strategy_budget(options.strategy_budget);
  Rng rng(seed ^ 0x9703);
  const std::vector<Formula> lits = literal_pool(is);

  for (const Coalition& g : agent_subsets(system_agents(is))) {
    for (int k = 0; k < 3; ++k) {
      const Formula phi = lits[rng.below(static_cast<int>(lits.size()))];
      const Formula psi = lits[rng.below(static_cast<int>(lits.size()))];

      // p carries the oracle's [[Γ]]U verdicts; nodes whose enumeration
      // exceeds the budget stay Unknown and drop out of the decided check.
      // The empty coalition is read classically (∀-forms): the run-based
      // [[∅]] pools every equal-length run and provably escapes the
      // one-step fixpoint, which is the known divergence between D_∅ path
      // quantification and ∀ under perfect recall.
      std::vector<Verdict> p(tree.size(), Verdict::Unknown);
      const Formula until_form = g.empty()
                                     ? Formula::forall_until(phi, psi)
                                     : Formula::dual_coop_until(g, phi, psi);
      for (int n = 0; n < tree.size(); ++n) {
        ++report.instances;
        if (!g.empty() &&
            ev.strategy_count_for(n, g) > options.strategy_budget) {
          ++report.skipped;
          continue;
        }
        p[n] = g.empty() ? ev.eval(n, until_form)
                         : ev.eval_dual_coop_until_enum(n, g, phi, psi);
      }

      const std::string atom = "_prop3_p";
      ev.set_ghost(atom, p);
      const Formula pa = Formula::atom(atom);
      const Formula next_p = g.empty() ? Formula::forall_next(pa)
                                       : Formula::dual_coop_next(g, pa);
      const Formula body = Formula::equivalence(
          pa, Formula::disjunction(psi, Formula::conjunction(phi, next_p)));
      for (int n = 0; n < tree.size(); ++n) {
        const Verdict v = ev.eval(n, body);
        ++report.checks;
        if (v == Verdict::False) {
          ++report.disagreements;
          note(report, "prop3 fixpoint conjunct False for [[" + g.to_string() +
                           "]](" + render(phi) + " U " + render(psi) + ") at " +
                           run_label(is, tree, n));
        } else if (v == Verdict::Unknown) {
          ++report.unknown_pairs;
        }
      }
      ev.clear_ghosts();
    }
  }
}

// ---------------------------------------------------------------------------
// extraction: CTL⁻ structures satisfying the totality constraint extract to
// valid systems whose transitions land in the labelled successor sets, and
// the action-atom reading of <<Γ>>X survives the extraction.

void check_extraction(const InterpretedSystem& base, const SuiteOptions& options,
                      PropertyReport& report) {
  const GeneratedCtlStructure gen = make_action_recording_structure(base);
  InterpretedSystem extracted = [&] {
    try {
      return extract_is_from_ctl_model(gen.structure, gen.act_sets);
    } catch (const ExtractionError& e) {
      throw std::runtime_error(std::string("unexpected extraction error: ") +
                               e.what());
    }
  }();

  const auto violations = validate(extracted);
  ++report.checks;
  if (!violations.empty()) {
    ++report.disagreements;
    note(report, "extracted system fails validate: " + violations.front().detail);
    return;
  }

  // Chosen transitions must be labelled successors.
  for (StateId s = 0; s < static_cast<StateId>(extracted.num_states()); ++s) {
    for (ActionId a = 0;
         a < static_cast<ActionId>(extracted.num_joint_actions()); ++a) {
      const StateId to = extracted.successor(s, a);
      const auto& succs = gen.structure.successors(s);
      bool ok = std::find(succs.begin(), succs.end(), to) != succs.end();
      for (std::size_t i = 0; ok && i < gen.act_sets.size(); ++i)
        ok = gen.structure.prop_holds(
            gen.act_sets[i][extracted.actions().component(a, i)], to);
      ++report.checks;
      if (!ok) {
        ++report.disagreements;
        note(report, "extracted transition not in the labelled successor set at " +
                         extracted.states().to_string(s));
        return;
      }
    }
  }

  // The elimination reading: <<Γ>>Xφ equals the disjunction over Γ-vectors
  // of K_Γ∀○(⋀ a_i → φ) on the extracted system, at decided runs.
  RunTree tree(extracted, options.horizon);
  Evaluator ev(tree);
  const std::vector<Formula> lits = literal_pool(extracted);
  const std::vector<AgentId> agents = system_agents(extracted);
  const int max_level = std::min(2, options.horizon);
  for (const Coalition& g : agent_subsets(agents)) {
    const auto indices = extracted.coalition_indices(g);
    for (const Formula& phi : lits) {
      // Disjunction over the coalition's action vectors.
      std::vector<Formula> disjuncts;
      std::vector<std::size_t> pick(indices.size(), 0);
      bool done = false;
      while (!done) {
        Formula premise = Formula::verum();
        std::vector<Formula> atoms;
        for (std::size_t j = 0; j < indices.size(); ++j)
          atoms.push_back(Formula::atom(
              extracted.actions().set(indices[j])[pick[j]]));
        if (!atoms.empty()) premise = Formula::conjoin_all(atoms);
        disjuncts.push_back(Formula::dknows(
            g, Formula::forall_next(Formula::implies(premise, phi))));
        done = true;
        for (std::size_t j = indices.size(); j-- > 0;) {
          if (++pick[j] < extracted.actions().set(indices[j]).size()) {
            done = false;
            break;
          }
          pick[j] = 0;
        }
        if (indices.empty()) done = true;
      }
      Formula rhs = disjuncts.front();
      for (std::size_t j = 1; j < disjuncts.size(); ++j)
        rhs = Formula::disjunction(rhs, disjuncts[j]);
      const Formula lhs = Formula::coop_next(g, phi);

      for (int level = 0; level <= max_level; ++level) {
        for (int n = tree.level_begin(level); n < tree.level_end(level); ++n) {
          compare_pair(report, ev.eval(n, lhs), ev.eval(n, rhs), [&] {
            return "extraction keyobs <<" + g.to_string() + ">>X " +
                   render(phi) + " at " + run_label(extracted, tree, n);
          });
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// purity: the pipeline output classifies CtlD and fresh atoms are fresh.

void check_purity(std::uint64_t seed, int count, PropertyReport& report) {
  Rng rng(seed ^ 0x17e5);
  const std::vector<AgentId> agents = {"1", "2", "3"};
  const std::vector<std::string> props = {"u", "v", "w"};
  for (int k = 0; k < count; ++k) {
    const Formula f = random_subset_formula(rng, agents, props, 3);
    const TranslationResult result = translate(f, TranslationMode::Incomplete);
    ++report.checks;
    bool ok = classify(result.formula) == Fragment::CtlD;
    const auto input_props = props_of(f);
    std::set<std::string> seen;
    for (const auto& info : result.dictionary) {
      ok = ok && seen.insert(info.atom).second;       // pairwise distinct
      ok = ok && input_props.count(info.atom) == 0;   // fresh
      ok = ok && !info.atom.empty() && info.atom[0] == '_';
    }
    if (!ok) {
      ++report.disagreements;
      note(report, "purity violation for " + render(f));
    }
  }
}

// ---------------------------------------------------------------------------

void finish(PropertyReport& report) {
  if (report.property == "keyobs") {
    report.passed = report.disagreements == 0 && report.unknown_pairs == 0;
  } else if (report.property == "fixpoint") {
    report.passed = report.disagreements == 0 &&
                    report.skipped * 5 <= report.instances;
  } else if (report.property == "prop1") {
    report.passed = report.disagreements == 0 &&
                    report.unknown_dominated * 10 <= report.instances * 3;
  } else {
    report.passed = report.disagreements == 0;
  }
}

using SystemCheck = std::function<void(const InterpretedSystem&, std::uint64_t,
                                       PropertyReport&)>;

InterpretedSystem suite_system(const std::string& property, std::uint64_t seed) {
  if (property == "prop3") {
    Rng shape(seed ^ 0x3333);
    return generate_complete_information(2, 2, 1 + shape.below(2), 2, seed);
  }
  return small_system(seed);
}

void run_over_generated(const std::string& property, const SuiteOptions& options,
                        const SystemCheck& check, PropertyReport& report) {
  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    for (int i = 0; i < options.count; ++i) {
      const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(i);
      const InterpretedSystem is = suite_system(property, seed);
      ++report.systems;
      check(is, seed, report);
    }
    return;
  }
  std::vector<PropertyReport> parts(options.count);
  std::atomic<int> cursor{0};
  std::vector<std::thread> workers;
  for (int j = 0; j < jobs; ++j) {
    workers.emplace_back([&] {
      while (true) {
        const int i = cursor.fetch_add(1);
        if (i >= options.count) break;
        const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(i);
        const InterpretedSystem is = suite_system(property, seed);
        parts[i].property = property;
        ++parts[i].systems;
        check(is, seed, parts[i]);
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& part : parts) report.merge(part);
}

}  // namespace

void PropertyReport::merge(const PropertyReport& other) {
  systems += other.systems;
  checks += other.checks;
  disagreements += other.disagreements;
  unknown_pairs += other.unknown_pairs;
  skipped += other.skipped;
  instances += other.instances;
  unknown_dominated += other.unknown_dominated;
  applicable += other.applicable;
  for (const auto& c : other.counterexamples) note(*this, c);
}

std::string PropertyReport::summary() const {
  std::ostringstream os;
  os << property << ": " << (passed ? "pass" : "FAIL") << " (systems="
     << systems << ", checks=" << checks << ", disagreements=" << disagreements
     << ", unknown=" << unknown_pairs;
  if (instances > 0) os << ", skipped=" << skipped << "/" << instances;
  if (unknown_dominated > 0) os << ", unknown-dominated=" << unknown_dominated;
  os << ")";
  return os.str();
}

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names = {
      "purity",   "keyobs", "emptycoalition", "fixpoint",
      "prop1",    "prop3",  "extraction"};
  return names;
}

Coalition random_coalition(Rng& rng, const std::vector<AgentId>& agents) {
  std::vector<AgentId> members;
  for (const auto& a : agents)
    if (rng.chance(1, 2)) members.push_back(a);
  return Coalition(std::move(members));
}

Formula random_propositional(Rng& rng, const std::vector<std::string>& props,
                             int depth) {
  const int choice = rng.below(depth <= 0 ? 3 : 7);
  if (props.empty() && choice > 0 && choice < 3) return Formula::verum();
  switch (choice) {
    case 0: return Formula::falsum();
    case 1:
    case 2: return Formula::atom(props[rng.below(static_cast<int>(props.size()))]);
    case 3:
      return Formula::negation(random_propositional(rng, props, depth - 1));
    case 4:
      return Formula::conjunction(random_propositional(rng, props, depth - 1),
                                  random_propositional(rng, props, depth - 1));
    case 5:
      return Formula::disjunction(random_propositional(rng, props, depth - 1),
                                  random_propositional(rng, props, depth - 1));
    default:
      return Formula::implies(random_propositional(rng, props, depth - 1),
                              random_propositional(rng, props, depth - 1));
  }
}

Formula random_subset_formula(Rng& rng, const std::vector<AgentId>& agents,
                              const std::vector<std::string>& props,
                              int modal_depth) {
  const int choice = rng.below(modal_depth <= 0 ? 4 : 10);
  switch (choice) {
    case 0: return Formula::falsum();
    case 1:
    case 2:
    case 3:
      if (props.empty()) return Formula::falsum();
      return Formula::atom(props[rng.below(static_cast<int>(props.size()))]);
    case 4:
    case 5:
      return Formula::implies(
          random_subset_formula(rng, agents, props, modal_depth),
          random_subset_formula(rng, agents, props, modal_depth));
    case 6:
    case 7:
      return Formula::dknows(
          random_coalition(rng, agents),
          random_subset_formula(rng, agents, props, modal_depth - 1));
    case 8:
      return Formula::coop_next(
          random_coalition(rng, agents),
          random_subset_formula(rng, agents, props, modal_depth - 1));
    default: {
      const Coalition g = random_coalition(rng, agents);
      return Formula::coop_until(
          g,
          Formula::dknows(g,
                          random_subset_formula(rng, agents, props,
                                                modal_depth - 1)),
          Formula::dknows(g, random_subset_formula(rng, agents, props,
                                                   modal_depth - 1)));
    }
  }
}

Formula random_subset_formula_with_until(Rng& rng,
                                         const std::vector<AgentId>& agents,
                                         const std::vector<std::string>& props,
                                         int modal_depth) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    const Formula f = random_subset_formula(rng, agents, props, modal_depth);
    const std::function<bool(const Formula&)> has_until =
        [&has_until](const Formula& g) {
          if (is_subset_until(g)) return true;
          for (std::size_t i = 0; i < g.arity(); ++i)
            if (has_until(g.child(i))) return true;
          return false;
        };
    if (has_until(f)) return f;
  }
  const Coalition g = random_coalition(rng, agents);
  const Formula phi = random_propositional(rng, props, 1);
  const Formula psi = random_propositional(rng, props, 1);
  return Formula::coop_until(g, Formula::dknows(g, phi),
                             Formula::dknows(g, psi));
}

Formula key_observation_formula(const InterpretedSystem& base,
                                const ActionRecordingSystem& act,
                                const Coalition& g, const Formula& phi) {
  const auto indices = base.coalition_indices(g);
  std::vector<Formula> disjuncts;
  std::vector<std::size_t> pick(indices.size(), 0);
  bool done = false;
  while (!done) {
    Formula premise = Formula::verum();
    std::vector<Formula> atoms;
    for (std::size_t j = 0; j < indices.size(); ++j)
      atoms.push_back(Formula::atom(act.action_atoms[indices[j]][pick[j]]));
    if (!atoms.empty()) premise = Formula::conjoin_all(atoms);
    disjuncts.push_back(Formula::dknows(
        g, Formula::forall_next(Formula::implies(premise, phi))));
    done = true;
    for (std::size_t j = indices.size(); j-- > 0;) {
      if (++pick[j] < base.actions().set(indices[j]).size()) {
        done = false;
        break;
      }
      pick[j] = 0;
    }
  }
  Formula out = disjuncts.front();
  for (std::size_t j = 1; j < disjuncts.size(); ++j)
    out = Formula::disjunction(out, disjuncts[j]);
  return out;
}

PropertyReport run_property_suite(const std::string& property,
                                  const SuiteOptions& options) {
  PropertyReport report;
  report.property = property;
  if (property == "purity") {
    check_purity(options.seed, options.count, report);
  } else if (property == "keyobs") {
    run_over_generated(property, options,
                       [&options](const InterpretedSystem& is, std::uint64_t,
                                  PropertyReport& r) {
                         check_keyobs(is, options, r);
                       },
                       report);
  } else if (property == "emptycoalition") {
    run_over_generated(property, options,
                       [&options](const InterpretedSystem& is, std::uint64_t seed,
                                  PropertyReport& r) {
                         check_empty_coalition(is, options, seed, r);
                       },
                       report);
  } else if (property == "fixpoint") {
    run_over_generated(property, options,
                       [&options](const InterpretedSystem& is, std::uint64_t seed,
                                  PropertyReport& r) {
                         check_fixpoint(is, options, seed, r);
                       },
                       report);
  } else if (property == "prop1") {
    run_over_generated(property, options,
                       [&options](const InterpretedSystem& is, std::uint64_t seed,
                                  PropertyReport& r) {
                         check_prop1(is, options, seed, r);
                       },
                       report);
  } else if (property == "prop3") {
    run_over_generated(property, options,
                       [&options](const InterpretedSystem& is, std::uint64_t seed,
                                  PropertyReport& r) {
                         check_prop3(is, options, seed, r);
                       },
                       report);
  } else if (property == "extraction") {
    run_over_generated(property, options,
                       [&options](const InterpretedSystem& is, std::uint64_t,
                                  PropertyReport& r) {
                         check_extraction(is, options, r);
                       },
                       report);
  } else {
    throw std::invalid_argument("unknown property \"" + property + "\"");
  }
  finish(report);
  return report;
}

PropertyReport run_property_on_system(const std::string& property,
                                      const InterpretedSystem& is,
                                      const SuiteOptions& options) {
  PropertyReport report;
  report.property = property;
  report.systems = 1;
  if (property == "keyobs") {
    check_keyobs(is, options, report);
  } else if (property == "emptycoalition") {
    check_empty_coalition(is, options, options.seed, report);
  } else if (property == "fixpoint") {
    check_fixpoint(is, options, options.seed, report);
  } else if (property == "prop1") {
    check_prop1(is, options, options.seed, report);
  } else if (property == "prop3") {
    if (!is_complete_information(is))
      throw std::invalid_argument(
          "prop3 needs a complete-information system (shared local states, "
          "trivial environment, diagonal reachable states)");
    check_prop3(is, options, options.seed, report);
  } else if (property == "extraction") {
    check_extraction(is, options, report);
  } else {
    throw std::invalid_argument("property \"" + property +
                                "\" does not take a supplied model");
  }
  finish(report);
  return report;
}

}  // namespace atlkd
