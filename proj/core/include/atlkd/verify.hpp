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
#include <optional>
#include <string>
#include <vector>

#include "atlkd/formula.hpp"
#include "atlkd/model_io.hpp"
#include "atlkd/oracle.hpp"
#include "atlkd/system.hpp"

namespace atlkd {

/// Aggregate result of one property suite. A suite passes when it found no
/// disagreement and its skip/unknown quotas hold.
struct PropertyReport {
  std::string property;
  int systems = 0;
  long long checks = 0;           // comparisons performed
  long long disagreements = 0;    // decided-vs-decided conflicts
  long long unknown_pairs = 0;    // at least one side undecided
  long long skipped = 0;          // instances over the strategy budget
  long long instances = 0;        // instances subject to skip accounting
  long long unknown_dominated = 0;  // instances whose precondition was Unknown
  long long applicable = 0;         // instances whose precondition held
  bool passed = false;
  std::vector<std::string> counterexamples;

  void merge(const PropertyReport& other);
  std::string summary() const;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  int count = 25;              // generated systems
  int horizon = 3;
  int jobs = 1;
  int formulas_per_system = 10;  // prop1 only
  std::uint64_t strategy_budget = 100000;
};

/// Properties: purity | keyobs | emptycoalition | fixpoint | prop1 | prop3 |
/// extraction. Throws std::invalid_argument for an unknown name.
PropertyReport run_property_suite(const std::string& property,
                                  const SuiteOptions& options);

/// Runs a property's per-system check on one supplied system (purity, which
/// is formula-only, rejects this form).
PropertyReport run_property_on_system(const std::string& property,
                                      const InterpretedSystem& is,
                                      const SuiteOptions& options);

const std::vector<std::string>& property_names();

// Seeded formula generators used by the suites and the acceptance tests.
Coalition random_coalition(Rng& rng, const std::vector<AgentId>& agents);
Formula random_propositional(Rng& rng, const std::vector<std::string>& props,
                             int depth);
/// A formula of the translation subset with modal nesting ≤ modal_depth.
Formula random_subset_formula(Rng& rng, const std::vector<AgentId>& agents,
                              const std::vector<std::string>& props,
                              int modal_depth);
/// As above but guaranteed to contain at least one until-objective.
Formula random_subset_formula_with_until(Rng& rng,
                                         const std::vector<AgentId>& agents,
                                         const std::vector<std::string>& props,
                                         int modal_depth);

/// ⋁ over the coalition's action vectors a of K_Γ∀○(⋀ a_i → φ), the
/// action atoms taken from the recording system's dictionary.
Formula key_observation_formula(const InterpretedSystem& base,
                                const ActionRecordingSystem& act,
                                const Coalition& g, const Formula& phi);

}  // namespace atlkd
