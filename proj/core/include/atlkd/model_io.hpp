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
#include <stdexcept>
#include <string>
#include <vector>

#include "atlkd/system.hpp"

namespace atlkd {

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model documents are JSON with the top-level keys `agents`, `local_states`,
/// `actions`, `initial`, `transitions`, `valuation` in that order; unknown
/// keys are rejected. The environment is implicit as member "e". Transitions
/// come either as an explicit list of {from, action, to} covering the full
/// product or as per-agent local tables {agent, own_state, env_state,
/// action_vector, next_own_state}.
InterpretedSystem parse_model(const std::string& text);

/// Canonical document: fields in canonical order, transitions explicit in
/// (state, action) order. parse_model ∘ serialize_model is the identity.
std::string serialize_model(const InterpretedSystem& is);

/// Deterministic seeded generator. Agents are named "1".."N"; member m has
/// local states "q<m>_<k>" and actions "a<m>_<k>"; propositions are
/// "p0".."p<P-1>". Locality holds by construction: each member's next local
/// state is drawn as a function of (own state, environment state, joint
/// action).
InterpretedSystem generate_random(int agents, int states_per_agent,
                                  int actions_per_agent, int props,
                                  std::uint64_t seed);

/// As generate_random but with per-member sizes (environment last).
InterpretedSystem generate_random_shaped(const std::vector<int>& states_per_member,
                                         const std::vector<int>& actions_per_member,
                                         int props, std::uint64_t seed);

/// Complete-information system: every agent shares the common local-state
/// set "c0".."c<states-1>", the environment has one state and one action,
/// reachable states are diagonal.
InterpretedSystem generate_complete_information(int agents, int states,
                                                int actions_per_agent, int props,
                                                std::uint64_t seed);

/// True when every agent's local-state set equals a common set, the
/// environment has a single state and a single action, and every reachable
/// state is diagonal.
bool is_complete_information(const InterpretedSystem& is);

/// A CTL⁻ structure that satisfies the totality constraint by construction:
/// the states of is^Act with the one-step relation of its transition
/// function, action atoms marking the recorded actions.
struct GeneratedCtlStructure {
  CtlStructure structure;
  std::vector<std::vector<std::string>> act_sets;
};

GeneratedCtlStructure make_action_recording_structure(const InterpretedSystem& is);

/// Small deterministic PRNG facade. Wraps a fixed 64-bit generator and maps
/// to ranges by modulo so that streams are reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next();
  /// Uniform-ish value in [0, n).
  int below(int n);
  bool chance(int num, int den);  // true with probability num/den

 private:
  std::uint64_t state_;
};

}  // namespace atlkd
