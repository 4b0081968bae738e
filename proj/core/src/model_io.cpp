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

#include "atlkd/model_io.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace atlkd {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& msg) { throw ModelFormatError(msg); }

const Json& field(const Json& doc, const char* key) {
  if (!doc.contains(key)) bad(std::string("missing key \"") + key + "\"");
  return doc.at(key);
}

std::vector<std::string> string_list(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be a list");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) bad(what + " must contain strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

// A state or action given as an object keyed by member name.
std::int32_t parse_tuple(const Json& j, const InterpretedSystem& is,
                         const TokenProduct& product, const std::string& what) {
  if (!j.is_object()) bad(what + " must be an object keyed by member");
  std::vector<int> comp(is.num_members(), -1);
  for (const auto& [key, value] : j.items()) {
    const auto idx = is.member_index(key);
    if (!idx) bad(what + ": unknown member \"" + key + "\"");
    if (!value.is_string()) bad(what + ": component must be a string");
    const auto t = product.token_index(*idx, value.get<std::string>());
    if (!t)
      bad(what + ": unknown token \"" + value.get<std::string>() +
          "\" for member \"" + key + "\"");
    comp[*idx] = *t;
  }
  for (std::size_t i = 0; i < comp.size(); ++i)
    if (comp[i] < 0) bad(what + ": missing component for member \"" +
                         is.member_name(i) + "\"");
  return product.encode(comp);
}

Json tuple_json(const InterpretedSystem& is, const TokenProduct& product,
                std::int32_t id) {
  Json out = Json::object();
  for (std::size_t i = 0; i < is.num_members(); ++i)
    out[is.member_name(i)] = product.token(i, product.component(id, i));
  return out;
}

void parse_explicit_transitions(const Json& list, InterpretedSystem& is) {
  for (const auto& entry : list) {
    if (!entry.is_object() || !entry.contains("from") ||
        !entry.contains("action") || !entry.contains("to"))
      bad("explicit transition entries need {from, action, to}");
    for (const auto& [key, _] : entry.items())
      if (key != "from" && key != "action" && key != "to")
        bad("unknown key \"" + key + "\" in transition entry");
    const StateId from = parse_tuple(entry.at("from"), is, is.states(), "from");
    const ActionId act =
        parse_tuple(entry.at("action"), is, is.actions(), "action");
    const StateId to = parse_tuple(entry.at("to"), is, is.states(), "to");
    is.set_transition(from, act, to);
  }
}

// Per-agent local tables: next own component as a function of (own state,
// environment state, joint action). The environment's entries use
// own_state == env_state.
void parse_local_transitions(const Json& list, InterpretedSystem& is) {
  struct LocalEntry {
    std::size_t member;
    int own, env, next;
    ActionId action;
  };
  std::vector<LocalEntry> entries;
  for (const auto& entry : list) {
    for (const auto& [key, _] : entry.items())
      if (key != "agent" && key != "own_state" && key != "env_state" &&
          key != "action_vector" && key != "next_own_state")
        bad("unknown key \"" + key + "\" in local transition entry");
    if (!entry.contains("agent")) bad("local transition entry missing agent");
    const std::string agent = entry.at("agent").get<std::string>();
    const auto member = is.member_index(agent);
    if (!member) bad("unknown agent \"" + agent + "\" in local table");
    const std::size_t env = is.num_members() - 1;
    const auto own =
        is.states().token_index(*member, field(entry, "own_state").get<std::string>());
    const auto envs =
        is.states().token_index(env, field(entry, "env_state").get<std::string>());
    const auto next = is.states().token_index(
        *member, field(entry, "next_own_state").get<std::string>());
    if (!own || !envs || !next) bad("unknown state token in local table");
    if (*member == env && *own != *envs)
      bad("environment entries must have own_state == env_state");
    const ActionId a =
        parse_tuple(field(entry, "action_vector"), is, is.actions(), "action_vector");
    entries.push_back({*member, *own, *envs, *next, a});
  }

  // Assemble the global table; every member's component must be covered for
  // every (state, action) pair.
  const std::size_t env = is.num_members() - 1;
  const std::size_t n = is.num_members();
  // lookup[(member, own, env, action)] -> next
  std::map<std::tuple<std::size_t, int, int, ActionId>, int> lookup;
  for (const auto& e : entries) {
    const auto key = std::make_tuple(e.member, e.own, e.env, e.action);
    const auto it = lookup.find(key);
    if (it != lookup.end() && it->second != e.next)
      bad("conflicting local table entries for member " +
          is.member_name(e.member));
    lookup[key] = e.next;
  }
  for (StateId s = 0; s < static_cast<StateId>(is.num_states()); ++s) {
    for (ActionId a = 0; a < static_cast<ActionId>(is.num_joint_actions()); ++a) {
      std::vector<int> comp(n);
      bool complete = true;
      for (std::size_t i = 0; i < n && complete; ++i) {
        const auto it = lookup.find(std::make_tuple(
            i, is.states().component(s, i), is.states().component(s, env), a));
        if (it == lookup.end()) {
          complete = false;  // left to validate() as a totality violation
        } else {
          comp[i] = it->second;
        }
      }
      if (complete) is.set_transition(s, a, is.states().encode(comp));
    }
  }
}

}  // namespace

InterpretedSystem parse_model(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("document must be a JSON object");
  static const std::vector<std::string> known = {
      "agents", "local_states", "actions", "initial", "transitions", "valuation"};
  for (const auto& [key, _] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      bad("unknown key \"" + key + "\"");

  std::vector<std::string> members =
      string_list(field(doc, "agents"), "agents");
  if (std::find(members.begin(), members.end(), kEnvironmentAgent) !=
      members.end())
    bad("\"e\" is implicit and must not be listed in agents");
  members.push_back(kEnvironmentAgent);

  const auto per_member_sets = [&members](const Json& j, const std::string& what) {
    if (!j.is_object()) bad(what + " must map members to token lists");
    std::vector<std::vector<std::string>> out;
    std::set<std::string> seen;
    for (const auto& m : members) {
      if (!j.contains(m)) bad(what + ": missing member \"" + m + "\"");
      out.push_back(string_list(j.at(m), what + " of " + m));
      seen.insert(m);
    }
    for (const auto& [key, _] : j.items())
      if (!seen.count(key)) bad(what + ": unknown member \"" + key + "\"");
    return out;
  };

  InterpretedSystem is(members,
                       per_member_sets(field(doc, "local_states"), "local_states"),
                       per_member_sets(field(doc, "actions"), "actions"));

  for (const auto& st : field(doc, "initial"))
    is.add_initial(parse_tuple(st, is, is.states(), "initial state"));

  const Json& transitions = field(doc, "transitions");
  if (!transitions.is_array()) bad("transitions must be a list");
  if (!transitions.empty() && transitions.front().contains("agent"))
    parse_local_transitions(transitions, is);
  else
    parse_explicit_transitions(transitions, is);

  const Json& valuation = field(doc, "valuation");
  if (!valuation.is_object()) bad("valuation must map props to state lists");
  for (const auto& [prop, states] : valuation.items()) {
    is.declare_prop(prop);
    if (!states.is_array()) bad("valuation of \"" + prop + "\" must be a list");
    for (const auto& st : states)
      is.set_prop(prop, parse_tuple(st, is, is.states(), "valuation state"), true);
  }
  return is;
}

std::string serialize_model(const InterpretedSystem& is) {
  Json doc = Json::object();
  Json agents = Json::array();
  for (std::size_t i = 0; i + 1 < is.num_members(); ++i)
    agents.push_back(is.member_name(i));
  doc["agents"] = agents;

  Json locals = Json::object();
  Json actions = Json::object();
  for (std::size_t i = 0; i < is.num_members(); ++i) {
    locals[is.member_name(i)] = is.states().set(i);
    actions[is.member_name(i)] = is.actions().set(i);
  }
  doc["local_states"] = locals;
  doc["actions"] = actions;

  Json initial = Json::array();
  for (StateId s : is.initial()) initial.push_back(tuple_json(is, is.states(), s));
  doc["initial"] = initial;

  Json transitions = Json::array();
  for (StateId s = 0; s < static_cast<StateId>(is.num_states()); ++s) {
    for (ActionId a = 0; a < static_cast<ActionId>(is.num_joint_actions()); ++a) {
      if (!is.has_transition(s, a)) continue;
      Json entry = Json::object();
      entry["from"] = tuple_json(is, is.states(), s);
      entry["action"] = tuple_json(is, is.actions(), a);
      entry["to"] = tuple_json(is, is.states(), is.successor(s, a));
      transitions.push_back(std::move(entry));
    }
  }
  doc["transitions"] = transitions;

  Json valuation = Json::object();
  for (const auto& prop : is.props()) {
    Json states = Json::array();
    for (StateId s = 0; s < static_cast<StateId>(is.num_states()); ++s)
      if (is.prop_holds(prop, s)) states.push_back(tuple_json(is, is.states(), s));
    valuation[prop] = states;
  }
  doc["valuation"] = valuation;
  return doc.dump(2) + "\n";
}

std::uint64_t Rng::next() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int Rng::below(int n) {
  if (n <= 0) throw std::invalid_argument("Rng::below needs n >= 1");
  return static_cast<int>(next() % static_cast<std::uint64_t>(n));
}

bool Rng::chance(int num, int den) { return below(den) < num; }

InterpretedSystem generate_random_shaped(
    const std::vector<int>& states_per_member,
    const std::vector<int>& actions_per_member, int props, std::uint64_t seed) {
  const std::size_t n = states_per_member.size();
  if (n < 2 || actions_per_member.size() != n)
    throw std::invalid_argument("need at least one agent plus the environment");
  for (std::size_t i = 0; i < n; ++i)
    if (states_per_member[i] < 1 || actions_per_member[i] < 1)
      throw std::invalid_argument("generator bounds must be >= 1");
  if (props < 0) throw std::invalid_argument("props must be >= 0");

  std::vector<std::string> members;
  std::vector<std::vector<std::string>> locals(n);
  std::vector<std::vector<std::string>> actions(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string name =
        (i + 1 == n) ? kEnvironmentAgent : std::to_string(i + 1);
    members.push_back(name);
    for (int k = 0; k < states_per_member[i]; ++k)
      locals[i].push_back("q" + name + "_" + std::to_string(k));
    for (int k = 0; k < actions_per_member[i]; ++k)
      actions[i].push_back("a" + name + "_" + std::to_string(k));
  }

  InterpretedSystem is(members, locals, actions);
  Rng rng(seed);

  // Per-member local next-state tables over (own, env, joint action) keep
  // the transition function local by construction.
  const std::size_t env = n - 1;
  const std::size_t na = is.num_joint_actions();
  std::vector<std::vector<int>> local_next(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t own_count = is.states().set(i).size();
    const std::size_t env_count = is.states().set(env).size();
    local_next[i].resize(own_count * env_count * na);
    for (auto& v : local_next[i]) v = rng.below(static_cast<int>(own_count));
  }
  for (StateId s = 0; s < static_cast<StateId>(is.num_states()); ++s) {
    for (ActionId a = 0; a < static_cast<ActionId>(na); ++a) {
      std::vector<int> comp(n);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t env_count = is.states().set(env).size();
        const std::size_t idx =
            (static_cast<std::size_t>(is.states().component(s, i)) * env_count +
             is.states().component(s, env)) * na + a;
        comp[i] = local_next[i][idx];
      }
      is.set_transition(s, a, is.states().encode(comp));
    }
  }

  const int initial_count = 1 + rng.below(2);
  for (int k = 0; k < initial_count; ++k)
    is.add_initial(rng.below(static_cast<int>(is.num_states())));

  for (int p = 0; p < props; ++p) {
    const std::string name = "p" + std::to_string(p);
    is.declare_prop(name);
    for (StateId s = 0; s < static_cast<StateId>(is.num_states()); ++s)
      is.set_prop(name, s, rng.chance(1, 2));
  }
  return is;
}

InterpretedSystem generate_random(int agents, int states_per_agent,
                                  int actions_per_agent, int props,
                                  std::uint64_t seed) {
  if (agents < 1) throw std::invalid_argument("need at least one agent");
  std::vector<int> states(agents + 1, states_per_agent);
  std::vector<int> actions(agents + 1, actions_per_agent);
  return generate_random_shaped(states, actions, props, seed);
}

InterpretedSystem generate_complete_information(int agents, int states,
                                                int actions_per_agent, int props,
                                                std::uint64_t seed) {
  if (agents < 1 || states < 1 || actions_per_agent < 1)
    throw std::invalid_argument("generator bounds must be >= 1");
  const std::size_t n = static_cast<std::size_t>(agents) + 1;
  std::vector<std::string> members;
  std::vector<std::vector<std::string>> locals(n);
  std::vector<std::vector<std::string>> actions(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool env = i + 1 == n;
    members.push_back(env ? kEnvironmentAgent : std::to_string(i + 1));
    if (env) {
      locals[i] = {"c_env"};
      actions[i] = {"a_env"};
    } else {
      for (int k = 0; k < states; ++k) locals[i].push_back("c" + std::to_string(k));
      for (int k = 0; k < actions_per_agent; ++k)
        actions[i].push_back("a" + members[i] + "_" + std::to_string(k));
    }
  }
  InterpretedSystem is(members, locals, actions);
  Rng rng(seed);

  // The common next-state table keyed by (shared state, joint action) is the
  // same for every agent, which keeps reachable states diagonal and the
  // transition local.
  const std::size_t na = is.num_joint_actions();
  std::vector<int> common(static_cast<std::size_t>(states) * na);
  for (auto& v : common) v = rng.below(states);
  for (StateId s = 0; s < static_cast<StateId>(is.num_states()); ++s) {
    for (ActionId a = 0; a < static_cast<ActionId>(na); ++a) {
      std::vector<int> comp(n);
      for (std::size_t i = 0; i + 1 < n; ++i)
        comp[i] = common[static_cast<std::size_t>(is.states().component(s, i)) *
                             na + a];
      comp[n - 1] = 0;
      is.set_transition(s, a, is.states().encode(comp));
    }
  }
  const int init = rng.below(states);
  std::vector<int> comp(n, init);
  comp[n - 1] = 0;
  is.add_initial(is.states().encode(comp));

  for (int p = 0; p < props; ++p) {
    const std::string name = "p" + std::to_string(p);
    is.declare_prop(name);
    for (StateId s = 0; s < static_cast<StateId>(is.num_states()); ++s)
      is.set_prop(name, s, rng.chance(1, 2));
  }
  return is;
}

bool is_complete_information(const InterpretedSystem& is) {
  const std::size_t n = is.num_members();
  const std::size_t env = n - 1;
  if (is.states().set(env).size() != 1 || is.actions().set(env).size() != 1)
    return false;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (is.states().set(i) != is.states().set(0)) return false;

  // Diagonal reachability check by BFS over states.
  std::set<StateId> seen(is.initial().begin(), is.initial().end());
  std::vector<StateId> queue(is.initial().begin(), is.initial().end());
  while (!queue.empty()) {
    const StateId s = queue.back();
    queue.pop_back();
    for (std::size_t i = 1; i + 1 < n; ++i)
      if (is.states().component(s, i) != is.states().component(s, 0))
        return false;
    for (ActionId a = 0; a < static_cast<ActionId>(is.num_joint_actions()); ++a) {
      if (!is.has_transition(s, a)) return false;
      const StateId t = is.successor(s, a);
      if (seen.insert(t).second) queue.push_back(t);
    }
  }
  return true;
}

GeneratedCtlStructure make_action_recording_structure(const InterpretedSystem& is) {
  const ActionRecordingSystem act = build_is_act(is);
  const InterpretedSystem& sys = act.system;

  std::vector<std::vector<std::string>> locals;
  for (std::size_t i = 0; i < sys.num_members(); ++i)
    locals.push_back(sys.states().set(i));
  CtlStructure m(sys.members(), locals);
  for (StateId s : sys.initial()) m.add_initial(s);
  for (StateId s = 0; s < static_cast<StateId>(sys.num_states()); ++s)
    for (ActionId a = 0; a < static_cast<ActionId>(sys.num_joint_actions()); ++a)
      m.add_edge(s, sys.successor(s, a));
  for (const auto& prop : sys.props())
    for (StateId s = 0; s < static_cast<StateId>(sys.num_states()); ++s)
      if (sys.prop_holds(prop, s)) m.set_prop(prop, s, true);
  return {std::move(m), act.action_atoms};
}

}  // namespace atlkd
