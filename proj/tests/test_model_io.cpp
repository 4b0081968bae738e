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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "atlkd/model_io.hpp"
#include "test_support.hpp"

using namespace atlkd;

TEST_CASE("serialize then parse is the identity on canonical documents") {
  const InterpretedSystem is = generate_random(2, 2, 2, 2, 7);
  const std::string doc = serialize_model(is);
  const InterpretedSystem back = parse_model(doc);
  CHECK(serialize_model(back) == doc);
}

TEST_CASE("generated systems validate and are reproducible") {
  const InterpretedSystem a = generate_random(2, 2, 2, 2, 7);
  CHECK(validate(a).empty());
  const InterpretedSystem b = generate_random(2, 2, 2, 2, 7);
  CHECK(serialize_model(a) == serialize_model(b));
  const InterpretedSystem c = generate_random(2, 2, 2, 2, 8);
  CHECK(serialize_model(a) != serialize_model(c));
  CHECK(validate(generate_random(3, 2, 2, 1, 3)).empty());
  CHECK(validate(generate_complete_information(2, 3, 2, 2, 4)).empty());
}

TEST_CASE("documents with missing or unknown keys are rejected") {
  const std::string doc = serialize_model(testing::toy1());
  CHECK_THROWS_AS(parse_model("{\"agents\": [\"1\"]}"), ModelFormatError);
  CHECK_THROWS_AS(parse_model("not json"), ModelFormatError);
  CHECK_THROWS_AS(parse_model("{}"), ModelFormatError);

  // unknown top-level key
  std::string extra = doc;
  extra.insert(extra.find_last_of('}'), ", \"notes\": 1");
  CHECK_THROWS_AS(parse_model(extra), ModelFormatError);

  // unknown token in a tuple
  std::string bad = doc;
  const auto pos = bad.find("\"x0\"");
  bad.replace(pos, 4, "\"zz\"");
  CHECK_THROWS_AS(parse_model(bad), ModelFormatError);
}

TEST_CASE("a non-total explicit table surfaces as a validation gap") {
  auto doc = nlohmann::ordered_json::parse(serialize_model(testing::toy1()));
  doc["transitions"].erase(0);
  const InterpretedSystem is = parse_model(doc.dump(2));
  const auto vs = validate(is);
  CHECK(!vs.empty());
  CHECK(vs.front().kind == Violation::Kind::Totality);
}

TEST_CASE("per-agent local tables assemble the global transition function") {
  const char* doc = R"({
    "agents": ["1"],
    "local_states": {"1": ["x0", "x1"], "e": ["e0"]},
    "actions": {"1": ["a", "b"], "e": ["d"]},
    "initial": [{"1": "x0", "e": "e0"}],
    "transitions": [
      {"agent": "1", "own_state": "x0", "env_state": "e0",
       "action_vector": {"1": "a", "e": "d"}, "next_own_state": "x1"},
      {"agent": "1", "own_state": "x0", "env_state": "e0",
       "action_vector": {"1": "b", "e": "d"}, "next_own_state": "x0"},
      {"agent": "1", "own_state": "x1", "env_state": "e0",
       "action_vector": {"1": "a", "e": "d"}, "next_own_state": "x1"},
      {"agent": "1", "own_state": "x1", "env_state": "e0",
       "action_vector": {"1": "b", "e": "d"}, "next_own_state": "x1"},
      {"agent": "e", "own_state": "e0", "env_state": "e0",
       "action_vector": {"1": "a", "e": "d"}, "next_own_state": "e0"},
      {"agent": "e", "own_state": "e0", "env_state": "e0",
       "action_vector": {"1": "b", "e": "d"}, "next_own_state": "e0"}
    ],
    "valuation": {"p": [{"1": "x1", "e": "e0"}]}
  })";
  const InterpretedSystem is = parse_model(doc);
  CHECK(validate(is).empty());
  const StateId x0 = is.states().encode({0, 0});
  const StateId x1 = is.states().encode({1, 0});
  CHECK(is.successor(x0, is.actions().encode({0, 0})) == x1);
  CHECK(is.successor(x0, is.actions().encode({1, 0})) == x0);
  CHECK(is.prop_holds("p", x1));
  CHECK(!is.prop_holds("p", x0));
}

TEST_CASE("generator bounds are enforced") {
  CHECK_THROWS_AS(generate_random(0, 2, 2, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_random(2, 0, 2, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_random_shaped({2}, {2}, 1, 1),
                  std::invalid_argument);
}
