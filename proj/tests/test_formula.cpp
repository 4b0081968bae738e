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

#include "atlkd/formula.hpp"
#include "atlkd/parser.hpp"
#include "atlkd/printer.hpp"
#include "test_support.hpp"

using namespace atlkd;

namespace {
const Coalition g1({"1"});
const Coalition g12({"1", "2"});
const Formula u = Formula::atom("u");
const Formula v = Formula::atom("v");
const Formula p = Formula::atom("p");
const Formula q = Formula::atom("q");
}  // namespace

TEST_CASE("derived operators expand exactly per the abbreviation table") {
  CHECK(Formula::verum() == Formula::implies(Formula::falsum(), Formula::falsum()));
  CHECK(Formula::negation(p) == Formula::implies(p, Formula::falsum()));
  CHECK(Formula::conjunction(p, q) ==
        Formula::negation(Formula::implies(p, Formula::negation(q))));
  CHECK(Formula::disjunction(p, q) ==
        Formula::implies(Formula::negation(p), q));
  CHECK(Formula::equivalence(p, q) ==
        Formula::conjunction(Formula::implies(p, q), Formula::implies(q, p)));
  CHECK(Formula::poss(g1, p) ==
        Formula::negation(Formula::dknows(g1, Formula::negation(p))));

  // <<Γ>>◇φ ⇌ <<Γ>>(⊤ U φ) and [[Γ]]◇φ ⇌ [[Γ]](⊤ U φ)
  CHECK(Formula::coop_eventually(g1, p) ==
        Formula::coop_until(g1, Formula::verum(), p));
  CHECK(Formula::dual_coop_eventually(g1, p) ==
        Formula::dual_coop_until(g1, Formula::verum(), p));
  // <<Γ>>□φ ⇌ ¬[[Γ]]◇¬φ and [[Γ]]□φ ⇌ ¬<<Γ>>◇¬φ
  CHECK(Formula::coop_globally(g1, p) ==
        Formula::negation(Formula::dual_coop_eventually(g1, Formula::negation(p))));
  CHECK(Formula::dual_coop_globally(g1, p) ==
        Formula::negation(Formula::coop_eventually(g1, Formula::negation(p))));
  // <<Γ>>(φWψ) ⇌ ¬[[Γ]](¬ψ U ¬ψ∧¬φ) and the dual
  {
    const Formula nq = Formula::negation(q);
    CHECK(Formula::coop_weak_until(g1, p, q) ==
          Formula::negation(Formula::dual_coop_until(
              g1, nq, Formula::conjunction(nq, Formula::negation(p)))));
    CHECK(Formula::dual_coop_weak_until(g1, p, q) ==
          Formula::negation(Formula::coop_until(
              g1, nq, Formula::conjunction(nq, Formula::negation(p)))));
  }
  CHECK(Formula::forall_next(p) ==
        Formula::negation(Formula::exists_next(Formula::negation(p))));
  CHECK(Formula::exists_eventually(p) ==
        Formula::exists_until(Formula::verum(), p));
  CHECK(Formula::forall_globally(p) ==
        Formula::negation(Formula::exists_eventually(Formula::negation(p))));
  CHECK(Formula::exists_globally(p) ==
        Formula::negation(Formula::forall_eventually(Formula::negation(p))));
}

TEST_CASE("parsing the base cases") {
  CHECK(parse_formula("false") == Formula::falsum());
  CHECK(parse_formula("true") == Formula::verum());
  CHECK(parse_formula("<<1>> (K{1} u U K{1} v)") ==
        Formula::coop_until(g1, Formula::dknows(g1, u), Formula::dknows(g1, v)));
  // <<Γ>>F expands through ⊤ U ·, with ⊤ = false -> false
  CHECK(parse_formula("<<1>> F K{1} u") ==
        Formula::coop_until(g1, Formula::verum(), Formula::dknows(g1, u)));
  CHECK(parse_formula("[[1,2]] X p") == Formula::dual_coop_next(g12, p));
  CHECK(parse_formula("E X p") == Formula::exists_next(p));
  CHECK(parse_formula("A (p U q)") == Formula::forall_until(p, q));
  CHECK(parse_formula("K{} p") == Formula::dknows(Coalition(), p));
  CHECK(parse_formula("<<>> X p") == Formula::coop_next(Coalition(), p));
  CHECK(parse_formula("[[ ]] X p") == Formula::dual_coop_next(Coalition(), p));
}

TEST_CASE("parse errors carry position and expectations") {
  CHECK_THROWS_AS(parse_formula("p &"), ParseError);
  try {
    parse_formula("p &");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 4);
    CHECK(!e.expected().empty());
  }
  // the environment may not be a coalition member
  CHECK_THROWS_AS(parse_formula("K{e} p"), ParseError);
  CHECK_THROWS_AS(parse_formula("<<1,e>> X p"), ParseError);
  CHECK_THROWS_AS(parse_formula("<<1>> p"), ParseError);
  CHECK_THROWS_AS(parse_formula("E (p)"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  try {
    parse_formula("q |\n& r", 10);
  } catch (const ParseError& e) {
    CHECK(e.line() == 11);
  }
}

TEST_CASE("rendering follows the precedence conventions") {
  CHECK(render(parse_formula("p -> q & r")) == "p -> q & r");
  CHECK(render(Formula::coop_next(g12, p)) == "<<1,2>> X p");
  CHECK(render(parse_formula("!K{} p")) == "!K{} p");
  CHECK(render(parse_formula("(p & q) | r")) == "p & q | r");
  CHECK(render(parse_formula("p & (q | r)")) == "p & (q | r)");
  CHECK(render(parse_formula("p -> q -> r")) == "p -> q -> r");
  CHECK(render(parse_formula("(p -> q) -> r")) == "(p -> q) -> r");
  CHECK(render(parse_formula("<<2,1,2>> X p")) == "<<1,2>> X p");
  CHECK(render(parse_formula("<<1>> (true U v)")) == "<<1>> F v");
  CHECK(render(parse_formula("P{1,2} p & q")) == "P{1,2} p & q");
  CHECK(render(parse_formula("K{10,2} p")) == "K{2,10} p");
}

TEST_CASE("substitution replaces atom occurrences") {
  // [α/p](p ∧ K{}p) = α ∧ K{}α
  const Formula alpha = Formula::coop_next(g1, q);
  const Formula beta = Formula::conjunction(p, Formula::dknows(Coalition(), p));
  CHECK(substitute(beta, "p", alpha) ==
        Formula::conjunction(alpha, Formula::dknows(Coalition(), alpha)));
  CHECK(substitute(q, "p", Formula::atom("r")) == q);
  CHECK(substitute(p, "p", p) == p);
}

TEST_CASE("substitution is the identity without occurrences") {
  Rng rng(404);
  for (int i = 0; i < 200; ++i) {
    const Formula f = testing::random_any_formula(rng, 3);
    if (props_of(f).count("zz") == 0)
      CHECK(substitute(f, "zz", Formula::falsum()) == f);
  }
}

TEST_CASE("classification of the fragments") {
  CHECK(classify(parse_formula("K{} A (p U q)")) == Fragment::CtlD);
  CHECK(classify(parse_formula("<<1>> (K{1} u U K{1} v)")) ==
        Fragment::AtlkpSubset);
  CHECK(classify(parse_formula("<<1>> (u U v)")) == Fragment::AtlkpFull);
  CHECK(classify(parse_formula("<<1>> X E X p")) == Fragment::Mixed);
  CHECK(classify(parse_formula("p -> q")) == Fragment::CtlD);
  CHECK(classify(parse_formula("<<1>> X K{2} p")) == Fragment::AtlkpSubset);
  // K-guards must carry the modality's own coalition
  CHECK(classify(parse_formula("<<1>> (K{1} u U K{1,2} v)")) ==
        Fragment::AtlkpFull);
  CHECK(classify(parse_formula("[[1]] (u U v)")) == Fragment::AtlkpFull);
  // weak-until sugar for a coalition expands through the dual modality
  CHECK(classify(parse_formula("<<1>> (u W v)")) == Fragment::AtlkpFull);
}

TEST_CASE("props and coalitions of a formula") {
  CHECK(props_of(parse_formula("p -> K{1} q")) ==
        std::set<std::string>{"p", "q"});
  CHECK(coalitions_of(parse_formula("K{} p")) ==
        std::set<Coalition>{Coalition()});
  CHECK(props_of(Formula::falsum()).empty());
  CHECK(coalitions_of(parse_formula("<<1>> X K{1,2} p")) ==
        std::set<Coalition>({g1, g12}));
}

TEST_CASE("coalition invariants") {
  CHECK_THROWS_AS(Coalition({"e"}), std::invalid_argument);
  CHECK(Coalition({"2", "1", "2"}).members() ==
        std::vector<AgentId>({"1", "2"}));
  CHECK(Coalition({"10", "9"}).to_string() == "9,10");
  CHECK(Coalition({"1"}).is_subset_of(g12));
  CHECK(!g12.is_subset_of(g1));
}

TEST_CASE("round-trip: parse after render is the identity on ASTs") {
  Rng rng(2026);
  for (int i = 0; i < 500; ++i) {
    const Formula f = testing::random_any_formula(rng, 4);
    const std::string s = render(f);
    CAPTURE(s);
    const Formula g = parse_formula(s);
    CHECK(g == f);
    // and rendered strings are canonical fixed points
    CHECK(render(g) == s);
  }
}

TEST_CASE("classification is stable under render/parse") {
  Rng rng(77);
  for (int i = 0; i < 200; ++i) {
    const Formula f = testing::random_any_formula(rng, 3);
    CHECK(classify(parse_formula(render(f))) == classify(f));
  }
}
