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

// Command-line front end: translate / check / classify / verify / gen /
// roundtrip. Exit codes: 0 success or True, 1 False, 2 Unknown, 3 usage
// error, 4 input error. Results go to stdout, diagnostics to stderr.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "atlkd/model_io.hpp"
#include "atlkd/oracle.hpp"
#include "atlkd/parser.hpp"
#include "atlkd/printer.hpp"
#include "atlkd/system.hpp"
#include "atlkd/translator.hpp"
#include "atlkd/verify.hpp"

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 3;
constexpr int kExitInput = 4;

using Json = nlohmann::ordered_json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

struct FormulaLine {
  atlkd::Formula formula;
  int line;
  std::string text;
};

std::vector<FormulaLine> read_formulas(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<FormulaLine> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back({atlkd::parse_formula(line, lineno), lineno, line});
  }
  if (out.empty()) throw InputError("no formula found in " + path);
  return out;
}

atlkd::Formula read_single_formula(const std::string& path) {
  const auto lines = read_formulas(path);
  if (lines.size() != 1)
    throw InputError(path + " holds " + std::to_string(lines.size()) +
                     " formulas; this command takes exactly one");
  return lines.front().formula;
}

atlkd::InterpretedSystem read_model(const std::string& path) {
  return atlkd::parse_model(read_file(path));
}

int verdict_exit(atlkd::Verdict v) {
  switch (v) {
    case atlkd::Verdict::True: return kExitTrue;
    case atlkd::Verdict::False: return kExitFalse;
    case atlkd::Verdict::Unknown: return kExitUnknown;
  }
  return kExitInput;
}

int cmd_translate(const std::string& in, const std::string& out,
                  const std::string& mode_name, const std::string& dict,
                  bool trace, bool json) {
  const atlkd::Formula f = read_single_formula(in);
  const atlkd::TranslationMode mode = mode_name == "complete"
                                          ? atlkd::TranslationMode::Complete
                                          : atlkd::TranslationMode::Incomplete;
  atlkd::TraceFn trace_fn;
  if (trace) {
    trace_fn = [](const atlkd::TraceEvent& e) {
      std::cerr << "[" << e.phase << "]";
      if (e.target) std::cerr << " target: " << atlkd::render(*e.target);
      if (!e.fresh_atoms.empty()) {
        std::cerr << " fresh:";
        for (const auto& a : e.fresh_atoms) std::cerr << " " << a;
      }
      std::cerr << "\n";
      for (const auto& c : e.emitted)
        std::cerr << "  emit: " << atlkd::render(c) << "\n";
    };
  }
  const atlkd::TranslationResult result = atlkd::translate(f, mode, trace_fn);
  const std::string rendered = atlkd::render(result.formula) + "\n";
  if (!out.empty())
    write_file(out, rendered);
  if (!dict.empty()) write_file(dict, atlkd::serialize_dictionary(result));

  if (json) {
    Json doc;
    doc["command"] = "translate";
    doc["mode"] = mode_name;
    doc["fragment"] = atlkd::fragment_name(atlkd::classify(result.formula));
    doc["formula"] = atlkd::render(result.formula);
    doc["constraints"] = result.constraints.size();
    doc["fresh_atoms"] = result.dictionary.size();
    doc["guarantee"] = result.guarantee;
    std::cout << doc.dump(2) << "\n";
  } else if (out.empty()) {
    std::cout << rendered;
  } else {
    std::cout << "wrote " << out << " (" << result.dictionary.size()
              << " fresh atoms, " << result.constraints.size()
              << " constraints)\n";
  }
  return kExitTrue;
}

int cmd_check(const std::string& model_path, const std::string& formula_path,
              int horizon, std::optional<int> run_index, bool json) {
  const atlkd::InterpretedSystem is = read_model(model_path);
  const auto violations = atlkd::validate(is);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "model fails validation:";
    for (const auto& v : violations) os << "\n  " << v.detail;
    throw InputError(os.str());
  }
  const atlkd::Formula f = read_single_formula(formula_path);

  atlkd::RunTree tree(is, horizon);
  atlkd::Evaluator ev(tree);
  std::vector<atlkd::Verdict> verdicts;
  for (int n = tree.level_begin(0); n < tree.level_end(0); ++n)
    verdicts.push_back(ev.eval(n, f));
  const atlkd::Verdict aggregate = ev.sat_at_initial(f);

  atlkd::Verdict decisive = aggregate;
  if (run_index) {
    if (*run_index < 0 || *run_index >= static_cast<int>(verdicts.size()))
      throw InputError("--run index out of range (0.." +
                       std::to_string(verdicts.size() - 1) + ")");
    decisive = verdicts[*run_index];
  }

  if (json) {
    Json doc;
    doc["command"] = "check";
    doc["horizon"] = horizon;
    Json per_run = Json::array();
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
      Json entry;
      entry["run"] = i;
      entry["state"] = is.states().to_string(is.initial()[i]);
      entry["verdict"] = atlkd::verdict_name(verdicts[i]);
      per_run.push_back(std::move(entry));
    }
    doc["initial_runs"] = per_run;
    doc["aggregate"] = atlkd::verdict_name(aggregate);
    doc["exit"] = verdict_exit(decisive);
    std::cout << doc.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < verdicts.size(); ++i)
      std::cout << "run " << i << " " << is.states().to_string(is.initial()[i])
                << ": " << atlkd::verdict_name(verdicts[i]) << "\n";
    std::cout << "sat_at_initial: " << atlkd::verdict_name(aggregate) << "\n";
  }
  return verdict_exit(decisive);
}

int cmd_classify(const std::string& in, bool json) {
  const atlkd::Formula f = read_single_formula(in);
  const std::string name = atlkd::fragment_name(atlkd::classify(f));
  if (json) {
    Json doc;
    doc["command"] = "classify";
    doc["fragment"] = name;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << name << "\n";
  }
  return kExitTrue;
}

int cmd_roundtrip(const std::string& in, bool json) {
  const auto lines = read_formulas(in);
  long long failures = 0;
  Json results = Json::array();
  for (const auto& entry : lines) {
    const std::string rendered = atlkd::render(entry.formula);
    const atlkd::Formula reparsed = atlkd::parse_formula(rendered);
    const bool ok =
        reparsed == entry.formula && atlkd::render(reparsed) == rendered;
    if (!ok) ++failures;
    if (json) {
      Json r;
      r["line"] = entry.line;
      r["rendered"] = rendered;
      r["ok"] = ok;
      results.push_back(std::move(r));
    } else if (!ok) {
      std::cout << "line " << entry.line << ": MISMATCH: " << rendered << "\n";
    }
  }
  if (json) {
    Json doc;
    doc["command"] = "roundtrip";
    doc["formulas"] = lines.size();
    doc["failures"] = failures;
    doc["results"] = results;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << lines.size() << " formulas, " << failures << " failures\n";
  }
  return failures == 0 ? kExitTrue : kExitFalse;
}

int cmd_gen(int agents, int states, int actions, int props, std::uint64_t seed,
            const std::string& out, bool json) {
  const atlkd::InterpretedSystem is =
      atlkd::generate_random(agents, states, actions, props, seed);
  const std::string doc = atlkd::serialize_model(is);
  if (out.empty())
    std::cout << doc;
  else
    write_file(out, doc);
  if (json) {
    Json meta;
    meta["command"] = "gen";
    meta["states"] = is.num_states();
    meta["joint_actions"] = is.num_joint_actions();
    meta["out"] = out;
    std::cout << meta.dump(2) << "\n";
  } else if (!out.empty()) {
    std::cout << "wrote " << out << " (" << is.num_states() << " states, "
              << is.num_joint_actions() << " joint actions)\n";
  }
  return kExitTrue;
}

int cmd_verify(const std::string& model_path, std::optional<std::uint64_t> seed,
               const std::string& property, int count, int horizon, int jobs,
               bool json) {
  atlkd::SuiteOptions options;
  options.seed = seed.value_or(1);
  options.count = count;
  options.horizon = horizon;
  options.jobs = jobs;

  atlkd::PropertyReport report;
  if (!model_path.empty()) {
    const atlkd::InterpretedSystem is = read_model(model_path);
    const auto violations = atlkd::validate(is);
    if (!violations.empty())
      throw InputError("model fails validation: " + violations.front().detail);
    report = atlkd::run_property_on_system(property, is, options);
  } else {
    report = atlkd::run_property_suite(property, options);
  }

  if (json) {
    Json doc;
    doc["command"] = "verify";
    doc["property"] = report.property;
    doc["passed"] = report.passed;
    doc["systems"] = report.systems;
    doc["checks"] = report.checks;
    doc["disagreements"] = report.disagreements;
    doc["unknown_pairs"] = report.unknown_pairs;
    doc["skipped"] = report.skipped;
    doc["instances"] = report.instances;
    doc["counterexamples"] = report.counterexamples;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << report.summary() << "\n";
    for (const auto& c : report.counterexamples)
      std::cout << "  counterexample: " << c << "\n";
  }
  return report.passed ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atlkd — epistemic ATL toolkit: satisfiability-preserving "
               "translation to CTL with distributed knowledge, plus a "
               "bounded-horizon semantic oracle"};
  app.require_subcommand(1);

  bool json = false;
  const auto add_json_flag = [&json](CLI::App* sub) {
    sub->add_flag("--json", json, "emit one machine-readable JSON document");
  };

  auto* translate = app.add_subcommand("translate",
                                       "rewrite a subset formula into CTL+D");
  std::string t_in, t_out, t_dict, t_mode = "incomplete";
  bool t_trace = false;
  translate->add_option("--in", t_in, "formula file")->required();
  translate->add_option("--out", t_out, "output formula file (default stdout)");
  translate->add_option("--mode", t_mode, "incomplete|complete")
      ->check(CLI::IsMember({"incomplete", "complete"}));
  translate->add_option("--dict", t_dict, "atom dictionary sidecar file");
  translate->add_flag("--trace", t_trace, "stream rewrite steps to stderr");
  add_json_flag(translate);

  auto* check = app.add_subcommand("check", "evaluate a formula on a model");
  std::string c_model, c_formula;
  int c_horizon = 3;
  std::optional<int> c_run;
  check->add_option("--model", c_model, "model document")->required();
  check->add_option("--formula", c_formula, "formula file")->required();
  check->add_option("--horizon", c_horizon, "run-length bound (default 3)");
  check->add_option("--run", c_run, "restrict the exit code to one initial run");
  add_json_flag(check);

  auto* classify_cmd = app.add_subcommand("classify", "print the fragment");
  std::string y_in;
  classify_cmd->add_option("--in", y_in, "formula file")->required();
  add_json_flag(classify_cmd);

  auto* verify = app.add_subcommand("verify", "run a property suite");
  std::string v_model, v_property;
  std::optional<std::uint64_t> v_seed;
  int v_count = 25, v_horizon = 3, v_jobs = 1;
  verify->add_option("--model", v_model, "run the suite on one model");
  verify->add_option("--gen-seed", v_seed, "seed for generated systems");
  verify->add_option("--property", v_property,
                     "purity|keyobs|emptycoalition|fixpoint|prop1|prop3|"
                     "extraction")
      ->required()
      ->check(CLI::IsMember(atlkd::property_names()));
  verify->add_option("--count", v_count, "number of generated systems");
  verify->add_option("--horizon", v_horizon, "run-length bound (default 3)");
  verify->add_option("--jobs", v_jobs, "parallel workers over systems");
  add_json_flag(verify);

  auto* gen = app.add_subcommand("gen", "generate a random valid model");
  int g_agents = 2, g_states = 2, g_actions = 2, g_props = 2;
  std::uint64_t g_seed = 1;
  std::string g_out;
  gen->add_option("--agents", g_agents)->check(CLI::PositiveNumber);
  gen->add_option("--states", g_states)->check(CLI::PositiveNumber);
  gen->add_option("--actions", g_actions)->check(CLI::PositiveNumber);
  gen->add_option("--props", g_props)->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", g_seed);
  gen->add_option("--out", g_out, "output file (default stdout)");
  add_json_flag(gen);

  auto* roundtrip = app.add_subcommand("roundtrip",
                                       "assert parse/render identity per line");
  std::string r_in;
  roundtrip->add_option("--in", r_in, "formula file")->required();
  add_json_flag(roundtrip);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*translate)
      return cmd_translate(t_in, t_out, t_mode, t_dict, t_trace, json);
    if (*check) return cmd_check(c_model, c_formula, c_horizon, c_run, json);
    if (*classify_cmd) return cmd_classify(y_in, json);
    if (*verify)
      return cmd_verify(v_model, v_seed, v_property, v_count, v_horizon, v_jobs,
                        json);
    if (*gen)
      return cmd_gen(g_agents, g_states, g_actions, g_props, g_seed, g_out, json);
    if (*roundtrip) return cmd_roundtrip(r_in, json);
  } catch (const atlkd::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
