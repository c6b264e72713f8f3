// Copyright 2026 The colog Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// colog: command-line front end for the decider, the certificate checkers,
// the game engine and the session service.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "colog/decider.h"
#include "colog/http_server.h"
#include "colog/parser.h"
#include "colog/service.h"
#include "colog/strategies.h"
#include "colog/suites.h"

namespace colog {
namespace {

// Failure reported as {"error": ...} on stderr with the given exit code.
struct CliFailure {
  int code;
  std::string message;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliFailure{2, "cannot read " + path};
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Derivation ReadDerivationFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliFailure{2, "cannot read " + path};
  return ReadDerivation(in);
}

Valuation ParseAssignments(const std::vector<std::string>& items) {
  Valuation e;
  for (const std::string& item : items) {
    std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw CliFailure{2, "expected var=value, got \"" + item + "\""};
    }
    try {
      e[item.substr(0, eq)] = std::stoull(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw CliFailure{2, "bad value in \"" + item + "\""};
    }
  }
  return e;
}

Interpretation ReadInterpretation(const std::string& path) {
  return InterpretationFromJson(nlohmann::json::parse(ReadFile(path)));
}

std::vector<CorpusEntry> ReadCorpusDir(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw CliFailure{2, "no .txt corpus files in " + dir};
  std::vector<CorpusEntry> all;
  for (const auto& file : files) {
    std::ifstream in(file);
    for (CorpusEntry& e : ReadCorpus(in)) all.push_back(std::move(e));
  }
  return all;
}

int Prove(const std::string& text, const std::string& out_path) {
  Verdict v = Decide(Parse(text));
  std::cout << (v.provable ? "provable" : "unprovable") << "\n";
  std::string certificate = FormatDerivation(v.certificate);
  if (out_path.empty()) {
    std::cout << certificate;
  } else {
    std::ofstream out(out_path);
    out << certificate;
    if (!out) throw CliFailure{2, "cannot write " + out_path};
    std::cout << v.certificate.steps.size() << " steps written to "
              << out_path << "\n";
  }
  return 0;
}

int Check(const std::string& path, System system) {
  CheckResult r = CheckDerivation(ReadDerivationFile(path), system);
  std::cout << r.ToString() << "\n";
  if (r.status == CheckResult::Status::kStabilityUnverified) {
    std::cerr << nlohmann::json({{"warning", "stability left unverified"}})
                     .dump()
              << "\n";
  }
  return r.status == CheckResult::Status::kFailure ? 1 : 0;
}

int Oracle(const std::string& text, const std::string& interp_path,
           const std::vector<std::string>& vals) {
  GameState s = MakeState(Parse(text), ReadInterpretation(interp_path),
                          ParseAssignments(vals));
  std::cout << "winnable: " << (Winnable(s) ? "true" : "false") << "\n";
  return 0;
}

int Play(const std::string& text, const std::string& proof_path,
         const std::string& address, const std::string& human, Constant domain,
         const std::string& interp_path, const std::vector<std::string>& vals) {
  std::size_t colon = address.rfind(':');
  if (colon == std::string::npos) {
    throw CliFailure{2, "--serve expects host:port"};
  }
  std::string host = address.substr(0, colon);
  int port = std::stoi(address.substr(colon + 1));

  nlohmann::json body = {{"formula", text}, {"human_role", human}};
  if (!interp_path.empty()) {
    body["interpretation"] = nlohmann::json::parse(ReadFile(interp_path));
  } else {
    body["domain"] = domain;
  }
  body["valuation"] = ValuationToJson(ParseAssignments(vals));
  if (!proof_path.empty()) body["proof"] = ReadFile(proof_path);

  SessionService service(SessionService::DataDirFromEnvironment());
  ApiResponse created = service.Handle("POST", "/sessions", {}, body.dump());
  if (created.status != 201) {
    throw CliFailure{1, created.body.value("error", "cannot create session")};
  }
  httplib::Server server;
  MountSessionRoutes(server, service);
  if (!server.bind_to_port(host, port)) {
    throw CliFailure{1, "cannot bind " + address};
  }
  std::cout << nlohmann::json({{"id", created.body["id"]},
                               {"url", "http://" + address + "/sessions/" +
                                           created.body["id"].get<std::string>()}})
                   .dump()
            << std::endl;
  server.listen_after_bind();
  return 0;
}

int Match(const std::string& proof_path, const std::string& env,
          const std::string& interp_path, const std::vector<std::string>& vals,
          int max_steps) {
  auto proof = std::make_shared<const Proof>(ReadDerivationFile(proof_path));
  if (proof->steps.empty()) throw CliFailure{2, "empty proof"};
  Valuation valuation = ParseAssignments(vals);
  MachineLoop machine(proof, valuation);
  std::unique_ptr<ReactiveStrategy> environment;
  if (std::filesystem::is_regular_file(env)) {
    environment = std::make_unique<EnvironmentLoop>(
        std::make_shared<const Refutation>(ReadDerivationFile(env)));
  } else {
    std::vector<std::string> script;
    std::stringstream in(env);
    std::string move;
    while (std::getline(in, move, ',')) {
      if (!move.empty()) script.push_back(move);
    }
    environment =
        std::make_unique<ScriptedStrategy>(Player::kEnvironment, script);
  }
  GameState start = MakeState(proof->conclusion(),
                              ReadInterpretation(interp_path), valuation);
  MatchResult r = RunMatch(machine, *environment, start, max_steps);
  nlohmann::json out = {{"run", RunToJson(r.run)},
                        {"winner", PlayerName(r.winner)},
                        {"settled", r.settled},
                        {"position", Print(r.final_state.formula)}};
  out["illegal_at"] =
      r.illegal_at ? nlohmann::json(*r.illegal_at) : nlohmann::json();
  std::cout << out.dump(2) << "\n";
  return 0;
}

int Battery(const std::string& dir, int seeds, bool json) {
  std::vector<CorpusEntry> corpus = ReadCorpusDir(dir);
  CorpusReport verdicts = DecideCorpus(corpus);
  SoundnessReport soundness = SoundnessSuite(corpus);
  CompletenessReport completeness = CompletenessSuite(corpus, seeds);
  if (json) {
    std::cout << nlohmann::json({{"verdicts",
                                  {{"entries", verdicts.rows.size()},
                                   {"mismatches", verdicts.mismatches},
                                   {"errors", verdicts.errors},
                                   {"ok", verdicts.ok()}}},
                                 {"soundness", soundness.ToJson()},
                                 {"completeness", completeness.ToJson()}})
                     .dump(2)
              << "\n";
  } else {
    std::cout << (verdicts.ok() ? "PASS" : "FAIL") << " verdicts: "
              << verdicts.rows.size() << " entries, " << verdicts.mismatches
              << " mismatches, " << verdicts.errors << " errors\n";
    std::cout << (soundness.ok() ? "PASS" : "FAIL") << " soundness: "
              << soundness.formulas << " formulas, " << soundness.leaves
              << " environment behaviors, " << soundness.losses
              << " losses\n";
    std::cout << (completeness.ok() ? "PASS" : "FAIL") << " completeness: "
              << completeness.formulas << " formulas, "
              << completeness.verified << "/" << completeness.certificates
              << " certificates verified\n";
    for (const SuiteFailure& f : soundness.failures) {
      std::cout << "  soundness: " << f.formula << ": " << f.detail << "\n";
    }
    for (const SuiteFailure& f : completeness.failures) {
      std::cout << "  completeness: " << f.formula << ": " << f.detail << "\n";
    }
  }
  return verdicts.ok() && soundness.ok() && completeness.ok() ? 0 : 1;
}

int DelayTest(const std::string& text, int samples, Constant domain,
              unsigned seed) {
  std::mt19937 rng(seed);
  DelayReport r = DelaySuite(Parse(text), samples, domain, rng);
  std::cout << r.ToJson().dump(2) << "\n";
  return r.ok() ? 0 : 1;
}

int Main(int argc, char** argv) {
  CLI::App app{"Computability logic workbench"};
  app.require_subcommand(1);

  std::string formula, file, out, env, interp, serve, proof;
  std::string human = "environment";
  std::vector<std::string> vals;
  Constant domain = 2;
  int seeds = 100, samples = 1000, max_steps = kDefaultMaxSteps;
  unsigned seed = 0;
  bool json = false;

  auto* prove = app.add_subcommand("prove", "decide a formula");
  prove->add_option("formula", formula)->required();
  prove->add_option("-o,--out", out, "certificate file");

  auto* check = app.add_subcommand("check", "check a proof file");
  check->add_option("file", file)->required();
  auto* refute = app.add_subcommand("refute-check", "check a refutation file");
  refute->add_option("file", file)->required();

  auto* oracle = app.add_subcommand("oracle", "winnability under a table");
  oracle->add_option("formula", formula)->required();
  oracle->add_option("--interp", interp)->required();
  oracle->add_option("--val", vals, "var=value");

  auto* play = app.add_subcommand("play", "serve a play session over HTTP");
  play->add_option("formula", formula)->required();
  play->add_option("--proof", proof);
  play->add_option("--serve", serve, "host:port")->required();
  play->add_option("--human-role", human);
  play->add_option("--domain", domain);
  play->add_option("--interp", interp);
  play->add_option("--val", vals, "var=value");

  auto* match = app.add_subcommand("match", "proof machine vs environment");
  match->add_option("--proof", proof)->required();
  match->add_option("--env", env, "refutation file or comma-separated moves")
      ->required();
  match->add_option("--interp", interp)->required();
  match->add_option("--val", vals, "var=value");
  match->add_option("--max-steps", max_steps);

  auto* battery = app.add_subcommand("battery", "corpus suites");
  battery->add_option("--corpus", file, "corpus directory")->required();
  battery->add_option("--seeds", seeds, "random machines");
  battery->add_flag("--json", json);

  auto* delay = app.add_subcommand("delay-test", "sampled delay invariance");
  delay->add_option("formula", formula)->required();
  delay->add_option("--samples", samples);
  delay->add_option("--domain", domain);
  delay->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << nlohmann::json({{"error", e.what()}}).dump() << "\n";
    return 2;
  }

  try {
    if (*prove) return Prove(formula, out);
    if (*check) return Check(file, System::kProof);
    if (*refute) return Check(file, System::kRefutation);
    if (*oracle) return Oracle(formula, interp, vals);
    if (*play) {
      return Play(formula, proof, serve, human, domain, interp, vals);
    }
    if (*match) return Match(proof, env, interp, vals, max_steps);
    if (*battery) return Battery(file, seeds, json);
    if (*delay) return DelayTest(formula, samples, domain, seed);
  } catch (const CliFailure& e) {
    std::cerr << nlohmann::json({{"error", e.message}}).dump() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json({{"error", e.what()}}).dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace colog

int main(int argc, char** argv) { return colog::Main(argc, argv); }
