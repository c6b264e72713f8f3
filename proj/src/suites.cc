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

#include "colog/suites.h"

#include <chrono>
#include <memory>
#include <set>

#include "colog/parser.h"

namespace colog {

namespace {

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::map<std::string, std::size_t> Letters(const Formula& f) {
  std::map<std::string, std::size_t> out;
  for (const auto& [letter, args] : AtomsOf(f)) out[letter] = args.size();
  return out;
}

Interpretation FromBits(const std::map<std::string, std::size_t>& letters,
                        Constant domain, std::mt19937& rng, bool random,
                        std::uint64_t mask) {
  Interpretation interp(domain);
  std::size_t k = 0;
  for (const auto& [letter, arity] : letters) {
    interp.DeclareLetter(letter, arity);
    std::vector<Constant> args(arity, 0);
    for (;;) {
      bool bit = random ? (rng() & 1) : ((mask >> k) & 1);
      if (bit) interp.Set(letter, args, true);
      ++k;
      std::size_t i = arity;
      while (i > 0 && ++args[i - 1] == domain) args[--i] = 0;
      if (i == 0) break;
    }
  }
  return interp;
}

nlohmann::json FailuresToJson(const std::vector<SuiteFailure>& failures) {
  nlohmann::json out = nlohmann::json::array();
  for (const SuiteFailure& f : failures) {
    out.push_back({{"formula", f.formula}, {"detail", f.detail}});
  }
  return out;
}

}  // namespace

std::vector<Interpretation> TablesFor(
    const std::map<std::string, std::size_t>& letters, Constant domain,
    std::size_t max_bits, std::size_t samples, std::mt19937& rng) {
  std::size_t bits = 0;
  for (const auto& [letter, arity] : letters) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < arity; ++i) n *= domain;
    bits += n;
  }
  std::vector<Interpretation> out;
  if (bits <= max_bits) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits); ++m) {
      out.push_back(FromBits(letters, domain, rng, false, m));
    }
  } else {
    for (std::size_t i = 0; i < samples; ++i) {
      out.push_back(FromBits(letters, domain, rng, true, 0));
    }
  }
  return out;
}

nlohmann::json SoundnessReport::ToJson() const {
  return {{"formulas", formulas},       {"leaves", leaves},
          {"adjudications", adjudications}, {"losses", losses},
          {"skipped_domains", skipped_domains},
          {"failures", FailuresToJson(failures)},
          {"seconds", seconds},         {"ok", ok()}};
}

SoundnessReport SoundnessSuite(const std::vector<CorpusEntry>& corpus,
                               const SoundnessOptions& options) {
  auto start = std::chrono::steady_clock::now();
  SoundnessReport report;
  std::mt19937 rng(options.seed);
  Decider decider;
  for (const CorpusEntry& e : corpus) {
    if (!e.error.empty() || !e.expected || !*e.expected) continue;
    Formula f = Parse(e.text);
    Verdict v = decider.Decide(f);
    if (!v.provable) {
      report.failures.push_back({e.text, "decider found no proof"});
      continue;
    }
    ++report.formulas;
    auto proof = std::make_shared<const Proof>(std::move(v.certificate));
    auto letters = Letters(f);
    std::set<std::string> free_set = FreeVariables(f);
    std::vector<std::string> free(free_set.begin(), free_set.end());
    Constant max_constant = 0;
    bool has_constant = false;
    for (Constant c : Constants(f)) {
      max_constant = std::max(max_constant, c);
      has_constant = true;
    }

    for (Constant domain = options.min_domain; domain <= options.max_domain;
         ++domain) {
      if (has_constant && max_constant >= domain) {
        ++report.skipped_domains;
        continue;
      }
      std::vector<Interpretation> tables = TablesFor(
          letters, domain, options.max_table_bits, options.sampled_tables, rng);
      std::vector<Constant> values(free.size(), 0);
      for (;;) {
        Valuation valuation;
        for (std::size_t i = 0; i < free.size(); ++i) {
          valuation[free[i]] = values[i];
        }
        MachineLoop machine(proof, valuation);
        std::vector<GameState> starts;
        for (const Interpretation& t : tables) {
          starts.push_back(MakeState(f, t, valuation));
        }
        report.leaves += ExploreEnvironments(
            machine, f, domain, [&](const SoundnessLeaf& leaf) {
              for (const GameState& s : starts) {
                ++report.adjudications;
                if (leaf.machine_illegal ||
                    WnRun(s, leaf.run) != Player::kMachine) {
                  ++report.losses;
                  if (report.failures.size() < 20) {
                    report.failures.push_back(
                        {e.text, "domain " + std::to_string(domain) +
                                     " run " + RunToJson(leaf.run).dump()});
                  }
                }
              }
            });
        std::size_t i = free.size();
        while (i > 0 && ++values[i - 1] == domain) values[--i] = 0;
        if (i == 0) break;
      }
    }
  }
  report.seconds = SecondsSince(start);
  return report;
}

nlohmann::json CompletenessReport::ToJson() const {
  return {{"formulas", formulas},   {"certificates", certificates},
          {"verified", verified},   {"failures", FailuresToJson(failures)},
          {"seconds", seconds},     {"ok", ok()}};
}

CompletenessReport CompletenessSuite(const std::vector<CorpusEntry>& corpus,
                                     int random_seeds) {
  auto start = std::chrono::steady_clock::now();
  CompletenessReport report;
  std::vector<BatteryEntry> battery = MachineBattery(random_seeds);
  Decider decider;
  for (const CorpusEntry& e : corpus) {
    if (!e.error.empty() || !e.expected || *e.expected) continue;
    Formula f = Parse(e.text);
    if (ContainsBlindQuantifier(f)) continue;
    Verdict v = decider.Decide(f);
    if (v.provable) {
      report.failures.push_back({e.text, "decider found a proof"});
      continue;
    }
    ++report.formulas;
    auto refutation =
        std::make_shared<const Refutation>(std::move(v.certificate));
    Valuation valuation = EnvironmentLoop(refutation).valuation();
    for (const BatteryEntry& entry : battery) {
      ++report.certificates;
      std::unique_ptr<ReactiveStrategy> machine = entry.make(f, valuation);
      CounterCertificate cert = MakeCounterCertificate(refutation, *machine);
      if (cert.verified) {
        ++report.verified;
      } else {
        report.failures.push_back(
            {e.text, entry.name + " run " + RunToJson(cert.run).dump()});
      }
    }
  }
  report.seconds = SecondsSince(start);
  return report;
}

nlohmann::json DelayReport::ToJson() const {
  return {{"pairs", pairs},
          {"violations", violations},
          {"examples", examples},
          {"ok", ok()}};
}

Run SampleLegalRun(const Formula& f, Constant domain, std::mt19937& rng,
                   int max_len) {
  Run run;
  Formula g = f;
  for (int i = 0; i < max_len; ++i) {
    std::vector<LabMove> options;
    for (Player p : {Player::kMachine, Player::kEnvironment}) {
      for (const MoveToken& t : LegalMoves(g, p, domain)) {
        options.push_back(LabMove::Of(p, t));
      }
    }
    if (options.empty() || rng() % 5 == 0) break;
    const LabMove& m = options[rng() % options.size()];
    run.push_back(m);
    g = BringDown(g, m.player, *MoveToken::Parse(m.move), domain);
  }
  return run;
}

DelayReport DelaySuite(const Formula& f, int samples, Constant domain,
                       std::mt19937& rng) {
  DelayReport report;
  auto letters = Letters(f);
  for (int i = 0; i < samples; ++i) {
    GameState s = MakeState(f, FromBits(letters, domain, rng, true, 0));
    Run run = SampleLegalRun(f, domain, rng);
    Player winner = WnRun(s, run);
    std::vector<Run> delays = Delays(run, winner);
    const Run& delay = delays[rng() % delays.size()];
    ++report.pairs;
    if (WnRun(s, delay) != winner) {
      ++report.violations;
      if (report.examples.size() < 5) {
        report.examples.push_back(Print(f) + " " + RunToJson(run).dump() +
                                  " -> " + RunToJson(delay).dump());
      }
    }
  }
  return report;
}

}  // namespace colog
