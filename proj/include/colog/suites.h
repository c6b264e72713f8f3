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

#ifndef COLOG_SUITES_H_
#define COLOG_SUITES_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "colog/decider.h"
#include "colog/game.h"
#include "colog/strategies.h"
#include "json.hpp"

namespace colog {

// Every table over the letters when there are at most 2^max_bits of them,
// else `samples` random ones.
std::vector<Interpretation> TablesFor(
    const std::map<std::string, std::size_t>& letters, Constant domain,
    std::size_t max_bits, std::size_t samples, std::mt19937& rng);

struct SuiteFailure {
  std::string formula;
  std::string detail;
};

struct SoundnessOptions {
  Constant min_domain = 1;
  Constant max_domain = 3;
  std::size_t max_table_bits = 9;
  std::size_t sampled_tables = 50;
  std::uint32_t seed = 0;
};

struct SoundnessReport {
  int formulas = 0;
  long leaves = 0;
  long adjudications = 0;
  long losses = 0;
  // Domains skipped because the formula mentions a constant outside them.
  int skipped_domains = 0;
  std::vector<SuiteFailure> failures;
  double seconds = 0;

  bool ok() const { return failures.empty() && losses == 0; }
  nlohmann::json ToJson() const;
};

// The proof machine of every provable entry against every environment, at
// each domain size, under every valuation of the free variables, adjudicated
// under the chosen tables.
SoundnessReport SoundnessSuite(const std::vector<CorpusEntry>& corpus,
                               const SoundnessOptions& options = {});

struct CompletenessReport {
  int formulas = 0;
  int certificates = 0;
  int verified = 0;
  std::vector<SuiteFailure> failures;
  double seconds = 0;

  bool ok() const { return failures.empty() && verified == certificates; }
  nlohmann::json ToJson() const;
};

// Counter-certificates for every unprovable blind-free entry against every
// machine of MachineBattery(random_seeds).
CompletenessReport CompletenessSuite(const std::vector<CorpusEntry>& corpus,
                                     int random_seeds);

struct DelayReport {
  long pairs = 0;
  long violations = 0;
  std::vector<std::string> examples;  // first few violations

  bool ok() const { return violations == 0; }
  nlohmann::json ToJson() const;
};

// Samples random legal runs under random tables and checks that a random
// delay by the winner is still won by the winner. `pairs` counts the
// (run, delay) pairs checked; `samples` runs are drawn.
DelayReport DelaySuite(const Formula& f, int samples, Constant domain,
                       std::mt19937& rng);

// A random legal run: at each step a random player with a legal move moves,
// stopping when neither can, after max_len moves, or by a 1/5 coin.
Run SampleLegalRun(const Formula& f, Constant domain, std::mt19937& rng,
                   int max_len = 8);

}  // namespace colog

#endif  // COLOG_SUITES_H_
