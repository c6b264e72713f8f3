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

#ifndef COLOG_SERVICE_H_
#define COLOG_SERVICE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "colog/calculus.h"
#include "colog/game.h"
#include "colog/strategies.h"
#include "json.hpp"

namespace colog {

// Largest domain a session may use; the human's legal moves are listed in
// full, one per payload.
inline constexpr Constant kMaxSessionDomain = 1000;

// Request-level failure carrying the HTTP status to report.
class ServiceError : public Error {
 public:
  ServiceError(int status, const std::string& message)
      : Error(message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

struct SessionSpec {
  std::string formula;
  std::optional<Proof> proof;
  Player human = Player::kEnvironment;
  Constant domain = 1;
  Valuation valuation;
  Interpretation interpretation{1};
};

// Parses a POST /sessions body. Throws ServiceError(422) on bad input.
// "proof" is either a list of step objects, JSON-lines text, or "auto".
SessionSpec SessionSpecFromJson(const nlohmann::json& j);

// One human action, in the order received.
struct SessionEvent {
  enum class Kind { kMove, kPass } kind = Kind::kPass;
  std::string move;  // as a move string, e.g. "2.2.7"
  bool strict = false;
};

class Session {
 public:
  // Steps the adversary of the human to quiescence before returning.
  Session(std::string id, SessionSpec spec);

  const std::string& id() const { return id_; }
  const SessionSpec& spec() const { return spec_; }
  const GameState& state() const { return state_; }
  const Run& run() const { return run_; }
  bool settled() const { return settled_; }
  const std::vector<SessionEvent>& events() const { return events_; }
  // "proof" when a certificate drives the machine, else "greedy".
  std::string strategy_name() const { return adversary_->name(); }

  // Applies a human move then lets the adversary answer. Returns the
  // adversary's moves. Throws ServiceError: 422 when `move` does not
  // address a surface choice occurrence, 409 when it is otherwise illegal
  // (unless strict, which records it and settles) or the session is over.
  std::vector<std::string> Move(const std::string& move, bool strict);
  // The human passes; the session settles if the adversary does too.
  std::vector<std::string> Pass();

  // Winner of the recorded run, recomputed from scratch.
  Adjudication Result() const;

  nlohmann::json StateToJson() const;
  nlohmann::json SnapshotToJson() const;
  // Rebuilds a session by replaying the recorded events; throws Error if
  // the replay diverges from the recorded run.
  static Session FromSnapshot(const nlohmann::json& j);

 private:
  std::vector<std::string> Quiesce(std::vector<LabMove> incoming);
  void Record(Player who, const std::string& move, bool legal);
  void UpdateSettled();

  std::string id_;
  SessionSpec spec_;
  GameState start_;
  GameState state_;
  Run run_;
  std::unique_ptr<ReactiveStrategy> adversary_;
  bool settled_ = false;
  // Set once the adversary offers an illegal move; it is not stepped again.
  bool silenced_ = false;
  std::vector<SessionEvent> events_;
};

// The formula as a tree. Every node carries "op" and "text"; surface
// nodes (outside every choice operator) carry "spec", and surface choice
// occurrences also carry "owner".
nlohmann::json FormulaTreeToJson(const Formula& f);

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

// Thread-safe session store with optional JSON snapshots on disk.
class SessionService {
 public:
  explicit SessionService(
      std::optional<std::filesystem::path> data_dir = std::nullopt);

  // Reads COLOG_DATA_DIR; no persistence when unset.
  static std::optional<std::filesystem::path> DataDirFromEnvironment();

  // Dispatches one request. `path` excludes the query string; `query`
  // holds its parameters. Never throws.
  ApiResponse Handle(const std::string& method, const std::string& path,
                     const std::map<std::string, std::string>& query,
                     const std::string& body);

 private:
  struct Entry {
    std::mutex mutex;
    std::optional<Session> session;
  };

  ApiResponse Create(const std::string& body);
  std::shared_ptr<Entry> Find(const std::string& id);
  void Save(const Session& s) const;
  std::string NextId();

  std::optional<std::filesystem::path> data_dir_;
  std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  long next_id_ = 1;
};

}  // namespace colog

#endif  // COLOG_SERVICE_H_
