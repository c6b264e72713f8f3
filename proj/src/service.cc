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

#include "colog/service.h"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

#include "colog/decider.h"
#include "colog/parser.h"

namespace colog {

namespace {

constexpr int kQuiesceLimit = 1000;

[[noreturn]] void Invalid(const std::string& message) {
  throw ServiceError(422, message);
}

Derivation ProofFromJson(const nlohmann::json& j) {
  if (j.is_string()) return ParseDerivation(j.get<std::string>());
  if (!j.is_array()) Invalid("proof must be a list of steps or text");
  Derivation d;
  for (const auto& step : j) d.steps.push_back(StepFromJson(step));
  return d;
}

nlohmann::json ProofToJson(const Derivation& d) {
  nlohmann::json out = nlohmann::json::array();
  for (const Step& s : d.steps) out.push_back(StepToJson(s));
  return out;
}

nlohmann::json MovesToJson(const std::vector<MoveToken>& moves) {
  nlohmann::json out = nlohmann::json::array();
  for (const MoveToken& m : moves) {
    out.push_back({{"spec", m.spec.ToString()},
                   {"payload", m.payload},
                   {"move", m.ToString()}});
  }
  return out;
}

void TreeNode(const Formula& f, Path& path, std::vector<int>& spec,
              bool surface, const std::map<Path, Player>& owners,
              nlohmann::json& out) {
  out["op"] = OpName(f.op());
  out["text"] = Print(f);
  if (surface) {
    out["spec"] = OccurrenceSpec(spec).ToString();
    auto it = owners.find(path);
    if (it != owners.end()) out["owner"] = PlayerName(it->second);
  }
  if (f.op() == Op::kAtom) {
    out["letter"] = f.letter();
    nlohmann::json args = nlohmann::json::array();
    for (const Term& t : f.args()) args.push_back(t.ToString());
    out["args"] = std::move(args);
  }
  if (IsQuantifier(f.op())) out["variable"] = f.variable();
  bool parallel = f.op() == Op::kAnd || f.op() == Op::kOr ||
                  f.op() == Op::kImplies;
  bool child_surface = surface && !IsChoiceOp(f.op());
  nlohmann::json children = nlohmann::json::array();
  for (std::size_t i = 0; i < f.arity(); ++i) {
    nlohmann::json child;
    path.push_back(static_cast<int>(i));
    if (parallel) spec.push_back(static_cast<int>(i) + 1);
    TreeNode(f.child(i), path, spec, child_surface, owners, child);
    if (parallel) spec.pop_back();
    path.pop_back();
    children.push_back(std::move(child));
  }
  if (!children.empty()) out["children"] = std::move(children);
}

bool ValidId(const std::string& id) {
  if (id.empty() || id.size() > 32) return false;
  for (char c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<std::string> SplitPath(const std::string& path) {
  std::vector<std::string> parts;
  std::stringstream in(path);
  std::string part;
  while (std::getline(in, part, '/')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

ApiResponse ErrorResponse(int status, const std::string& message) {
  return {status, {{"error", message}, {"status", status}}};
}

nlohmann::json ParseBody(const std::string& body) {
  if (body.empty()) return nlohmann::json::object();
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    Invalid(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

nlohmann::json FormulaTreeToJson(const Formula& f) {
  std::map<Path, Player> owners;
  for (const ChoiceOccurrence& occ : SurfaceChoiceOccurrences(f)) {
    owners[occ.path] = OwnerOf(occ);
  }
  Path path;
  std::vector<int> spec;
  nlohmann::json out;
  TreeNode(f, path, spec, true, owners, out);
  return out;
}

SessionSpec SessionSpecFromJson(const nlohmann::json& j) {
  if (!j.is_object()) Invalid("request body must be an object");
  SessionSpec spec;
  if (!j.contains("formula") || !j["formula"].is_string()) {
    Invalid("\"formula\" must be a string");
  }
  spec.formula = j["formula"].get<std::string>();
  Formula f = Formula::Top();
  try {
    f = Parse(spec.formula);
  } catch (const Error& e) {
    Invalid(e.what());
  }

  try {
    if (j.contains("human_role")) {
      spec.human = PlayerFromName(j["human_role"].get<std::string>());
    }
    if (j.contains("interpretation")) {
      spec.interpretation = InterpretationFromJson(j["interpretation"]);
      spec.domain = spec.interpretation.domain();
    }
    if (j.contains("domain")) {
      if (!j["domain"].is_number_unsigned()) {
        Invalid("\"domain\" must be a positive integer");
      }
      Constant d = j["domain"].get<Constant>();
      if (j.contains("interpretation") && d != spec.domain) {
        Invalid("\"domain\" disagrees with the interpretation");
      }
      spec.domain = d;
      if (!j.contains("interpretation")) spec.interpretation = Interpretation(d);
    } else if (!j.contains("interpretation")) {
      Invalid("either \"domain\" or \"interpretation\" is required");
    }
    if (spec.domain < 1 || spec.domain > kMaxSessionDomain) {
      Invalid("domain must be between 1 and " +
              std::to_string(kMaxSessionDomain));
    }
    if (j.contains("valuation")) {
      spec.valuation = ValuationFromJson(j["valuation"]);
    }
  } catch (const nlohmann::json::exception& e) {
    Invalid(e.what());
  } catch (const ServiceError&) {
    throw;
  } catch (const Error& e) {
    Invalid(e.what());
  }
  for (Constant c : Constants(f)) {
    if (c >= spec.domain) Invalid("constant outside the domain");
  }
  for (const auto& [var, c] : spec.valuation) {
    if (c >= spec.domain) Invalid("value of " + var + " outside the domain");
  }

  if (j.contains("proof") && !j["proof"].is_null()) {
    if (spec.human != Player::kEnvironment) {
      Invalid("a proof drives the machine, so the human must be the "
              "environment");
    }
    const nlohmann::json& p = j["proof"];
    try {
      if (p.is_string() && p.get<std::string>() == "auto") {
        Verdict v = Decide(f);
        if (v.provable) spec.proof = std::move(v.certificate);
      } else {
        spec.proof = ProofFromJson(p);
      }
    } catch (const ServiceError&) {
      throw;
    } catch (const nlohmann::json::exception& e) {
      Invalid(e.what());
    } catch (const Error& e) {
      Invalid(e.what());
    }
    if (spec.proof) {
      if (spec.proof->steps.empty() || !(spec.proof->conclusion() == f)) {
        Invalid("proof does not conclude the session formula");
      }
      CheckResult check = CheckProof(*spec.proof);
      if (!check.ok() && check.status != CheckResult::Status::kStabilityUnverified) {
        Invalid("proof rejected: " + check.ToString());
      }
    }
  }
  return spec;
}

// --- Session -----------------------------------------------------------------

Session::Session(std::string id, SessionSpec spec)
    : id_(std::move(id)),
      spec_(std::move(spec)),
      start_(MakeState(Parse(spec_.formula), spec_.interpretation,
                       spec_.valuation)),
      state_(start_) {
  Player adversary = Adversary(spec_.human);
  if (spec_.proof) {
    adversary_ = std::make_unique<MachineLoop>(
        std::make_shared<const Proof>(*spec_.proof), spec_.valuation);
  } else {
    adversary_ = std::make_unique<GreedyStrategy>(
        adversary, start_.formula, spec_.valuation, start_.interpretation);
  }
  Quiesce({});
  UpdateSettled();
}

void Session::Record(Player who, const std::string& move, bool legal) {
  run_.push_back({who, move});
  if (legal) state_ = ApplyMove(state_, run_.back());
}

std::vector<std::string> Session::Quiesce(std::vector<LabMove> incoming) {
  std::vector<std::string> emitted;
  Player role = adversary_->role();
  for (int guard = 0; guard < kQuiesceLimit && !silenced_; ++guard) {
    StepOutput out = adversary_->Step(incoming);
    incoming.clear();
    if (out.moves.empty()) {
      if (out.waiting) break;
      continue;
    }
    for (const std::string& m : out.moves) {
      if (!LegalMove(state_.formula, role, m,
                     state_.interpretation->domain())) {
        silenced_ = true;
        break;
      }
      Record(role, m, true);
      emitted.push_back(m);
    }
  }
  return emitted;
}

void Session::UpdateSettled() {
  if (LegalMoves(state_, spec_.human).empty()) settled_ = true;
}

std::vector<std::string> Session::Move(const std::string& move, bool strict) {
  if (settled_) throw ServiceError(409, "session is settled");
  auto token = MoveToken::Parse(move);
  if (!token) Invalid("malformed move \"" + move + "\"");
  if (!ResolveChoice(state_.formula, token->spec)) {
    Invalid("no choice occurrence at \"" + token->spec.ToString() + "\"");
  }
  bool legal = LegalMove(state_.formula, spec_.human, move,
                         state_.interpretation->domain())
                   .has_value();
  if (!legal && !strict) {
    throw ServiceError(409, "illegal move \"" + move + "\" for the " +
                                PlayerName(spec_.human));
  }
  events_.push_back({SessionEvent::Kind::kMove, move, strict});
  Record(spec_.human, move, legal);
  if (!legal) {
    settled_ = true;
    return {};
  }
  std::vector<std::string> replies = Quiesce({run_.back()});
  UpdateSettled();
  return replies;
}

std::vector<std::string> Session::Pass() {
  if (settled_) throw ServiceError(409, "session is settled");
  events_.push_back({SessionEvent::Kind::kPass, "", false});
  std::vector<std::string> replies = Quiesce({});
  if (replies.empty()) {
    settled_ = true;
  } else {
    UpdateSettled();
  }
  return replies;
}

Adjudication Session::Result() const { return Adjudicate(start_, run_); }

nlohmann::json Session::StateToJson() const {
  nlohmann::json j = {
      {"id", id_},
      {"formula", spec_.formula},
      {"position", Print(state_.formula)},
      {"tree", FormulaTreeToJson(state_.formula)},
      {"run", RunToJson(run_)},
      {"human_role", PlayerName(spec_.human)},
      {"machine", strategy_name()},
      {"domain", spec_.domain},
      {"valuation", ValuationToJson(spec_.valuation)},
      {"status", settled_ ? "settled" : "open"},
  };
  j["legal_moves"] = settled_ ? nlohmann::json::array()
                              : MovesToJson(LegalMoves(state_, spec_.human));
  if (settled_) j["winner"] = PlayerName(Result().winner);
  return j;
}

nlohmann::json Session::SnapshotToJson() const {
  nlohmann::json events = nlohmann::json::array();
  for (const SessionEvent& e : events_) {
    if (e.kind == SessionEvent::Kind::kPass) {
      events.push_back({{"type", "pass"}});
    } else {
      events.push_back({{"type", "move"}, {"move", e.move}, {"strict", e.strict}});
    }
  }
  return {
      {"id", id_},
      {"formula", spec_.formula},
      {"proof", spec_.proof ? ProofToJson(*spec_.proof) : nlohmann::json()},
      {"human_role", PlayerName(spec_.human)},
      {"domain", spec_.domain},
      {"valuation", ValuationToJson(spec_.valuation)},
      {"interpretation", InterpretationToJson(spec_.interpretation)},
      {"events", std::move(events)},
      {"run", RunToJson(run_)},
      {"position", Print(state_.formula)},
      {"status", settled_ ? "settled" : "open"},
  };
}

Session Session::FromSnapshot(const nlohmann::json& j) {
  SessionSpec spec;
  spec.formula = j.at("formula").get<std::string>();
  if (!j.at("proof").is_null()) spec.proof = ProofFromJson(j["proof"]);
  spec.human = PlayerFromName(j.at("human_role").get<std::string>());
  spec.domain = j.at("domain").get<Constant>();
  spec.valuation = ValuationFromJson(j.at("valuation"));
  spec.interpretation = InterpretationFromJson(j.at("interpretation"));
  Session s(j.at("id").get<std::string>(), std::move(spec));
  for (const auto& e : j.at("events")) {
    if (e.at("type") == "pass") {
      s.Pass();
    } else {
      s.Move(e.at("move").get<std::string>(), e.at("strict").get<bool>());
    }
  }
  if (RunToJson(s.run_) != j.at("run") ||
      Print(s.state_.formula) != j.at("position").get<std::string>()) {
    throw Error("session " + s.id_ + " does not replay to its snapshot");
  }
  return s;
}

// --- SessionService ----------------------------------------------------------

SessionService::SessionService(std::optional<std::filesystem::path> data_dir)
    : data_dir_(std::move(data_dir)) {
  if (!data_dir_) return;
  std::filesystem::create_directories(*data_dir_);
  for (const auto& entry : std::filesystem::directory_iterator(*data_dir_)) {
    std::string stem = entry.path().stem().string();
    if (entry.path().extension() != ".json" || stem.size() < 2 ||
        stem[0] != 's') {
      continue;
    }
    try {
      next_id_ = std::max(next_id_, std::stol(stem.substr(1)) + 1);
    } catch (const std::exception&) {
    }
  }
}

std::optional<std::filesystem::path> SessionService::DataDirFromEnvironment() {
  const char* dir = std::getenv("COLOG_DATA_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir);
}

std::string SessionService::NextId() {
  return "s" + std::to_string(next_id_++);
}

void SessionService::Save(const Session& s) const {
  if (!data_dir_) return;
  std::filesystem::path target = *data_dir_ / (s.id() + ".json");
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << s.SnapshotToJson().dump(2) << "\n";
    if (!out) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::shared_ptr<SessionService::Entry> SessionService::Find(
    const std::string& id) {
  if (!ValidId(id)) return nullptr;
  {
    std::shared_lock lock(mutex_);
    auto it = sessions_.find(id);
    if (it != sessions_.end()) return it->second;
  }
  if (!data_dir_) return nullptr;
  std::filesystem::path file = *data_dir_ / (id + ".json");
  std::unique_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it != sessions_.end()) return it->second;
  std::ifstream in(file);
  if (!in) return nullptr;
  auto entry = std::make_shared<Entry>();
  try {
    entry->session.emplace(Session::FromSnapshot(nlohmann::json::parse(in)));
  } catch (const std::exception& e) {
    throw ServiceError(500, "cannot restore session " + id + ": " + e.what());
  }
  sessions_[id] = entry;
  return entry;
}

ApiResponse SessionService::Create(const std::string& body) {
  SessionSpec spec = SessionSpecFromJson(ParseBody(body));
  auto entry = std::make_shared<Entry>();
  std::string id;
  {
    std::unique_lock lock(mutex_);
    id = NextId();
    sessions_[id] = entry;
  }
  std::lock_guard guard(entry->mutex);
  try {
    entry->session.emplace(id, std::move(spec));
  } catch (...) {
    std::unique_lock lock(mutex_);
    sessions_.erase(id);
    throw;
  }
  Save(*entry->session);
  return {201, {{"id", id}, {"state", entry->session->StateToJson()}}};
}

ApiResponse SessionService::Handle(
    const std::string& method, const std::string& path,
    const std::map<std::string, std::string>& query, const std::string& body) {
  try {
    std::vector<std::string> parts = SplitPath(path);
    if (parts.empty() || parts[0] != "sessions" || parts.size() > 3) {
      return ErrorResponse(404, "no route for " + path);
    }
    if (parts.size() == 1) {
      if (method != "POST") return ErrorResponse(405, "use POST /sessions");
      return Create(body);
    }
    const std::string& id = parts[1];
    std::string action = parts.size() == 3 ? parts[2] : "";
    if (action != "" && action != "move" && action != "pass" &&
        action != "result") {
      return ErrorResponse(404, "no route for " + path);
    }

    if (action.empty() && method == "DELETE") {
      std::shared_ptr<Entry> entry = Find(id);
      if (!entry) return ErrorResponse(404, "unknown session " + id);
      std::lock_guard guard(entry->mutex);
      {
        std::unique_lock lock(mutex_);
        sessions_.erase(id);
      }
      if (data_dir_) std::filesystem::remove(*data_dir_ / (id + ".json"));
      entry->session.reset();
      return {200, {{"deleted", id}}};
    }

    std::shared_ptr<Entry> entry = Find(id);
    if (!entry) return ErrorResponse(404, "unknown session " + id);
    std::lock_guard guard(entry->mutex);
    if (!entry->session) return ErrorResponse(404, "unknown session " + id);
    Session& s = *entry->session;

    if (action.empty()) {
      if (method != "GET") return ErrorResponse(405, "use GET or DELETE");
      return {200, s.StateToJson()};
    }
    if (action == "result") {
      if (method != "GET") return ErrorResponse(405, "use GET");
      if (!s.settled()) return ErrorResponse(409, "session is still open");
      Adjudication adj = s.Result();
      nlohmann::json j = {{"id", id},
                          {"winner", PlayerName(adj.winner)},
                          {"run", RunToJson(s.run())},
                          {"position", Print(adj.final_state.formula)}};
      j["illegal_at"] = adj.illegal_at ? nlohmann::json(*adj.illegal_at)
                                       : nlohmann::json();
      return {200, j};
    }
    if (method != "POST") return ErrorResponse(405, "use POST");

    std::vector<std::string> replies;
    if (action == "pass") {
      replies = s.Pass();
    } else {
      nlohmann::json j = ParseBody(body);
      std::string move;
      try {
        if (j.contains("move")) {
          move = j["move"].get<std::string>();
        } else {
          if (!j.contains("spec") || !j.contains("payload")) {
            Invalid("move needs \"spec\" and \"payload\"");
          }
          if (!j["payload"].is_number_unsigned()) {
            Invalid("\"payload\" must be a natural number");
          }
          MoveToken token{OccurrenceSpec::Parse(j["spec"].get<std::string>()),
                          j["payload"].get<Constant>()};
          move = token.ToString();
        }
      } catch (const nlohmann::json::exception& e) {
        Invalid(e.what());
      } catch (const ServiceError&) {
        throw;
      } catch (const Error& e) {
        Invalid(e.what());
      }
      auto strict = query.find("strict");
      bool is_strict = strict != query.end() &&
                       (strict->second == "true" || strict->second == "1");
      replies = s.Move(move, is_strict);
    }
    Save(s);
    nlohmann::json machine_moves = nlohmann::json::array();
    for (const std::string& m : replies) machine_moves.push_back(m);
    return {200, {{"state", s.StateToJson()}, {"replies", machine_moves}}};
  } catch (const ServiceError& e) {
    return ErrorResponse(e.status(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return ErrorResponse(422, e.what());
  } catch (const Error& e) {
    return ErrorResponse(422, e.what());
  } catch (const std::exception& e) {
    return ErrorResponse(500, e.what());
  }
}

}  // namespace colog
