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

#include "colog/http_server.h"

#include <map>
#include <string>

namespace colog {

void MountSessionRoutes(httplib::Server& server, SessionService& service) {
  auto handler = [&service](const httplib::Request& req,
                            httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [key, value] : req.params) query.emplace(key, value);
    ApiResponse out = service.Handle(req.method, req.path, query, req.body);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  const char* pattern = R"(/sessions(/.*)?)";
  server.Get(pattern, handler);
  server.Post(pattern, handler);
  server.Delete(pattern, handler);
  server.Options(pattern, [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
}

}  // namespace colog
