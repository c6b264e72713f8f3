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

#ifndef COLOG_HTTP_SERVER_H_
#define COLOG_HTTP_SERVER_H_

#include "colog/service.h"
#include "httplib.h"

namespace colog {

// Routes every /sessions request to `service`. Responses are JSON and carry
// a permissive CORS header so a browser client on another origin can play.
void MountSessionRoutes(httplib::Server& server, SessionService& service);

}  // namespace colog

#endif  // COLOG_HTTP_SERVER_H_
