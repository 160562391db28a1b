// Copyright 2026 The qpd-optics Authors
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

// HTTP front end for the game service. Configuration comes from QPD_BIND,
// QPD_PORT, QPD_SESSION_TIMEOUT, QPD_HISTORY_LOG and QPD_GRID.

#include <iostream>

#include "qpd/tools/service.hpp"

// After Eigen: httplib's headers clash with Eigen declared later.
#include <httplib.h>

int main() {
  qpd::service::ServiceConfig config;
  try {
    config = qpd::service::ServiceConfig::from_env();
  } catch (const std::exception& e) {
    std::cerr << "qpd_server: bad configuration: " << e.what() << "\n";
    return 2;
  }
  qpd::service::GameService service(config);
  httplib::Server server;
  qpd::service::mount(service, server);
  std::cerr << "qpd_server listening on " << config.bind_address << ":"
            << config.port << "\n";
  if (!server.listen(config.bind_address, config.port)) {
    std::cerr << "qpd_server: cannot bind " << config.bind_address << ":"
              << config.port << "\n";
    return 1;
  }
  return 0;
}
