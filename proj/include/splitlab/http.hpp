#pragma once

#include <httplib.h>

#include "splitlab/service.hpp"

namespace splitlab {

/// Routes every /api/ request on `server` to `service`.
inline void mount_api(httplib::Server& server, SessionService& service) {
  auto bridge = [&service](const httplib::Request& req, httplib::Response& res) {
    const auto r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get(R"(/api/.*)", bridge);
  server.Post(R"(/api/.*)", bridge);
}

}  // namespace splitlab
