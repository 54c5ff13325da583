#pragma once

// HTTP/JSON front door:
//   POST /api/query   {"question": "..."} -> QueryResponse JSON
//   GET  /api/schema  table/column/synonym inventory
//   GET  /healthz     "ok"

#include <iostream>
#include <memory>
#include <string>

#include "httplib.h"
#include "json.hpp"
#include "nlq/query_service.hpp"

namespace nlq {

namespace detail {

inline void reply_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(dump_json(body), "application/json");
}

}  // namespace detail

/// The engine must outlive the server.
inline std::unique_ptr<httplib::Server> make_http_server(const Engine& engine) {
  auto server = std::make_unique<httplib::Server>();
  server->set_default_headers({{"Access-Control-Allow-Origin", "*"}});

  server->Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });

  server->Get("/api/schema", [&engine](const httplib::Request&, httplib::Response& res) {
    detail::reply_json(res, 200, schema_json(engine.config()));
  });

  server->Options("/api/query", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  server->Post("/api/query", [&engine](const httplib::Request& req, httplib::Response& res) {
    auto body = nlohmann::json::parse(req.body, nullptr, /*allow_exceptions=*/false);
    if (body.is_discarded() || !body.is_object()) {
      detail::reply_json(res, 400, {{"error", "request body must be a JSON object"}});
      return;
    }
    auto it = body.find("question");
    if (it == body.end() || !it->is_string()) {
      detail::reply_json(res, 400, {{"error", "field 'question' must be a string"}});
      return;
    }
    detail::reply_json(res, 200, to_json(answer_question(it->get<std::string>(), engine)));
  });

  server->set_exception_handler(
      [](const httplib::Request& req, httplib::Response& res, std::exception_ptr ep) {
        try {
          if (ep) std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          std::clog << "nlq: " << req.method << ' ' << req.path << " failed: " << e.what() << '\n';
        } catch (...) {
          std::clog << "nlq: " << req.method << ' ' << req.path << " failed\n";
        }
        detail::reply_json(res, 500, {{"error", "internal server error"}});
      });
  return server;
}

/// Blocks serving until the server is stopped. Returns false when the port
/// cannot be bound.
inline bool serve_http(const Engine& engine, int port, const std::string& host = "0.0.0.0") {
  auto server = make_http_server(engine);
  std::clog << "nlq: listening on " << host << ':' << port << '\n';
  return server->listen(host, port);
}

}  // namespace nlq
