#pragma once

#include <string>

#include <httplib.h>
#include <json.hpp>

#include "ichomp/service.hpp"

namespace ichomp {

namespace detail {

inline void send(httplib::Response& res, const ServiceResponse& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

/// Parses a request body; an empty body reads as {}.
inline bool parse_body(const httplib::Request& req, httplib::Response& res, nlohmann::json& out) {
  if (req.body.empty()) {
    out = nlohmann::json::object();
    return true;
  }
  out = nlohmann::json::parse(req.body, nullptr, false);
  if (out.is_discarded()) {
    send(res, error_response(400, "parse_error", "request body is not valid JSON"));
    return false;
  }
  return true;
}

}  // namespace detail

/// Mounts the JSON API of `service` on `server`.
inline void register_routes(httplib::Server& server, GameService& service) {
  using detail::parse_body;
  using detail::send;

  server.Get("/catalog", [&service](const httplib::Request& req, httplib::Response& res) {
    std::optional<std::uint32_t> p;
    if (req.has_param("field")) {
      try {
        p = static_cast<std::uint32_t>(std::stoul(req.get_param_value("field")));
      } catch (const std::exception&) {
        send(res, error_response(400, "invalid_argument", "field must be a prime"));
        return;
      }
    }
    send(res, service.list_catalog(p));
  });

  server.Post("/games", [&service](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    if (parse_body(req, res, body)) send(res, service.create_game(body));
  });

  server.Get(R"(/games/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.get_game(req.matches[1]));
  });

  server.Post(R"(/games/([^/]+)/moves)", [&service](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    if (parse_body(req, res, body)) send(res, service.post_move(req.matches[1], body));
  });

  server.Post(R"(/games/([^/]+)/check)", [&service](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    if (parse_body(req, res, body)) send(res, service.check_move(req.matches[1], body));
  });

  server.Get(R"(/games/([^/]+)/hint)", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.hint(req.matches[1]));
  });

  server.Get(R"(/games/([^/]+)/transcript)", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.transcript(req.matches[1]));
  });

  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const Error& e) {
      send(res, error_response(e));
    } catch (const std::exception& e) {
      send(res, error_response(500, "internal", e.what()));
    }
  });
}

}  // namespace ichomp
