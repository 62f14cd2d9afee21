#pragma once

// Stateless HTTP JSON API over the solver and the spline fitter.
//
//   POST /api/scurve?samples=N   {"u":..., "v":...}          -> SolverResult + polyline
//   POST /api/spline?samples=N   SplineProblem [+ options]   -> SplineFit + per-segment polylines
//   GET  /api/health                                         -> {"status":"ok","d":...}
//
// Errors carry {"code": "infeasible" | "bad_request" | "internal", "message", "details"?}
// with status 422, 400 and 500 respectively.

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include <httplib.h>

#include "elastic/json_io.hpp"
#include "elastic/scurve.hpp"
#include "elastic/spline.hpp"

namespace elastic::service {

inline constexpr std::size_t kDefaultSamples = 128;
inline constexpr std::size_t kMaxSamples = 100000;
inline constexpr std::size_t kMaxBodyBytes = 1 << 20;
inline constexpr int kDefaultPort = 8787;

struct Response {
  int status = 200;
  std::string body;
};

enum class ErrorCode { infeasible, bad_request, internal };

inline std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::bad_request: return "bad_request";
    case ErrorCode::internal: return "internal";
  }
  return "internal";
}

inline int status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::infeasible: return 422;
    case ErrorCode::bad_request: return 400;
    case ErrorCode::internal: return 500;
  }
  return 500;
}

inline Response api_error(ErrorCode code, const std::string& message, json details = nullptr) {
  json body{{"code", to_string(code)}, {"message", message}};
  if (!details.is_null()) body["details"] = std::move(details);
  return {status_of(code), body.dump()};
}

namespace detail {

template <class Body>
Response guarded(Body&& body) {
  try {
    return body();
  } catch (const FeasibilityError& e) {
    return api_error(ErrorCode::infeasible, e.what(), {{"alpha", e.alpha()}, {"beta", e.beta()}});
  } catch (const FitError& e) {
    return api_error(ErrorCode::infeasible, e.what(), {{"report", report_json(e.report())}});
  } catch (const DomainError& e) {
    return api_error(ErrorCode::bad_request, e.what());
  } catch (const json::exception& e) {
    return api_error(ErrorCode::bad_request, e.what());
  } catch (const std::exception& e) {
    return api_error(ErrorCode::internal, e.what());
  }
}

}  // namespace detail

/// Parses the `samples` query value; absent means the default.
inline std::size_t parse_samples(const std::optional<std::string>& text) {
  if (!text) return kDefaultSamples;
  std::size_t n = 0;
  const auto* end = text->data() + text->size();
  const auto [ptr, ec] = std::from_chars(text->data(), end, n);
  if (ec != std::errc() || ptr != end || n < 2 || n > kMaxSamples) {
    throw DomainError("samples must be an integer in [2, " + std::to_string(kMaxSamples) + "]");
  }
  return n;
}

inline Response handle_scurve(const std::string& body, const std::optional<std::string>& samples = std::nullopt) {
  return detail::guarded([&] {
    const std::size_t n = parse_samples(samples);
    const json doc = parse_document(body);
    const auto [u, v] = read_schema(doc, tangent_pair_from_json);
    const auto r = scurve::solve(u, v);
    json out = to_json_value(r);
    out["polyline"] = polyline_json(sample(r.curve, n));
    return Response{200, out.dump()};
  });
}

inline Response handle_spline(const std::string& body, const std::optional<std::string>& samples = std::nullopt) {
  return detail::guarded([&] {
    const std::size_t n = parse_samples(samples);
    const json doc = parse_document(body);
    const auto problem = read_schema(doc, spline_problem_from_json);
    const auto opts = read_schema(doc, fit_options_from_json);
    return Response{200, to_json_value(spline::fit(problem, opts), n).dump()};
  });
}

inline Response handle_health() {
  return {200, json{{"status", "ok"}, {"d", elastica::d()}}.dump()};
}

/// Origins of the form http(s)://localhost[:port] or http(s)://127.0.0.1[:port].
inline bool is_local_origin(const std::string& origin) {
  for (const char* scheme : {"http://", "https://"}) {
    for (const char* host : {"localhost", "127.0.0.1", "[::1]"}) {
      const std::string prefix = std::string(scheme) + host;
      if (origin.rfind(prefix, 0) != 0) continue;
      const std::string rest = origin.substr(prefix.size());
      if (rest.empty()) return true;
      if (rest.size() > 1 && rest[0] == ':' &&
          rest.find_first_not_of("0123456789", 1) == std::string::npos) {
        return true;
      }
    }
  }
  return false;
}

namespace detail {

inline void apply_cors(const httplib::Request& req, httplib::Response& res) {
  const auto origin = req.get_header_value("Origin");
  if (!origin.empty() && is_local_origin(origin)) {
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Vary", "Origin");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  }
}

inline std::optional<std::string> query(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  return req.get_param_value(key);
}

inline void send(const httplib::Request& req, httplib::Response& res, const Response& r) {
  apply_cors(req, res);
  res.status = r.status;
  res.set_content(r.body, "application/json");
}

}  // namespace detail

/// Installs the API routes and limits on a server.
inline void register_routes(httplib::Server& server) {
  server.set_payload_max_length(kMaxBodyBytes);
  server.Post("/api/scurve", [](const httplib::Request& req, httplib::Response& res) {
    detail::send(req, res, handle_scurve(req.body, detail::query(req, "samples")));
  });
  server.Post("/api/spline", [](const httplib::Request& req, httplib::Response& res) {
    detail::send(req, res, handle_spline(req.body, detail::query(req, "samples")));
  });
  server.Get("/api/health", [](const httplib::Request& req, httplib::Response& res) {
    detail::send(req, res, handle_health());
  });
  server.Options(R"(/api/.*)", [](const httplib::Request& req, httplib::Response& res) {
    detail::apply_cors(req, res);
    res.status = 204;
  });
}

/// Port from the ELASTIC_PORT environment variable, else the default.
inline int port_from_env() {
  const char* text = std::getenv("ELASTIC_PORT");
  if (text == nullptr || *text == '\0') return kDefaultPort;
  int port = 0;
  const auto* end = text + std::strlen(text);
  const auto [ptr, ec] = std::from_chars(text, end, port);
  if (ec != std::errc() || ptr != end || port <= 0 || port > 65535) {
    throw DomainError(std::string("ELASTIC_PORT is not a valid port: ") + text);
  }
  return port;
}

}  // namespace elastic::service
