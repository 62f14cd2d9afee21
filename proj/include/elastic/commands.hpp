#pragma once

// The command-line subcommands as pure functions from input text to output
// text and an exit status, so that the tool and its tests share one code path.
//
// Exit status: 0 success, 1 malformed input, 2 infeasible configuration or
// fit failure, 3 internal solver error.

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include "elastic/json_io.hpp"
#include "elastic/scurve.hpp"
#include "elastic/spline.hpp"
#include "elastic/svg.hpp"

namespace elastic::cli {

enum ExitCode : int { kOk = 0, kMalformed = 1, kInfeasible = 2, kInternal = 3 };

struct CommandResult {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

namespace detail {

inline CommandResult failure(int code, const std::string& message, json details = nullptr) {
  json body{{"error", message}};
  if (!details.is_null()) body["details"] = std::move(details);
  return {code, "", body.dump() + "\n"};
}

// Maps the library's exception types onto exit codes.
template <class Body>
CommandResult guarded(Body&& body) {
  try {
    return body();
  } catch (const FeasibilityError& e) {
    return failure(kInfeasible, e.what(), {{"alpha", e.alpha()}, {"beta", e.beta()}});
  } catch (const FitError& e) {
    return failure(kInfeasible, e.what(), {{"report", report_json(e.report())}});
  } catch (const DomainError& e) {
    return failure(kMalformed, e.what());
  } catch (const json::exception& e) {
    return failure(kMalformed, std::string("malformed input: ") + e.what());
  } catch (const InternalError& e) {
    return failure(kInternal, e.what());
  }
}

inline std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

/// {"u": ..., "v": ...} -> SolverResult JSON. A polyline of `samples` points is
/// attached when samples > 0.
inline CommandResult cmd_scurve(const std::string& input, std::size_t samples = 0) {
  return detail::guarded([&] {
    const json doc = parse_document(input);
    const auto [u, v] = read_schema(doc, tangent_pair_from_json);
    const auto r = scurve::solve(u, v);
    json out = to_json_value(r);
    if (samples > 0) out["polyline"] = polyline_json(sample(r.curve, samples));
    return CommandResult{kOk, out.dump() + "\n", ""};
  });
}

/// SplineProblem JSON (optionally with "options") -> SplineFit JSON. A seed
/// given here overrides the document's. With `verbose`, the energy trace is
/// written to the error stream one step per line.
inline CommandResult cmd_spline(const std::string& input, std::optional<std::uint64_t> seed = std::nullopt,
                                bool verbose = false) {
  return detail::guarded([&] {
    const json doc = parse_document(input);
    const auto problem = read_schema(doc, spline_problem_from_json);
    auto opts = read_schema(doc, fit_options_from_json);
    if (seed) opts.seed = *seed;
    const auto fit = spline::fit(problem, opts);
    CommandResult r{kOk, to_json_value(fit).dump() + "\n", ""};
    if (verbose) {
      for (std::size_t k = 0; k < fit.trace.size(); ++k) {
        r.err += "step " + std::to_string(k) + " energy " + detail::csv_number(fit.trace[k]) + "\n";
      }
      r.err += std::string("converged ") + (fit.converged ? "true" : "false") + " after " +
               std::to_string(fit.iterations) + " sweeps\n";
    }
    return r;
  });
}

/// CSV of (gamma, G, sigma, lambda) at n equally spaced gamma over the domain,
/// which is cut short of the pole when it is open at 0. A singleton domain
/// gives one row.
inline CommandResult cmd_table(double alpha, double beta, std::size_t n) {
  return detail::guarded([&] {
    if (n == 0) throw DomainError("table: need at least one row");
    if (!feasible(alpha, beta)) throw FeasibilityError(alpha, beta);
    if (!(alpha > 0.0)) throw DomainError("table: alpha must be positive");
    const scurve::GammaFunctions f(alpha, std::max(beta, alpha - kPi));
    const auto dom = scurve::GammaDomain::of(alpha, f.beta());
    const double hi = dom.scan_hi();
    const std::size_t rows = dom.singleton() ? 1 : n;
    std::string out = "gamma,G,sigma,lambda\n";
    for (std::size_t k = 0; k < rows; ++k) {
      const double g = rows == 1 ? dom.lo
                       : k + 1 == rows
                           ? hi
                           : dom.lo + (hi - dom.lo) * static_cast<double>(k) / static_cast<double>(rows - 1);
      out += detail::csv_number(g) + "," + detail::csv_number(f.G(g)) + "," + detail::csv_number(f.sigma(g)) + "," +
             detail::csv_number(f.lambda(g)) + "\n";
    }
    return CommandResult{kOk, out, ""};
  });
}

/// Curve JSON -> SVG. Also accepts any document carrying a "curve" field
/// (solver results, spline fits).
inline CommandResult cmd_render(const std::string& input, const svg::RenderStyle& style = {}) {
  return detail::guarded([&] {
    const json doc = parse_document(input);
    const json& curve_doc = doc.is_object() && !doc.contains("segments") && doc.contains("curve") ? doc["curve"] : doc;
    const auto curve = read_schema(curve_doc, curve_from_json);
    return CommandResult{kOk, svg::render(curve, style), ""};
  });
}

}  // namespace elastic::cli
