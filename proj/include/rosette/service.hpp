#pragma once

// Stateless HTTP/JSON front end: every request carries the whole complex.
//
//   GET  /v1/health     -> {"status":"ok"}
//   POST /v1/design     {complex, params?} -> {packing, patch, design, svg[, tau_sweep]}
//   POST /v1/tau-sweep  {complex, params?} -> {best_tau, best_error, curve}
//
// 400 for malformed bodies or invalid complexes (with the validation report),
// 422 when the radius solver does not converge, 500 for anything else.

#include <set>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "rosette/complex_io.hpp"
#include "rosette/dump.hpp"
#include "rosette/pipeline.hpp"

namespace rosette {

namespace detail {

inline Layer layer_from_string(const std::string& s) {
  if (s == "circles") return Layer::Circles;
  if (s == "patch") return Layer::Patch;
  if (s == "motif") return Layer::Motif;
  if (s == "rosette-labels" || s == "labels") return Layer::RosetteLabels;
  throw Error(ErrorCode::InvalidArgument, "unknown layer '" + s + "'");
}

inline TauMode tau_mode_from_string(const std::string& s) {
  if (s == "scale") return TauMode::Scale;
  if (s == "offset") return TauMode::Offset;
  throw Error(ErrorCode::InvalidArgument, "tau_mode must be 'scale' or 'offset'");
}

inline FillerRule filler_rule_from_string(const std::string& s) {
  if (s == "all") return FillerRule::AllNeighborsKept;
  if (s == "any-two") return FillerRule::AnyTwoKept;
  throw Error(ErrorCode::InvalidArgument, "filler_rule must be 'all' or 'any-two'");
}

template <class T>
T param(const nlohmann::json& p, const char* key, T fallback) {
  if (!p.contains(key) || p[key].is_null()) return fallback;
  try {
    return p[key].get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("params.") + key, 0, "wrong type");
  }
}

}  // namespace detail

/**
 * Reads request parameters into a pipeline configuration. Recognised keys:
 * tau, tau_mode, theta, alpha, trim_depth, filler_rule, keep, discard,
 * stamp, fix_hexagons, optimize_tau, tau_from, tau_to, tau_step,
 * stroke_width, margin, layers, background, tolerance, max_sweeps.
 */
inline PipelineConfig config_from_json(const nlohmann::json& p) {
  PipelineConfig c;
  if (p.is_null()) return c;
  if (!p.is_object()) throw ParseError("params", 0, "expected an object");
  c.solver.residual_tolerance = detail::param(p, "tolerance", c.solver.residual_tolerance);
  c.solver.max_sweeps = detail::param(p, "max_sweeps", c.solver.max_sweeps);
  c.patch.tau = detail::param(p, "tau", c.patch.tau);
  c.patch.tau_mode = detail::tau_mode_from_string(detail::param<std::string>(p, "tau_mode", "scale"));
  c.motif.theta = detail::param(p, "theta", c.motif.theta);
  if (p.contains("alpha") && !p["alpha"].is_null()) c.motif.alpha_override = detail::param(p, "alpha", 0.0);
  c.motif.trim_depth = detail::param(p, "trim_depth", c.motif.trim_depth);
  c.motif.filler_rule = detail::filler_rule_from_string(detail::param<std::string>(p, "filler_rule", "all"));
  if (p.contains("keep") && !p["keep"].is_null()) c.motif.keep = detail::param(p, "keep", std::set<int>{});
  c.motif.discard = detail::param(p, "discard", c.motif.discard);
  c.motif.stamp = detail::param(p, "stamp", c.motif.stamp);
  c.motif.fix_hexagons = detail::param(p, "fix_hexagons", c.motif.fix_hexagons);
  c.optimize_tau = detail::param(p, "optimize_tau", c.optimize_tau);
  c.tau_range.from = detail::param(p, "tau_from", c.tau_range.from);
  c.tau_range.to = detail::param(p, "tau_to", c.tau_range.to);
  c.tau_range.step = detail::param(p, "tau_step", c.tau_range.step);
  c.style.stroke_width = detail::param(p, "stroke_width", c.style.stroke_width);
  c.style.margin = detail::param(p, "margin", c.style.margin);
  if (p.contains("layers")) {
    c.style.layers.clear();
    for (const auto& name : detail::param(p, "layers", std::vector<std::string>{})) {
      c.style.layers.insert(detail::layer_from_string(name));
    }
  }
  if (p.contains("background") && !p["background"].is_null()) {
    c.style.background = detail::param<std::string>(p, "background", "");
  }
  return c;
}

inline nlohmann::ordered_json design_response(const PipelineResult& r) {
  nlohmann::ordered_json out;
  out["packing"] = packing_to_json(r.packing);
  out["patch"] = patch_to_json(r.patch);
  out["design"] = design_to_json(r.design);
  out["svg"] = r.svg;
  if (r.sweep) out["tau_sweep"] = sweep_to_json(*r.sweep);
  return out;
}

struct HttpReply {
  int status = 200;
  nlohmann::ordered_json body;
};

namespace detail {

template <class F>
HttpReply guarded(const std::string& body, F&& handler) {
  auto fail = [](int status, const Error& e) {
    nlohmann::ordered_json j;
    j["error"] = to_string(e.code());
    j["message"] = e.what();
    return HttpReply{status, j};
  };
  try {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("body", 0, e.what());
    }
    if (!doc.is_object() || !doc.contains("complex")) throw ParseError("complex", 0, "missing");
    const Complex complex = complex_from_json(doc["complex"]);
    const PipelineConfig config = config_from_json(doc.contains("params") ? doc["params"] : nlohmann::json());
    return HttpReply{200, handler(complex, config)};
  } catch (const ValidationError& e) {
    HttpReply r = fail(400, e);
    r.body["report"] = report_to_json(e.report());
    return r;
  } catch (const ParseError& e) {
    return fail(400, e);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) return fail(400, e);
    if (e.code() == ErrorCode::NonConvergence) return fail(422, e);
    return fail(500, e);
  } catch (const std::exception& e) {
    return HttpReply{500, {{"error", "internal"}, {"message", e.what()}}};
  }
}

}  // namespace detail

inline HttpReply handle_design(const std::string& body) {
  return detail::guarded(body, [](const Complex& c, const PipelineConfig& config) {
    return design_response(run_pipeline(c, config));
  });
}

inline HttpReply handle_tau_sweep(const std::string& body) {
  return detail::guarded(body, [](const Complex& c, const PipelineConfig& config) {
    require_valid(c);
    const Packing packing = compute_packing(c, config.solver);
    return sweep_to_json(optimize_tau(packing, c, config.tau_range, config.patch.tau_mode));
  });
}

/// Registers the /v1 routes on a server. Handlers share no mutable state.
inline void install_routes(httplib::Server& server) {
  auto reply = [](httplib::Response& res, const HttpReply& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get("/v1/health", [reply](const httplib::Request&, httplib::Response& res) {
    reply(res, {200, {{"status", "ok"}}});
  });
  server.Post("/v1/design", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_design(req.body));
  });
  server.Post("/v1/tau-sweep", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_tau_sweep(req.body));
  });
}

}  // namespace rosette
