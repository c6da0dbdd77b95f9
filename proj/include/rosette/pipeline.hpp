#pragma once

// Complex to SVG in one call, keeping every intermediate artifact.

#include <optional>
#include <string>
#include <utility>

#include "rosette/complex.hpp"
#include "rosette/csm.hpp"
#include "rosette/design.hpp"
#include "rosette/error.hpp"
#include "rosette/packing.hpp"
#include "rosette/patch.hpp"
#include "rosette/render.hpp"

namespace rosette {

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report)
      : Error(ErrorCode::ValidationFailed, summary(report)), report_(std::move(report)) {}

  const ValidationReport& report() const noexcept { return report_; }

 private:
  static std::string summary(const ValidationReport& r) {
    std::string out = std::to_string(r.violations.size()) + " violation(s)";
    if (!r.violations.empty()) out += ", first: " + r.violations.front().location + ": " + r.violations.front().message;
    return out;
  }

  ValidationReport report_;
};

struct PipelineConfig {
  SolverConfig solver;
  PatchParams patch;
  MotifParams motif;
  bool optimize_tau = false;
  TauRange tau_range;
  StyleConfig style;
};

struct PipelineResult {
  Complex complex;
  SolveResult solve;
  Packing packing;
  Patch patch;
  Design design;
  std::optional<TauSweep> sweep;
  std::string svg;
};

/// Throws ValidationError when the complex is invalid.
inline void require_valid(const Complex& complex) {
  ValidationReport report = validate(complex);
  if (!report.ok()) throw ValidationError(std::move(report));
}

inline PipelineResult run_pipeline(const Complex& complex, const PipelineConfig& config = {}) {
  require_valid(complex);
  PipelineResult r;
  r.complex = complex;
  r.solve = solve_radii(complex, config.solver);
  r.packing = layout(complex, r.solve.radii);
  PatchParams params = config.patch;
  if (config.optimize_tau) {
    r.sweep = optimize_tau(r.packing, complex, config.tau_range, params.tau_mode);
    if (std::isfinite(r.sweep->best_error)) params.tau = r.sweep->best_tau;
  }
  r.patch = build_patch(r.packing, complex, params);
  r.design = assemble(r.patch, r.packing, complex, config.motif);
  r.svg = emit_svg(Scene{&r.packing, &r.patch, &r.design}, config.style);
  return r;
}

/// Process exit status for an exception escaping the pipeline.
inline int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationFailed: return 1;
    case ErrorCode::NonConvergence: return 2;
    default: return 3;
  }
}

}  // namespace rosette
