#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rosette/rosette.hpp"
#include "rosette/service.hpp"

namespace {

using namespace rosette;

struct Options {
  std::string in;
  std::string demo;
  std::uint64_t seed = 7;
  std::string out;
  int max_sweeps = 50000;
  double tolerance = 1e-10;
  double tau = 0.8;
  std::string tau_mode = "scale";
  double theta = 2.0 * kPi / 5.0;
  std::optional<double> alpha;
  int trim = 1;
  std::string filler_rule = "all";
  std::vector<int> keep;
  std::vector<int> discard;
  int stamp = 3;
  bool no_fix = false;
  bool optimize = false;
  double tau_from = 0.5, tau_to = 0.95, tau_step = 0.005;
  double stroke_width = 0.03;
  double margin = 0.5;
  std::vector<std::string> layers{"motif"};
  std::string background;
  std::string artifacts;
  std::string host = "127.0.0.1";
  int port = 8080;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  f << text;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
  } else {
    write_file(o.out, text);
  }
}

Complex load(const Options& o) {
  if (!o.demo.empty() && !o.in.empty()) throw Error(ErrorCode::InvalidArgument, "use either --in or --demo");
  if (!o.demo.empty()) return demo(o.demo, o.seed);
  if (o.in.empty()) throw Error(ErrorCode::InvalidArgument, "an input is required: --in FILE or --demo NAME");
  Complex c = parse_complex_unchecked(read_file(o.in));
  require_valid(c);
  return c;
}

PipelineConfig config(const Options& o) {
  nlohmann::json p;
  p["max_sweeps"] = o.max_sweeps;
  p["tolerance"] = o.tolerance;
  p["tau"] = o.tau;
  p["tau_mode"] = o.tau_mode;
  p["theta"] = o.theta;
  if (o.alpha) p["alpha"] = *o.alpha;
  p["trim_depth"] = o.trim;
  p["filler_rule"] = o.filler_rule;
  if (!o.keep.empty()) p["keep"] = o.keep;
  p["discard"] = o.discard;
  p["stamp"] = o.stamp;
  p["fix_hexagons"] = !o.no_fix;
  p["optimize_tau"] = o.optimize;
  p["tau_from"] = o.tau_from;
  p["tau_to"] = o.tau_to;
  p["tau_step"] = o.tau_step;
  p["stroke_width"] = o.stroke_width;
  p["margin"] = o.margin;
  p["layers"] = o.layers;
  if (!o.background.empty()) p["background"] = o.background;
  return config_from_json(p);
}

void add_input(CLI::App* cmd, Options& o) {
  cmd->add_option("--in", o.in, "complex JSON file");
  cmd->add_option("--demo", o.demo, "built-in complex: " + [] {
    std::string s;
    for (const auto& n : demo_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }());
  cmd->add_option("--seed", o.seed, "seed for generated demos");
  cmd->add_option("--out,-o", o.out, "output file (stdout when omitted)");
  cmd->add_option("--max-sweeps", o.max_sweeps, "radius solver sweep limit");
  cmd->add_option("--tolerance", o.tolerance, "radius solver angle-sum tolerance");
}

void add_patch(CLI::App* cmd, Options& o) {
  cmd->add_option("--tau", o.tau, "polygon size parameter in (0,1)");
  cmd->add_option("--tau-mode", o.tau_mode, "scale or offset")->check(CLI::IsMember({"scale", "offset"}));
  cmd->add_flag("--optimize-tau", o.optimize, "pick tau by the filler symmetry sweep");
  cmd->add_option("--tau-from", o.tau_from);
  cmd->add_option("--tau-to", o.tau_to);
  cmd->add_option("--tau-step", o.tau_step);
}

void add_motif(CLI::App* cmd, Options& o) {
  cmd->add_option("--theta", o.theta, "contact angle in radians");
  cmd->add_option("--alpha", o.alpha, "explicit star inner radius fraction");
  cmd->add_option("--trim", o.trim, "rosette trim depth");
  cmd->add_option("--filler-rule", o.filler_rule, "all or any-two")->check(CLI::IsMember({"all", "any-two"}));
  cmd->add_option("--keep", o.keep, "circle ids to keep (replaces automatic selection)")->delimiter(',');
  cmd->add_option("--discard", o.discard, "circle ids to drop")->delimiter(',');
  cmd->add_option("--stamp", o.stamp, "torus copies per lattice direction");
  cmd->add_flag("--no-hexagon-fix", o.no_fix, "leave crossing strokes in barrel hexagons");
}

void add_style(CLI::App* cmd, Options& o) {
  cmd->add_option("--stroke-width", o.stroke_width);
  cmd->add_option("--margin", o.margin);
  cmd->add_option("--layers", o.layers, "circles, patch, motif, rosette-labels")->delimiter(',');
  cmd->add_option("--background", o.background, "background colour");
}

int run(CLI::App& app, const Options& o) {
  const std::string cmd = app.get_subcommands().front()->get_name();
  if (cmd == "validate") {
    Complex c = o.demo.empty() ? parse_complex_unchecked(read_file(o.in)) : demo(o.demo, o.seed);
    const ValidationReport r = validate(c);
    for (const auto& v : r.violations) std::cerr << v.location << ": " << v.message << "\n";
    emit(o, dump_lines(nlohmann::ordered_json{{"ok", r.ok()}, {"violations", report_to_json(r)}}));
    return r.ok() ? 0 : 1;
  }
  if (cmd == "serve") {
    httplib::Server server;
    install_routes(server);
    std::cerr << "listening on " << o.host << ":" << o.port << "\n";
    if (!server.listen(o.host, o.port)) throw Error(ErrorCode::InvalidArgument, "cannot bind " + o.host);
    return 0;
  }

  const Complex complex = load(o);
  if (cmd == "complex") {
    emit(o, serialize_complex(complex));
    return 0;
  }
  const PipelineConfig cfg = config(o);
  if (cmd == "tau-sweep") {
    const Packing packing = compute_packing(complex, cfg.solver);
    emit(o, dump_lines(sweep_to_json(optimize_tau(packing, complex, cfg.tau_range, cfg.patch.tau_mode))));
    return 0;
  }
  if (cmd == "pack") {
    emit(o, dump_lines(packing_to_json(compute_packing(complex, cfg.solver))));
    return 0;
  }
  const PipelineResult r = run_pipeline(complex, cfg);
  for (const auto& f : r.design.failures) std::cerr << "polygon " << f.polygon << ": " << f.message << "\n";
  for (const auto& n : r.design.notes) std::cerr << "note: " << n << "\n";
  if (cmd == "patch") {
    emit(o, dump_lines(patch_to_json(r.patch)));
  } else if (cmd == "design") {
    emit(o, dump_lines(design_to_json(r.design)));
  } else {
    emit(o, r.svg);
  }
  if (cmd == "pipeline" && !o.artifacts.empty()) {
    const std::filesystem::path dir(o.artifacts);
    std::filesystem::create_directories(dir);
    write_file(dir / "complex.json", serialize_complex(r.complex));
    write_file(dir / "packing.json", dump_lines(packing_to_json(r.packing)));
    write_file(dir / "patch.json", dump_lines(patch_to_json(r.patch)));
    write_file(dir / "design.json", dump_lines(design_to_json(r.design)));
    write_file(dir / "design.svg", r.svg);
    if (r.sweep) write_file(dir / "tau_sweep.json", dump_lines(sweep_to_json(*r.sweep)));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rosette patterns from circle packings"};
  app.require_subcommand(1);
  Options o;

  auto* validate_cmd = app.add_subcommand("validate", "check a complex and list violations");
  add_input(validate_cmd, o);
  auto* export_cmd = app.add_subcommand("complex", "write the input complex in canonical form");
  add_input(export_cmd, o);
  auto* pack = app.add_subcommand("pack", "solve the circle packing");
  add_input(pack, o);
  auto* sweep = app.add_subcommand("tau-sweep", "filler symmetry error as a function of tau");
  add_input(sweep, o);
  add_patch(sweep, o);
  auto* patch = app.add_subcommand("patch", "build the polygonal patch");
  add_input(patch, o);
  add_patch(patch, o);
  for (const char* name : {"design", "render", "pipeline"}) {
    auto* cmd = app.add_subcommand(name, std::string(name) == "design" ? "place motifs and select rosettes"
                                         : std::string(name) == "render" ? "write the design as SVG"
                                                                          : "run every stage and write the SVG");
    add_input(cmd, o);
    add_patch(cmd, o);
    add_motif(cmd, o);
    add_style(cmd, o);
    if (std::string(name) == "pipeline") cmd->add_option("--artifacts", o.artifacts, "directory for all intermediate files");
  }
  auto* serve = app.add_subcommand("serve", "run the HTTP design service");
  serve->add_option("--bind", o.host, "address to listen on");
  serve->add_option("--port", o.port);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  try {
    return run(app, o);
  } catch (const ValidationError& e) {
    for (const auto& v : e.report().violations) std::cerr << "error: " << v.location << ": " << v.message << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
