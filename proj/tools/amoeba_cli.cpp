// Command-line front end: analyze, render and bounds over an input document.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "amoeba/amoeba.hpp"
#include "amoeba/document.hpp"
#include "amoeba/errors.hpp"
#include "amoeba/kernels.hpp"
#include "amoeba/render.hpp"

namespace {

using amoeba::Error;
using amoeba::ErrorKind;

struct Settings {
  std::string input;
  std::string out;
  std::size_t resolution = 400;
  std::size_t theta_grid = 64;
  std::size_t threads = 1;
  std::vector<double> box;
  std::vector<double> window;
  double pixel_density = 10.0;
  bool heat = false;
  std::string isa;
};

amoeba::ScanOptions scan_options(const Settings& s, std::size_t n) {
  amoeba::ScanOptions o;
  o.resolution = s.resolution;
  o.membership.theta_grid = s.theta_grid;
  o.threads = s.threads;
  if (!s.box.empty()) {
    if (s.box.size() != 2 * n)
      throw Error(ErrorKind::InvalidInput, "cli", "--box needs lo hi per axis (" + std::to_string(2 * n) + " numbers)");
    amoeba::Box b;
    for (std::size_t i = 0; i < n; ++i) {
      b.lo.push_back(s.box[2 * i]);
      b.hi.push_back(s.box[2 * i + 1]);
    }
    o.box = b;
  }
  return o;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorKind::InvalidInput, "cli", "cannot write '" + path + "'");
}

struct Analysis {
  amoeba::InputDocument doc;
  amoeba::LatticeIso iso;
  amoeba::AmoebaReport report;
  amoeba::ScanOptions scan;
};

Analysis run_analysis(const Settings& s) {
  amoeba::InputDocument doc = amoeba::load_input(s.input);
  amoeba::LatticeIso iso = doc.build_iso();
  amoeba::AnalysisOptions opts;
  opts.scan = scan_options(s, doc.n);
  amoeba::AmoebaReport report = amoeba::analyze(doc.to_sum(), iso, opts);
  return {std::move(doc), std::move(iso), std::move(report), opts.scan};
}

int cmd_analyze(const Settings& s) {
  const Analysis a = run_analysis(s);
  amoeba::Provenance prov;
  prov.kernel_isa = std::string(amoeba::kernels::isa_name(amoeba::kernels::active_kernels().isa));
  prov.threads = s.threads;
  prov.scan = a.scan;
  const std::string text = amoeba::report_to_json(a.report, a.doc, a.iso, prov).dump(2) + "\n";
  if (s.out.empty() || s.out == "-") std::cout << text;
  else write_file(s.out, text);
  return 0;
}

int cmd_bounds(const Settings& s) {
  const Analysis a = run_analysis(s);
  amoeba::check_bound_chain(a.report);
  std::cout << amoeba::bounds_line(a.report) << "\n";
  return 0;
}

int cmd_render(const Settings& s) {
  const Analysis a = run_analysis(s);
  amoeba::FigureSpec fig;
  if (!s.window.empty()) {
    if (s.window.size() != 4) throw Error(ErrorKind::InvalidInput, "cli", "--window needs x0 x1 y0 y1");
    fig.window = {{s.window[0], s.window[2]}, {s.window[1], s.window[3]}};
  }
  fig.pixel_density = s.pixel_density;
  fig.heat = s.heat;
  fig.membership.theta_grid = s.theta_grid;
  fig.threads = s.threads;
  const std::string prefix = s.out.empty() ? "figure" : s.out;
  const amoeba::AmoebaFigure amoeba_fig =
      amoeba::render_amoeba(amoeba::laurent_from(a.doc.to_sum(), a.iso), a.iso, a.report.components, fig);
  const amoeba::LatticePolytope hull = amoeba::convex_hull(a.report.gamma_points);
  write_file(prefix + "_amoeba.svg", amoeba_fig.svg);
  write_file(prefix + "_polytope.svg", amoeba::render_polytope(hull, a.report.lambda, fig));
  std::cout << prefix << "_amoeba.svg (" << amoeba_fig.labeled_regions << " labeled regions)\n"
            << prefix << "_polytope.svg\n";
  return 0;
}

void print_error(const Error& e) {
  const nlohmann::json j{{"error",
                          {{"module", e.module()}, {"kind", std::string(amoeba::to_string(e.kind()))}, {"message", e.what()}}}};
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Amoebas of exponential sums: lattice data, bounds, complement components and figures"};
  app.require_subcommand(1);
  Settings s;

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", s.input, "input document (JSON)")->required();
    sub->add_option("--resolution", s.resolution, "samples per axis of the component scan")->check(CLI::Range(2, 100000));
    sub->add_option("--theta-grid", s.theta_grid, "torus nodes per axis for membership")->check(CLI::Range(16, 4096));
    sub->add_option("--box", s.box, "scan box: lo hi per axis (default: automatic)")->expected(2, 4);
    sub->add_option("--threads", s.threads, "worker threads")->check(CLI::Range(1, 256));
    sub->add_option("--isa", s.isa, "torus kernel: scalar or avx2 (default: best available)")
        ->check(CLI::IsMember({"scalar", "avx2"}));
  };
  CLI::App* analyze = app.add_subcommand("analyze", "write the full report");
  common(analyze);
  analyze->add_option("--out", s.out, "report path (default: stdout)");
  CLI::App* render = app.add_subcommand("render", "write PREFIX_amoeba.svg and PREFIX_polytope.svg");
  common(render);
  render->add_option("--out", s.out, "output prefix (default: figure)");
  render->add_option("--window", s.window, "amoeba window x0 x1 y0 y1")->expected(4);
  render->add_option("--pixel-density", s.pixel_density, "raster samples per unit")->check(CLI::Range(10.0, 1000.0));
  render->add_flag("--heat", s.heat, "shade by min |P| over the torus");
  CLI::App* bounds = app.add_subcommand("bounds", "print the bound chain");
  common(bounds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!s.isa.empty()) {
      const auto isa = s.isa == "avx2" ? amoeba::kernels::Isa::Avx2 : amoeba::kernels::Isa::Scalar;
      if (!amoeba::kernels::isa_available(isa)) throw Error(ErrorKind::InvalidInput, "cli", "ISA not available: " + s.isa);
      amoeba::kernels::set_active_isa(isa);
    }
    if (analyze->parsed()) return cmd_analyze(s);
    if (render->parsed()) return cmd_render(s);
    return cmd_bounds(s);
  } catch (const Error& e) {
    print_error(e);
    return e.kind() == ErrorKind::ParseError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":{\"module\":\"cli\",\"kind\":\"Internal\",\"message\":" << nlohmann::json(e.what()).dump()
              << "}}\n";
    return 1;
  }
}
