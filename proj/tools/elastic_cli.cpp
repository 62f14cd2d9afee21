// elastic: minimal-energy s-curves and elastic splines from the command line.
//
//   elastic scurve --input pair.json
//   elastic spline --input points.json --seed 7
//   elastic table --alpha 1.2 --beta -0.4 --rows 64
//   elastic render --input result.json > curve.svg

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "elastic/commands.hpp"

namespace {

bool read_input(const std::string& path, std::string& text) {
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  text = buf.str();
  return true;
}

int emit(const elastic::cli::CommandResult& r) {
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal bending energy s-curves and elastic splines"};
  app.require_subcommand(1);

  std::string input = "-";

  auto* scurve = app.add_subcommand("scurve", "Solve for the optimal s-curve between two unit tangents");
  std::size_t samples = 0;
  scurve->add_option("--input,-i", input, "JSON {\"u\":..., \"v\":...}, or - for stdin");
  scurve->add_option("--samples", samples, "Attach a polyline with this many points");

  auto* spline = app.add_subcommand("spline", "Fit an elastic spline through points");
  std::uint64_t seed = 0;
  bool verbose = false;
  spline->add_option("--input,-i", input, "JSON spline problem, or - for stdin");
  auto* seed_opt = spline->add_option("--seed", seed, "Seed for the restart perturbations");
  spline->add_flag("--verbose,-v", verbose, "Log the energy trace to stderr");

  auto* table = app.add_subcommand("table", "Tabulate G, sigma and lambda over the inflection-direction domain");
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t rows = 64;
  table->add_option("--alpha", alpha, "Canonical alpha in [0, pi]")->required();
  table->add_option("--beta", beta, "Canonical beta with |beta| <= alpha")->required();
  table->add_option("--rows,-n", rows, "Number of rows")->check(CLI::PositiveNumber);

  auto* render = app.add_subcommand("render", "Render a curve (or any document with a curve) as SVG");
  elastic::svg::RenderStyle style;
  render->add_option("--input,-i", input, "Curve JSON, or - for stdin");
  render->add_option("--stroke-width", style.stroke_width, "Stroke width relative to the drawing size");
  render->add_option("--samples", style.samples_per_segment, "Samples per elastica segment");
  render->add_flag("--tangents", style.show_tangents, "Draw segment tangents");
  render->add_flag("--inflection", style.show_inflection, "Mark curvature sign changes");
  render->add_option("--padding", style.padding, "Padding relative to the drawing size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : elastic::cli::kMalformed;
  }

  if (*table) return emit(elastic::cli::cmd_table(alpha, beta, rows));

  std::string text;
  if (!read_input(input, text)) {
    std::cerr << "cannot read " << input << "\n";
    return elastic::cli::kMalformed;
  }
  if (*scurve) return emit(elastic::cli::cmd_scurve(text, samples));
  if (*spline) {
    const auto seed_override = seed_opt->count() > 0 ? std::optional<std::uint64_t>(seed) : std::nullopt;
    return emit(elastic::cli::cmd_spline(text, seed_override, verbose));
  }
  return emit(elastic::cli::cmd_render(text, style));
}
