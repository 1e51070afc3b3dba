#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/commands.hpp"

using namespace berkdyn;
using namespace berkdyn::cli;

namespace {

int emit(const RunConfig& cfg, const CommandResult& r) {
  const std::string text = render(r.report);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) {
      std::cerr << "cannot write " << cfg.out << "\n";
      return kDomain;
    }
    os << text;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamics of rational maps on the Berkovich line over p-adic fields"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  long ext = 0;
  app.add_option("--prime", cfg.prime, "residue characteristic p")->capture_default_str();
  app.add_option("--precision", cfg.precision, "p-adic digits carried")->capture_default_str();
  auto* ext_opt = app.add_option("--ext", ext, "adjoin sqrt(d)");
  app.add_option("--max-period", cfg.max_period, "largest period examined by classify")->capture_default_str();
  app.add_option("--out", cfg.out, "write the report here instead of stdout");
  app.add_option("--jobs", cfg.jobs, "worker threads for scan")->capture_default_str();

  std::string map, point, family, points_file, lambda;
  int n = 1, n_max = 3, len = 8;

  auto* classify = app.add_subcommand("classify", "classify a point under a map");
  classify->add_option("map", map)->required();
  classify->add_option("point", point)->required();

  auto* periodic = app.add_subcommand("periodic", "list the type I points of period dividing n");
  periodic->add_option("map", map)->required();
  periodic->add_option("n", n)->required();

  auto* scan = app.add_subcommand("scan", "bifurcation scan of a family over parameter points");
  scan->add_option("family", family)->required();
  scan->add_option("points", points_file, "file with one point per line, '-' for stdin")->required();
  scan->add_option("n_max", n_max)->capture_default_str();

  auto* cantor = app.add_subcommand("cantor", "check the shift conjugacy of the Cantor coding");
  cantor->add_option("lambda", lambda)->required();
  cantor->add_option("length", len)->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  if (*ext_opt) cfg.ext_square = ext;

  try {
    if (*classify) return emit(cfg, cmd_classify(cfg, map, point));
    if (*periodic) return emit(cfg, cmd_periodic(cfg, map, n));
    if (*scan) {
      if (points_file == "-") return emit(cfg, cmd_scan(cfg, family, std::cin, n_max));
      std::ifstream in(points_file);
      if (!in) {
        std::cerr << "cannot read " << points_file << "\n";
        return kDomain;
      }
      return emit(cfg, cmd_scan(cfg, family, in, n_max));
    }
    return emit(cfg, cmd_cantor(cfg, lambda, len));
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e);
  }
}
