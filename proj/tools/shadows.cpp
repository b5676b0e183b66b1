#include <CLI11.hpp>

#include "shadows/cli.hpp"

namespace {

// Options are parsed into `flags`; explicitly passed ones then override the
// config-file values, which override the defaults.
struct Cli {
  shadows::RunConfig flags;
  std::string config_path;
  CLI::App app{"random planar shadows of regular polytopes"};

  CLI::App* add_command(const std::string& name, const std::string& desc,
                        bool sampling, bool quad = false) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--polytope", flags.polytope,
                    "simplex | cube | crosspolytope | square | triangle");
    sub->add_option("--dim", flags.dim, "ambient dimension");
    if (sampling) {
      sub->add_option("--samples", flags.samples, "Monte Carlo sample count");
      sub->add_option("--seed", flags.seed, "random seed");
      sub->add_option("--workers", flags.workers,
                      "worker threads (0 = hardware; env SHADOWS_WORKERS)");
    }
    if (quad) {
      sub->add_option("--method", flags.method, "mc | quadrature");
      sub->add_option("--grid", [this](const CLI::results_t& v) {
        const int g = std::stoi(v[0]);
        flags.grid_theta = g;
        flags.grid_phi = g;
        return true;
      }, "quadrature nodes per axis");
      sub->add_option("--grid-theta", flags.grid_theta, "theta nodes");
      sub->add_option("--grid-phi", flags.grid_phi, "phi nodes");
    }
    sub->add_option("--bins", flags.bins, "histogram bins (density command)");
    sub->add_option("--format", flags.format, "json | csv | table");
    sub->add_option("--out", flags.out, "output path (default stdout)");
    sub->add_option("--config", config_path, "JSON config file");
    return sub;
  }
};

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  cli.app.require_subcommand(1);
  CLI::App* moments = cli.add_command("moments", "estimate the five joint moments", true, true);
  CLI::App* reference = cli.add_command("reference", "print the closed-form reference table", false);
  CLI::App* vertex = cli.add_command("vertex-dist", "vertex-count distribution", true);
  CLI::App* xcheck = cli.add_command("xcheck", "closed-form system vs hull pipeline", true);
  CLI::App* density = cli.add_command("density", "width density goodness of fit", true);
  CLI::App* identity = cli.add_command("identity-test", "KS test: cw(octa) vs 2 cw(tetra)", true);
  CLI::App* validate = cli.add_command("validate", "Monte Carlo vs reference table", true);

  CLI11_PARSE(cli.app, argc, argv);

  shadows::RunConfig cfg;  // defaults
  cfg.workers = shadows::detail::default_workers_from_env();

  if (!cli.config_path.empty()) {
    std::ifstream f(cli.config_path);
    if (!f) {
      std::cerr << "error: cannot read config file " << cli.config_path << "\n";
      return 2;
    }
    shadows::Json j;
    try {
      f >> j;
      shadows::detail::apply_config_json(cfg, j);
    } catch (const std::exception& e) {
      std::cerr << "error: bad config file: " << e.what() << "\n";
      return 2;
    }
  }

  CLI::App* active = nullptr;
  for (CLI::App* sub : {moments, reference, vertex, xcheck, density, identity, validate})
    if (sub->parsed()) active = sub;
  if (!active) return 2;
  cfg.command = active->get_name();

  const auto overlay = [&](const char* flag, auto member) {
    if (active->count(flag) > 0) cfg.*member = cli.flags.*member;
  };
  overlay("--polytope", &shadows::RunConfig::polytope);
  overlay("--dim", &shadows::RunConfig::dim);
  if (active->get_option_no_throw("--samples")) {
    overlay("--samples", &shadows::RunConfig::samples);
    overlay("--seed", &shadows::RunConfig::seed);
    overlay("--workers", &shadows::RunConfig::workers);
  }
  if (active->get_option_no_throw("--method")) {
    overlay("--method", &shadows::RunConfig::method);
    if (active->count("--grid") > 0) {
      cfg.grid_theta = cli.flags.grid_theta;
      cfg.grid_phi = cli.flags.grid_phi;
    }
    overlay("--grid-theta", &shadows::RunConfig::grid_theta);
    overlay("--grid-phi", &shadows::RunConfig::grid_phi);
  }
  overlay("--bins", &shadows::RunConfig::bins);
  overlay("--format", &shadows::RunConfig::format);
  overlay("--out", &shadows::RunConfig::out);

  return shadows::run_to_destination(cfg);
}
