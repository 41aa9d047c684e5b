// fraclyap: run scenarios, probe stability, evaluate E_alpha.
// Exit status: 0 all checks passed, 1 a mathematical check failed,
// 2 configuration, usage or I/O error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fraclyap/errors.hpp"
#include "fraclyap/format.hpp"
#include "fraclyap/fracops/special_functions.hpp"
#include "fraclyap/harness/config.hpp"
#include "fraclyap/harness/run.hpp"

namespace {

using namespace fraclyap;

constexpr int kExitFailedCheck = 1;
constexpr int kExitBadInput = 2;

void erase_default(harness::ScenarioConfig& cfg, const std::string& key) {
  std::erase_if(cfg.defaults_applied, [&](const std::string& d) { return d.rfind(key + "=", 0) == 0; });
}

struct Overrides {
  std::string out;
  std::optional<std::size_t> steps;
  std::optional<std::uint64_t> seed;

  void apply(harness::ScenarioConfig& cfg) const {
    if (!out.empty()) {
      cfg.output_dir = out;
      erase_default(cfg, "output_dir");
    }
    if (steps) {
      if (*steps == 0) throw ValidationError("--steps must be at least 1");
      cfg.steps = *steps;
      erase_default(cfg, "steps");
    }
    if (seed) {
      cfg.seed = *seed;
      erase_default(cfg, "seed");
    }
  }
};

int run_config(harness::ScenarioConfig cfg, const Overrides& overrides) {
  overrides.apply(cfg);
  const auto run = harness::run_scenario(cfg);
  std::cout << run.report_text;
  std::cout << "report: " << run.report_path.string() << "\n";
  return run.all_passed() ? 0 : kExitFailedCheck;
}

int probe_config(const harness::ScenarioConfig& cfg, std::optional<double> eps, std::optional<std::size_t> points) {
  if (!eps && !cfg.probe) throw ValidationError("no eps: pass --eps or add a [probe] section");
  const double e = eps ? *eps : cfg.probe->eps;
  const std::size_t n = points ? *points : (cfg.probe ? cfg.probe->points : harness::ProbeSettings{}.points);
  const auto probe = harness::stability_probe(cfg, e, n);
  std::cout << probe.to_text();
  return probe.stayed_inside ? 0 : kExitFailedCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for Lyapunov functions of Caputo fractional systems"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;

  auto* run = app.add_subcommand("run", "Solve, audit and verify a scenario file");
  run->add_option("--config", config_path, "Scenario document")->required();
  run->add_option("--out", overrides.out, "Output directory (overrides output_dir)");
  run->add_option("--steps", overrides.steps, "Number of solver steps");
  run->add_option("--seed", overrides.seed, "Sampling seed");

  std::optional<double> eps;
  std::optional<std::size_t> points;
  std::optional<std::size_t> probe_steps;
  auto* probe = app.add_subcommand("probe", "Finite-horizon epsilon-delta probe");
  probe->add_option("--config", config_path, "Scenario document")->required();
  probe->add_option("--eps", eps, "Target radius (0 < eps < r)");
  probe->add_option("--points", points, "Number of starting points");
  probe->add_option("--steps", probe_steps, "Number of solver steps");

  double ml_alpha = 0.5, ml_z = 0.0;
  auto* ml = app.add_subcommand("ml", "Evaluate the Mittag-Leffler function E_alpha(z)");
  ml->add_option("--alpha", ml_alpha, "Order in (0, 1]")->required();
  ml->add_option("--z", ml_z, "Argument")->required();

  std::string builtin_name;
  bool print_only = false;
  auto* builtin = app.add_subcommand("builtin", "Run a built-in scenario");
  builtin->add_option("--name", builtin_name, "example1, example1-identity, example2 or remark4")->required();
  builtin->add_option("--out", overrides.out, "Output directory");
  builtin->add_option("--steps", overrides.steps, "Number of solver steps");
  builtin->add_flag("--print-config", print_only, "Print the scenario document and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (*run) return run_config(harness::load_config(config_path), overrides);
    if (*probe) {
      auto cfg = harness::load_config(config_path);
      if (probe_steps) {
        if (*probe_steps == 0) throw ValidationError("--steps must be at least 1");
        cfg.steps = *probe_steps;
      }
      return probe_config(cfg, eps, points);
    }
    if (*ml) {
      std::cout << format_double(fracops::mittag_leffler(ml_alpha, ml_z)) << "\n";
      return 0;
    }
    if (*builtin) {
      if (builtin_name == "remark4") {
        if (print_only) throw ValidationError("remark4 has no scenario document");
        const auto report = harness::write_remark4(overrides.out.empty() ? "fraclyap-out/remark4" : overrides.out,
                                                   110.0, overrides.steps.value_or(100000));
        std::cout << "report: " << report.string() << "\n";
        return 0;
      }
      const std::string doc = harness::builtin_document(builtin_name);
      if (print_only) {
        std::cout << doc;
        return 0;
      }
      return run_config(harness::parse_config(doc), overrides);
    }
  } catch (const ValidationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
  } catch (const fraclyap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitBadInput;
}
