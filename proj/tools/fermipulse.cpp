// fermipulse command-line front end: figure tables, headline scalars,
// oracle validation and the p1/p2 fit on synthetic clicks.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fermipulse/config.hpp"
#include "fermipulse/estimation.hpp"
#include "fermipulse/report.hpp"
#include "fermipulse/validate.hpp"

namespace fs = std::filesystem;
using namespace fermipulse;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitIo = 2;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string config_path;
  std::string out_dir;
  bool plot_script = false;
};

RunConfig load(const Globals& g) {
  RunConfig cfg = g.config_path.empty() ? RunConfig{} : load_config(g.config_path);
  if (g.plot_script) {
    cfg.emit_plot_script = true;
  }
  return cfg;
}

fs::path output_dir(const Globals& g, const RunConfig& cfg) {
  if (!g.out_dir.empty()) {
    return g.out_dir;
  }
  if (!cfg.output_dir.empty()) {
    return cfg.output_dir;
  }
  if (const char* env = std::getenv("FERMIPULSE_OUT"); env != nullptr && *env != '\0') {
    return env;
  }
  return ".";
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
}

int cmd_fig(const Globals& g, int n) {
  const RunConfig cfg = load(g);
  const Table table = figure_table(n, cfg);
  const fs::path dir = output_dir(g, cfg);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
  std::ostringstream csv;
  write_csv(table, cfg, csv);
  const std::string name = table.id + ".csv";
  write_file(dir / name, csv.str());
  std::cout << (dir / name).string() << '\n';
  if (cfg.emit_plot_script) {
    write_file(dir / (table.id + ".gp"), plot_script(table, name));
    std::cout << (dir / (table.id + ".gp")).string() << '\n';
  }
  return kExitOk;
}

int cmd_scalars(const Globals& g) {
  const RunConfig cfg = load(g);
  write_scalars(compute_scalars(cfg), cfg, std::cout);
  return kExitOk;
}

struct ValidateArgs {
  std::optional<double> rel_tol;
  std::optional<double> interference_scale;
  std::vector<std::string> only;
  std::size_t sweep_points = 9;
};

int cmd_validate(const Globals& g, const ValidateArgs& a) {
  RunConfig cfg = load(g);
  if (a.rel_tol) {
    cfg.oracle_rel_tol = *a.rel_tol;
  }
  if (a.interference_scale) {
    cfg.interference_scale = *a.interference_scale;
  }
  cfg.validate();
  ValidateOptions opt;
  opt.only = a.only;
  opt.sweep_points = a.sweep_points;
  const auto report = run_validation(cfg, opt);
  std::cout << validation_json(report, cfg) << '\n';
  for (const auto& c : report.checks) {
    if (!c.passed) {
      std::cerr << "FAIL " << c.name << (c.error.empty() ? "" : ": " + c.error) << '\n';
    }
  }
  return report.passed() ? kExitOk : kExitFail;
}

struct FitArgs {
  std::size_t pulses = 100000;
  std::uint64_t seed = 1;
  std::string clicks_csv;
};

int cmd_fit(const Globals& g, const FitArgs& a) {
  const RunConfig cfg = load(g);
  const auto ens = make_ensemble(cfg.source);
  const auto sample = sample_clicks(ens, a.pulses, a.seed);
  if (!a.clicks_csv.empty()) {
    std::ostringstream csv;
    write_clicks_csv(sample, csv);
    write_file(a.clicks_csv, csv.str());
  }
  FitResult fit{};
  try {
    fit = fit_p1(sample, ens);
  } catch (const std::invalid_argument& e) {
    std::cerr << "fit failed: " << e.what() << '\n';
    return kExitFail;
  }
  std::printf("# fermipulse %s config_hash=%s\n", FERMIPULSE_VERSION, config_hash(cfg).c_str());
  std::printf("pulses,seed,n_null,p0_hat,p1_hat,p2_hat,sse,n_evals,unimodal\n");
  std::printf("%zu,%llu,%zu,%.16e,%.16e,%.16e,%.16e,%zu,%d\n", sample.n_pulses(),
              static_cast<unsigned long long>(a.seed), sample.n_null, fit.p0_hat, fit.p1_hat, fit.p2_hat, fit.sse,
              fit.n_evals, fit.unimodal ? 1 : 0);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degeneracy of pulsed field-emission electron sources"};
  app.set_version_flag("--version", std::string(FERMIPULSE_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "output directory (default: $FERMIPULSE_OUT or .)");
  app.add_flag("--plot-script", g.plot_script, "also write a gnuplot script per figure");

  int fig_n = 0;
  auto* fig = app.add_subcommand("fig", "write figN.csv for figure 1..6");
  fig->add_option("n", fig_n, "figure number")->required()->check(CLI::Range(1, 6));

  auto* scalars = app.add_subcommand("scalars", "print headline scalars with PASS/FAIL flags");

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "closed forms against the quadrature oracle");
  validate->add_option("--oracle-rel-tol", va.rel_tol, "oracle convergence tolerance");
  validate->add_option("--interference-scale", va.interference_scale,
                       "multiplier on the two-electron interference term (mutation testing)");
  validate->add_option("--only", va.only, "run only the named checks");
  validate->add_option("--sweep-points", va.sweep_points, "figure 1-4 times per check")->check(CLI::PositiveNumber);

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "fit p1 and p2 to synthetic one-detector clicks");
  fit->add_option("--pulses", fa.pulses, "number of pulses")->check(CLI::PositiveNumber);
  fit->add_option("--seed", fa.seed, "RNG seed");
  fit->add_option("--clicks-csv", fa.clicks_csv, "also write the simulated clicks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitIo;
  }

  try {
    if (*fig) {
      return cmd_fig(g, fig_n);
    }
    if (*scalars) {
      return cmd_scalars(g);
    }
    if (*validate) {
      return cmd_validate(g, va);
    }
    if (*fit) {
      return cmd_fit(g, fa);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitIo;
}
