#include "aoi/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "aoi/errors.hpp"
#include "aoi/experiment.hpp"

namespace aoi {

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delay, peak AoI and peak DoI tail bounds for time- and event-triggered sampling"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  std::int64_t samples = 0;
  unsigned workers = 0;
  bool allow_vacuous = false;
  std::string figure_name;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "CSV output path (default stdout)");
    sub->add_option("--seed", seed, "Base seed (overrides the config)");
    sub->add_option("--samples", samples, "Simulation sample budget (overrides the config)")->check(CLI::PositiveNumber);
    sub->add_option("--workers", workers, "Worker threads (default: hardware concurrency)");
    sub->add_flag("--allow-vacuous", allow_vacuous, "Emit flagged rows for unstable scenarios and epsilon >= 1");
  };
  auto* bound = app.add_subcommand("bound", "Optimised tail bounds for a scenario file");
  auto* simulate = app.add_subcommand("simulate", "Empirical quantiles from the discrete-event simulator");
  auto* sweep = app.add_subcommand("sweep", "Bounds of both policies over a utilization or w grid");
  auto* figure = app.add_subcommand("figure", "Reproduce one figure dataset");
  for (auto* sub : {bound, simulate, sweep}) {
    sub->add_option("--config", config_path, "Scenario file")->required();
    add_common(sub);
  }
  figure->add_option("name", figure_name, "fig3, fig4a-c, fig5, fig6a-c, fig7 or fig8")->required();
  add_common(figure);

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  RunOptions opts;
  opts.workers = workers;
  opts.allow_vacuous = allow_vacuous;
  for (auto* sub : {bound, simulate, sweep, figure}) {
    if (sub->count("--seed") > 0) opts.seed = seed;
    if (sub->count("--samples") > 0) opts.samples = samples;
  }

  try {
    std::vector<CsvRow> rows;
    std::optional<nlohmann::json> summary;
    if (*bound) {
      rows = cmd_bound(load_config(config_path), opts);
    } else if (*simulate) {
      rows = cmd_simulate(load_config(config_path), opts);
    } else if (*sweep) {
      rows = cmd_sweep(SweepSpec::from_config(load_config(config_path)), opts);
    } else {
      auto fig = cmd_figure(figure_name, opts);
      rows = std::move(fig.rows);
      summary = std::move(fig.summary);
    }

    if (out_path.empty()) {
      write_csv(out, rows);
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) {
        err << "cannot write '" << out_path << "'\n";
        return kExitUsage;
      }
      write_csv(file, rows);
    }
    if (summary) {
      if (out_path.empty()) {
        err << summary->dump() << '\n';
      } else {
        std::ofstream(out_path + ".summary.json") << summary->dump(2) << '\n';
      }
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace aoi
