// qneg: negativity measures, sweeps, check suites and grid export from a config file.
//
//   qneg negativity --config run.yaml [--out result.json] [--format json|csv]
//   qneg sweep --axis w|s --config run.yaml [--out table.csv] [--format csv]
//   qneg verify --suite filters|monotone|convexity|robustness|all [--config run.yaml]
//   qneg export --config run.yaml --out grid.bin
//
// Exit codes: 0 success, 1 internal error, 2 invalid config or guard, 3 a check failed.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "qneg/commands.hpp"
#include "qneg/verify.hpp"

namespace {

int write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "qneg: cannot write '" << path << "'\n";
    return 2;
  }
  out << content;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Negativity-based nonclassicality measures of single-mode states"};
  app.require_subcommand(1);

  std::string config_path, out_path, format_name, axis_name = "w", suite = "all";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "YAML run configuration");
    sub->add_option("--out", out_path, "output file (stdout when omitted)");
    sub->add_option("--format", format_name, "csv or json (default: config output.format)")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* neg = app.add_subcommand("negativity", "negative volume of one state at one s");
  add_common(neg);
  auto* sweep = app.add_subcommand("sweep", "table over filter width or order parameter");
  add_common(sweep);
  sweep->add_option("--axis", axis_name, "w or s")->check(CLI::IsMember({"w", "s"}));
  auto* verify = app.add_subcommand("verify", "run a check suite");
  add_common(verify);
  verify->add_option("--suite", suite, "filters, monotone, convexity, robustness or all")
      ->check(CLI::IsMember({"filters", "monotone", "convexity", "robustness", "all"}));
  auto* exp = app.add_subcommand("export", "dump the quasiprobability grid");
  add_common(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const qneg::RunConfig config = config_path.empty() ? qneg::RunConfig{} : qneg::load_config(config_path);
    if (out_path.empty()) out_path = config.output.path;
    const auto format = format_name.empty() ? config.output.format : qneg::parse_format(format_name);

    if (neg->parsed()) return write_output(out_path, qneg::run_negativity(config, format));
    if (sweep->parsed()) return write_output(out_path, qneg::run_sweep(config, qneg::parse_axis(axis_name), format));
    if (exp->parsed()) {
      if (out_path.empty()) {
        std::cerr << "qneg export: --out is required\n";
        return 2;
      }
      std::cout << qneg::run_export(config, out_path) << "\n";
      return 0;
    }

    const auto report = qneg::run_verify(suite, config);
    std::cout << qneg::render_table(report);
    if (out_path.empty()) out_path = "qneg-verify-" + suite + (format == qneg::OutputFormat::Csv ? ".csv" : ".json");
    const auto cfg = qneg::to_json(config);
    const std::string content = format == qneg::OutputFormat::Csv
                                    ? qneg::render_csv(report, cfg)
                                    : nlohmann::json{{"config", cfg}, {"suite", suite}, {"report", qneg::to_json(report)}}
                                              .dump(2) + "\n";
    if (const int rc = write_output(out_path, content)) return rc;
    return report.any_fail() ? 3 : 0;
  } catch (const qneg::NumericalError& e) {
    std::cerr << "qneg: numerical guard: " << e.what() << "\n";
    return 2;
  } catch (const qneg::Error& e) {
    std::cerr << "qneg: " << e.what() << "\n";
    return 2;
  } catch (const YAML::Exception& e) {
    std::cerr << "qneg: " << config_path << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qneg: internal error: " << e.what() << "\n";
    return 1;
  }
}
