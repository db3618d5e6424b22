// trilevel CLI: run scenarios, compare analytic vs numeric trajectories,
// sweep a scenario parameter, and verify the pulse area theorem.
//
// Exit codes: 0 success, 1 validation/usage error, 2 runtime failure.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "trilevel/trilevel.hpp"

namespace {

using namespace trilevel;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open scenario file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunMode parse_mode(const std::string& m) {
  if (m == "analytic") return RunMode::Analytic;
  if (m == "numeric") return RunMode::Numeric;
  if (m == "both") return RunMode::Both;
  throw std::invalid_argument("--mode must be analytic, numeric or both");
}

EmitFormat parse_format(const std::string& f) {
  if (f == "csv") return EmitFormat::Csv;
  if (f == "json") return EmitFormat::Json;
  throw std::invalid_argument("--format must be csv or json");
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const char* begin = item.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + item.size() || item.empty())
      throw std::invalid_argument("--values: not a number: '" + item + "'");
    values.push_back(v);
  }
  if (values.empty())
    throw std::invalid_argument("--values: empty list");
  return values;
}

// results.csv -> results.analytic.csv / results.numeric.csv
std::string tagged_path(const std::string& path, const std::string& tag) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + "." + tag;
  return path.substr(0, dot) + "." + tag + path.substr(dot);
}

void write_to(const std::string& out_path,
              const std::function<void(std::ostream&)>& writer) {
  if (out_path.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw std::runtime_error("cannot open output file: " + out_path);
  writer(os);
  if (!os) throw std::runtime_error("write failed: " + out_path);
}

int cmd_run(const std::string& scenario_path, const std::string& mode_name,
            const std::string& format_name, const std::string& out_path) {
  const RunMode mode = parse_mode(mode_name);
  const EmitFormat format = parse_format(format_name);
  const Scenario scenario = parse_scenario(read_file(scenario_path), mode);
  const RunOutput out = run_scenario(scenario);

  if (mode == RunMode::Both) {
    if (out_path.empty())
      throw std::invalid_argument("run --mode both requires --out");
    write_to(tagged_path(out_path, "analytic"), [&](std::ostream& os) {
      emit(*out.analytic, scenario, format, os);
    });
    write_to(tagged_path(out_path, "numeric"), [&](std::ostream& os) {
      emit(*out.numeric, scenario, format, os);
    });
    std::cerr << "wrote " << tagged_path(out_path, "analytic") << " and "
              << tagged_path(out_path, "numeric") << "\n";
    return 0;
  }
  const Trajectory& traj =
      mode == RunMode::Analytic ? *out.analytic : *out.numeric;
  write_to(out_path,
           [&](std::ostream& os) { emit(traj, scenario, format, os); });
  return 0;
}

int cmd_compare(const std::string& scenario_path,
                const std::string& format_name, const std::string& out_path) {
  const EmitFormat format = parse_format(format_name);
  const Scenario scenario =
      parse_scenario(read_file(scenario_path), RunMode::Both);
  const ComparisonReport rep = compare_scenario(scenario);
  write_to(out_path, [&](std::ostream& os) {
    if (format == EmitFormat::Json) {
      os << report_to_json(rep).dump(2) << '\n';
    } else {
      emit_report_csv_header(os);
      emit_report_csv_rows(rep, os);
    }
  });
  return 0;
}

int cmd_sweep(const std::string& scenario_path, const std::string& axis,
              const std::string& values_list, const std::string& format_name,
              const std::string& out_path) {
  const EmitFormat format = parse_format(format_name);
  const auto values = parse_values(values_list);
  const Scenario base = parse_scenario(read_file(scenario_path), RunMode::Both);
  const auto reports = sweep(base, axis, values);
  write_to(out_path, [&](std::ostream& os) {
    if (format == EmitFormat::Json) {
      nlohmann::json arr = nlohmann::json::array();
      for (std::size_t i = 0; i < reports.size(); ++i) {
        nlohmann::json entry = report_to_json(reports[i]);
        entry["axis"] = axis;
        entry["value"] = values[i];
        arr.push_back(std::move(entry));
      }
      os << arr.dump(2) << '\n';
    } else {
      emit_report_csv_header(os);
      for (std::size_t i = 0; i < reports.size(); ++i)
        emit_report_csv_rows(reports[i], os, values[i]);
    }
  });
  return 0;
}

int cmd_theorem(const std::string& scenario_path,
                const std::string& format_name, const std::string& out_path) {
  const EmitFormat format = parse_format(format_name);
  const Scenario scenario =
      parse_scenario(read_file(scenario_path), RunMode::Theorem);
  const RunOutput out = run_scenario(scenario);
  double max_residual = 0.0;
  for (double r : out.residual) max_residual = std::max(max_residual, r);
  write_to(out_path, [&](std::ostream& os) {
    emit(*out.theorem, scenario, format, os, max_residual);
  });
  std::cerr << "max_conservation_residual = " << format_double(max_residual)
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Three-level V / Lambda atom simulator: Magnus analytic solution, "
      "beyond-RWA propagator, and pulse area theorem checks"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, axis, values_list;
  std::string mode_name = "both";
  std::string format_name = "csv";

  auto add_common = [&](CLI::App* sub, bool with_mode) {
    sub->add_option("--scenario", scenario_path, "scenario file")->required();
    sub->add_option("--format", format_name, "csv|json");
    sub->add_option("--out", out_path, "output path (default: stdout)");
    if (with_mode)
      sub->add_option("--mode", mode_name, "analytic|numeric|both");
  };

  CLI::App* run = app.add_subcommand("run", "run a scenario and emit the trajectory");
  add_common(run, true);
  CLI::App* cmp = app.add_subcommand(
      "compare", "run both modes and report analytic-vs-numeric deviations");
  add_common(cmp, false);
  CLI::App* swp = app.add_subcommand(
      "sweep", "compare across a list of values of one scenario parameter");
  add_common(swp, false);
  swp->add_option("--axis", axis, "dotted scenario field, e.g. pulse_s.peak_rabi")
      ->required();
  swp->add_option("--values", values_list, "comma-separated numbers")->required();
  CLI::App* thm = app.add_subcommand(
      "theorem", "self-consistent run with conservation-law residual");
  add_common(thm, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (run->parsed())
      return cmd_run(scenario_path, mode_name, format_name, out_path);
    if (cmp->parsed()) return cmd_compare(scenario_path, format_name, out_path);
    if (swp->parsed())
      return cmd_sweep(scenario_path, axis, values_list, format_name, out_path);
    if (thm->parsed()) return cmd_theorem(scenario_path, format_name, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
