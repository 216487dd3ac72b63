// mbrlab command-line front end: decoding trials, bound evaluation, exact
// transport distances, simulation sweeps, crossover studies and results
// reporting. Exit codes: 0 success, 2 user/config error, 1 internal error.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mbrlab/bounds.hpp"
#include "mbrlab/config.hpp"
#include "mbrlab/csv.hpp"
#include "mbrlab/decode.hpp"
#include "mbrlab/hypothesis.hpp"
#include "mbrlab/simulation.hpp"
#include "mbrlab/transport.hpp"
#include "mbrlab/utility.hpp"

namespace fs = std::filesystem;
using namespace mbrlab;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  long seeds = -1;
  long master_seed = -1;
};

Config load_config(const CommonArgs& args) {
  Config config;
  if (!args.config_path.empty()) config = Config::parse_file(args.config_path);
  for (const auto& assignment : args.overrides)
    config.set_override(assignment);
  if (args.seeds >= 0) config.set("run.seeds", std::to_string(args.seeds));
  if (args.master_seed >= 0)
    config.set("run.master_seed", std::to_string(args.master_seed));
  return config;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, "cannot create output directory: " + dir);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "cannot open output file: " + path);
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string num12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------- decode --

int cmd_decode(const CommonArgs& args) {
  const Config config = load_config(args);
  config.require_known_keys(ExperimentSpec::known_keys());
  const std::string model_path = config.get_string("decode.model");
  const std::string utility_path = config.get_string("decode.utility");

  const Categorical model = read_distribution_file(model_path);
  const auto utility = std::make_shared<MatrixUtility>(
      read_matrix_utility_file(utility_path));
  require(utility->size() == model.size(),
          "utility and distribution sizes differ");

  const auto exact = mbr_decode_exact(*utility, model);
  std::cout << "exact decode: chosen=" << exact.chosen
            << " score=" << num(exact.score) << "\n";

  const long n = config.get_long_or("decode.n", 0);
  if (n <= 0) return 0;
  const auto seed =
      static_cast<std::uint64_t>(config.get_long_or("decode.seed", 0));

  std::optional<Categorical> human;
  if (config.has("decode.human"))
    human = read_distribution_file(config.get_string("decode.human"),
                                   model.space());

  TrialConfig trial(human ? *human : model, utility);
  trial.model = model;
  trial.n = n;
  trial.seed = seed;
  const RegretReport report = measure_regret(trial);
  std::cout << "mc decode (n=" << n << ", seed=" << seed
            << "): chosen=" << report.chosen_mc << "\n";
  std::cout << "regret_n=" << num(report.regret_n) << "\n";
  std::cout << "regret_map=" << num(report.regret_map) << "\n";

  ensure_dir(args.out_dir);
  const std::string report_path = args.out_dir + "/report.csv";
  auto out = open_out(report_path);
  out << kRegretCsvHeader << '\n' << regret_csv_row(report, std::nullopt)
      << '\n';
  std::cout << "report written to " << report_path << "\n";
  return 0;
}

// ---------------------------------------------------------------- bounds --

struct BoundsArgs {
  std::vector<long> n;
  std::vector<double> deltas;
  long dim = 4;
  std::vector<long> d_size;
  double wd = -1.0;
  double wd_temp = -1.0;
  double alpha_err = -1.0;
  double u_max = 1.0;
  bool raw = false;
  int precision = 5;
  std::string table_path;
};

BoundInputs bound_inputs_at(const BoundsArgs& args, long n,
                            std::optional<long> d_size, double delta) {
  BoundInputs inputs;
  inputs.n = n;
  inputs.delta = delta;
  inputs.dim = args.dim;
  inputs.u_max = args.u_max;
  inputs.d_size = d_size;
  if (args.wd >= 0.0) inputs.wd_hm = args.wd;
  if (args.wd_temp >= 0.0) inputs.wd_tt = args.wd_temp;
  if (args.alpha_err >= 0.0) inputs.alpha_err = args.alpha_err;
  return inputs;
}

int cmd_bounds(const BoundsArgs& args) {
  std::vector<std::optional<long>> d_values;
  if (args.d_size.empty())
    d_values.push_back(std::nullopt);
  else
    for (long d : args.d_size) d_values.push_back(d);

  if (!args.table_path.empty()) {
    // Sweep table: one row per (point, bound), breakdown in trailing fields.
    auto out = open_out(args.table_path);
    out << "n,D,d,delta,bound_name,value,term_breakdown...\n";
    for (long n : args.n)
      for (const auto& d : d_values)
        for (double delta : args.deltas) {
          const auto report =
              evaluate_bounds(bound_inputs_at(args, n, d, delta), args.raw);
          for (const auto& [name, value] : report.values) {
            out << n << ',' << (d ? std::to_string(*d) : std::string()) << ','
                << args.dim << ',' << format_double(delta) << ',' << name
                << ',' << format_double(value.total);
            for (const auto& term : value.terms)
              out << ',' << term.label << '=' << format_double(term.value);
            out << '\n';
          }
        }
    std::cout << "bound table written to " << args.table_path << "\n";
    return 0;
  }

  require(args.n.size() == 1 && args.deltas.size() == 1 &&
              d_values.size() == 1,
          "sweeping multiple values needs --table PATH");
  const BoundReport report = evaluate_bounds(
      bound_inputs_at(args, args.n.front(), d_values.front(),
                      args.deltas.front()),
      args.raw);
  auto fmt = [&args](double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", args.precision, v);
    return std::string(buf);
  };
  for (const auto& [name, value] : report.values) {
    std::cout << name << " = " << fmt(value.total);
    if (value.terms.size() > 1) {
      std::cout << "  (";
      for (std::size_t i = 0; i < value.terms.size(); ++i) {
        if (i) std::cout << " + ";
        std::cout << value.terms[i].label << ' ' << fmt(value.terms[i].value);
      }
      std::cout << ")";
    }
    std::cout << "\n";
  }
  for (const auto& [name, missing] : report.skipped)
    std::cout << name << ": requires " << missing << "\n";
  return 0;
}

// -------------------------------------------------------------------- wd --

struct WdArgs {
  std::string nu_path, mu_path, cost_path, coupling_path;
  double trivial_umax = -1.0;
};

int cmd_wd(const WdArgs& args) {
  const Categorical nu = read_distribution_file(args.nu_path);
  const Categorical mu = read_distribution_file(args.mu_path, nu.space());
  require(nu.size() == mu.size(), "distributions have different sizes");

  std::optional<LipschitzCost> cost;
  if (!args.cost_path.empty()) {
    std::ifstream in(args.cost_path);
    require(in.good(), "cannot open cost file: " + args.cost_path);
    cost.emplace(read_matrix(in));
  } else {
    require(args.trivial_umax > 0.0,
            "provide either --cost FILE or --trivial-umax X");
    Eigen::MatrixXd c =
        Eigen::MatrixXd::Constant(nu.size(), nu.size(), args.trivial_umax);
    c.diagonal().setZero();
    cost.emplace(std::move(c));
  }
  require(cost->size() == nu.size(), "cost matrix size mismatch");

  const TransportResult result = wasserstein(nu, mu, *cost);
  std::cout << "distance = " << num12(result.distance) << "\n";
  std::cout << "support = " << result.stats.row_support << "x"
            << result.stats.col_support
            << " pivots = " << result.stats.iterations
            << " trimmed = " << num(result.stats.trimmed_mass) << "\n";
  if (!args.coupling_path.empty()) {
    auto out = open_out(args.coupling_path);
    write_matrix(out, result.coupling.gamma);
    std::cout << "coupling written to " << args.coupling_path << "\n";
  }
  return 0;
}

// ---------------------------------------------------------- plot scripts --

// gnuplot scripts referencing summary.csv by column number. Column map:
//   1 n, 2 D, 3 delta, 4 t, 5 noise, 6 rows, 7 regret_n_median,
//   13 bound_mbr_nd, 14 bound_mbr_wd, 15 bound_map_nd, 16 bound_map_wd.
void write_axis_plot(const std::string& path, const ExperimentSpec& spec,
                     bool vs_n) {
  auto out = open_out(path);
  const int xcol = vs_n ? 1 : 2;
  const int fixcol = vs_n ? 2 : 1;
  const long fixval = vs_n ? spec.d_grid.back() : spec.n_grid.back();
  const char* xlabel = vs_n ? "n" : "D";
  const bool wd_series = spec.compute_wd && spec.space_size <= spec.wd_limit;
  const int bound_col = wd_series ? 14 : 13;
  const char* bound_name = wd_series ? "bound_mbr_wd" : "bound_mbr_nd";
  static const char* colors[] = {"red", "blue", "dark-violet", "orange"};

  out << "# Regret and bound series versus " << xlabel << " at "
      << (vs_n ? "D" : "n") << "=" << fixval << " (base variant rows).\n"
      << "# Data columns: " << xcol << "=" << xlabel
      << ", 3=delta, 7=regret_n_median, " << bound_col << "=" << bound_name
      << "\n"
      << "set datafile separator ','\n"
      << "set key top right\n"
      << "set xlabel '" << xlabel << "'\n"
      << "set ylabel 'regret / bound'\n"
      << "set grid\n"
      << "plot \\\n";
  for (std::size_t i = 0; i < spec.deltas.size(); ++i) {
    const std::string d = num(spec.deltas[i]);
    out << "  'summary.csv' using " << xcol << ":($" << fixcol
        << "==" << fixval << " && $3==" << d
        << " && strcol(4) eq '' && strcol(5) eq '' ? $" << bound_col
        << " : 1/0) with linespoints lc rgb '"
        << colors[std::min<std::size_t>(i, 3)] << "' title 'bound delta=" << d
        << "', \\\n";
  }
  out << "  'summary.csv' using " << xcol << ":($" << fixcol
      << "==" << fixval
      << " && strcol(4) eq '' && strcol(5) eq '' ? $7 : 1/0) "
         "with linespoints lc rgb 'dark-cyan' title 'median regret'\n";
}

void write_crossover_plot(const std::string& path, double delta) {
  auto out = open_out(path);
  out << "# Crossover region: (n, D) points split by whether the MBR bound\n"
      << "# sits below the MAP bound. Data columns: 1=n, 2=D, 3=delta,\n"
      << "# 7=mbr_below_map.\n"
      << "set datafile separator ','\n"
      << "set xlabel 'n'\n"
      << "set ylabel 'D'\n"
      << "set logscale xy\n"
      << "set key top left\n"
      << "plot \\\n"
      << "  'crossover.csv' using 1:($3==" << num(delta)
      << " && $7==1 ? $2 : 1/0) with points pt 7 lc rgb 'dark-cyan' "
         "title 'MBR bound below', \\\n"
      << "  'crossover.csv' using 1:($3==" << num(delta)
      << " && $7==0 ? $2 : 1/0) with points pt 6 lc rgb 'red' "
         "title 'MAP bound below'\n";
}

// -------------------------------------------------------------- simulate --

int cmd_simulate(const CommonArgs& args) {
  const Config config = load_config(args);
  const ExperimentSpec spec = ExperimentSpec::from_config(config);
  const SweepResult result = run_sweep(spec);

  ensure_dir(args.out_dir);
  {
    auto out = open_out(args.out_dir + "/results.csv");
    write_results_csv(out, result.rows);
  }
  {
    auto out = open_out(args.out_dir + "/summary.csv");
    write_summary_csv(out, result.summary);
  }
  ensure_dir(args.out_dir + "/plots");
  write_axis_plot(args.out_dir + "/plots/regret_vs_n.gp", spec, true);
  write_axis_plot(args.out_dir + "/plots/regret_vs_D.gp", spec, false);
  std::cout << result.rows.size() << " rows -> " << args.out_dir << "\n";
  return 0;
}

int cmd_crossover(const CommonArgs& args) {
  const Config config = load_config(args);
  const ExperimentSpec spec = ExperimentSpec::from_config(config);
  const auto rows = run_crossover_study(spec);

  ensure_dir(args.out_dir);
  {
    auto out = open_out(args.out_dir + "/crossover.csv");
    write_crossover_csv(out, rows);
  }
  ensure_dir(args.out_dir + "/plots");
  write_crossover_plot(args.out_dir + "/plots/crossover_region.gp",
                       spec.deltas.front());
  std::size_t below = 0;
  for (const auto& row : rows)
    if (row.predicate) ++below;
  std::cout << rows.size() << " grid points, MBR bound below MAP on " << below
            << "\n";
  return 0;
}

// ---------------------------------------------------------------- report --

int cmd_report(const std::string& results_path, const std::string& out_dir) {
  std::ifstream in(results_path);
  require(in.good(), "cannot open results file: " + results_path);
  std::vector<SweepRow> rows;
  try {
    rows = read_results_csv(in);
  } catch (const InputError& e) {
    throw InputError(results_path + ": " + e.what());
  }
  std::cout << rows.size() << " rows\n";
  const auto summary = summarize(rows);
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    auto out = open_out(out_dir + "/summary.csv");
    write_summary_csv(out, summary);
    std::cout << "summary written to " << out_dir << "/summary.csv\n";
  } else {
    std::ostringstream text;
    write_summary_csv(text, summary);
    std::cout << text.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mbrlab — decoding-regret simulation laboratory"};
  app.require_subcommand(1);

  CommonArgs decode_args, sim_args, cross_args;
  BoundsArgs bounds_args;
  WdArgs wd_args;
  std::string report_results, report_out;

  auto add_common = [](CLI::App* cmd, CommonArgs& args, bool config_required) {
    auto* opt = cmd->add_option("--config", args.config_path,
                                "key-value configuration file");
    if (config_required) opt->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--set", args.overrides,
                    "config override key=value (repeatable)");
    cmd->add_option("--seeds", args.seeds, "override run.seeds");
    cmd->add_option("--master-seed", args.master_seed,
                    "override run.master_seed");
  };

  auto* decode = app.add_subcommand("decode", "decode a distribution file");
  add_common(decode, decode_args, true);

  auto* bounds = app.add_subcommand("bounds", "evaluate the regret bounds");
  bounds->add_option("--n", bounds_args.n, "reference sample count(s)")
      ->required()
      ->delimiter(',');
  bounds->add_option("--delta", bounds_args.deltas, "failure probability(s)")
      ->required()
      ->delimiter(',');
  bounds->add_option("--dim", bounds_args.dim, "embedding dimension");
  bounds->add_option("-D,--train-size", bounds_args.d_size,
                     "training dataset size(s)")
      ->delimiter(',');
  bounds->add_option("--table", bounds_args.table_path,
                     "write a sweep table CSV here");
  bounds->add_option("--wd", bounds_args.wd, "transport distance to truth");
  bounds->add_option("--wd-temp", bounds_args.wd_temp,
                     "transport distance to the tempered model");
  bounds->add_option("--alpha-err", bounds_args.alpha_err,
                     "proxy embedding discrepancy");
  bounds->add_option("--u-max", bounds_args.u_max, "utility upper bound");
  bounds->add_flag("--raw", bounds_args.raw,
                   "include pre-simplification forms");
  bounds->add_option("--precision", bounds_args.precision,
                     "printed decimal places");

  auto* wd = app.add_subcommand("wd", "exact transport distance");
  wd->add_option("--nu", wd_args.nu_path, "first distribution file")
      ->required();
  wd->add_option("--mu", wd_args.mu_path, "second distribution file")
      ->required();
  wd->add_option("--cost", wd_args.cost_path, "cost matrix file");
  wd->add_option("--trivial-umax", wd_args.trivial_umax,
                 "use the trivial cost with this off-diagonal value");
  wd->add_option("--coupling", wd_args.coupling_path,
                 "write the optimal coupling here");

  auto* simulate = app.add_subcommand("simulate", "run a sweep experiment");
  add_common(simulate, sim_args, true);

  auto* crossover =
      app.add_subcommand("crossover", "bound-vs-bound crossover study");
  add_common(crossover, cross_args, true);

  auto* report = app.add_subcommand("report", "re-summarize a results file");
  report->add_option("--results", report_results, "results CSV path")
      ->required();
  report->add_option("--out", report_out, "directory for the summary CSV");

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(decode)) return cmd_decode(decode_args);
    if (app.got_subcommand(bounds)) return cmd_bounds(bounds_args);
    if (app.got_subcommand(wd)) return cmd_wd(wd_args);
    if (app.got_subcommand(simulate)) return cmd_simulate(sim_args);
    if (app.got_subcommand(crossover)) return cmd_crossover(cross_args);
    if (app.got_subcommand(report))
      return cmd_report(report_results, report_out);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
