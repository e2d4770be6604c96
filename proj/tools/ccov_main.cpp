#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccov/coverage.hpp"
#include "ccov/dataset.hpp"
#include "ccov/discretize.hpp"
#include "ccov/error.hpp"
#include "ccov/experiment.hpp"

namespace {

using namespace ccov;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::io_error, "cannot write '" + path + "'");
  out << text;
}

struct CoverageArgs {
  std::string set_b, set_a, label_col, discretizer_path;
  std::vector<int> t_values;
  int bins = 5;
  std::uint64_t seed = 0;
};

int cmd_coverage(const CoverageArgs& args) {
  const Dataset b = load_csv(args.set_b, args.label_col);
  const Dataset a = load_csv(args.set_a, args.label_col);
  if (b.schema.feature_names != a.schema.feature_names)
    raise(Errc::schema_mismatch, "the two files have different feature columns");

  Discretizer dz;
  if (!args.discretizer_path.empty()) {
    dz = discretizer_from_json(read_file(args.discretizer_path));
  } else {
    // no saved discretizer: fit on the pooled rows so both sets share bins
    if (b.schema.feature_kinds != a.schema.feature_kinds)
      raise(Errc::schema_mismatch, "the two files disagree on feature kinds");
    Matrix pooled(b.row_count() + a.row_count(), b.feature_count());
    pooled.topRows(b.row_count()) = b.rows;
    pooled.bottomRows(a.row_count()) = a.rows;
    std::vector<bool> pass(static_cast<std::size_t>(b.feature_count()));
    for (std::size_t f = 0; f < pass.size(); ++f)
      pass[f] = b.schema.feature_kinds[f] == FeatureKind::discrete;
    dz = fit_columns(pooled, b.schema.feature_names, pass, args.bins, args.seed);
  }

  const DiscretizedDataset dd_b = apply(dz, b);
  const DiscretizedDataset dd_a = apply(dz, a);
  for (const int t : args.t_values) {
    const CoverageResult res = sdcc_datasets(dd_b, dd_a, t);
    std::cout << "t=" << t << ": " << res.numerator << "/" << res.denominator << " = "
              << res.ratio << "\n";
  }
  return 0;
}

struct DiscretizeArgs {
  std::string input, label_col, out_path, save_discretizer, load_discretizer;
  int bins = 5;
  std::uint64_t seed = 0;
};

int cmd_discretize(const DiscretizeArgs& args) {
  const Dataset ds = load_csv(args.input, args.label_col);
  Discretizer dz;
  if (!args.load_discretizer.empty())
    dz = discretizer_from_json(read_file(args.load_discretizer));
  else
    dz = fit(ds, args.bins, args.seed);
  const DiscretizedDataset dd = apply(dz, ds);

  std::ostringstream out;
  for (const auto& name : dd.factor_names) out << name << ',';
  out << ds.schema.label_name << '\n';
  for (Index r = 0; r < dd.row_count(); ++r) {
    for (Index f = 0; f < dd.factor_count(); ++f) out << dd.rows(r, f) << ',';
    out << dd.labels[static_cast<std::size_t>(r)] << '\n';
  }
  write_file(args.out_path, out.str());
  if (!args.save_discretizer.empty()) write_file(args.save_discretizer, to_json(dz));
  return 0;
}

struct ExperimentArgs {
  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 1;
};

int cmd_experiment(const ExperimentArgs& args) {
  ExperimentConfig cfg = load_experiment_config(args.config_path);
  if (args.seed_set) cfg.master_seed = args.seed;

  std::filesystem::create_directories(args.out_dir);
  const ExperimentReport report = run_experiment(cfg, args.jobs, &std::cerr);

  const auto dir = std::filesystem::path(args.out_dir);
  {
    std::ofstream out(dir / "records.csv", std::ios::binary);
    if (!out) raise(Errc::io_error, "cannot write records.csv");
    write_records_csv(out, report.records);
  }
  {
    std::ofstream out(dir / "report.json", std::ios::binary);
    if (!out) raise(Errc::io_error, "cannot write report.json");
    write_report_json(out, report);
  }
  {
    std::ofstream out(dir / "correlation.csv", std::ios::binary);
    if (!out) raise(Errc::io_error, "cannot write correlation.csv");
    write_correlation_csv(out, report.correlation);
  }
  print_outcome_grid(std::cout, report.grid);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"t-way combinatorial coverage and set-difference coverage over tabular data"};
  app.require_subcommand(1);

  CoverageArgs cov;
  auto* cov_cmd = app.add_subcommand("coverage", "SDCC of set B against set A");
  cov_cmd->add_option("--set-b", cov.set_b, "reference CSV (the B side)")->required();
  cov_cmd->add_option("--set-a", cov.set_a, "comparison CSV (the A side)")->required();
  cov_cmd->add_option("--t", cov.t_values, "t values (comma separated)")
      ->required()
      ->delimiter(',');
  cov_cmd->add_option("--label-col", cov.label_col, "label column name")->required();
  cov_cmd->add_option("--bins", cov.bins, "k-means bins per continuous feature");
  cov_cmd->add_option("--seed", cov.seed, "binning seed");
  cov_cmd->add_option("--discretizer", cov.discretizer_path, "saved discretizer JSON");

  DiscretizeArgs dis;
  auto* dis_cmd = app.add_subcommand("discretize", "bin a CSV into integer factors");
  dis_cmd->add_option("--input", dis.input, "input CSV")->required();
  dis_cmd->add_option("--label-col", dis.label_col, "label column name")->required();
  dis_cmd->add_option("--bins", dis.bins, "k-means bins per continuous feature");
  dis_cmd->add_option("--seed", dis.seed, "binning seed");
  dis_cmd->add_option("--out", dis.out_path, "output CSV path")->required();
  dis_cmd->add_option("--save-discretizer", dis.save_discretizer, "write discretizer JSON here");
  dis_cmd->add_option("--discretizer", dis.load_discretizer,
                      "apply a saved discretizer instead of refitting");

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "full coverage experiment from a config file");
  exp_cmd->add_option("--config", exp.config_path, "experiment config file")->required();
  exp_cmd->add_option("--out", exp.out_dir, "output directory")->required();
  auto* seed_opt = exp_cmd->add_option("--seed", exp.seed, "overrides the config master seed");
  exp_cmd->add_option("--jobs", exp.jobs, "worker thread bound")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the message or help text
    return code == 0 ? 0 : 1;     // any flag problem is a usage error
  }

  try {
    if (cov_cmd->parsed()) return cmd_coverage(cov);
    if (dis_cmd->parsed()) return cmd_discretize(dis);
    exp.seed_set = seed_opt->count() > 0;
    return cmd_experiment(exp);
  } catch (const ccov::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
