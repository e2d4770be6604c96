#include "ccov/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <utility>

#include <nlohmann/json.hpp>

#include "ccov/coverage.hpp"
#include "ccov/dataset.hpp"
#include "ccov/discretize.hpp"
#include "ccov/error.hpp"
#include "ccov/metric_learning.hpp"
#include "ccov/rng.hpp"

namespace ccov {

namespace {

// Sub-seed counters under each dataset's seed; the dataset seed itself is
// sub_seed(master_seed, dataset_index).
constexpr std::uint64_t kSeedFolds = 0;
constexpr std::uint64_t kSeedKmeansBase = 1;  // + space index
constexpr std::uint64_t kSeedNca = 16;
constexpr std::uint64_t kSeedMlkr = 17;
constexpr std::uint64_t kSeedLmnn = 18;

std::string fmt_real(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct SpaceRepresentation {
  Space space;
  DiscretizedDataset full;  // all rows, discretized
};

Real sdcc_against_subset(const CombinationSet& train_set, const DiscretizedDataset& full,
                         const IndexList& subset, int t) {
  if (subset.empty()) return 1.0;  // B \ empty = B
  const DiscretizedDataset dd = subset_rows(full, subset);
  return sdcc(train_set, enumerate_t_way(dd, t)).ratio;
}

RegressionResult robust_regression(const std::vector<Real>& xs, const std::vector<Real>& ys) {
  try {
    return linear_regression(xs, ys);
  } catch (const Error& e) {
    if (e.code() != Errc::degenerate_x) throw;
    // constant x: report the flat fit with zero explanatory power
    RegressionResult r;
    r.slope = 0.0;
    r.intercept = ys.empty() ? 0.0 : std::accumulate(ys.begin(), ys.end(), 0.0) /
                                         static_cast<Real>(ys.size());
    r.r_squared = 0.0;
    return r;
  }
}

}  // namespace

Outcome classify_outcome(const TTestResult& tt, Real alpha) {
  if (tt.degenerate) return Outcome::Identical;
  if (tt.statistic > 0.0 && tt.p_value < alpha) return Outcome::Higher;
  if (tt.statistic < 0.0 && tt.p_value < alpha) return Outcome::Lower;
  return Outcome::Same;
}

std::string to_string(Space space) {
  switch (space) {
    case Space::Original: return "ORIGINAL";
    case Space::Nca: return "NCA";
    case Space::Mlkr: return "MLKR";
    case Space::Lmnn: return "LMNN";
  }
  return "ORIGINAL";
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Higher: return "Higher";
    case Outcome::Lower: return "Lower";
    case Outcome::Same: return "Same";
    case Outcome::Identical: return "Identical";
  }
  return "Same";
}

std::string to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::DecisionTree: return "DT";
    case ClassifierKind::Knn: return "KNN";
    case ClassifierKind::Svm: return "SVM";
  }
  return "DT";
}

Space space_from_string(const std::string& name) {
  if (name == "ORIGINAL") return Space::Original;
  if (name == "NCA") return Space::Nca;
  if (name == "MLKR") return Space::Mlkr;
  if (name == "LMNN") return Space::Lmnn;
  raise(Errc::config_error, "unknown space '" + name + "'");
}

ClassifierKind classifier_from_string(const std::string& name) {
  if (name == "DT") return ClassifierKind::DecisionTree;
  if (name == "KNN") return ClassifierKind::Knn;
  if (name == "SVM") return ClassifierKind::Svm;
  raise(Errc::config_error, "unknown classifier '" + name + "'");
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, int jobs,
                                std::ostream* progress) {
  if (cfg.datasets.empty()) raise(Errc::config_error, "no datasets configured");
  if (cfg.spaces.empty()) raise(Errc::config_error, "no spaces configured");
  if (cfg.classifiers.empty()) raise(Errc::config_error, "no classifiers configured");
  if (cfg.t_values.empty()) raise(Errc::config_error, "no t values configured");
  for (const int t : cfg.t_values)
    if (t < 1) raise(Errc::config_error, "t values must be >= 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) raise(Errc::config_error, "alpha must be in (0,1)");
  if (jobs < 1) jobs = 1;

  ExperimentReport report;
  report.config = cfg;

  std::mutex progress_mutex;
  auto note = [&](const std::string& line) {
    if (!progress) return;
    const std::lock_guard<std::mutex> lock(progress_mutex);
    (*progress) << line << '\n' << std::flush;
  };

  OptimizerConfig opt;
  opt.max_iterations = cfg.metric_max_iterations;

  for (std::size_t di = 0; di < cfg.datasets.size(); ++di) {
    const DatasetManifest& manifest = cfg.datasets[di];
    const std::uint64_t dataset_seed = sub_seed(cfg.master_seed, di);
    try {
      note("[" + manifest.name + "] loading " + manifest.path);
      const Dataset ds = load_csv(manifest.path, manifest.label_column, manifest.kinds);
      const std::vector<std::string> classes = class_names(ds.labels);
      const std::vector<int> y = encode_labels(ds.labels, classes);

      // Learned spaces use every row (train and test): the split below only
      // affects classifiers and coverage subsets, so latent spaces and bin
      // edges deliberately see the full dataset.
      std::vector<SpaceRepresentation> reps;
      reps.reserve(cfg.spaces.size());
      for (std::size_t si = 0; si < cfg.spaces.size(); ++si) {
        const Space space = cfg.spaces[si];
        Matrix latent;
        std::vector<bool> pass(static_cast<std::size_t>(ds.feature_count()), false);
        std::vector<std::string> names;
        if (space == Space::Original) {
          latent = ds.rows;
          names = ds.schema.feature_names;
          for (std::size_t f = 0; f < pass.size(); ++f)
            pass[f] = ds.schema.feature_kinds[f] == FeatureKind::discrete;
        } else {
          LinearMap map;
          if (space == Space::Nca) {
            note("[" + manifest.name + "] fitting NCA");
            map = fit_nca(ds.rows, y, opt, sub_seed(dataset_seed, kSeedNca));
          } else if (space == Space::Mlkr) {
            note("[" + manifest.name + "] fitting MLKR");
            Vector y_numeric(ds.row_count());
            for (Index i = 0; i < ds.row_count(); ++i)
              y_numeric(i) = static_cast<Real>(y[static_cast<std::size_t>(i)]);
            map = fit_mlkr(ds.rows, y_numeric, opt, sub_seed(dataset_seed, kSeedMlkr));
          } else {
            note("[" + manifest.name + "] fitting LMNN");
            map = fit_lmnn(ds.rows, y, LmnnOptions{}, opt, sub_seed(dataset_seed, kSeedLmnn));
          }
          latent = transform(map, ds.rows);
          const std::string prefix = to_string(space);
          for (Index f = 0; f < ds.feature_count(); ++f)
            names.push_back(prefix + "_" + std::to_string(f));
        }
        const Discretizer dz = fit_columns(latent, names, pass, cfg.bins,
                                           sub_seed(dataset_seed, kSeedKmeansBase + si));
        reps.push_back({space, apply_columns(dz, latent, ds.labels)});
      }

      const std::vector<SplitPlan> folds =
          make_folds(ds, cfg.n_folds, cfg.test_fraction, sub_seed(dataset_seed, kSeedFolds));

      // fold -> records in canonical (classifier, space, t) order
      std::vector<std::vector<FoldRecord>> fold_records(folds.size());
      std::atomic<std::size_t> next_fold{0};
      std::mutex error_mutex;
      std::exception_ptr first_error;

      auto run_fold = [&](std::size_t fi) {
        const SplitPlan& plan = folds[fi];
        Matrix x_train(static_cast<Index>(plan.train_indices.size()), ds.feature_count());
        std::vector<std::string> y_train;
        y_train.reserve(plan.train_indices.size());
        for (std::size_t i = 0; i < plan.train_indices.size(); ++i) {
          x_train.row(static_cast<Index>(i)) = ds.rows.row(plan.train_indices[i]);
          y_train.push_back(ds.labels[static_cast<std::size_t>(plan.train_indices[i])]);
        }
        Matrix x_test(static_cast<Index>(plan.test_indices.size()), ds.feature_count());
        std::vector<std::string> y_test;
        y_test.reserve(plan.test_indices.size());
        for (std::size_t i = 0; i < plan.test_indices.size(); ++i) {
          x_test.row(static_cast<Index>(i)) = ds.rows.row(plan.test_indices[i]);
          y_test.push_back(ds.labels[static_cast<std::size_t>(plan.test_indices[i])]);
        }

        // train-side combination sets are classifier-independent
        std::vector<std::vector<CombinationSet>> train_sets(reps.size());
        for (std::size_t si = 0; si < reps.size(); ++si) {
          const DiscretizedDataset train_dd = subset_rows(reps[si].full, plan.train_indices);
          for (const int t : cfg.t_values)
            train_sets[si].push_back(enumerate_t_way(train_dd, t));
        }

        for (const ClassifierKind kind : cfg.classifiers) {
          const Model model = train(kind, x_train, y_train);
          const auto [correct_local, incorrect_local] =
              partition_by_correctness(model, x_test, y_test);
          IndexList correct, incorrect;
          for (const Index i : correct_local)
            correct.push_back(plan.test_indices[static_cast<std::size_t>(i)]);
          for (const Index i : incorrect_local)
            incorrect.push_back(plan.test_indices[static_cast<std::size_t>(i)]);
          const Real accuracy = static_cast<Real>(correct.size()) /
                                static_cast<Real>(plan.test_indices.size());

          for (std::size_t si = 0; si < reps.size(); ++si) {
            for (std::size_t ti = 0; ti < cfg.t_values.size(); ++ti) {
              const int t = cfg.t_values[ti];
              FoldRecord rec;
              rec.dataset = manifest.name;
              rec.fold_index = plan.fold_index;
              rec.classifier = kind;
              rec.space = reps[si].space;
              rec.t = t;
              rec.sdcc_correct =
                  sdcc_against_subset(train_sets[si][ti], reps[si].full, correct, t);
              rec.sdcc_incorrect =
                  sdcc_against_subset(train_sets[si][ti], reps[si].full, incorrect, t);
              rec.difference = cfg.difference_direction ==
                                       DifferenceDirection::correct_minus_incorrect
                                   ? rec.sdcc_correct - rec.sdcc_incorrect
                                   : rec.sdcc_incorrect - rec.sdcc_correct;
              rec.accuracy = accuracy;
              rec.n_correct = static_cast<long long>(correct.size());
              rec.n_incorrect = static_cast<long long>(incorrect.size());
              fold_records[fi].push_back(std::move(rec));
            }
          }
        }
        note("[" + manifest.name + "] fold " + std::to_string(plan.fold_index) + " done");
      };

      auto worker = [&]() {
        for (;;) {
          const std::size_t fi = next_fold.fetch_add(1);
          if (fi >= folds.size()) return;
          try {
            run_fold(fi);
          } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            return;
          }
        }
      };

      const int n_workers = std::min<int>(jobs, static_cast<int>(folds.size()));
      if (n_workers <= 1) {
        worker();
      } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
      }
      if (first_error) std::rethrow_exception(first_error);

      for (auto& recs : fold_records)
        for (auto& rec : recs) report.records.push_back(std::move(rec));

      // accuracy summary over folds, one cell per classifier
      for (const ClassifierKind kind : cfg.classifiers) {
        std::vector<Real> accs;
        for (const auto& recs : fold_records)
          for (const auto& rec : recs)
            if (rec.classifier == kind && rec.space == cfg.spaces.front() &&
                rec.t == cfg.t_values.front())
              accs.push_back(rec.accuracy);
        AccuracySummary cell;
        cell.dataset = manifest.name;
        cell.classifier = kind;
        Real mean = 0.0;
        for (const Real a : accs) mean += a;
        mean /= static_cast<Real>(accs.size());
        Real ss = 0.0;
        for (const Real a : accs) ss += (a - mean) * (a - mean);
        cell.mean = mean;
        cell.stddev = accs.size() > 1 ? std::sqrt(ss / static_cast<Real>(accs.size() - 1)) : 0.0;
        report.accuracy.push_back(cell);
      }
    } catch (const Error& e) {
      throw Error(e.code(), "dataset '" + manifest.name + "': " + e.what());
    }
  }

  report.ttests = ttest_summaries(report.records, cfg);
  report.correlation = correlation_export(report.records, cfg);
  report.grid = summarize(report);
  return report;
}

std::vector<TTestSummary> ttest_summaries(const std::vector<FoldRecord>& records,
                                          const ExperimentConfig& cfg) {
  std::vector<Space> methods;
  bool has_original = false;
  for (const Space s : cfg.spaces) {
    if (s == Space::Original) has_original = true;
    else methods.push_back(s);
  }
  if (!has_original || methods.empty()) return {};

  // records arrive fold-major then classifier-major, so per-key collection
  // order is the pairing order
  std::map<std::tuple<std::string, Space, int>, std::vector<Real>> diffs;
  for (const auto& rec : records)
    diffs[{rec.dataset, rec.space, rec.t}].push_back(rec.difference);

  std::vector<TTestSummary> out;
  for (const auto& manifest : cfg.datasets) {
    for (const int t : cfg.t_values) {
      TTestSummary summary;
      summary.dataset = manifest.name;
      summary.t = t;
      const auto base_it = diffs.find({manifest.name, Space::Original, t});
      if (base_it == diffs.end())
        raise(Errc::incomplete_report, "missing original-space records for '" + manifest.name +
                                           "', t=" + std::to_string(t));
      Real best_statistic = 0.0;
      TTestResult best_test;
      bool first = true;
      for (const Space method : methods) {
        const auto it = diffs.find({manifest.name, method, t});
        if (it == diffs.end())
          raise(Errc::incomplete_report, "missing " + to_string(method) + " records for '" +
                                             manifest.name + "', t=" + std::to_string(t));
        const TTestResult tt = paired_t_test(it->second, base_it->second);
        summary.tests.emplace_back(method, tt);
        if (first || tt.statistic > best_statistic) {  // ties keep the earlier method
          best_statistic = tt.statistic;
          best_test = tt;
          summary.best_method = method;
          first = false;
        }
      }
      summary.outcome = classify_outcome(best_test, cfg.alpha);
      out.push_back(std::move(summary));
    }
  }
  return out;
}

CorrelationExport correlation_export(const std::vector<FoldRecord>& records,
                                     const ExperimentConfig& cfg) {
  CorrelationExport out;
  for (const Space space : cfg.spaces) {
    std::vector<Real> xs, ys;
    for (const auto& rec : records) {
      if (rec.space != space) continue;
      out.points.push_back({space, rec.dataset, rec.accuracy, rec.difference});
      xs.push_back(rec.accuracy);
      ys.push_back(rec.difference);
    }
    if (xs.size() >= 2) out.global.emplace_back(space, robust_regression(xs, ys));
    for (const auto& manifest : cfg.datasets) {
      std::vector<Real> dxs, dys;
      for (const auto& rec : records)
        if (rec.space == space && rec.dataset == manifest.name) {
          dxs.push_back(rec.accuracy);
          dys.push_back(rec.difference);
        }
      if (dxs.size() >= 2)
        out.per_dataset.emplace_back(std::make_pair(space, manifest.name),
                                     robust_regression(dxs, dys));
    }
  }
  return out;
}

OutcomeGrid summarize(const ExperimentReport& report) {
  OutcomeGrid grid;
  std::vector<Space> methods;
  bool has_original = false;
  for (const Space s : report.config.spaces) {
    if (s == Space::Original) has_original = true;
    else methods.push_back(s);
  }
  if (!has_original || methods.empty()) return grid;  // nothing to compare

  grid.t_values = report.config.t_values;
  for (const auto& manifest : report.config.datasets) {
    grid.datasets.push_back(manifest.name);
    std::vector<Outcome> row;
    for (const int t : report.config.t_values) {
      const auto it = std::find_if(report.ttests.begin(), report.ttests.end(),
                                   [&](const TTestSummary& s) {
                                     return s.dataset == manifest.name && s.t == t;
                                   });
      if (it == report.ttests.end())
        raise(Errc::incomplete_report, "no t-test summary for '" + manifest.name + "', t=" +
                                           std::to_string(t));
      row.push_back(it->outcome);
      switch (it->outcome) {
        case Outcome::Higher: ++grid.higher; break;
        case Outcome::Lower: ++grid.lower; break;
        case Outcome::Same:
        case Outcome::Identical: ++grid.same; break;
      }
    }
    grid.cells.push_back(std::move(row));
  }
  return grid;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string base_dir = std::filesystem::path(path).parent_path().string();

  auto split_list = [](const std::string& value) {
    std::vector<std::string> items;
    std::string current;
    for (const char ch : value) {
      if (ch == ',' || ch == ' ' || ch == '\t') {
        if (!current.empty()) items.push_back(std::exchange(current, ""));
      } else {
        current.push_back(ch);
      }
    }
    if (!current.empty()) items.push_back(current);
    return items;
  };

  ExperimentConfig cfg;
  bool saw_experiment = false;
  for (const auto& section : parse_config_sections(buffer.str())) {
    if (section.name == "experiment") {
      saw_experiment = true;
      for (const auto& [key, value] : section.entries) {
        try {
          if (key == "spaces") {
            cfg.spaces.clear();
            for (const auto& item : split_list(value)) cfg.spaces.push_back(space_from_string(item));
          } else if (key == "classifiers") {
            cfg.classifiers.clear();
            for (const auto& item : split_list(value))
              cfg.classifiers.push_back(classifier_from_string(item));
          } else if (key == "t_values") {
            cfg.t_values.clear();
            for (const auto& item : split_list(value)) cfg.t_values.push_back(std::stoi(item));
          } else if (key == "n_folds") {
            cfg.n_folds = std::stoi(value);
          } else if (key == "test_fraction") {
            cfg.test_fraction = std::stod(value);
          } else if (key == "bins") {
            cfg.bins = std::stoi(value);
          } else if (key == "alpha") {
            cfg.alpha = std::stod(value);
          } else if (key == "master_seed") {
            cfg.master_seed = std::stoull(value);
          } else if (key == "metric_max_iterations") {
            cfg.metric_max_iterations = std::stoi(value);
          } else if (key == "difference_direction") {
            if (value == "correct_minus_incorrect")
              cfg.difference_direction = DifferenceDirection::correct_minus_incorrect;
            else if (value == "incorrect_minus_correct")
              cfg.difference_direction = DifferenceDirection::incorrect_minus_correct;
            else
              raise(Errc::config_error, "bad difference_direction '" + value + "'");
          } else {
            raise(Errc::config_error, "unknown experiment key '" + key + "'");
          }
        } catch (const std::logic_error&) {
          raise(Errc::config_error, "bad value for '" + key + "': " + value);
        }
      }
    } else if (section.name == "dataset") {
      // a section may point at a standalone manifest file instead of inlining
      if (section.entries.size() == 1 && section.entries.front().first == "manifest") {
        std::filesystem::path p(section.entries.front().second);
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        cfg.datasets.push_back(load_manifest(p.string()));
      } else {
        cfg.datasets.push_back(manifest_from_entries(section.entries, base_dir));
      }
    } else {
      raise(Errc::config_error, "unknown section [" + section.name + "]");
    }
  }
  if (!saw_experiment && cfg.datasets.empty())
    raise(Errc::config_error, "config has neither [experiment] nor [dataset] sections");
  return cfg;
}

void write_records_csv(std::ostream& out, const std::vector<FoldRecord>& records) {
  out << "dataset,fold,classifier,space,t,sdcc_correct,sdcc_incorrect,difference,accuracy,"
         "n_correct,n_incorrect\n";
  for (const auto& rec : records) {
    out << rec.dataset << ',' << rec.fold_index << ',' << to_string(rec.classifier) << ','
        << to_string(rec.space) << ',' << rec.t << ',' << fmt_real(rec.sdcc_correct) << ','
        << fmt_real(rec.sdcc_incorrect) << ',' << fmt_real(rec.difference) << ','
        << fmt_real(rec.accuracy) << ',' << rec.n_correct << ',' << rec.n_incorrect << '\n';
  }
}

void write_correlation_csv(std::ostream& out, const CorrelationExport& correlation) {
  out << "space,dataset,accuracy,difference\n";
  for (const auto& point : correlation.points) {
    out << to_string(point.space) << ',' << point.dataset << ',' << fmt_real(point.accuracy)
        << ',' << fmt_real(point.difference) << '\n';
  }
}

void write_report_json(std::ostream& out, const ExperimentReport& report) {
  nlohmann::ordered_json j;

  nlohmann::ordered_json jc;
  jc["master_seed"] = report.config.master_seed;
  jc["n_folds"] = report.config.n_folds;
  jc["test_fraction"] = report.config.test_fraction;
  jc["bins"] = report.config.bins;
  jc["alpha"] = report.config.alpha;
  jc["t_values"] = report.config.t_values;
  jc["difference_direction"] =
      report.config.difference_direction == DifferenceDirection::correct_minus_incorrect
          ? "correct_minus_incorrect"
          : "incorrect_minus_correct";
  jc["metric_max_iterations"] = report.config.metric_max_iterations;
  std::vector<std::string> names;
  for (const Space s : report.config.spaces) names.push_back(to_string(s));
  jc["spaces"] = names;
  names.clear();
  for (const ClassifierKind k : report.config.classifiers) names.push_back(to_string(k));
  jc["classifiers"] = names;
  names.clear();
  for (const auto& m : report.config.datasets) names.push_back(m.name);
  jc["datasets"] = names;
  j["config"] = std::move(jc);

  j["accuracy"] = nlohmann::ordered_json::array();
  for (const auto& cell : report.accuracy) {
    j["accuracy"].push_back({{"dataset", cell.dataset},
                             {"classifier", to_string(cell.classifier)},
                             {"mean", cell.mean},
                             {"stddev", cell.stddev}});
  }

  j["t_tests"] = nlohmann::ordered_json::array();
  for (const auto& summary : report.ttests) {
    nlohmann::ordered_json jt;
    jt["dataset"] = summary.dataset;
    jt["t"] = summary.t;
    jt["methods"] = nlohmann::ordered_json::array();
    for (const auto& [space, tt] : summary.tests) {
      jt["methods"].push_back({{"space", to_string(space)},
                               {"statistic", tt.statistic},
                               {"p_value", tt.p_value},
                               {"df", tt.df},
                               {"degenerate", tt.degenerate}});
    }
    jt["best_method"] = to_string(summary.best_method);
    jt["outcome"] = to_string(summary.outcome);
    j["t_tests"].push_back(std::move(jt));
  }

  nlohmann::ordered_json jg;
  jg["datasets"] = report.grid.datasets;
  jg["t_values"] = report.grid.t_values;
  jg["cells"] = nlohmann::ordered_json::array();
  for (const auto& row : report.grid.cells) {
    nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
    for (const Outcome o : row) jrow.push_back(to_string(o));
    jg["cells"].push_back(std::move(jrow));
  }
  jg["totals"] = {{"higher", report.grid.higher},
                  {"same", report.grid.same},
                  {"lower", report.grid.lower}};
  j["outcome_grid"] = std::move(jg);

  nlohmann::ordered_json jcorr;
  jcorr["point_count"] = report.correlation.points.size();
  jcorr["global"] = nlohmann::ordered_json::array();
  for (const auto& [space, reg] : report.correlation.global) {
    jcorr["global"].push_back({{"space", to_string(space)},
                               {"slope", reg.slope},
                               {"intercept", reg.intercept},
                               {"r_squared", reg.r_squared}});
  }
  jcorr["per_dataset"] = nlohmann::ordered_json::array();
  for (const auto& [key, reg] : report.correlation.per_dataset) {
    jcorr["per_dataset"].push_back({{"space", to_string(key.first)},
                                    {"dataset", key.second},
                                    {"slope", reg.slope},
                                    {"intercept", reg.intercept},
                                    {"r_squared", reg.r_squared}});
  }
  j["correlation"] = std::move(jcorr);

  out << j.dump(2) << '\n';
}

void print_outcome_grid(std::ostream& out, const OutcomeGrid& grid) {
  if (grid.datasets.empty()) {
    out << "(no learned spaces to compare against the original)\n";
    return;
  }
  std::size_t width = 8;
  for (const auto& name : grid.datasets) width = std::max(width, name.size() + 2);
  out << std::string(width, ' ');
  for (const int t : grid.t_values) {
    std::string head = "t=" + std::to_string(t);
    head.resize(11, ' ');
    out << head;
  }
  out << '\n';
  for (std::size_t row = 0; row < grid.datasets.size(); ++row) {
    std::string name = grid.datasets[row];
    name.resize(width, ' ');
    out << name;
    for (const Outcome o : grid.cells[row]) {
      std::string cell = to_string(o);
      cell.resize(11, ' ');
      out << cell;
    }
    out << '\n';
  }
  out << "totals: Higher=" << grid.higher << " Same=" << grid.same << " Lower=" << grid.lower
      << '\n';
}

}  // namespace ccov
