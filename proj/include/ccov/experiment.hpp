#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ccov/classifiers.hpp"
#include "ccov/config.hpp"
#include "ccov/stats.hpp"
#include "ccov/types.hpp"

namespace ccov {

enum class Space { Original, Nca, Mlkr, Lmnn };

enum class Outcome { Higher, Lower, Same, Identical };

enum class DifferenceDirection { correct_minus_incorrect, incorrect_minus_correct };

struct ExperimentConfig {
  std::vector<DatasetManifest> datasets;
  std::vector<Space> spaces{Space::Original, Space::Nca, Space::Mlkr, Space::Lmnn};
  std::vector<int> t_values{2, 3, 4};
  int n_folds = 10;
  Real test_fraction = 0.2;
  int bins = 5;
  std::vector<ClassifierKind> classifiers{ClassifierKind::DecisionTree, ClassifierKind::Knn,
                                          ClassifierKind::Svm};
  Real alpha = 0.05;
  std::uint64_t master_seed = 42;
  DifferenceDirection difference_direction = DifferenceDirection::correct_minus_incorrect;
  int metric_max_iterations = 100;  // optimizer budget for the three fitters
};

/// One (dataset, fold, classifier, space, t) measurement. `difference` follows
/// the configured direction. An empty correct or incorrect test subset yields
/// SDCC exactly 1 (set difference against the empty set) and is recorded, not
/// skipped; n_correct/n_incorrect expose it.
struct FoldRecord {
  std::string dataset;
  int fold_index = 0;
  ClassifierKind classifier = ClassifierKind::DecisionTree;
  Space space = Space::Original;
  int t = 0;
  Real sdcc_correct = 0.0;
  Real sdcc_incorrect = 0.0;
  Real difference = 0.0;
  Real accuracy = 0.0;
  long long n_correct = 0;
  long long n_incorrect = 0;
};

/// Paired t-tests of one (dataset, t): each learned space's differences
/// against the original space's, pooled over folds x classifiers. The best
/// method is the one with the largest statistic (ties to the earlier space in
/// canonical NCA, MLKR, LMNN order).
struct TTestSummary {
  std::string dataset;
  int t = 0;
  std::vector<std::pair<Space, TTestResult>> tests;
  Space best_method = Space::Nca;
  Outcome outcome = Outcome::Same;
};

struct CorrelationPoint {
  Space space = Space::Original;
  std::string dataset;
  Real accuracy = 0.0;
  Real difference = 0.0;
};

struct CorrelationExport {
  std::vector<CorrelationPoint> points;
  std::vector<std::pair<Space, RegressionResult>> global;  // difference on accuracy
  std::vector<std::pair<std::pair<Space, std::string>, RegressionResult>> per_dataset;
};

struct AccuracySummary {
  std::string dataset;
  ClassifierKind classifier = ClassifierKind::DecisionTree;
  Real mean = 0.0;
  Real stddev = 0.0;  // sample stddev over folds
};

struct OutcomeGrid {
  std::vector<std::string> datasets;
  std::vector<int> t_values;
  std::vector<std::vector<Outcome>> cells;  // [dataset][t]
  int higher = 0;
  int same = 0;  // includes Identical cells
  int lower = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<FoldRecord> records;
  std::vector<TTestSummary> ttests;
  std::vector<AccuracySummary> accuracy;
  CorrelationExport correlation;
  OutcomeGrid grid;
};

/// Identical when degenerate, Higher/Lower on a significant positive/negative
/// statistic, Same otherwise.
Outcome classify_outcome(const TTestResult& tt, Real alpha);

/// Runs the full pipeline: per dataset, fit the learned spaces on all rows,
/// discretize every space once, then per fold train each classifier on the
/// raw train rows, split the test rows by correctness, and record SDCC of the
/// train set against each subset for every space and t. Deterministic for a
/// fixed config; `jobs` bounds worker threads for the per-fold stage without
/// changing any output byte.
ExperimentReport run_experiment(const ExperimentConfig& cfg, int jobs = 1,
                                std::ostream* progress = nullptr);

/// The t-test stage alone (records -> per-(dataset, t) summaries).
std::vector<TTestSummary> ttest_summaries(const std::vector<FoldRecord>& records,
                                          const ExperimentConfig& cfg);

/// The outcome grid of a complete report; raises IncompleteReport when a
/// (dataset, t) cell has no t-test summary.
OutcomeGrid summarize(const ExperimentReport& report);

CorrelationExport correlation_export(const std::vector<FoldRecord>& records,
                                     const ExperimentConfig& cfg);

// -- names and parsing ---------------------------------------------------------

std::string to_string(Space space);
std::string to_string(Outcome outcome);
std::string to_string(ClassifierKind kind);
Space space_from_string(const std::string& name);
ClassifierKind classifier_from_string(const std::string& name);

/// Parses the sectioned key=value experiment config ([experiment] settings
/// plus one [dataset] section per dataset; see README for the grammar).
ExperimentConfig load_experiment_config(const std::string& path);

// -- report output ---------------------------------------------------------------

void write_records_csv(std::ostream& out, const std::vector<FoldRecord>& records);
void write_correlation_csv(std::ostream& out, const CorrelationExport& correlation);
void write_report_json(std::ostream& out, const ExperimentReport& report);
void print_outcome_grid(std::ostream& out, const OutcomeGrid& grid);

}  // namespace ccov
