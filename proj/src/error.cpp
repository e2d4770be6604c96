#include "ccov/error.hpp"

namespace ccov {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::t_too_large: return "TTooLarge";
    case Errc::missing_label_column: return "MissingLabelColumn";
    case Errc::ragged_row: return "RaggedRow";
    case Errc::empty_dataset: return "EmptyDataset";
    case Errc::unparseable_value: return "UnparseableValue";
    case Errc::degenerate_split: return "DegenerateSplit";
    case Errc::schema_mismatch: return "SchemaMismatch";
    case Errc::t_mismatch: return "TMismatch";
    case Errc::empty_reference_set: return "EmptyReferenceSet";
    case Errc::value_outside_universe: return "ValueOutsideUniverse";
    case Errc::factor_mismatch: return "FactorMismatch";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::too_few_samples: return "TooFewSamples";
    case Errc::domain_error: return "DomainError";
    case Errc::degenerate_x: return "DegenerateX";
    case Errc::single_class_svm: return "SingleClassSVM";
    case Errc::empty_training_set: return "EmptyTrainingSet";
    case Errc::class_too_small: return "ClassTooSmall";
    case Errc::incomplete_report: return "IncompleteReport";
    case Errc::io_error: return "IoError";
    case Errc::config_error: return "ConfigError";
    case Errc::non_finite_objective: return "NonFiniteObjective";
    case Errc::degenerate_kernel: return "DegenerateKernel";
  }
  return "Error";
}

ErrorKind kind_of(Errc code) {
  switch (code) {
    case Errc::invalid_argument:
    case Errc::t_too_large:
      return ErrorKind::usage;
    case Errc::non_finite_objective:
    case Errc::degenerate_kernel:
      return ErrorKind::numeric;
    default:
      return ErrorKind::data;
  }
}

}  // namespace ccov
