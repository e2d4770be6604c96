#pragma once

#include <stdexcept>
#include <string>

namespace ccov {

enum class Errc {
  // argument / usage
  invalid_argument,
  t_too_large,
  // data and schema
  missing_label_column,
  ragged_row,
  empty_dataset,
  unparseable_value,
  degenerate_split,
  schema_mismatch,
  t_mismatch,
  empty_reference_set,
  value_outside_universe,
  factor_mismatch,
  dimension_mismatch,
  length_mismatch,
  too_few_samples,
  domain_error,
  degenerate_x,
  single_class_svm,
  empty_training_set,
  class_too_small,
  incomplete_report,
  io_error,
  config_error,
  // numeric
  non_finite_objective,
  degenerate_kernel,
};

/// Coarse classification used by the CLI to pick exit codes.
enum class ErrorKind { usage = 1, data = 2, numeric = 3 };

ErrorKind kind_of(Errc code);
const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }
  ErrorKind kind() const { return kind_of(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ccov
