#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wdl {

/// Length mismatches, budgets outside [1, n] and similar shape violations.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside the inputs it is defined for.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Neither the survival nor the ruin condition holds, so no closed-form rate applies.
class IndeterminateRegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AdjustmentError : public std::runtime_error {
 public:
  enum class Reason { kNoPositiveRoot, kRuinImpossible };

  AdjustmentError(Reason reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}

  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// Heterogeneous bound sampling kept rejecting draws.
class InfeasibleCellError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration schema violation; `key_path` points at the offending key ("population.budget").
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key_path, const std::string& message)
      : std::invalid_argument(key_path.empty() ? message : key_path + ": " + message),
        key_path_(std::move(key_path)) {}

  const std::string& key_path() const noexcept { return key_path_; }

 private:
  std::string key_path_;
};

/// Income ingestion failure; carries one message per offending row.
class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& what, std::vector<std::string> row_errors = {})
      : std::runtime_error(what), row_errors_(std::move(row_errors)) {}

  const std::vector<std::string>& row_errors() const noexcept { return row_errors_; }

 private:
  std::vector<std::string> row_errors_;
};

}  // namespace wdl
