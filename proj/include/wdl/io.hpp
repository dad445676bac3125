#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wdl/analysis.hpp"
#include "wdl/experiment.hpp"
#include "wdl/sweep.hpp"

namespace wdl {

// ---- income ingestion ----

struct IncomeIngest {
  Eigen::VectorXd welfare;  // one entry per complete group, ascending
  std::size_t rows_used = 0;
  std::size_t rows_discarded = 0;  // trailing partial group
  std::vector<std::string> warnings;
  /// 13 equal-width bins over [min, max] of the raw incomes. Diagnostic only.
  std::array<std::size_t, 13> histogram{};
};

/// Sorts the incomes ascending, splits them into consecutive groups of
/// `samples_per_individual` and maps each group mean to mean / unit welfare
/// units. A trailing partial group is dropped with a warning.
///
/// Throws IngestError for a missing file or column, or (listing every
/// offending row) for non-numeric or non-finite entries.
IncomeIngest ingest_income_csv(const std::filesystem::path& path, std::string_view income_column,
                               int samples_per_individual, double unit);

/// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);

// ---- configuration ----

struct LoadedConfig {
  ExperimentConfig experiment;
  std::optional<SweepConfig> sweep;
  double grid_tie_se = 3.0;
};

/// Reads a JSON config. Defaults: horizon 6000, replications 100, capped
/// Gaussian noise with sigma 0.5, capped-normal initial welfare. Unknown keys
/// and invalid values throw ConfigError naming the offending key path.
LoadedConfig load_config(const std::filesystem::path& path);
LoadedConfig parse_config(std::string_view json_text,
                          const std::filesystem::path& base_dir = std::filesystem::path{});

// ---- results files ----

struct ResultRow {
  std::string experiment_id;
  std::string policy;
  int replication = 0;
  std::int64_t checkpoint_t = 0;
  double social_welfare = 0.0;
  std::optional<double> predicted_rate;
};

inline constexpr std::string_view kResultsHeader =
    "experiment_id,policy,replication,checkpoint_t,social_welfare,predicted_rate";
inline constexpr std::string_view kSweepHeader = "b,sigma,horizon_checkpoint,winrate_minU,n_reps";
inline constexpr std::string_view kRatesHeader = "policy_family,individual,rate,regime";

/// Rows ordered by policy (in run order), replication, checkpoint.
std::vector<ResultRow> result_rows(const Comparison& comparison);

void write_results(const std::vector<ResultRow>& rows, std::ostream& out);
void write_results(const std::vector<ResultRow>& rows, const std::filesystem::path& path);
void write_results(const Comparison& comparison, const std::filesystem::path& path);
std::vector<ResultRow> read_results(const std::filesystem::path& path);

/// Two rows per cell: early checkpoint then horizon. Infeasible cells are
/// written with an empty win rate and n_reps 0.
void write_sweep(const std::vector<SweepResult>& cells, std::int64_t early_checkpoint,
                 std::int64_t horizon, std::ostream& out);
void write_sweep(const std::vector<SweepResult>& cells, std::int64_t early_checkpoint,
                 std::int64_t horizon, const std::filesystem::path& path);

/// One row per individual when per-individual rates are defined, then a row
/// with individual "mean" holding the average.
void write_rates(const std::vector<RatePrediction>& predictions, std::ostream& out);

/// Shortest round-trip decimal representation.
std::string format_double(double value);

}  // namespace wdl
