#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gfrank/rankset.hpp"

namespace gfrank {

enum class Mode { kNoiseless, kNoisy };

const char* to_string(Mode mode) noexcept;
Mode parse_mode(const std::string& s);

struct ExperimentConfig {
  std::size_t n = 2;
  std::size_t d = 3;
  std::size_t r = 1;
  std::uint32_t q = 2;
  Mode mode = Mode::kNoiseless;
  double epsilon = 0.0;
  double eta = 0.0;
  std::vector<std::size_t> m_values;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::string output_path;
  std::uint64_t budget = kDefaultBudget;
  /// Directory for on-disk rank-set caches; empty disables caching.
  std::string cache_dir;

  /// Throws std::invalid_argument on a malformed configuration.
  void validate() const;
};

/// "6,8,10" or "start:stop:step" (stop inclusive).
std::vector<std::size_t> parse_m_values(const std::string& text);

/// Field names mirror ExperimentConfig. "m_values" is either an array or
/// {"start": a, "stop": b, "step": c}. Missing fields keep defaults.
void apply_json(ExperimentConfig& config, const nlohmann::json& j);
ExperimentConfig config_from_json(const nlohmann::json& j);

struct SweepRow {
  std::size_t m = 0;
  std::size_t tau = 0;
  std::size_t trials = 0;
  std::size_t error_events = 0;
  std::size_t wrong_reconstructions = 0;
  std::size_t outside_ball_events = 0;  // noisy clause d_H(y, y~) > tau alone
  double empirical_rate = 0.0;
  double predicted_failure = 0.0;
  double fano_lower = 0.0;
  double converse_threshold = 0.0;
  double achievability_threshold = 0.0;
};

struct SweepResult {
  ExperimentConfig config;
  std::uint64_t cardinality = 0;
  std::vector<SweepRow> rows;  // sorted by m
};

/// For every m and trial: draw T* uniformly from the rank set, draw the
/// ensemble, measure (and transmit when noisy), then evaluate the error
/// event and decode. Per-trial seeds come from (master_seed, m, trial), so
/// the result does not depend on `workers`.
SweepResult run_sweep(const ExperimentConfig& config, unsigned workers = 1);

inline constexpr const char* kCsvHeader =
    "n,d,r,q,mode,epsilon,eta,tau,m,trials,error_events,wrong_recon,empirical_rate,predicted_failure,"
    "fano_lower,converse_threshold,achievability_threshold,master_seed";

/// Header plus one row per m; reals printed with 9 significant digits.
void write_csv(std::ostream& out, const SweepResult& result);
/// gnuplot script plotting empirical and predicted rates against m.
void write_gnuplot_script(std::ostream& out, const std::string& csv_path);

/// Loads the rank set from `cache_dir` when present there, otherwise
/// enumerates it (and writes the cache if `cache_dir` is non-empty).
RankSet load_or_enumerate(const ProblemParams& params, std::uint64_t budget, const std::string& cache_dir);

}  // namespace gfrank
