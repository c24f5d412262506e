#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ofd/dist.hpp"
#include "ofd/generators.hpp"
#include "ofd/welfare.hpp"

namespace ofd {

struct ExperimentGrid {
  std::vector<int> agent_counts;
  std::vector<int> item_counts;
};

// Accepts "k=2..5,m=2..10" (ranges inclusive) or single values "k=3,m=6".
ExperimentGrid parse_grid(std::string_view text);

struct ExperimentConfig {
  ExperimentGrid grid;
  int samples = 100;
  std::uint64_t master_seed = 0;
  GeneratorFamily family = GeneratorFamily::kRandom01;
  Rational like_probability{1, 2};
  Rational alpha{1, 2};
  WelfareKind welfare = WelfareKind::kEgalitarian;
  EgalitarianMode mode = EgalitarianMode::kMinOfExpected;
  Budget budget;
  int threads = 0;
};

// One row per sampled instance: sincere competitive ratios of both
// mechanisms, plus the worst and best simple-equilibrium ratios of Balanced
// Like ("balanced-" / "balanced+"). Rows the analysis could not price carry
// a reason; rows with a zero-welfare denominator keep their finite cells.
struct ExperimentRow {
  int num_agents = 0;
  int num_items = 0;
  int instance_id = 0;
  std::uint64_t seed = 0;
  std::optional<RatioResult> like_ratio;
  std::optional<RatioResult> balanced_ratio;
  std::optional<RatioResult> balanced_worst_poa;
  std::optional<RatioResult> balanced_best_ratio;
  std::string skipped_reason;
};

// Instances are independent; evaluation is OpenMP-parallel over rows and the
// output order (k, m, instance id) does not depend on the thread count.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

// exp(mean(log)) — the one floating-point computation in the system.
// Throws std::invalid_argument on a non-positive value.
double geometric_mean(const std::vector<Rational>& values);

// Exact fractions; header
// k,m,instance_id,like_ratio,balanced_ratio,balanced_worst_poa,balanced_best_ratio,skipped_reason
std::string to_csv(const std::vector<ExperimentRow>& rows);

struct CellSummary {
  int num_agents = 0;
  int num_items = 0;
  int usable[4] = {0, 0, 0, 0};  // finite-ratio row counts per column
  double gmean[4] = {0, 0, 0, 0};
  int skipped = 0;               // rows with a skipped_reason
  bool trend_violated = false;   // geometric-mean balanced ratio above like
};

std::vector<CellSummary> summarize(const std::vector<ExperimentRow>& rows);

// Human-readable flags for cells violating the balanced<=like trend, with
// the offending rows attached.
std::vector<std::string> trend_flags(const std::vector<ExperimentRow>& rows);

// Whitespace-separated columns per agent count: item count then the four
// geometric means, for standard plotting tools.
std::string to_plot_data(const std::vector<CellSummary>& cells);

}  // namespace ofd
