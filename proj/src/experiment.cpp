#include "ofd/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ofd/errors.hpp"
#include "ofd/strategy.hpp"

namespace ofd {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Per-instance seed, independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t master, int k, int m, int id) {
  std::uint64_t s = mix64(master ^ 0x6f6e6c696e654664ULL);
  s = mix64(s + static_cast<std::uint64_t>(k));
  s = mix64(s + static_cast<std::uint64_t>(m));
  s = mix64(s + static_cast<std::uint64_t>(id));
  return s;
}

std::vector<int> parse_range(std::string_view text, int line_hint) {
  (void)line_hint;
  const auto dots = text.find("..");
  auto to_int = [&](std::string_view s) {
    size_t pos = 0;
    const int v = std::stoi(std::string(s), &pos);
    if (pos != s.size() || v <= 0) throw std::invalid_argument("bad grid bound '" + std::string(s) + "'");
    return v;
  };
  std::vector<int> values;
  if (dots == std::string_view::npos) {
    values.push_back(to_int(text));
    return values;
  }
  const int lo = to_int(text.substr(0, dots));
  const int hi = to_int(text.substr(dots + 2));
  if (hi < lo) throw std::invalid_argument("empty grid range '" + std::string(text) + "'");
  for (int v = lo; v <= hi; ++v) values.push_back(v);
  return values;
}

}  // namespace

ExperimentGrid parse_grid(std::string_view text) {
  ExperimentGrid grid;
  size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string_view part = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
    if (part.size() < 3 || part[1] != '=') throw std::invalid_argument("grid parts must look like k=2..5, got '" + std::string(part) + "'");
    const std::vector<int> values = parse_range(part.substr(2), 0);
    if (part[0] == 'k') {
      grid.agent_counts = values;
    } else if (part[0] == 'm') {
      grid.item_counts = values;
    } else {
      throw std::invalid_argument("grid dimension must be k or m, got '" + std::string(1, part[0]) + "'");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (grid.agent_counts.empty() || grid.item_counts.empty()) throw std::invalid_argument("grid needs both k and m");
  return grid;
}

namespace {

void evaluate_row(const ExperimentConfig& config, ExperimentRow& row) {
  GeneratorSpec spec;
  spec.family = config.family;
  spec.num_agents = row.num_agents;
  spec.num_items = row.num_items;
  spec.like_probability = config.like_probability;
  spec.alpha = config.alpha;
  spec.seed = row.seed;
  const Instance instance = generate(spec);
  try {
    const Rational optimum = optimal_offline(instance, config.welfare, config.budget).second;
    if (optimum.is_zero()) {
      row.skipped_reason = "opt_zero";
      return;
    }
    const BidProfile sincere = sincere_bids(instance);
    const Rational like_welfare =
        expected_welfare(MechanismKind::kLike, instance, sincere, config.welfare, config.mode, config.budget);
    const Rational balanced_welfare =
        expected_welfare(MechanismKind::kBalancedLike, instance, sincere, config.welfare, config.mode, config.budget);
    row.like_ratio = RatioResult::from(optimum, like_welfare);
    row.balanced_ratio = RatioResult::from(optimum, balanced_welfare);
    const auto poa = price_of_anarchy(MechanismKind::kBalancedLike, instance, config.welfare, config.mode,
                                      config.budget, /*threads=*/1);
    if (!poa) {
      row.skipped_reason = "no_equilibrium";
      return;
    }
    row.balanced_worst_poa = poa->worst;
    row.balanced_best_ratio = poa->best;
    if (!row.like_ratio->is_value() || !row.balanced_ratio->is_value() || !poa->worst.is_value() ||
        !poa->best.is_value()) {
      row.skipped_reason = "welfare_zero";
    }
  } catch (const BudgetExceeded&) {
    row.skipped_reason = "budget_exceeded";
  }
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  if (config.samples <= 0) throw std::invalid_argument("samples must be positive");
  std::vector<ExperimentRow> rows;
  for (const int k : config.grid.agent_counts) {
    for (const int m : config.grid.item_counts) {
      for (int id = 0; id < config.samples; ++id) {
        ExperimentRow& row = rows.emplace_back();
        row.num_agents = k;
        row.num_items = m;
        row.instance_id = id;
        row.seed = derive_seed(config.master_seed, k, m, id);
      }
    }
  }
  const auto total = static_cast<long long>(rows.size());
#ifdef _OPENMP
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (long long idx = 0; idx < total; ++idx) {
    evaluate_row(config, rows[static_cast<size_t>(idx)]);
  }
  return rows;
}

double geometric_mean(const std::vector<Rational>& values) {
  if (values.empty()) throw std::invalid_argument("geometric mean of an empty list");
  double log_sum = 0;
  for (const Rational& v : values) {
    if (v.sign() <= 0) throw std::invalid_argument("geometric mean needs positive values, got " + v.to_string());
    log_sum += std::log(v.to_double());
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

namespace {

std::string cell_text(const std::optional<RatioResult>& cell) {
  return cell ? cell->to_string() : std::string();
}

const std::optional<RatioResult>& column(const ExperimentRow& row, int c) {
  switch (c) {
    case 0:
      return row.like_ratio;
    case 1:
      return row.balanced_ratio;
    case 2:
      return row.balanced_worst_poa;
    default:
      return row.balanced_best_ratio;
  }
}

}  // namespace

std::string to_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << "k,m,instance_id,like_ratio,balanced_ratio,balanced_worst_poa,balanced_best_ratio,skipped_reason\n";
  for (const ExperimentRow& row : rows) {
    out << row.num_agents << ',' << row.num_items << ',' << row.instance_id << ',' << cell_text(row.like_ratio) << ','
        << cell_text(row.balanced_ratio) << ',' << cell_text(row.balanced_worst_poa) << ','
        << cell_text(row.balanced_best_ratio) << ',' << row.skipped_reason << '\n';
  }
  return out.str();
}

std::vector<CellSummary> summarize(const std::vector<ExperimentRow>& rows) {
  std::vector<CellSummary> cells;
  auto cell_for = [&cells](int k, int m) -> CellSummary& {
    for (CellSummary& cell : cells) {
      if (cell.num_agents == k && cell.num_items == m) return cell;
    }
    cells.push_back(CellSummary{});
    cells.back().num_agents = k;
    cells.back().num_items = m;
    return cells.back();
  };
  for (const ExperimentRow& row : rows) {
    CellSummary& cell = cell_for(row.num_agents, row.num_items);
    if (!row.skipped_reason.empty()) ++cell.skipped;
    for (int c = 0; c < 4; ++c) {
      const auto& value = column(row, c);
      if (value && value->is_value()) ++cell.usable[c];
    }
  }
  for (CellSummary& cell : cells) {
    for (int c = 0; c < 4; ++c) {
      if (cell.usable[c] == 0) continue;
      std::vector<Rational> values;
      values.reserve(cell.usable[c]);
      for (const ExperimentRow& row : rows) {
        if (row.num_agents != cell.num_agents || row.num_items != cell.num_items) continue;
        const auto& value = column(row, c);
        if (value && value->is_value()) values.push_back(value->value);
      }
      cell.gmean[c] = geometric_mean(values);
    }
    cell.trend_violated = cell.usable[0] > 0 && cell.usable[1] > 0 && cell.gmean[1] > cell.gmean[0];
  }
  return cells;
}

std::vector<std::string> trend_flags(const std::vector<ExperimentRow>& rows) {
  std::vector<std::string> flags;
  for (const CellSummary& cell : summarize(rows)) {
    if (!cell.trend_violated) continue;
    std::ostringstream flag;
    flag << "FLAG k=" << cell.num_agents << " m=" << cell.num_items << ": geometric-mean balanced ratio "
         << cell.gmean[1] << " exceeds like ratio " << cell.gmean[0] << "; sample rows follow\n";
    for (const ExperimentRow& row : rows) {
      if (row.num_agents != cell.num_agents || row.num_items != cell.num_items) continue;
      flag << "  id=" << row.instance_id << " seed=" << row.seed << " like=" << cell_text(row.like_ratio)
           << " balanced=" << cell_text(row.balanced_ratio) << '\n';
    }
    flags.push_back(flag.str());
  }
  return flags;
}

std::string to_plot_data(const std::vector<CellSummary>& cells) {
  std::ostringstream out;
  out << "# m gm_like gm_balanced gm_balanced_worst_poa gm_balanced_best skipped\n";
  int current_k = -1;
  char buffer[64];
  for (const CellSummary& cell : cells) {
    if (cell.num_agents != current_k) {
      current_k = cell.num_agents;
      out << "# k=" << current_k << '\n';
    }
    out << cell.num_items;
    for (int c = 0; c < 4; ++c) {
      if (cell.usable[c] == 0) {
        out << " nan";
      } else {
        std::snprintf(buffer, sizeof buffer, " %.6f", cell.gmean[c]);
        out << buffer;
      }
    }
    out << ' ' << cell.skipped << '\n';
  }
  return out.str();
}

}  // namespace ofd
