// Command-line front end: mechanism runs, exact distributions, equilibrium
// and welfare analysis, instance generation and experiment sweeps.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ofd/core.hpp"
#include "ofd/dist.hpp"
#include "ofd/errors.hpp"
#include "ofd/experiment.hpp"
#include "ofd/generators.hpp"
#include "ofd/mechanisms.hpp"
#include "ofd/strategy.hpp"
#include "ofd/welfare.hpp"

namespace {

using namespace ofd;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spill(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << content;
}

MechanismKind parse_mechanism(const std::string& name) {
  if (name == "like") return MechanismKind::kLike;
  if (name == "balanced") return MechanismKind::kBalancedLike;
  throw std::invalid_argument("mechanism must be 'like' or 'balanced', got '" + name + "'");
}

WelfareKind parse_welfare(const std::string& name) {
  if (name == "egal") return WelfareKind::kEgalitarian;
  if (name == "util") return WelfareKind::kUtilitarian;
  throw std::invalid_argument("welfare kind must be 'egal' or 'util', got '" + name + "'");
}

EgalitarianMode parse_mode(const std::string& name) {
  if (name == "min-exp") return EgalitarianMode::kMinOfExpected;
  if (name == "exp-min") return EgalitarianMode::kExpectedMin;
  throw std::invalid_argument("mode must be 'min-exp' or 'exp-min', got '" + name + "'");
}

struct LoadedInstance {
  Instance instance;
  BidProfile bids;
};

LoadedInstance load(const std::string& instance_path, const std::string& bids_path) {
  LoadedInstance loaded;
  loaded.instance = parse_instance(slurp(instance_path));
  validate_instance(loaded.instance, /*require_normalized=*/false);
  if (bids_path.empty()) {
    loaded.bids = sincere_bids(loaded.instance);
  } else {
    loaded.bids = parse_bids(slurp(bids_path));
    if (loaded.bids.num_agents != loaded.instance.num_agents || loaded.bids.num_items != loaded.instance.num_items) {
      throw std::invalid_argument("bid profile dimensions do not match the instance");
    }
  }
  return loaded;
}

std::string owner_text(int owner) { return owner == kNoAgent ? "none" : std::to_string(owner); }

std::string ratio_line(const RatioResult& ratio) {
  std::string text = ratio.to_string();
  if (ratio.is_value()) text += " (" + std::to_string(ratio.value.to_double()) + ")";
  return text;
}

void print_equilibrium(const Equilibrium& eq) {
  for (int i = 0; i < eq.profile.num_agents; ++i) {
    std::string row;
    for (int j = 0; j < eq.profile.num_items; ++j) row += eq.profile.likes(i, j) ? '1' : '0';
    std::cout << "  agent " << i << " bids " << row << "  eu " << eq.expected_utilities[i] << '\n';
  }
  std::cout << "  utilitarian " << eq.utilitarian_welfare << ", egalitarian min-of-expected "
            << eq.egalitarian_min_of_expected << ", egalitarian expected-min " << eq.egalitarian_expected_min << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Like / Balanced Like online fair division toolkit"};
  app.require_subcommand(1);

  std::function<void()> action;

  std::string mechanism = "like";
  std::string instance_path;
  std::string bids_path;
  std::string welfare_name = "egal";
  std::string mode_name = "min-exp";
  std::uint64_t seed = 0;
  long long budget_override = 0;
  bool simple = false;
  bool csv = false;
  int threads = 0;

  auto make_budget = [&budget_override] {
    Budget budget;
    if (budget_override > 0) {
      budget.tree_nodes = budget_override;
      budget.dp_states = budget_override;
      budget.profiles = budget_override;
    }
    return budget;
  };

  auto* run_cmd = app.add_subcommand("run", "execute one seeded mechanism run");
  run_cmd->add_option("--mechanism", mechanism, "like|balanced")->required();
  run_cmd->add_option("--instance", instance_path, "instance file")->required();
  run_cmd->add_option("--bids", bids_path, "bid profile file (default: sincere)");
  run_cmd->add_option("--seed", seed, "rng seed")->required();
  run_cmd->callback([&] {
    action = [&] {
      const auto loaded = load(instance_path, bids_path);
      const MechanismKind kind = parse_mechanism(mechanism);
      const Allocation alloc =
          kind == MechanismKind::kLike ? like_run(loaded.bids, seed) : balanced_like_run(loaded.bids, seed);
      for (int j = 0; j < alloc.num_items(); ++j) std::cout << j << " -> " << owner_text(alloc.owner[j]) << '\n';
    };
  });

  auto* dist_cmd = app.add_subcommand("dist", "exact item probabilities and expected utilities");
  dist_cmd->add_option("--mechanism", mechanism, "like|balanced")->required();
  dist_cmd->add_option("--instance", instance_path, "instance file")->required();
  dist_cmd->add_option("--bids", bids_path, "bid profile file (default: sincere)");
  dist_cmd->add_option("--budget", budget_override, "override enumeration budgets");
  dist_cmd->add_flag("--csv", csv, "machine-readable rows");
  dist_cmd->callback([&] {
    action = [&] {
      const auto loaded = load(instance_path, bids_path);
      const MechanismKind kind = parse_mechanism(mechanism);
      ProbabilityMatrix p;
      std::vector<Rational> eu;
      if (kind == MechanismKind::kLike) {
        p = like_item_probabilities(loaded.bids);
        eu = like_expected_utilities(loaded.instance, loaded.bids);
      } else {
        auto result = balanced_like_dp(loaded.instance, loaded.bids, make_budget());
        p = std::move(result.item_probabilities);
        eu = std::move(result.expected_utilities);
      }
      if (csv) {
        std::cout << "row,agent,item,value\n";
        for (int i = 0; i < p.rows(); ++i) {
          for (int j = 0; j < p.cols(); ++j) std::cout << "p," << i << ',' << j << ',' << p.at(i, j) << '\n';
        }
        for (int i = 0; i < p.rows(); ++i) std::cout << "eu," << i << ",," << eu[i] << '\n';
        return;
      }
      std::cout << "item probabilities (agent rows):\n";
      for (int i = 0; i < p.rows(); ++i) {
        std::cout << "  agent " << i << ':';
        for (int j = 0; j < p.cols(); ++j) std::cout << ' ' << p.at(i, j);
        std::cout << '\n';
      }
      std::cout << "expected utilities:\n";
      for (int i = 0; i < p.rows(); ++i) std::cout << "  agent " << i << ": " << eu[i] << '\n';
    };
  });

  auto* nash_cmd = app.add_subcommand("nash", "enumerate pure Nash equilibria");
  nash_cmd->add_option("--mechanism", mechanism, "like|balanced")->required();
  nash_cmd->add_option("--instance", instance_path, "instance file")->required();
  nash_cmd->add_flag("--simple", simple, "restrict to simple equilibria (like-cost tie-break)");
  nash_cmd->add_option("--budget", budget_override, "override enumeration budgets");
  nash_cmd->add_option("--threads", threads, "worker threads (0 = default)");
  nash_cmd->callback([&] {
    action = [&] {
      const auto loaded = load(instance_path, "");
      const EquilibriumReport report =
          enumerate_pne(parse_mechanism(mechanism), loaded.instance, simple, make_budget(), threads);
      std::cout << report.equilibria.size() << (simple ? " simple" : "") << " pure Nash equilibri"
                << (report.equilibria.size() == 1 ? "um" : "a") << " (" << report.profiles_examined
                << " profiles examined)\n";
      for (size_t e = 0; e < report.equilibria.size(); ++e) {
        std::cout << "equilibrium " << e << ":\n";
        print_equilibrium(report.equilibria[e]);
      }
    };
  });

  auto* welfare_cmd = app.add_subcommand("welfare", "expected welfare of a bid profile");
  welfare_cmd->add_option("--mechanism", mechanism, "like|balanced")->required();
  welfare_cmd->add_option("--instance", instance_path, "instance file")->required();
  welfare_cmd->add_option("--bids", bids_path, "bid profile file (default: sincere)");
  welfare_cmd->add_option("--kind", welfare_name, "egal|util")->required();
  welfare_cmd->add_option("--mode", mode_name, "min-exp|exp-min");
  welfare_cmd->add_option("--budget", budget_override, "override enumeration budgets");
  welfare_cmd->callback([&] {
    action = [&] {
      const auto loaded = load(instance_path, bids_path);
      const Rational value = expected_welfare(parse_mechanism(mechanism), loaded.instance, loaded.bids,
                                              parse_welfare(welfare_name), parse_mode(mode_name), make_budget());
      std::cout << value << " (" << value.to_double() << ")\n";
    };
  });

  auto* ratio_cmd = app.add_subcommand("ratio", "competitive ratio under sincere bids");
  ratio_cmd->add_option("--mechanism", mechanism, "like|balanced")->required();
  ratio_cmd->add_option("--instance", instance_path, "instance file")->required();
  ratio_cmd->add_option("--kind", welfare_name, "egal|util")->required();
  ratio_cmd->add_option("--mode", mode_name, "min-exp|exp-min");
  ratio_cmd->add_option("--budget", budget_override, "override enumeration budgets");
  ratio_cmd->callback([&] {
    action = [&] {
      const auto loaded = load(instance_path, "");
      const RatioResult ratio = competitive_ratio(parse_mechanism(mechanism), loaded.instance,
                                                  parse_welfare(welfare_name), parse_mode(mode_name), make_budget());
      std::cout << ratio_line(ratio) << '\n';
    };
  });

  auto* poa_cmd = app.add_subcommand("poa", "price of anarchy over simple pure Nash equilibria");
  poa_cmd->add_option("--mechanism", mechanism, "like|balanced")->required();
  poa_cmd->add_option("--instance", instance_path, "instance file")->required();
  poa_cmd->add_option("--kind", welfare_name, "egal|util")->required();
  poa_cmd->add_option("--mode", mode_name, "min-exp|exp-min");
  poa_cmd->add_option("--budget", budget_override, "override enumeration budgets");
  poa_cmd->add_option("--threads", threads, "worker threads (0 = default)");
  poa_cmd->callback([&] {
    action = [&] {
      const auto loaded = load(instance_path, "");
      const auto poa = price_of_anarchy(parse_mechanism(mechanism), loaded.instance, parse_welfare(welfare_name),
                                        parse_mode(mode_name), make_budget(), threads);
      if (!poa) {
        std::cout << "no simple pure Nash equilibrium\n";
        return;
      }
      std::cout << "equilibria: " << poa->num_equilibria << '\n';
      std::cout << "worst: " << ratio_line(poa->worst) << '\n';
      std::cout << "best:  " << ratio_line(poa->best) << '\n';
    };
  });

  std::string family_name = "random01";
  std::string out_path;
  std::string like_probability_text = "1/2";
  std::string alpha_text = "1/2";
  int gen_agents = 0;
  int gen_items = 0;

  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("--family", family_name, "random01|borda|polya01|polya-borda")->required();
  gen_cmd->add_option("--k", gen_agents, "agents")->required();
  gen_cmd->add_option("--m", gen_items, "items")->required();
  gen_cmd->add_option("--seed", seed, "rng seed")->required();
  gen_cmd->add_option("--p", like_probability_text, "like probability for random01 (rational)");
  gen_cmd->add_option("--alpha", alpha_text, "copy probability for polya-borda (rational)");
  gen_cmd->add_option("-o,--output", out_path, "output file (default: stdout)");
  gen_cmd->callback([&] {
    action = [&] {
      GeneratorSpec spec;
      spec.family = parse_generator_family(family_name);
      spec.num_agents = gen_agents;
      spec.num_items = gen_items;
      spec.seed = seed;
      spec.like_probability = Rational::parse(like_probability_text);
      spec.alpha = Rational::parse(alpha_text);
      const std::string text = serialize_instance(generate(spec));
      if (out_path.empty()) {
        std::cout << text;
      } else {
        spill(out_path, text);
      }
    };
  });

  std::string grid_text;
  std::string csv_path;
  std::string plot_path;
  int samples = 100;
  std::uint64_t master_seed = 0;

  auto* exp_cmd = app.add_subcommand("experiment", "ratio / price-of-anarchy sweep over sampled instances");
  exp_cmd->add_option("--grid", grid_text, "e.g. k=2..5,m=2..10")->required();
  exp_cmd->add_option("--samples", samples, "instances per grid cell");
  exp_cmd->add_option("--master-seed", master_seed, "master seed")->required();
  exp_cmd->add_option("--csv", csv_path, "per-instance CSV output")->required();
  exp_cmd->add_option("--plot-data", plot_path, "geometric-mean plot data output");
  exp_cmd->add_option("--family", family_name, "generator family");
  exp_cmd->add_option("--p", like_probability_text, "like probability (rational)");
  exp_cmd->add_option("--alpha", alpha_text, "copy probability (rational)");
  exp_cmd->add_option("--kind", welfare_name, "egal|util");
  exp_cmd->add_option("--mode", mode_name, "min-exp|exp-min");
  exp_cmd->add_option("--budget", budget_override, "override enumeration budgets");
  exp_cmd->add_option("--threads", threads, "worker threads (0 = default)");
  exp_cmd->callback([&] {
    action = [&] {
      ExperimentConfig config;
      config.grid = parse_grid(grid_text);
      config.samples = samples;
      config.master_seed = master_seed;
      config.family = parse_generator_family(family_name);
      config.like_probability = Rational::parse(like_probability_text);
      config.alpha = Rational::parse(alpha_text);
      config.welfare = parse_welfare(welfare_name);
      config.mode = parse_mode(mode_name);
      config.budget = make_budget();
      config.threads = threads;
      const std::vector<ExperimentRow> rows = run_experiment(config);
      spill(csv_path, to_csv(rows));
      const std::vector<CellSummary> cells = summarize(rows);
      if (!plot_path.empty()) spill(plot_path, to_plot_data(cells));
      for (const CellSummary& cell : cells) {
        std::cout << "k=" << cell.num_agents << " m=" << cell.num_items << " usable=" << cell.usable[0] << '/'
                  << cell.usable[1] << '/' << cell.usable[2] << '/' << cell.usable[3] << " skipped=" << cell.skipped
                  << '\n';
      }
      for (const std::string& flag : trend_flags(rows)) std::cerr << flag;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    action();
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
