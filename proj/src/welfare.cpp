#include "ofd/welfare.hpp"

#include "ofd/errors.hpp"
#include "ofd/strategy.hpp"

namespace ofd {

std::string to_string(WelfareKind kind) {
  return kind == WelfareKind::kEgalitarian ? "egalitarian" : "utilitarian";
}

std::string to_string(EgalitarianMode mode) {
  return mode == EgalitarianMode::kMinOfExpected ? "min-of-expected" : "expected-min";
}

Rational welfare_ex_post(const Instance& instance, const Allocation& alloc, WelfareKind kind) {
  Rational result;
  for (int i = 0; i < instance.num_agents; ++i) {
    const Rational own = bundle_utility(instance, alloc, i, i);
    if (kind == WelfareKind::kUtilitarian) {
      result += own;
    } else if (i == 0 || own < result) {
      result = own;
    }
  }
  return result;
}

Rational expected_welfare(MechanismKind kind, const Instance& instance, const BidProfile& bids, WelfareKind welfare,
                          EgalitarianMode mode, const Budget& budget) {
  if (welfare == WelfareKind::kUtilitarian || mode == EgalitarianMode::kMinOfExpected) {
    const std::vector<Rational> eu = expected_utilities(kind, instance, bids, budget);
    Rational result = eu[0];
    for (size_t i = 1; i < eu.size(); ++i) {
      if (welfare == WelfareKind::kUtilitarian) {
        result += eu[i];
      } else {
        result = min(result, eu[i]);
      }
    }
    return result;
  }
  // Expected minimum needs the full outcome distribution for both mechanisms.
  const OutcomeDistribution dist = enumerate_outcomes(kind, bids, budget);
  Rational result;
  for (const auto& [alloc, prob] : dist.outcomes) {
    result += prob * welfare_ex_post(instance, alloc, WelfareKind::kEgalitarian);
  }
  return result;
}

EnvyReport envy_report(MechanismKind kind, const Instance& instance, const BidProfile& bids, const Budget& budget) {
  const int k = instance.num_agents;
  EnvyReport report;
  report.ex_ante = Matrix<Rational>(k, k);
  report.ex_post_max = Matrix<Rational>(k, k);

  const Matrix<Rational> cross = cross_expected_utilities(kind, instance, bids, budget);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j) report.ex_ante.at(i, j) = cross.at(i, j) - cross.at(i, i);
    }
  }

  const OutcomeDistribution dist = enumerate_outcomes(kind, bids, budget);
  bool first = true;
  for (const auto& [alloc, prob] : dist.outcomes) {
    for (int i = 0; i < k; ++i) {
      const Rational own = bundle_utility(instance, alloc, i, i);
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        const Rational envy = bundle_utility(instance, alloc, i, j) - own;
        if (first || envy > report.ex_post_max.at(i, j)) report.ex_post_max.at(i, j) = envy;
      }
    }
    first = false;
  }
  return report;
}

namespace {

struct EgalitarianSearch {
  const Instance& instance;
  long long node_budget;
  long long nodes = 0;
  std::vector<Rational> bundles;
  std::vector<std::vector<Rational>> suffix;  // suffix[i][t] = sum of u_i over items >= t
  Allocation current;
  Allocation best_alloc;
  Rational best_value{-1};

  explicit EgalitarianSearch(const Instance& inst, long long budget)
      : instance(inst), node_budget(budget), bundles(inst.num_agents), current(inst.num_items), best_alloc(inst.num_items) {
    suffix.assign(inst.num_agents, std::vector<Rational>(inst.num_items + 1));
    for (int i = 0; i < inst.num_agents; ++i) {
      for (int t = inst.num_items - 1; t >= 0; --t) suffix[i][t] = suffix[i][t + 1] + inst.utility(i, t);
    }
  }

  Rational bound(int item) const {
    Rational b = bundles[0] + suffix[0][item];
    for (int i = 1; i < instance.num_agents; ++i) b = min(b, bundles[i] + suffix[i][item]);
    return b;
  }

  void search(int item) {
    if (++nodes > node_budget) {
      throw BudgetExceeded("egalitarian search exceeds " + std::to_string(node_budget) + " nodes");
    }
    if (item == instance.num_items) {
      Rational value = bundles[0];
      for (int i = 1; i < instance.num_agents; ++i) value = min(value, bundles[i]);
      if (value > best_value) {
        best_value = value;
        best_alloc = current;
      }
      return;
    }
    if (bound(item) <= best_value) return;
    for (int i = 0; i < instance.num_agents; ++i) {
      current.owner[item] = i;
      bundles[i] += instance.utility(i, item);
      search(item + 1);
      bundles[i] -= instance.utility(i, item);
    }
    current.owner[item] = kNoAgent;
  }
};

}  // namespace

std::pair<Allocation, Rational> optimal_offline(const Instance& instance, WelfareKind kind, const Budget& budget) {
  if (kind == WelfareKind::kUtilitarian) {
    Allocation alloc(instance.num_items);
    Rational total;
    for (int j = 0; j < instance.num_items; ++j) {
      int best_agent = kNoAgent;
      Rational best_value;
      for (int i = 0; i < instance.num_agents; ++i) {
        const Rational& u = instance.utility(i, j);
        if (u.sign() > 0 && (best_agent == kNoAgent || u > best_value)) {
          best_agent = i;
          best_value = u;
        }
      }
      alloc.owner[j] = best_agent;
      if (best_agent != kNoAgent) total += best_value;
    }
    return {alloc, total};
  }
  EgalitarianSearch search(instance, budget.tree_nodes);
  search.search(0);
  return {search.best_alloc, search.best_value};
}

RatioResult RatioResult::from(const Rational& optimum, const Rational& achieved) {
  if (achieved.is_zero()) {
    return optimum.sign() > 0 ? unbounded() : undefined();
  }
  return of(optimum / achieved);
}

std::string RatioResult::to_string() const {
  switch (kind) {
    case Kind::kValue:
      return value.to_string();
    case Kind::kUnbounded:
      return "unbounded";
    default:
      return "undefined";
  }
}

RatioResult competitive_ratio(MechanismKind kind, const Instance& instance, WelfareKind welfare, EgalitarianMode mode,
                              const Budget& budget) {
  const BidProfile sincere = sincere_bids(instance);
  const Rational achieved = expected_welfare(kind, instance, sincere, welfare, mode, budget);
  const Rational optimum = optimal_offline(instance, welfare, budget).second;
  return RatioResult::from(optimum, achieved);
}

std::optional<PoaResult> price_of_anarchy(MechanismKind kind, const Instance& instance, WelfareKind welfare,
                                          EgalitarianMode mode, const Budget& budget, int threads) {
  const EquilibriumReport report = enumerate_pne(kind, instance, /*simple=*/true, budget, threads);
  if (report.equilibria.empty()) return std::nullopt;
  auto welfare_of = [&](const Equilibrium& eq) {
    if (welfare == WelfareKind::kUtilitarian) return eq.utilitarian_welfare;
    return mode == EgalitarianMode::kMinOfExpected ? eq.egalitarian_min_of_expected : eq.egalitarian_expected_min;
  };
  Rational worst = welfare_of(report.equilibria[0]);
  Rational best = worst;
  for (const Equilibrium& eq : report.equilibria) {
    const Rational w = welfare_of(eq);
    worst = min(worst, w);
    best = max(best, w);
  }
  const Rational optimum = optimal_offline(instance, welfare, budget).second;
  PoaResult result;
  result.worst = RatioResult::from(optimum, worst);
  result.best = RatioResult::from(optimum, best);
  result.num_equilibria = static_cast<int>(report.equilibria.size());
  return result;
}

}  // namespace ofd
