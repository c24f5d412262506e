#include "ofd/dist.hpp"

#include <bit>
#include <cassert>
#include <map>

#include "ofd/errors.hpp"

namespace ofd {

ProbabilityMatrix like_item_probabilities(const BidProfile& bids) {
  ProbabilityMatrix p(bids.num_agents, bids.num_items);
  for (int j = 0; j < bids.num_items; ++j) {
    const int q = bids.bidder_count(j);
    if (q == 0) continue;
    const Rational share(1, q);
    for (int i = 0; i < bids.num_agents; ++i) {
      if (bids.likes(i, j)) p.at(i, j) = share;
    }
  }
  return p;
}

std::vector<Rational> like_expected_utilities(const Instance& instance, const BidProfile& bids) {
  assert(instance.num_agents == bids.num_agents && instance.num_items == bids.num_items);
  std::vector<Rational> eu(instance.num_agents);
  for (int j = 0; j < instance.num_items; ++j) {
    const int q = bids.bidder_count(j);
    if (q == 0) continue;
    for (int i = 0; i < instance.num_agents; ++i) {
      if (bids.likes(i, j)) eu[i] += instance.utility(i, j) / Rational(q);
    }
  }
  return eu;
}

namespace {

struct TreeWalk {
  const BidProfile& bids;
  MechanismKind kind;
  long long node_budget;
  long long nodes = 0;
  std::vector<int> counts;
  Allocation partial;
  std::map<Allocation, Rational> leaves;

  TreeWalk(const BidProfile& b, MechanismKind k, long long budget)
      : bids(b), kind(k), node_budget(budget), counts(b.num_agents, 0), partial(b.num_items) {}

  void expand(int item, const Rational& prob) {
    if (++nodes > node_budget) throw BudgetExceeded("allocation tree exceeds " + std::to_string(node_budget) + " nodes");
    if (item == bids.num_items) {
      auto [it, inserted] = leaves.try_emplace(partial, prob);
      if (!inserted) it->second += prob;
      return;
    }
    std::vector<int> eligible;
    int min_count = -1;
    for (int i = 0; i < bids.num_agents; ++i) {
      if (!bids.likes(i, item)) continue;
      if (kind == MechanismKind::kBalancedLike) {
        if (min_count < 0 || counts[i] < min_count) {
          min_count = counts[i];
          eligible.clear();
        }
        if (counts[i] == min_count) eligible.push_back(i);
      } else {
        eligible.push_back(i);
      }
    }
    if (eligible.empty()) {
      partial.owner[item] = kNoAgent;
      expand(item + 1, prob);
      return;
    }
    const Rational share = prob / Rational(static_cast<long>(eligible.size()));
    for (int winner : eligible) {
      partial.owner[item] = winner;
      ++counts[winner];
      expand(item + 1, share);
      --counts[winner];
    }
    partial.owner[item] = kNoAgent;
  }
};

}  // namespace

OutcomeDistribution enumerate_outcomes(MechanismKind kind, const BidProfile& bids, const Budget& budget) {
  TreeWalk walk(bids, kind, budget.tree_nodes);
  walk.expand(0, Rational(1));
  OutcomeDistribution dist;
  dist.outcomes.reserve(walk.leaves.size());
  for (auto& [alloc, prob] : walk.leaves) dist.outcomes.emplace_back(alloc, prob);
  return dist;
}

namespace {

// Count vectors are packed into a 64-bit key, bit_width(m) bits per agent.
struct StatePacking {
  int bits;
  std::uint64_t agent_mask;

  explicit StatePacking(const BidProfile& bids) {
    bits = std::bit_width(static_cast<unsigned>(bids.num_items));
    if (bits * bids.num_agents > 64) {
      throw BudgetExceeded("count-state packing needs " + std::to_string(bits * bids.num_agents) + " bits, max is 64");
    }
    agent_mask = (std::uint64_t{1} << bits) - 1;
  }

  int count(std::uint64_t state, int agent) const { return static_cast<int>((state >> (agent * bits)) & agent_mask); }
  std::uint64_t bump(std::uint64_t state, int agent) const { return state + (std::uint64_t{1} << (agent * bits)); }
};

}  // namespace

BalancedLikeDpResult balanced_like_dp(const Instance& instance, const BidProfile& bids, const Budget& budget) {
  assert(instance.num_agents == bids.num_agents && instance.num_items == bids.num_items);
  const StatePacking packing(bids);
  BalancedLikeDpResult result;
  result.item_probabilities = ProbabilityMatrix(bids.num_agents, bids.num_items);

  std::map<std::uint64_t, Rational> layer;
  layer.emplace(0, Rational(1));
  std::vector<int> eligible;
  for (int j = 0; j < bids.num_items; ++j) {
    std::map<std::uint64_t, Rational> next;
    for (const auto& [state, mass] : layer) {
      if (++result.states_visited > budget.dp_states) {
        throw BudgetExceeded("count-state space exceeds " + std::to_string(budget.dp_states) + " states");
      }
      eligible.clear();
      int min_count = -1;
      for (int i = 0; i < bids.num_agents; ++i) {
        if (!bids.likes(i, j)) continue;
        const int c = packing.count(state, i);
        if (min_count < 0 || c < min_count) {
          min_count = c;
          eligible.clear();
        }
        if (c == min_count) eligible.push_back(i);
      }
      if (eligible.empty()) {
        next[state] += mass;
        continue;
      }
      const Rational share = mass / Rational(static_cast<long>(eligible.size()));
      for (int winner : eligible) {
        result.item_probabilities.at(winner, j) += share;
        next[packing.bump(state, winner)] += share;
      }
    }
    layer = std::move(next);
  }

  result.expected_utilities.assign(instance.num_agents, Rational());
  for (int i = 0; i < instance.num_agents; ++i) {
    for (int j = 0; j < instance.num_items; ++j) {
      const Rational& p = result.item_probabilities.at(i, j);
      if (!p.is_zero()) result.expected_utilities[i] += instance.utility(i, j) * p;
    }
  }
  return result;
}

Matrix<Rational> cross_expected_utilities(MechanismKind kind, const Instance& instance, const BidProfile& bids,
                                          const Budget& budget) {
  assert(instance.num_agents == bids.num_agents && instance.num_items == bids.num_items);
  const int k = instance.num_agents;
  Matrix<Rational> cross(k, k);
  if (kind == MechanismKind::kLike) {
    // Item draws are independent, so E[i][j] = sum_m u_i(m) * P(j gets m).
    const ProbabilityMatrix p = like_item_probabilities(bids);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        for (int item = 0; item < instance.num_items; ++item) {
          const Rational& pj = p.at(j, item);
          if (!pj.is_zero()) cross.at(i, j) += instance.utility(i, item) * pj;
        }
      }
    }
    return cross;
  }
  const OutcomeDistribution dist = enumerate_outcomes(kind, bids, budget);
  for (const auto& [alloc, prob] : dist.outcomes) {
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        const Rational value = bundle_utility(instance, alloc, i, j);
        if (!value.is_zero()) cross.at(i, j) += prob * value;
      }
    }
  }
  return cross;
}

std::vector<Rational> expected_utilities(MechanismKind kind, const Instance& instance, const BidProfile& bids,
                                         const Budget& budget) {
  if (kind == MechanismKind::kLike) return like_expected_utilities(instance, bids);
  return balanced_like_dp(instance, bids, budget).expected_utilities;
}

}  // namespace ofd
