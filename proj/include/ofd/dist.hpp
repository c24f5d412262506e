#pragma once

#include <utility>
#include <vector>

#include "ofd/core.hpp"
#include "ofd/matrix.hpp"
#include "ofd/mechanisms.hpp"

namespace ofd {

// Caps for the exhaustive computations. Desk-scale exactness fails loudly
// (BudgetExceeded) instead of silently truncating.
struct Budget {
  long long tree_nodes = 10'000'000;  // allocation-tree nodes
  long long dp_states = 1'000'000;    // count-vector states across all rounds
  long long profiles = 4'194'304;     // bid profiles per strategy-space scan
};

// p[i][j] = probability that agent i receives item j. Column sums are 1 for
// bid-on items and 0 for unbid ones.
using ProbabilityMatrix = Matrix<Rational>;

// Exact distribution over distinct final allocations, probabilities > 0 and
// summing to 1, ordered canonically.
struct OutcomeDistribution {
  std::vector<std::pair<Allocation, Rational>> outcomes;
};

// Closed form for the Like mechanism: 1/q_j per bidder, q_j = bidder count.
ProbabilityMatrix like_item_probabilities(const BidProfile& bids);

// EU[i] = sum_j u_i(j) / q_j over the items agent i bids on.
std::vector<Rational> like_expected_utilities(const Instance& instance, const BidProfile& bids);

// Expands the allocation tree item by item, multiplying uniform branch
// probabilities and merging identical leaf allocations.
OutcomeDistribution enumerate_outcomes(MechanismKind kind, const BidProfile& bids, const Budget& budget = {});

struct BalancedLikeDpResult {
  ProbabilityMatrix item_probabilities;
  std::vector<Rational> expected_utilities;
  long long states_visited = 0;  // measured state-space size
};

// Forward dynamic program over count vectors; the mechanism is Markovian in
// how many items each agent holds, so count vectors are sufficient.
// Marginals agree exactly with enumerate_outcomes.
BalancedLikeDpResult balanced_like_dp(const Instance& instance, const BidProfile& bids, const Budget& budget = {});

// E[i][j] = expected utility agent i assigns to agent j's final bundle.
// Like uses per-item independence; Balanced Like uses the outcome tree.
Matrix<Rational> cross_expected_utilities(MechanismKind kind, const Instance& instance, const BidProfile& bids,
                                          const Budget& budget = {});

// Expected utility of every agent under the given bids (closed form for
// Like, dynamic program for Balanced Like).
std::vector<Rational> expected_utilities(MechanismKind kind, const Instance& instance, const BidProfile& bids,
                                         const Budget& budget = {});

}  // namespace ofd
