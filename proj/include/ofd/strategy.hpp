#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ofd/core.hpp"
#include "ofd/dist.hpp"
#include "ofd/mechanisms.hpp"

namespace ofd {

// Expected utility of one agent under an arbitrary bid profile.
Rational expected_utility(MechanismKind kind, const Instance& instance, const BidProfile& profile, int agent,
                          const Budget& budget = {});

// All bid vectors (as item bitmasks, ascending) maximizing the agent's
// expected utility against the fixed opponents. Candidates are restricted to
// subsets of positively valued items in simple mode, where EU ties are
// additionally broken toward more declared likes (sincerity bias: an agent
// declares a like whenever doing so costs it nothing).
struct BestResponses {
  Rational best_eu;
  std::vector<std::uint64_t> bids;
};
BestResponses best_responses(MechanismKind kind, const Instance& instance, const BidProfile& profile, int agent,
                             bool simple, const Budget& budget = {});

// Exhaustive dominance check for sincere bidding: every opponent profile
// (full strategy spaces) against every deviation. The sincere opponent
// profile is checked first so the canonical counterexample is the witness
// reported. On failure returns the offending opponent profile and deviation.
struct DominanceWitness {
  BidProfile opponents;  // full profile; the checked agent's row is sincere
  std::uint64_t deviation;
  Rational sincere_eu;
  Rational deviation_eu;
};
struct DominanceResult {
  bool dominant = false;
  std::optional<DominanceWitness> witness;
};
DominanceResult is_sincere_dominant(MechanismKind kind, const Instance& instance, int agent,
                                    const Budget& budget = {});

struct Equilibrium {
  BidProfile profile;
  std::vector<Rational> expected_utilities;
  Rational utilitarian_welfare;
  Rational egalitarian_min_of_expected;
  Rational egalitarian_expected_min;
};

struct EquilibriumReport {
  std::vector<Equilibrium> equilibria;  // canonical lexicographic order
  long long profiles_examined = 0;
  bool unique() const { return equilibria.size() == 1; }
};

// Brute-force enumeration of pure Nash equilibria: profiles where no
// unilateral full bid-vector change strictly improves expected utility.
// Simple mode restricts every strategy space to subsets of liked items and
// rejects profiles where a deviation ties on EU with strictly more likes
// (the sincerity-biased refinement).
// Two passes over the profile space (best-response tables, then membership
// check), OpenMP-parallel over profile blocks; output is deterministic.
// threads = 0 uses the OpenMP default.
EquilibriumReport enumerate_pne(MechanismKind kind, const Instance& instance, bool simple, const Budget& budget = {},
                                int threads = 0);

// Serial reference: re-checks every unilateral deviation per profile.
// Quadratic in the profile space; kept for validating enumerate_pne.
EquilibriumReport enumerate_pne_reference(MechanismKind kind, const Instance& instance, bool simple,
                                          const Budget& budget = {});

}  // namespace ofd
