#pragma once

// Hand-built instances exercised across the test suites.

#include <cstdint>

#include "ofd/core.hpp"
#include "ofd/generators.hpp"
#include "ofd/mechanisms.hpp"

namespace ofd::testing {

inline Instance from_rows(int agents, int items, std::initializer_list<Rational> values) {
  Instance instance(agents, items);
  int idx = 0;
  for (const Rational& v : values) {
    instance.utility(idx / items, idx % items) = v;
    ++idx;
  }
  return instance;
}

// Three agents, three items; the first agent values everything, the others
// overlap on different subsets. Balanced Like rewards underbidding here.
inline Instance three_agent_overlap_instance() {
  return from_rows(3, 3,
                   {1, 1, 1,
                    1, 0, 1,
                    0, 1, 0});
}

// Two agents, two items, normalized utilities (1/2, 1/2) and (1/4, 3/4).
inline Instance halves_quarters_instance() {
  return from_rows(2, 2, {Rational(1, 2), Rational(1, 2), Rational(1, 4), Rational(3, 4)});
}

// k agents, k items; agent i values only item i.
inline Instance diagonal_instance(int k) {
  Instance instance(k, k);
  for (int i = 0; i < k; ++i) instance.utility(i, i) = Rational(1);
  return instance;
}

// Three agents, six 0/1 items; the unique simple equilibrium drops one bid.
inline Instance six_item_equilibrium_instance() {
  return from_rows(3, 6,
                   {1, 1, 1, 0, 0, 0,
                    1, 0, 1, 0, 1, 1,
                    1, 1, 0, 1, 0, 1});
}

// Two agents, four items; sincere Balanced Like play is deterministic and
// earns only 2*eps of the achievable welfare.
inline Instance epsilon_split_instance(const Rational& eps) {
  const Rational big = Rational(1) - Rational(2) * eps;
  return from_rows(2, 4,
                   {eps, big, 0, eps,
                    0, eps, eps, big});
}

// k agents, k^2 0/1 items; agent 0 likes only the first k items, everyone
// else likes everything.
inline Instance popular_block_instance(int k) {
  Instance instance(k, k * k);
  for (int j = 0; j < k; ++j) instance.utility(0, j) = Rational(1);
  for (int i = 1; i < k; ++i) {
    for (int j = 0; j < k * k; ++j) instance.utility(i, j) = Rational(1);
  }
  return instance;
}

// k agents, k items; agent i values item i at 1-(k-1)*eps and the rest at
// eps, so every row sums to 1 and everyone bids everywhere.
inline Instance near_diagonal_instance(int k, const Rational& eps) {
  Instance instance(k, k);
  const Rational big = Rational(1) - Rational(k - 1) * eps;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) instance.utility(i, j) = i == j ? big : eps;
  }
  return instance;
}

// Two agents, two items: (0, p) versus (1, p-1). Balancing locks the second
// agent out of the item it values most.
inline Instance skewed_pair_instance(const Rational& p) {
  return from_rows(2, 2, {0, p, 1, p - Rational(1)});
}

// Random instance with small rational utilities (zeros included).
inline Instance random_rational_instance(SeededRng& rng, int agents, int items) {
  Instance instance(agents, items);
  for (int i = 0; i < agents; ++i) {
    for (int j = 0; j < items; ++j) {
      const long num = static_cast<long>(rng.uniform_below(5));
      const long den = 1 + static_cast<long>(rng.uniform_below(4));
      instance.utility(i, j) = Rational(num, den);
    }
  }
  return instance;
}

inline Instance random_01_instance(std::uint64_t seed, int agents, int items, const Rational& p = Rational(1, 2)) {
  GeneratorSpec spec;
  spec.family = GeneratorFamily::kRandom01;
  spec.num_agents = agents;
  spec.num_items = items;
  spec.like_probability = p;
  spec.seed = seed;
  return generate(spec);
}

// 0/1 instance with the given cell pattern; bit (i*items + j) of `pattern`
// set means agent i values item j.
inline Instance indexed_01_instance(std::uint64_t pattern, int agents, int items) {
  Instance instance(agents, items);
  for (int i = 0; i < agents; ++i) {
    for (int j = 0; j < items; ++j) {
      if ((pattern >> (i * items + j)) & 1) instance.utility(i, j) = Rational(1);
    }
  }
  return instance;
}

}  // namespace ofd::testing
