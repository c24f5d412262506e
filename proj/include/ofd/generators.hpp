#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ofd/core.hpp"

namespace ofd {

enum class GeneratorFamily { kRandom01, kBorda, kPolya01, kPolyaBorda };

std::string to_string(GeneratorFamily family);
GeneratorFamily parse_generator_family(std::string_view name);  // throws std::invalid_argument

// Identical spec -> identical instance, on every platform.
struct GeneratorSpec {
  GeneratorFamily family = GeneratorFamily::kRandom01;
  int num_agents = 0;
  int num_items = 0;
  Rational like_probability{1, 2};  // kRandom01: P(u_i(j) = 1)
  Rational alpha{1, 2};             // kPolyaBorda: probability of copying an earlier agent
  std::uint64_t seed = 0;
};

// kRandom01: independent 0/1 cells, agent-major order.
// kBorda: each row is a uniform permutation of the scores m-1, ..., 0.
// kPolya01: per item, agents draw in index order; agent i (0-based) likes
//   with probability (1 + L) / (i + 2) where L counts prior likers of the
//   item (urn reinforcement).
// kPolyaBorda: each agent's ranking is, with probability alpha, a copy of a
//   uniformly chosen earlier agent's ranking, else a fresh permutation.
Instance generate(const GeneratorSpec& spec);

}  // namespace ofd
