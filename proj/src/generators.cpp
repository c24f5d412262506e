#include "ofd/generators.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

#include "ofd/mechanisms.hpp"

namespace ofd {

std::string to_string(GeneratorFamily family) {
  switch (family) {
    case GeneratorFamily::kRandom01:
      return "random01";
    case GeneratorFamily::kBorda:
      return "borda";
    case GeneratorFamily::kPolya01:
      return "polya01";
    default:
      return "polya-borda";
  }
}

GeneratorFamily parse_generator_family(std::string_view name) {
  if (name == "random01") return GeneratorFamily::kRandom01;
  if (name == "borda") return GeneratorFamily::kBorda;
  if (name == "polya01") return GeneratorFamily::kPolya01;
  if (name == "polya-borda") return GeneratorFamily::kPolyaBorda;
  throw std::invalid_argument("unknown generator family '" + std::string(name) + "'");
}

namespace {

// Exact Bernoulli(p): one uniform draw below the denominator.
bool bernoulli(SeededRng& rng, const Rational& p) {
  if (p.sign() <= 0) return false;
  if (p >= Rational(1)) return true;
  if (!p.denominator().fits_ulong_p()) throw std::invalid_argument("probability denominator too large");
  return rng.uniform_below(p.denominator().get_ui()) < p.numerator().get_ui();
}

// Uniform permutation of m-1, ..., 0 by Fisher-Yates.
std::vector<int> random_scores(SeededRng& rng, int m) {
  std::vector<int> scores(m);
  for (int j = 0; j < m; ++j) scores[j] = m - 1 - j;
  for (int j = m - 1; j >= 1; --j) {
    const int pick = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(j) + 1));
    std::swap(scores[j], scores[pick]);
  }
  return scores;
}

}  // namespace

Instance generate(const GeneratorSpec& spec) {
  if (spec.num_agents <= 0 || spec.num_items <= 0) throw std::invalid_argument("generator needs positive dimensions");
  if (spec.like_probability.sign() < 0 || spec.like_probability > Rational(1)) {
    throw std::invalid_argument("like probability must be in [0, 1]");
  }
  if (spec.alpha.sign() < 0 || spec.alpha > Rational(1)) throw std::invalid_argument("alpha must be in [0, 1]");

  SeededRng rng(spec.seed);
  Instance instance(spec.num_agents, spec.num_items);
  switch (spec.family) {
    case GeneratorFamily::kRandom01:
      for (int i = 0; i < spec.num_agents; ++i) {
        for (int j = 0; j < spec.num_items; ++j) {
          if (bernoulli(rng, spec.like_probability)) instance.utility(i, j) = Rational(1);
        }
      }
      break;
    case GeneratorFamily::kBorda:
      for (int i = 0; i < spec.num_agents; ++i) {
        const std::vector<int> scores = random_scores(rng, spec.num_items);
        for (int j = 0; j < spec.num_items; ++j) instance.utility(i, j) = Rational(scores[j]);
      }
      break;
    case GeneratorFamily::kPolya01:
      for (int j = 0; j < spec.num_items; ++j) {
        int likers = 0;
        for (int i = 0; i < spec.num_agents; ++i) {
          const auto draw = rng.uniform_below(static_cast<std::uint64_t>(i) + 2);
          if (draw <= static_cast<std::uint64_t>(likers)) {
            instance.utility(i, j) = Rational(1);
            ++likers;
          }
        }
      }
      break;
    case GeneratorFamily::kPolyaBorda:
      for (int i = 0; i < spec.num_agents; ++i) {
        if (i > 0 && bernoulli(rng, spec.alpha)) {
          const int source = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(i)));
          for (int j = 0; j < spec.num_items; ++j) instance.utility(i, j) = instance.utility(source, j);
        } else {
          const std::vector<int> scores = random_scores(rng, spec.num_items);
          for (int j = 0; j < spec.num_items; ++j) instance.utility(i, j) = Rational(scores[j]);
        }
      }
      break;
  }
  return instance;
}

}  // namespace ofd
