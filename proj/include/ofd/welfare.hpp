#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ofd/core.hpp"
#include "ofd/dist.hpp"
#include "ofd/matrix.hpp"
#include "ofd/mechanisms.hpp"

namespace ofd {

enum class WelfareKind { kEgalitarian, kUtilitarian };

// The two expectation semantics for egalitarian welfare. Results are always
// labeled with their mode; they genuinely differ.
enum class EgalitarianMode { kMinOfExpected, kExpectedMin };

std::string to_string(WelfareKind kind);
std::string to_string(EgalitarianMode mode);

// Welfare of a realized allocation: min over agents (egalitarian) or sum
// over agents (utilitarian) of own-bundle utility.
Rational welfare_ex_post(const Instance& instance, const Allocation& alloc, WelfareKind kind);

// Expected welfare of a mechanism under the given bids. The mode is ignored
// for utilitarian welfare (expectation and sum commute).
Rational expected_welfare(MechanismKind kind, const Instance& instance, const BidProfile& bids, WelfareKind welfare,
                          EgalitarianMode mode, const Budget& budget = {});

// ex_post_max[i][j] = max over outcomes of u_i(A_j) - u_i(A_i);
// ex_ante[i][j] = E[u_i(A_j)] - E[u_i(A_i)]. Diagonals are 0.
struct EnvyReport {
  Matrix<Rational> ex_post_max;
  Matrix<Rational> ex_ante;
};
EnvyReport envy_report(MechanismKind kind, const Instance& instance, const BidProfile& bids, const Budget& budget = {});

// Optimal offline assignment. Utilitarian: each item to a maximal-utility
// agent (unvalued items stay unallocated). Egalitarian: exhaustive search
// with branch-and-bound, bounding each agent by its remaining achievable
// utility.
std::pair<Allocation, Rational> optimal_offline(const Instance& instance, WelfareKind kind, const Budget& budget = {});

struct RatioResult {
  enum class Kind { kValue, kUnbounded, kUndefined };
  Kind kind = Kind::kUndefined;
  Rational value;

  static RatioResult of(Rational v) { return {Kind::kValue, std::move(v)}; }
  static RatioResult unbounded() { return {Kind::kUnbounded, Rational()}; }
  static RatioResult undefined() { return {Kind::kUndefined, Rational()}; }
  static RatioResult from(const Rational& optimum, const Rational& achieved);

  bool is_value() const { return kind == Kind::kValue; }
  std::string to_string() const;
};

// Offline optimum over expected welfare of sincere play.
RatioResult competitive_ratio(MechanismKind kind, const Instance& instance, WelfareKind welfare, EgalitarianMode mode,
                              const Budget& budget = {});

// Offline optimum over the worst (and best) simple pure Nash equilibrium.
// nullopt when the instance has no simple pure Nash equilibrium.
struct PoaResult {
  RatioResult worst;
  RatioResult best;
  int num_equilibria = 0;
};
std::optional<PoaResult> price_of_anarchy(MechanismKind kind, const Instance& instance, WelfareKind welfare,
                                          EgalitarianMode mode, const Budget& budget = {}, int threads = 0);

}  // namespace ofd
