#include "ofd/strategy.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cassert>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ofd/errors.hpp"
#include "ofd/welfare.hpp"

namespace ofd {

namespace {

int resolve_threads(int threads) {
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

// Submasks of `mask` in increasing numeric order (always includes 0).
std::vector<std::uint64_t> ascending_submasks(std::uint64_t mask) {
  std::vector<std::uint64_t> subs;
  std::uint64_t s = 0;
  do {
    subs.push_back(s);
    s = (s - mask) & mask;
  } while (s != 0);
  return subs;
}

std::uint64_t liked_mask(const Instance& instance, int agent) {
  std::uint64_t mask = 0;
  for (int j = 0; j < instance.num_items; ++j) {
    if (instance.utility(agent, j).sign() > 0) mask |= std::uint64_t{1} << j;
  }
  return mask;
}

std::uint64_t full_mask(int num_items) { return (std::uint64_t{1} << num_items) - 1; }

void require_maskable(const Instance& instance) {
  if (instance.num_items > 62) throw BudgetExceeded("strategy-space search supports at most 62 items");
}

// Mixed-radix profile space; agent 0 is the most significant digit, so the
// index order is the lexicographic order of (mask_0, ..., mask_{k-1}).
struct ProfileSpace {
  std::vector<std::vector<std::uint64_t>> candidates;
  std::vector<long long> stride;
  long long total = 1;

  ProfileSpace(const Instance& instance, bool simple, const Budget& budget) {
    require_maskable(instance);
    const int k = instance.num_agents;
    candidates.reserve(k);
    for (int i = 0; i < k; ++i) {
      const std::uint64_t mask = simple ? liked_mask(instance, i) : full_mask(instance.num_items);
      candidates.push_back(ascending_submasks(mask));
    }
    unsigned __int128 wide = 1;
    for (int i = 0; i < k; ++i) {
      wide *= candidates[i].size();
      if (wide > static_cast<unsigned __int128>(budget.profiles)) {
        throw BudgetExceeded("profile space exceeds " + std::to_string(budget.profiles) + " profiles");
      }
    }
    total = static_cast<long long>(wide);
    stride.assign(k, 1);
    for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * static_cast<long long>(candidates[i + 1].size());
  }

  int num_agents() const { return static_cast<int>(candidates.size()); }

  void decode(long long p, std::vector<int>& digits) const {
    for (int i = 0; i < num_agents(); ++i) {
      digits[i] = static_cast<int>((p / stride[i]) % static_cast<long long>(candidates[i].size()));
    }
  }

  // Index of the opponents' digit combination from agent i's point of view.
  long long opp_index(const std::vector<int>& digits, int agent) const {
    long long idx = 0;
    for (int j = 0; j < num_agents(); ++j) {
      if (j == agent) continue;
      idx = idx * static_cast<long long>(candidates[j].size()) + digits[j];
    }
    return idx;
  }

  void apply(const std::vector<int>& digits, BidProfile& profile) const {
    for (int i = 0; i < num_agents(); ++i) profile.set_row_mask(i, candidates[i][digits[i]]);
  }
};

struct BestEntry {
  Rational eu;
  int likes = 0;
  bool init = false;
};

// Lexicographic optimum: maximize EU; in simple mode break EU ties toward
// more declared likes (the sincerity bias - when declaring a like costs an
// agent nothing, it declares it).
void fold_best(BestEntry& entry, const Rational& eu, int likes, bool simple) {
  if (!entry.init || eu > entry.eu || (simple && eu == entry.eu && likes > entry.likes)) {
    entry.eu = eu;
    entry.likes = likes;
    entry.init = true;
  }
}

Equilibrium make_equilibrium(MechanismKind kind, const Instance& instance, const BidProfile& profile,
                             std::vector<Rational> eu, const Budget& budget) {
  Equilibrium eq;
  eq.profile = profile;
  eq.expected_utilities = std::move(eu);
  for (const Rational& u : eq.expected_utilities) eq.utilitarian_welfare += u;
  eq.egalitarian_min_of_expected = eq.expected_utilities[0];
  for (const Rational& u : eq.expected_utilities) eq.egalitarian_min_of_expected = min(eq.egalitarian_min_of_expected, u);
  eq.egalitarian_expected_min =
      expected_welfare(kind, instance, profile, WelfareKind::kEgalitarian, EgalitarianMode::kExpectedMin, budget);
  return eq;
}

}  // namespace

Rational expected_utility(MechanismKind kind, const Instance& instance, const BidProfile& profile, int agent,
                          const Budget& budget) {
  return expected_utilities(kind, instance, profile, budget)[agent];
}

BestResponses best_responses(MechanismKind kind, const Instance& instance, const BidProfile& profile, int agent,
                             bool simple, const Budget& budget) {
  require_maskable(instance);
  const std::uint64_t mask = simple ? liked_mask(instance, agent) : full_mask(instance.num_items);
  const std::vector<std::uint64_t> candidates = ascending_submasks(mask);
  if (static_cast<long long>(candidates.size()) > budget.profiles) {
    throw BudgetExceeded("candidate bid space exceeds " + std::to_string(budget.profiles) + " profiles");
  }
  BidProfile scratch = profile;
  BestResponses best;
  std::vector<Rational> eus;
  eus.reserve(candidates.size());
  bool init = false;
  int best_likes = 0;
  for (const std::uint64_t candidate : candidates) {
    scratch.set_row_mask(agent, candidate);
    const Rational eu = expected_utilities(kind, instance, scratch, budget)[agent];
    eus.push_back(eu);
    const int likes = std::popcount(candidate);
    if (!init || eu > best.best_eu || (simple && eu == best.best_eu && likes > best_likes)) {
      best.best_eu = eu;
      best_likes = likes;
      init = true;
    }
  }
  for (size_t c = 0; c < candidates.size(); ++c) {
    if (eus[c] != best.best_eu) continue;
    if (simple && std::popcount(candidates[c]) != best_likes) continue;
    best.bids.push_back(candidates[c]);
  }
  return best;
}

DominanceResult is_sincere_dominant(MechanismKind kind, const Instance& instance, int agent, const Budget& budget) {
  require_maskable(instance);
  const int k = instance.num_agents;
  const int m = instance.num_items;
  // Opponents range over their full strategy spaces, as does the deviating
  // agent: the whole profile space must fit the budget.
  unsigned __int128 wide = 1;
  for (int i = 0; i < k; ++i) {
    wide *= std::uint64_t{1} << m;
    if (wide > static_cast<unsigned __int128>(budget.profiles)) {
      throw BudgetExceeded("dominance check needs " + std::to_string(k) + "*2^" + std::to_string(m) +
                           " profiles, over the budget of " + std::to_string(budget.profiles));
    }
  }

  const BidProfile sincere = sincere_bids(instance);
  const std::uint64_t sincere_mask = sincere.row_mask(agent);
  const long long dev_count = 1LL << m;

  std::vector<int> others;
  for (int i = 0; i < k; ++i) {
    if (i != agent) others.push_back(i);
  }
  const long long opp_total = others.empty() ? 1 : (1LL << (m * static_cast<int>(others.size())));

  long long sincere_opp = 0;
  for (int idx : others) sincere_opp = (sincere_opp << m) | static_cast<long long>(sincere.row_mask(idx));

  BidProfile profile = sincere;
  auto check_opponents = [&](long long opp) -> std::optional<DominanceWitness> {
    long long rest = opp;
    for (int pos = static_cast<int>(others.size()) - 1; pos >= 0; --pos) {
      profile.set_row_mask(others[pos], static_cast<std::uint64_t>(rest) & full_mask(m));
      rest >>= m;
    }
    profile.set_row_mask(agent, sincere_mask);
    const Rational sincere_eu = expected_utilities(kind, instance, profile, budget)[agent];
    for (long long dev = 0; dev < dev_count; ++dev) {
      const auto dev_mask = static_cast<std::uint64_t>(dev);
      if (dev_mask == sincere_mask) continue;
      profile.set_row_mask(agent, dev_mask);
      const Rational dev_eu = expected_utilities(kind, instance, profile, budget)[agent];
      if (dev_eu > sincere_eu) {
        BidProfile witness_profile = profile;
        witness_profile.set_row_mask(agent, sincere_mask);
        return DominanceWitness{witness_profile, dev_mask, sincere_eu, dev_eu};
      }
    }
    return std::nullopt;
  };

  if (auto witness = check_opponents(sincere_opp)) return {false, std::move(witness)};
  for (long long opp = 0; opp < opp_total; ++opp) {
    if (opp == sincere_opp) continue;
    if (auto witness = check_opponents(opp)) return {false, std::move(witness)};
  }
  return {true, std::nullopt};
}

EquilibriumReport enumerate_pne(MechanismKind kind, const Instance& instance, bool simple, const Budget& budget,
                                int threads) {
  const ProfileSpace space(instance, simple, budget);
  const int k = instance.num_agents;
  const int num_threads = static_cast<int>(std::min<long long>(resolve_threads(threads), space.total));

  // Budget errors raised inside a parallel region are collected and
  // rethrown after it; OpenMP would otherwise terminate the process.
  std::atomic<bool> error_flag{false};
  std::exception_ptr pending_error = nullptr;
  auto capture_error = [&pending_error, &error_flag] {
#ifdef _OPENMP
#pragma omp critical(ofd_pne_error)
#endif
    {
      if (!pending_error) pending_error = std::current_exception();
      error_flag.store(true, std::memory_order_release);
    }
  };

  // Pass 1: per-agent best-response tables keyed by the opponents' digits.
  std::vector<std::vector<BestEntry>> best(k);
  for (int i = 0; i < k; ++i) best[i].resize(space.total / static_cast<long long>(space.candidates[i].size()));
  {
    std::vector<std::vector<std::vector<BestEntry>>> local(num_threads);
#ifdef _OPENMP
#pragma omp parallel num_threads(num_threads)
#endif
    {
#ifdef _OPENMP
      const int t = omp_get_thread_num();
#else
      const int t = 0;
#endif
      auto& tables = local[t];
      tables.resize(k);
      for (int i = 0; i < k; ++i) tables[i].resize(best[i].size());
      std::vector<int> digits(k);
      BidProfile profile(instance.num_agents, instance.num_items);
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 64)
#endif
      for (long long p = 0; p < space.total; ++p) {
        if (error_flag.load(std::memory_order_acquire)) continue;
        try {
          space.decode(p, digits);
          space.apply(digits, profile);
          const std::vector<Rational> eu = expected_utilities(kind, instance, profile, budget);
          for (int i = 0; i < k; ++i) {
            fold_best(tables[i][space.opp_index(digits, i)], eu[i], std::popcount(space.candidates[i][digits[i]]),
                      simple);
          }
        } catch (...) {
          capture_error();
        }
      }
    }
    if (pending_error) std::rethrow_exception(pending_error);
    for (int t = 0; t < num_threads; ++t) {
      for (int i = 0; i < k; ++i) {
        for (size_t o = 0; o < best[i].size(); ++o) {
          const BestEntry& e = local[t][i][o];
          if (e.init) fold_best(best[i][o], e.eu, e.likes, simple);
        }
      }
    }
  }

  // Pass 2: a profile is an equilibrium iff every agent already plays a
  // lexicographically optimal response to the others.
  std::vector<std::uint8_t> is_equilibrium(space.total, 0);
#ifdef _OPENMP
#pragma omp parallel num_threads(num_threads)
#endif
  {
    std::vector<int> digits(k);
    BidProfile profile(instance.num_agents, instance.num_items);
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 64)
#endif
    for (long long p = 0; p < space.total; ++p) {
      if (error_flag.load(std::memory_order_acquire)) continue;
      try {
        space.decode(p, digits);
        space.apply(digits, profile);
        const std::vector<Rational> eu = expected_utilities(kind, instance, profile, budget);
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
          const BestEntry& entry = best[i][space.opp_index(digits, i)];
          if (eu[i] != entry.eu) ok = false;
          if (ok && simple && std::popcount(space.candidates[i][digits[i]]) != entry.likes) ok = false;
        }
        is_equilibrium[p] = ok ? 1 : 0;
      } catch (...) {
        capture_error();
      }
    }
  }
  if (pending_error) std::rethrow_exception(pending_error);

  EquilibriumReport report;
  report.profiles_examined = space.total;
  std::vector<int> digits(k);
  BidProfile profile(instance.num_agents, instance.num_items);
  for (long long p = 0; p < space.total; ++p) {
    if (!is_equilibrium[p]) continue;
    space.decode(p, digits);
    space.apply(digits, profile);
    report.equilibria.push_back(
        make_equilibrium(kind, instance, profile, expected_utilities(kind, instance, profile, budget), budget));
  }
  return report;
}

EquilibriumReport enumerate_pne_reference(MechanismKind kind, const Instance& instance, bool simple,
                                          const Budget& budget) {
  const ProfileSpace space(instance, simple, budget);
  const int k = instance.num_agents;
  EquilibriumReport report;
  report.profiles_examined = space.total;
  std::vector<int> digits(k);
  BidProfile profile(instance.num_agents, instance.num_items);
  for (long long p = 0; p < space.total; ++p) {
    space.decode(p, digits);
    space.apply(digits, profile);
    const std::vector<Rational> eu = expected_utilities(kind, instance, profile, budget);
    bool ok = true;
    BidProfile scratch = profile;
    for (int i = 0; i < k && ok; ++i) {
      const int likes = std::popcount(space.candidates[i][digits[i]]);
      for (const std::uint64_t dev : space.candidates[i]) {
        scratch.set_row_mask(i, dev);
        const Rational dev_eu = expected_utilities(kind, instance, scratch, budget)[i];
        if (dev_eu > eu[i] || (simple && dev_eu == eu[i] && std::popcount(dev) > likes)) {
          ok = false;
          break;
        }
      }
      scratch.set_row_mask(i, space.candidates[i][digits[i]]);
    }
    if (ok) report.equilibria.push_back(make_equilibrium(kind, instance, profile, eu, budget));
  }
  return report;
}

}  // namespace ofd
