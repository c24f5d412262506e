#include "ofd/mechanisms.hpp"

#include <vector>

namespace ofd {

std::string to_string(MechanismKind kind) {
  return kind == MechanismKind::kLike ? "like" : "balanced";
}

Allocation like_run(const BidProfile& bids, std::uint64_t seed) {
  SeededRng rng(seed);
  Allocation alloc(bids.num_items);
  std::vector<int> bidders;
  bidders.reserve(bids.num_agents);
  for (int j = 0; j < bids.num_items; ++j) {
    bidders.clear();
    for (int i = 0; i < bids.num_agents; ++i) {
      if (bids.likes(i, j)) bidders.push_back(i);
    }
    if (bidders.empty()) continue;
    if (bidders.size() == 1) {
      alloc.owner[j] = bidders[0];
    } else {
      alloc.owner[j] = bidders[rng.uniform_below(bidders.size())];
    }
  }
  return alloc;
}

Allocation balanced_like_run(const BidProfile& bids, std::uint64_t seed) {
  SeededRng rng(seed);
  Allocation alloc(bids.num_items);
  std::vector<int> counts(bids.num_agents, 0);
  std::vector<int> eligible;
  eligible.reserve(bids.num_agents);
  for (int j = 0; j < bids.num_items; ++j) {
    int min_count = -1;
    eligible.clear();
    for (int i = 0; i < bids.num_agents; ++i) {
      if (!bids.likes(i, j)) continue;
      if (min_count < 0 || counts[i] < min_count) {
        min_count = counts[i];
        eligible.clear();
      }
      if (counts[i] == min_count) eligible.push_back(i);
    }
    if (eligible.empty()) continue;
    const int winner = eligible.size() == 1 ? eligible[0] : eligible[rng.uniform_below(eligible.size())];
    alloc.owner[j] = winner;
    ++counts[winner];
  }
  return alloc;
}

bool is_possible_like_outcome(const BidProfile& bids, const Allocation& alloc) {
  if (alloc.num_items() != bids.num_items) return false;
  for (int j = 0; j < bids.num_items; ++j) {
    const int owner = alloc.owner[j];
    if (owner == kNoAgent) {
      if (bids.bidder_count(j) > 0) return false;
    } else {
      if (owner < 0 || owner >= bids.num_agents || !bids.likes(owner, j)) return false;
    }
  }
  return true;
}

std::optional<Allocation> necessary_like_outcome(const BidProfile& bids) {
  Allocation alloc(bids.num_items);
  for (int j = 0; j < bids.num_items; ++j) {
    int sole_bidder = kNoAgent;
    for (int i = 0; i < bids.num_agents; ++i) {
      if (!bids.likes(i, j)) continue;
      if (sole_bidder != kNoAgent) return std::nullopt;
      sole_bidder = i;
    }
    alloc.owner[j] = sole_bidder;
  }
  return alloc;
}

}  // namespace ofd
