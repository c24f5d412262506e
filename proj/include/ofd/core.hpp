#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ofd/rational.hpp"

namespace ofd {

// k agents, m items arriving in index order, exact utility matrix.
struct Instance {
  int num_agents = 0;
  int num_items = 0;
  std::vector<Rational> utilities;  // row-major, num_agents x num_items

  Instance() = default;
  Instance(int agents, int items) : num_agents(agents), num_items(items), utilities(static_cast<size_t>(agents) * items) {}

  const Rational& utility(int agent, int item) const { return utilities[static_cast<size_t>(agent) * num_items + item]; }
  Rational& utility(int agent, int item) { return utilities[static_cast<size_t>(agent) * num_items + item]; }

  Rational row_sum(int agent) const;
  // Derived predicate: every entry is exactly 0 or 1.
  bool is_zero_one() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.num_agents == b.num_agents && a.num_items == b.num_items && a.utilities == b.utilities;
  }
};

// Declared likes; bids[i][j] = true iff agent i declares liking item j.
struct BidProfile {
  int num_agents = 0;
  int num_items = 0;
  std::vector<std::uint8_t> bids;  // row-major 0/1

  BidProfile() = default;
  BidProfile(int agents, int items) : num_agents(agents), num_items(items), bids(static_cast<size_t>(agents) * items, 0) {}

  bool likes(int agent, int item) const { return bids[static_cast<size_t>(agent) * num_items + item] != 0; }
  void set(int agent, int item, bool v) { bids[static_cast<size_t>(agent) * num_items + item] = v ? 1 : 0; }

  int like_count(int agent) const;
  int bidder_count(int item) const;

  // Row as a bitmask (bit j = item j); requires num_items <= 63.
  std::uint64_t row_mask(int agent) const;
  void set_row_mask(int agent, std::uint64_t mask);

  friend bool operator==(const BidProfile& a, const BidProfile& b) {
    return a.num_agents == b.num_agents && a.num_items == b.num_items && a.bids == b.bids;
  }
};

inline constexpr int kNoAgent = -1;

// Ex post outcome: owner per item, kNoAgent when the item went to no one.
struct Allocation {
  std::vector<int> owner;

  Allocation() = default;
  explicit Allocation(int items) : owner(items, kNoAgent) {}

  int num_items() const { return static_cast<int>(owner.size()); }

  friend bool operator==(const Allocation& a, const Allocation& b) { return a.owner == b.owner; }
  friend auto operator<=>(const Allocation& a, const Allocation& b) { return a.owner <=> b.owner; }
};

// Agent i's total utility for the bundle agent j received.
Rational bundle_utility(const Instance& instance, const Allocation& alloc, int valuing_agent, int bundle_owner);

// Bids exactly on the positively valued items.
BidProfile sincere_bids(const Instance& instance);

// Throws ValidationError on a negative utility, or on a row whose sum is not
// exactly 1 when require_normalized is set.
void validate_instance(const Instance& instance, bool require_normalized);

// Text format: line 1 "k m", then k lines of m whitespace-separated
// rationals ("p" or "p/q"). '#' starts a comment line.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& instance);

// Text format: line 1 "k m", then k lines of m characters '0'/'1'.
BidProfile parse_bids(std::string_view text);
std::string serialize_bids(const BidProfile& bids);

}  // namespace ofd
