#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "ofd/core.hpp"

namespace ofd {

enum class MechanismKind { kLike, kBalancedLike };

std::string to_string(MechanismKind kind);

// Reproducible cross-platform randomness: std::mt19937_64 (bit-exact per the
// C++ standard) reduced with a 128-bit multiply-shift. uniform_below consumes
// exactly one generator output for n >= 2 and none for n <= 1, so a seeded
// mechanism run spends exactly one draw per contested item and can be
// replayed and audited.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  std::uint64_t uniform_below(std::uint64_t n) {
    if (n <= 1) return 0;
    const unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<std::uint64_t>(wide >> 64);
  }

 private:
  std::mt19937_64 gen_;
};

// Gives each arriving item to a uniformly random declared bidder, or to no
// one when nobody bids.
Allocation like_run(const BidProfile& bids, std::uint64_t seed);

// Same, but the draw is restricted to bidders currently holding the fewest
// items.
Allocation balanced_like_run(const BidProfile& bids, std::uint64_t seed);

// True iff every allocated item went to one of its bidders and every item
// with at least one bidder was allocated.
bool is_possible_like_outcome(const BidProfile& bids, const Allocation& alloc);

// The unique outcome when no item is contested (every item has at most one
// bidder); nullopt when some item has two or more bidders.
std::optional<Allocation> necessary_like_outcome(const BidProfile& bids);

}  // namespace ofd
