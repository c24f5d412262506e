#include "ofd/core.hpp"

#include <cassert>
#include <sstream>

#include "ofd/errors.hpp"

namespace ofd {

Rational Instance::row_sum(int agent) const {
  Rational sum;
  for (int j = 0; j < num_items; ++j) sum += utility(agent, j);
  return sum;
}

bool Instance::is_zero_one() const {
  for (const Rational& u : utilities) {
    if (!u.is_zero() && u != Rational(1)) return false;
  }
  return true;
}

int BidProfile::like_count(int agent) const {
  int n = 0;
  for (int j = 0; j < num_items; ++j) n += likes(agent, j) ? 1 : 0;
  return n;
}

int BidProfile::bidder_count(int item) const {
  int n = 0;
  for (int i = 0; i < num_agents; ++i) n += likes(i, item) ? 1 : 0;
  return n;
}

std::uint64_t BidProfile::row_mask(int agent) const {
  assert(num_items <= 63);
  std::uint64_t mask = 0;
  for (int j = 0; j < num_items; ++j) {
    if (likes(agent, j)) mask |= std::uint64_t{1} << j;
  }
  return mask;
}

void BidProfile::set_row_mask(int agent, std::uint64_t mask) {
  assert(num_items <= 63);
  for (int j = 0; j < num_items; ++j) set(agent, j, (mask >> j) & 1);
}

Rational bundle_utility(const Instance& instance, const Allocation& alloc, int valuing_agent, int bundle_owner) {
  Rational total;
  for (int j = 0; j < instance.num_items; ++j) {
    if (alloc.owner[j] == bundle_owner) total += instance.utility(valuing_agent, j);
  }
  return total;
}

BidProfile sincere_bids(const Instance& instance) {
  BidProfile bids(instance.num_agents, instance.num_items);
  for (int i = 0; i < instance.num_agents; ++i) {
    for (int j = 0; j < instance.num_items; ++j) {
      bids.set(i, j, instance.utility(i, j).sign() > 0);
    }
  }
  return bids;
}

void validate_instance(const Instance& instance, bool require_normalized) {
  for (int i = 0; i < instance.num_agents; ++i) {
    for (int j = 0; j < instance.num_items; ++j) {
      if (instance.utility(i, j).sign() < 0) {
        throw ValidationError(ValidationError::Kind::kNegativeUtility, i,
                              "agent " + std::to_string(i) + " has negative utility for item " + std::to_string(j));
      }
    }
  }
  if (require_normalized) {
    for (int i = 0; i < instance.num_agents; ++i) {
      if (instance.row_sum(i) != Rational(1)) {
        throw ValidationError(ValidationError::Kind::kNotNormalized, i,
                              "agent " + std::to_string(i) + " utilities sum to " + instance.row_sum(i).to_string() + ", expected 1");
      }
    }
  }
}

namespace {

// Strips comments and splits into (line number, token) pairs.
std::vector<std::pair<int, std::string>> tokenize(std::string_view text) {
  std::vector<std::pair<int, std::string>> tokens;
  int line = 1;
  std::string current;
  bool in_comment = false;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.emplace_back(line, current);
      current.clear();
    }
  };
  for (char c : text) {
    if (c == '\n') {
      flush();
      in_comment = false;
      ++line;
    } else if (in_comment) {
      // skip
    } else if (c == '#') {
      flush();
      in_comment = true;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return tokens;
}

int parse_positive_int(const std::pair<int, std::string>& token, const char* what) {
  try {
    size_t pos = 0;
    const int value = std::stoi(token.second, &pos);
    if (pos != token.second.size() || value <= 0) throw std::invalid_argument(what);
    return value;
  } catch (const std::exception&) {
    throw ParseError(ParseError::Kind::kSyntax, token.first, std::string("expected positive integer for ") + what + ", got '" + token.second + "'");
  }
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const auto tokens = tokenize(text);
  if (tokens.size() < 2) throw ParseError(ParseError::Kind::kSyntax, 1, "missing 'k m' header");
  const int k = parse_positive_int(tokens[0], "agent count");
  const int m = parse_positive_int(tokens[1], "item count");
  const size_t expected = 2 + static_cast<size_t>(k) * m;
  if (tokens.size() != expected) {
    const int line = tokens.size() > 2 ? tokens.back().first : tokens[1].first;
    throw ParseError(ParseError::Kind::kDimensionMismatch, line,
                     "expected " + std::to_string(static_cast<size_t>(k) * m) + " utilities, got " + std::to_string(tokens.size() - 2));
  }
  Instance instance(k, m);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < m; ++j) {
      const auto& token = tokens[2 + static_cast<size_t>(i) * m + j];
      try {
        instance.utility(i, j) = Rational::parse(token.second);
      } catch (const std::invalid_argument& e) {
        throw ParseError(ParseError::Kind::kSyntax, token.first, e.what());
      }
    }
  }
  return instance;
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  out << instance.num_agents << ' ' << instance.num_items << '\n';
  for (int i = 0; i < instance.num_agents; ++i) {
    for (int j = 0; j < instance.num_items; ++j) {
      if (j > 0) out << ' ';
      out << instance.utility(i, j);
    }
    out << '\n';
  }
  return out.str();
}

BidProfile parse_bids(std::string_view text) {
  const auto tokens = tokenize(text);
  if (tokens.size() < 2) throw ParseError(ParseError::Kind::kSyntax, 1, "missing 'k m' header");
  const int k = parse_positive_int(tokens[0], "agent count");
  const int m = parse_positive_int(tokens[1], "item count");
  if (tokens.size() != 2 + static_cast<size_t>(k)) {
    const int line = tokens.size() > 2 ? tokens.back().first : tokens[1].first;
    throw ParseError(ParseError::Kind::kDimensionMismatch, line,
                     "expected " + std::to_string(k) + " bid rows, got " + std::to_string(tokens.size() - 2));
  }
  BidProfile bids(k, m);
  for (int i = 0; i < k; ++i) {
    const auto& row = tokens[2 + static_cast<size_t>(i)];
    if (static_cast<int>(row.second.size()) != m) {
      throw ParseError(ParseError::Kind::kDimensionMismatch, row.first,
                       "expected " + std::to_string(m) + " characters, got " + std::to_string(row.second.size()));
    }
    for (int j = 0; j < m; ++j) {
      const char c = row.second[j];
      if (c != '0' && c != '1') throw ParseError(ParseError::Kind::kSyntax, row.first, std::string("expected '0' or '1', got '") + c + "'");
      bids.set(i, j, c == '1');
    }
  }
  return bids;
}

std::string serialize_bids(const BidProfile& bids) {
  std::ostringstream out;
  out << bids.num_agents << ' ' << bids.num_items << '\n';
  for (int i = 0; i < bids.num_agents; ++i) {
    for (int j = 0; j < bids.num_items; ++j) out << (bids.likes(i, j) ? '1' : '0');
    out << '\n';
  }
  return out.str();
}

}  // namespace ofd
