#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace amc {

/// Agents are numbered 1..n.
using AgentId = int;

inline constexpr AgentId kMaxAgents = 63;

/// A set of agents, stored as a bitmask (bit a-1 for agent a).
class Coalition {
 public:
  constexpr Coalition() = default;
  Coalition(std::initializer_list<AgentId> agents);
  explicit Coalition(const std::vector<AgentId>& agents);

  static constexpr Coalition fromMask(std::uint64_t mask) {
    Coalition c;
    c.mask_ = mask;
    return c;
  }
  /// {1..n}
  static constexpr Coalition grand(int n) {
    return fromMask(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool contains(AgentId a) const {
    return a >= 1 && a <= kMaxAgents && ((mask_ >> (a - 1)) & 1U) != 0;
  }
  constexpr AgentId maxAgent() const { return 64 - std::countl_zero(mask_); }

  /// Members in ascending order.
  std::vector<AgentId> members() const;

  /// Complement relative to the agents 1..n.
  constexpr Coalition complement(int n) const { return fromMask(grand(n).mask_ & ~mask_); }
  constexpr bool subsetOf(Coalition other) const { return (mask_ & ~other.mask_) == 0; }

  /// `{1,3}`; `{}` for the empty coalition.
  std::string toString() const;
  /// Inverse of toString; throws ParseError.
  static Coalition parse(const std::string& text);

  friend constexpr auto operator<=>(Coalition, Coalition) = default;

 private:
  std::uint64_t mask_ = 0;
};

}  // namespace amc
