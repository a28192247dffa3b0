#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "upcache/cache_core.hpp"

namespace upcache {

enum class PolicyKind { InfiniteCache, FiniteDP, FiniteGreedy, OracleHoldAll };

inline constexpr PolicyKind kAllPolicies[] = {PolicyKind::InfiniteCache, PolicyKind::FiniteDP,
                                              PolicyKind::FiniteGreedy, PolicyKind::OracleHoldAll};

// CLI spelling: infinite, dp, greedy, oracle.
std::string_view policy_name(PolicyKind policy);
std::optional<PolicyKind> parse_policy(std::string_view name);

// Finite policies are bounded by the configured S; the other two run unbounded.
inline bool uses_finite_cache(PolicyKind policy) {
  return policy == PolicyKind::FiniteDP || policy == PolicyKind::FiniteGreedy;
}

struct SchedulerParams {
  std::int32_t deadline_slots = 1;  // n_d
  std::int32_t user_count = 1;      // K
  double slot_duration = 10.0;      // T_s, seconds
};

struct Decision {
  std::vector<ItemKey> transmit;  // a = 1
  std::vector<ItemKey> stay;      // b = 1
  Mbit transmit_volume = 0;       // r_{n+1} * T_s
  double sbs_rate = 0.0;          // Mbit/s

  bool knapsack_triggered = false;
  Mbit knapsack_capacity = 0;  // C^n, meaningful only when triggered
  Mbit stay_volume = 0;
};

// Expected volume that keeping `item` until its deadline could deduplicate:
// [1 - (1 - p)^q] * w with q = K * (n_d - (n - i + 1)).
double cbs(const CachedItem& item, std::int32_t current_slot, std::int32_t deadline_slots,
           std::int32_t user_count);

// True iff the next slot's load does not fit once expired items leave (strict).
bool needs_knapsack(const CacheState& cache, const std::vector<CachedItem>& expired,
                    Mbit next_slot_load);

/**
 * Chooses which cached items are transmitted after STI `current_slot`.
 *
 * Expired items are always transmitted. InfiniteCache and OracleHoldAll keep
 * everything else. The finite policies keep everything else too unless the
 * next slot would not fit, in which case a 0-1 knapsack over the unexpired
 * items (value = cbs, capacity = S - next_slot_load) selects what stays.
 * OracleHoldAll's horizon-length deadline is the caller's responsibility.
 */
Decision decide(const CacheState& cache, std::int32_t current_slot, const SchedulerParams& params,
                PolicyKind policy, Mbit next_slot_load);

}  // namespace upcache
