#include "upcache/scheduler.hpp"

#include <cmath>

#include "upcache/errors.hpp"
#include "upcache/knapsack.hpp"

namespace upcache {

std::string_view policy_name(PolicyKind policy) {
  switch (policy) {
    case PolicyKind::InfiniteCache: return "infinite";
    case PolicyKind::FiniteDP: return "dp";
    case PolicyKind::FiniteGreedy: return "greedy";
    case PolicyKind::OracleHoldAll: return "oracle";
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy(std::string_view name) {
  for (PolicyKind p : kAllPolicies) {
    if (policy_name(p) == name) return p;
  }
  return std::nullopt;
}

double cbs(const CachedItem& item, std::int32_t current_slot, std::int32_t deadline_slots,
           std::int32_t user_count) {
  const std::int64_t age = std::int64_t{current_slot} - item.arrival_slot + 1;
  const std::int64_t q = std::int64_t{user_count} * (deadline_slots - age);
  if (q < 0) {
    throw ContractViolation("cbs: item from slot " + std::to_string(item.arrival_slot) +
                            " is already past its deadline at STI " + std::to_string(current_slot));
  }
  if (q == 0) return 0.0;
  const double hit = 1.0 - std::pow(1.0 - item.popularity, static_cast<double>(q));
  return hit * static_cast<double>(item.weight);
}

bool needs_knapsack(const CacheState& cache, const std::vector<CachedItem>& expired,
                    Mbit next_slot_load) {
  Mbit freed = 0;
  for (const auto& item : expired) freed += item.weight;
  return next_slot_load > cache.capacity() - cache.occupancy() + freed;
}

Decision decide(const CacheState& cache, std::int32_t current_slot, const SchedulerParams& params,
                PolicyKind policy, Mbit next_slot_load) {
  Decision d;
  const auto expired = expired_set(cache, current_slot, params.deadline_slots);
  for (const auto& item : expired) {
    d.transmit.push_back(item.key());
    d.transmit_volume += item.weight;
  }

  std::vector<const CachedItem*> unexpired;
  for (const auto& [key, item] : cache.items()) {
    if (key.arrival_slot > current_slot - params.deadline_slots + 1) unexpired.push_back(&item);
  }

  if (uses_finite_cache(policy) && needs_knapsack(cache, expired, next_slot_load)) {
    d.knapsack_triggered = true;
    d.knapsack_capacity = cache.capacity() - next_slot_load;
    if (d.knapsack_capacity < 0) {
      throw InvariantViolation("knapsack capacity is negative at STI " +
                               std::to_string(current_slot) + "; S >= K*l_max must hold");
    }
    knapsack::Instance instance;
    instance.capacity = d.knapsack_capacity;
    instance.items.reserve(unexpired.size());
    for (std::size_t idx = 0; idx < unexpired.size(); ++idx) {
      const CachedItem& item = *unexpired[idx];
      instance.items.push_back(
          {idx, item.weight, cbs(item, current_slot, params.deadline_slots, params.user_count)});
    }
    const auto selection = policy == PolicyKind::FiniteDP ? knapsack::solve_dp(instance)
                                                          : knapsack::solve_greedy(instance);
    std::vector<bool> keep(unexpired.size(), false);
    for (std::size_t idx : selection.chosen) keep[idx] = true;
    for (std::size_t idx = 0; idx < unexpired.size(); ++idx) {
      const CachedItem& item = *unexpired[idx];
      if (keep[idx]) {
        d.stay.push_back(item.key());
        d.stay_volume += item.weight;
      } else {
        d.transmit.push_back(item.key());
        d.transmit_volume += item.weight;
      }
    }
  } else {
    for (const CachedItem* item : unexpired) {
      d.stay.push_back(item->key());
      d.stay_volume += item->weight;
    }
  }

  d.sbs_rate = static_cast<double>(d.transmit_volume) / params.slot_duration;
  return d;
}

}  // namespace upcache
