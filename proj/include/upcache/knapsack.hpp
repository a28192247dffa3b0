#pragma once

#include <cstdint>
#include <vector>

namespace upcache::knapsack {

using Weight = std::int64_t;

// Keys are opaque to the solvers; callers map them back to their own items.
struct Item {
  std::size_t key = 0;
  Weight weight = 1;
  double value = 0.0;
};

// Item order in `items` is the canonical order used for tie-breaking.
struct Instance {
  std::vector<Item> items;
  Weight capacity = 0;

  // Throws ContractViolation on weight < 1, negative/non-finite value or capacity < 0.
  void validate() const;
};

struct Selection {
  std::vector<std::size_t> chosen;  // keys, in canonical item order
  double total_value = 0.0;
  Weight total_weight = 0;
};

// Exact 0-1 DP over integer capacities, O(items * capacity). An item enters a
// table cell only on strict improvement, so the reconstructed set is deterministic.
Selection solve_dp(const Instance& instance);

// Density-ordered fit-scan: every item that still fits is taken, the scan never
// stops at the first misfit. Equal densities keep canonical order.
Selection solve_greedy(const Instance& instance);

// Brute-force subset enumeration, test oracle only. Among optimal subsets it
// returns the lexicographically smallest sorted key set.
inline constexpr std::size_t kExhaustiveMaxItems = 25;
Selection solve_exhaustive(const Instance& instance);

}  // namespace upcache::knapsack
