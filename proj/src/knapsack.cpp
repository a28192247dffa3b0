#include "upcache/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "upcache/errors.hpp"

namespace upcache::knapsack {

namespace {

// Builds a Selection from canonical indices, summing values in canonical order
// so all solvers report bit-identical totals for the same chosen set.
Selection make_selection(const Instance& instance, std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  Selection sel;
  sel.chosen.reserve(indices.size());
  for (std::size_t idx : indices) {
    const Item& item = instance.items[idx];
    sel.chosen.push_back(item.key);
    sel.total_value += item.value;
    sel.total_weight += item.weight;
  }
  return sel;
}

std::vector<std::size_t> sorted_keys(const Instance& instance, std::uint64_t mask) {
  std::vector<std::size_t> keys;
  for (std::size_t i = 0; i < instance.items.size(); ++i) {
    if (mask >> i & 1U) keys.push_back(instance.items[i].key);
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

void Instance::validate() const {
  if (capacity < 0) throw ContractViolation("knapsack capacity must be non-negative");
  for (const Item& item : items) {
    if (item.weight < 1) {
      throw ContractViolation("knapsack item " + std::to_string(item.key) + " has weight < 1");
    }
    if (!std::isfinite(item.value) || item.value < 0.0) {
      throw ContractViolation("knapsack item " + std::to_string(item.key) +
                              " has a negative or non-finite value");
    }
  }
}

Selection solve_dp(const Instance& instance) {
  instance.validate();
  const std::size_t n = instance.items.size();
  const Weight total_weight = std::accumulate(
      instance.items.begin(), instance.items.end(), Weight{0},
      [](Weight acc, const Item& item) { return acc + item.weight; });
  // Capacity beyond the total weight never changes the answer.
  const auto cap = static_cast<std::size_t>(std::min(instance.capacity, total_weight));

  std::vector<double> best(cap + 1, 0.0);
  std::vector<std::vector<bool>> take(n, std::vector<bool>(cap + 1, false));
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = static_cast<std::size_t>(instance.items[i].weight);
    const double v = instance.items[i].value;
    if (w > cap) continue;
    for (std::size_t c = cap; c >= w; --c) {
      const double candidate = best[c - w] + v;
      if (candidate > best[c]) {
        best[c] = candidate;
        take[i][c] = true;
      }
      if (c == w) break;
    }
  }

  std::vector<std::size_t> chosen;
  std::size_t c = cap;
  for (std::size_t i = n; i-- > 0;) {
    if (take[i][c]) {
      chosen.push_back(i);
      c -= static_cast<std::size_t>(instance.items[i].weight);
    }
  }
  return make_selection(instance, std::move(chosen));
}

Selection solve_greedy(const Instance& instance) {
  instance.validate();
  std::vector<std::size_t> order(instance.items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> density(instance.items.size());
  for (std::size_t i = 0; i < instance.items.size(); ++i) {
    density[i] = instance.items[i].value / static_cast<double>(instance.items[i].weight);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return density[a] > density[b]; });

  Weight remaining = instance.capacity;
  std::vector<std::size_t> chosen;
  for (std::size_t idx : order) {
    if (instance.items[idx].weight <= remaining) {
      chosen.push_back(idx);
      remaining -= instance.items[idx].weight;
    }
  }
  return make_selection(instance, std::move(chosen));
}

Selection solve_exhaustive(const Instance& instance) {
  instance.validate();
  const std::size_t n = instance.items.size();
  if (n > kExhaustiveMaxItems) {
    throw ContractViolation("solve_exhaustive supports at most " +
                            std::to_string(kExhaustiveMaxItems) + " items, got " +
                            std::to_string(n));
  }
  std::uint64_t best_mask = 0;
  double best_value = 0.0;
  std::vector<std::size_t> best_keys;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    Weight weight = 0;
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) {
        weight += instance.items[i].weight;
        value += instance.items[i].value;
      }
    }
    if (weight > instance.capacity || value < best_value) continue;
    if (value == best_value) {
      auto keys = sorted_keys(instance, mask);
      if (!(keys < best_keys)) continue;
      best_keys = std::move(keys);
    } else {
      best_keys = sorted_keys(instance, mask);
    }
    best_value = value;
    best_mask = mask;
  }

  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < n; ++i) {
    if (best_mask >> i & 1U) chosen.push_back(i);
  }
  return make_selection(instance, std::move(chosen));
}

}  // namespace upcache::knapsack
