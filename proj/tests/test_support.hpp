#pragma once

// Helpers shared by the property tests and the acceptance suite.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "upcache/knapsack.hpp"
#include "upcache/sim_engine.hpp"

namespace upcache::testing {

// Random knapsack instance: weights 1..20, values in [0, 1] * weight.
inline knapsack::Instance random_instance(std::mt19937_64& rng, std::size_t max_items,
                                          knapsack::Weight max_capacity) {
  std::uniform_int_distribution<std::size_t> count(0, max_items);
  std::uniform_int_distribution<knapsack::Weight> weight(1, 20);
  std::uniform_int_distribution<knapsack::Weight> cap(0, max_capacity);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  knapsack::Instance inst;
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = weight(rng);
    inst.items.push_back({i, w, unit(rng) * static_cast<double>(w)});
  }
  inst.capacity = cap(rng);
  return inst;
}

// Small random but valid episode configuration.
inline SimConfig random_config(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  SimConfig c;
  c.user_count = pick(1, 8);
  c.slot_count = pick(1, 30);
  c.file_count = pick(1, 300);
  c.zipf_alpha = std::uniform_real_distribution<double>(0.0, 2.5)(rng);
  c.length_min = pick(1, 5);
  c.length_max = c.length_min + pick(0, 20);
  c.deadline_slots = pick(1, c.slot_count + 5);
  c.cache_capacity = c.user_count * c.length_max * pick(1, 6) + pick(0, 10);
  c.silence_prob = pick(0, 3) == 0 ? 0.0 : std::uniform_real_distribution<double>(0.0, 0.6)(rng);
  c.policy = kAllPolicies[static_cast<std::size_t>(pick(0, 3))];
  c.runs = 1;
  return c;
}

// Collects every hard-invariant breach observed across STIs. Empty means clean.
struct InvariantChecker {
  Mbit capacity = 0;
  std::vector<std::string> failures;
  std::vector<std::vector<ItemKey>> transmits;
  std::vector<std::vector<ItemKey>> stays;
  std::vector<bool> triggered;

  void fail(const StiSnapshot& s, const std::string& what) {
    failures.push_back("STI " + std::to_string(s.slot) + ": " + what);
  }

  void operator()(const StiSnapshot& s) {
    const auto& d = s.decision;
    transmits.push_back(d.transmit);
    stays.push_back(d.stay);
    triggered.push_back(d.knapsack_triggered);

    if (s.cache.occupancy() > capacity) fail(s, "occupancy exceeds S");
    Mbit sum = 0;
    std::set<FileId> files;
    for (const auto& [key, item] : s.cache.items()) {
      sum += item.weight;
      if (!files.insert(item.file_id).second) fail(s, "duplicate file id in cache");
    }
    if (sum != s.cache.occupancy()) fail(s, "occupancy bookkeeping drifted");
    if (files.size() != s.cache.resident_file_ids().size()) fail(s, "resident set mismatch");

    // transmit and stay partition the cache
    std::set<ItemKey> all;
    for (const auto& k : d.transmit) all.insert(k);
    for (const auto& k : d.stay) {
      if (!all.insert(k).second) fail(s, "item both transmitted and kept");
    }
    if (all.size() != s.cache.size() || d.transmit.size() + d.stay.size() != s.cache.size()) {
      fail(s, "transmit/stay is not a partition of the cache");
    }

    const std::int32_t last_expiring = s.slot - s.effective_deadline + 1;
    for (const auto& k : d.stay) {
      if (k.arrival_slot <= last_expiring) fail(s, "expired item kept");
    }
    if (d.knapsack_triggered && d.stay_volume > d.knapsack_capacity) {
      fail(s, "stay volume exceeds knapsack capacity");
    }
    if (d.stay_volume + s.next_slot_load > capacity) fail(s, "next slot would overflow");
  }
};

}  // namespace upcache::testing
