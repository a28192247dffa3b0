#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "upcache/cache_core.hpp"
#include "upcache/scheduler.hpp"
#include "upcache/workload.hpp"

namespace upcache {

// Defaults reproduce the reference setup: T_s = 10 s, F = 1000 files with
// lengths uniform on 1..20 Mbit, Zipf alpha = 1, N = 20 slots, K = 5 users,
// 200 Monte Carlo runs.
struct SimConfig {
  std::int32_t user_count = 5;
  std::int32_t slot_count = 20;
  double slot_duration = 10.0;
  std::int32_t file_count = 1000;
  double zipf_alpha = 1.0;
  Mbit length_min = 1;
  Mbit length_max = 20;
  Mbit cache_capacity = 200;
  std::int32_t deadline_slots = 20;
  double silence_prob = 0.0;
  PolicyKind policy = PolicyKind::FiniteDP;
  std::int32_t runs = 200;
  std::uint64_t master_seed = 1;
  // 0 picks std::thread::hardware_concurrency().
  std::int32_t threads = 0;

  // Throws ConfigError; in particular S >= K * l_max is required.
  void validate() const;
};

// Everything random about one episode: the catalog and the full request log.
struct EpisodeInput {
  FileCatalog catalog;
  std::vector<SlotRequests> log;  // log[n - 1] holds slot n
};

struct EpisodeMetrics {
  Mbit d0 = 0;
  Mbit d1 = 0;
  double eta = 0.0;
  double eta_max = 0.0;
  std::vector<Mbit> per_slot_sbs_volume;  // r_{n+1} * T_s decided at STI n = 1..N
  std::vector<Mbit> per_slot_occupancy;   // S_u^n after admission at STI n
  Mbit final_flush_volume = 0;            // leftovers sent after the horizon closes
};

struct AggregateMetrics {
  double mean_eta = 0.0;
  double std_eta = 0.0;
  double mean_eta_max = 0.0;
  double mean_d0 = 0.0;
  double mean_d1 = 0.0;
  std::int32_t run_count = 0;
};

// Per-STI view handed to observers; the cache is shown before eviction.
struct StiSnapshot {
  std::int32_t slot = 0;
  const CacheState& cache;
  const AdmitResult& admitted;
  const Decision& decision;
  Mbit next_slot_load = 0;
  std::int32_t effective_deadline = 0;
};
using StiObserver = std::function<void(const StiSnapshot&)>;

// Per-episode seed: splitmix64(master_seed) XOR episode index.
std::uint64_t episode_seed(std::uint64_t master_seed, std::uint64_t episode_index);
Rng make_rng(std::uint64_t seed);

EpisodeInput generate_episode_input(const SimConfig& config, std::uint64_t seed);

// Plays a fixed request log under `policy`. The returned eta_max is left at 0;
// run_episode fills it in from an oracle replay of the same log.
EpisodeMetrics simulate(const SimConfig& config, PolicyKind policy, const EpisodeInput& input,
                        const StiObserver& observer = {});

EpisodeMetrics run_episode(const SimConfig& config, std::uint64_t seed);

// Sum of lengths over the distinct non-silent files in the log: the minimum
// possible D_1 for this realization.
Mbit run_oracle_bound(const std::vector<SlotRequests>& log, const FileCatalog& catalog);

// Population mean/std over `runs` episodes; results are reduced in episode order.
AggregateMetrics run_monte_carlo(const SimConfig& config);
AggregateMetrics aggregate(const std::vector<EpisodeMetrics>& episodes);

inline double saved_ratio(Mbit d0, Mbit d1) {
  return d0 == 0 ? 0.0 : static_cast<double>(d0 - d1) / static_cast<double>(d0);
}

}  // namespace upcache
