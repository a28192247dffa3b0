#include "upcache/sim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_set>

#include "upcache/errors.hpp"

namespace upcache {

void SimConfig::validate() const {
  if (user_count < 1) throw ConfigError("user count K must be >= 1");
  if (slot_count < 1) throw ConfigError("slot count N must be >= 1");
  if (!(slot_duration > 0.0) || !std::isfinite(slot_duration)) {
    throw ConfigError("slot duration T_s must be positive");
  }
  if (file_count < 1) throw ConfigError("file count F must be >= 1");
  if (!std::isfinite(zipf_alpha) || zipf_alpha < 0.0) {
    throw ConfigError("zipf alpha must be finite and non-negative");
  }
  if (length_min < 1 || length_min > length_max) {
    throw ConfigError("file length range must satisfy 1 <= l_min <= l_max");
  }
  if (deadline_slots < 1) throw ConfigError("deadline slots n_d must be >= 1");
  if (!(silence_prob >= 0.0 && silence_prob <= 1.0)) {
    throw ConfigError("silence probability must lie in [0, 1]");
  }
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  if (cache_capacity < Mbit{user_count} * length_max) {
    throw ConfigError("cache size S = " + std::to_string(cache_capacity) +
                      " violates S >= K*l_max = " + std::to_string(user_count) + "*" +
                      std::to_string(length_max) + " = " +
                      std::to_string(Mbit{user_count} * length_max));
  }
}

std::uint64_t episode_seed(std::uint64_t master_seed, std::uint64_t episode_index) {
  // Masters are scrambled first; a raw XOR maps small masters onto the same
  // set of episode seeds (2 ^ {0..199} == 3 ^ {0..199}).
  std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z ^ episode_index;
}

Rng make_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return Rng(seq);
}

EpisodeInput generate_episode_input(const SimConfig& config, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  FileCatalog catalog =
      build_catalog(config.file_count, config.zipf_alpha, config.length_min, config.length_max, rng);
  std::vector<SlotRequests> log;
  log.reserve(static_cast<std::size_t>(config.slot_count));
  for (std::int32_t n = 1; n <= config.slot_count; ++n) {
    log.push_back(sample_slot_requests(catalog, config.user_count, n, config.silence_prob, rng));
  }
  return {std::move(catalog), std::move(log)};
}

EpisodeMetrics simulate(const SimConfig& config, PolicyKind policy, const EpisodeInput& input,
                        const StiObserver& observer) {
  const auto slots = static_cast<std::int32_t>(input.log.size());
  const Mbit capacity = uses_finite_cache(policy) ? config.cache_capacity : kUnboundedCapacity;
  const SchedulerParams params{
      policy == PolicyKind::OracleHoldAll ? std::max(slots, 1) : config.deadline_slots,
      config.user_count, config.slot_duration};

  CacheState cache(capacity);
  EpisodeMetrics m;
  m.per_slot_sbs_volume.reserve(input.log.size());
  m.per_slot_occupancy.reserve(input.log.size());
  Mbit admitted_total = 0;
  Mbit evicted_total = 0;

  for (std::int32_t n = 1; n <= slots; ++n) {
    const SlotRequests& requests = input.log[static_cast<std::size_t>(n - 1)];
    const AdmitResult admitted = admit_and_dedup(cache, requests, input.catalog);
    m.d0 += admitted.raw_volume;
    m.d1 += admitted.unique_volume;
    admitted_total += admitted.unique_volume;
    m.per_slot_occupancy.push_back(cache.occupancy());

    const Mbit next_load = n < slots ? input.log[static_cast<std::size_t>(n)].total_load() : 0;
    const Decision decision = decide(cache, n, params, policy, next_load);
    if (observer) observer(StiSnapshot{n, cache, admitted, decision, next_load, params.deadline_slots});

    evict(cache, decision.transmit);
    evicted_total += decision.transmit_volume;
    m.per_slot_sbs_volume.push_back(decision.transmit_volume);

    if (admitted_total - evicted_total != cache.occupancy()) {
      throw InvariantViolation("volume conservation broken at STI " + std::to_string(n));
    }
    if (!cache.empty() && cache.items().begin()->first.arrival_slot <= n - params.deadline_slots + 1) {
      const ItemKey& key = cache.items().begin()->first;
      throw InvariantViolation("item (slot " + std::to_string(key.arrival_slot) + ", user " +
                               std::to_string(key.owner) + ") outlived its deadline at STI " +
                               std::to_string(n));
    }
  }

  for (const auto& [key, item] : cache.items()) m.final_flush_volume += item.weight;
  m.eta = saved_ratio(m.d0, m.d1);
  return m;
}

EpisodeMetrics run_episode(const SimConfig& config, std::uint64_t seed) {
  config.validate();
  const EpisodeInput input = generate_episode_input(config, seed);
  EpisodeMetrics m = simulate(config, config.policy, input);
  const Mbit min_d1 = config.policy == PolicyKind::OracleHoldAll
                          ? m.d1
                          : simulate(config, PolicyKind::OracleHoldAll, input).d1;
  m.eta_max = saved_ratio(m.d0, min_d1);
  if (m.d1 < min_d1) {
    throw InvariantViolation("episode D_1 fell below the oracle minimum");
  }
  return m;
}

Mbit run_oracle_bound(const std::vector<SlotRequests>& log, const FileCatalog& catalog) {
  std::unordered_set<FileId> seen;
  Mbit total = 0;
  for (const auto& slot : log) {
    for (FileId id : slot.choices) {
      if (id != kSilence && seen.insert(id).second) total += catalog.length(id);
    }
  }
  return total;
}

AggregateMetrics aggregate(const std::vector<EpisodeMetrics>& episodes) {
  AggregateMetrics agg;
  agg.run_count = static_cast<std::int32_t>(episodes.size());
  if (episodes.empty()) return agg;
  const double n = static_cast<double>(episodes.size());
  for (const auto& e : episodes) {
    agg.mean_eta += e.eta;
    agg.mean_eta_max += e.eta_max;
    agg.mean_d0 += static_cast<double>(e.d0);
    agg.mean_d1 += static_cast<double>(e.d1);
  }
  agg.mean_eta /= n;
  agg.mean_eta_max /= n;
  agg.mean_d0 /= n;
  agg.mean_d1 /= n;
  double sq = 0.0;
  for (const auto& e : episodes) sq += (e.eta - agg.mean_eta) * (e.eta - agg.mean_eta);
  agg.std_eta = std::sqrt(sq / n);
  return agg;
}

AggregateMetrics run_monte_carlo(const SimConfig& config) {
  config.validate();
  const auto runs = static_cast<std::size_t>(config.runs);
  std::vector<EpisodeMetrics> episodes(runs);

  std::size_t workers = config.threads > 0 ? static_cast<std::size_t>(config.threads)
                                           : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, runs);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < runs; i = next++) {
      try {
        episodes[i] = run_episode(config, episode_seed(config.master_seed, i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = runs;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return aggregate(episodes);
}

}  // namespace upcache
