#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <unordered_set>
#include <vector>

#include "upcache/workload.hpp"

namespace upcache {

inline constexpr Mbit kUnboundedCapacity = std::numeric_limits<Mbit>::max() / 4;

// Identifies a cached upload by who sent it and when. Ordering is the canonical
// item order used everywhere ties must be broken: arrival slot, then owner.
struct ItemKey {
  std::int32_t arrival_slot = 0;
  std::int32_t owner = 0;

  auto operator<=>(const ItemKey&) const = default;
};

struct CachedItem {
  std::int32_t owner = 0;
  std::int32_t arrival_slot = 0;
  FileId file_id = kSilence;
  Mbit weight = 0;
  double popularity = 0.0;

  ItemKey key() const { return {arrival_slot, owner}; }
};

struct AdmitResult {
  std::vector<CachedItem> admitted;
  Mbit raw_volume = 0;
  Mbit unique_volume = 0;
};

/**
 * Post-deduplication contents of the small-cell cache.
 *
 * Every resident file id appears exactly once; occupancy is tracked
 * incrementally and never exceeds capacity. Items iterate in canonical order.
 */
class CacheState {
 public:
  explicit CacheState(Mbit capacity);

  Mbit capacity() const { return capacity_; }
  Mbit occupancy() const { return occupancy_; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  bool is_resident(FileId id) const { return resident_.contains(id); }
  const std::map<ItemKey, CachedItem>& items() const { return items_; }
  const std::unordered_set<FileId>& resident_file_ids() const { return resident_; }

  // Low-level insert used by admit_and_dedup; rejects duplicates and overflow.
  void insert(const CachedItem& item);
  void erase(const ItemKey& key);

 private:
  Mbit capacity_;
  Mbit occupancy_ = 0;
  std::map<ItemKey, CachedItem> items_;
  std::unordered_set<FileId> resident_;
};

// Admits one slot's uploads. A file already resident is dropped (the earlier copy
// is kept); among same-slot duplicates of a new file the smallest user index wins.
AdmitResult admit_and_dedup(CacheState& cache, const SlotRequests& requests,
                            const FileCatalog& catalog);

// Items that must leave at this STI: arrival_slot <= current_slot - deadline_slots + 1.
std::vector<CachedItem> expired_set(const CacheState& cache, std::int32_t current_slot,
                                    std::int32_t deadline_slots);

void evict(CacheState& cache, const std::vector<ItemKey>& keys);
void evict(CacheState& cache, const std::vector<CachedItem>& items);

inline Mbit occupancy(const CacheState& cache) { return cache.occupancy(); }

}  // namespace upcache
