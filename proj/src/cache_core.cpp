#include "upcache/cache_core.hpp"

#include <string>

#include "upcache/errors.hpp"

namespace upcache {

namespace {

std::string describe(const ItemKey& key) {
  return "(slot " + std::to_string(key.arrival_slot) + ", user " + std::to_string(key.owner) + ")";
}

}  // namespace

CacheState::CacheState(Mbit capacity) : capacity_(capacity) {
  if (capacity < 0) throw ConfigError("cache capacity must be non-negative");
}

void CacheState::insert(const CachedItem& item) {
  if (item.weight < 1) throw InvariantViolation("cached item " + describe(item.key()) + " has weight < 1");
  if (resident_.contains(item.file_id)) {
    throw InvariantViolation("file " + std::to_string(item.file_id) + " already resident; item " +
                             describe(item.key()) + " breaks post-dedup uniqueness");
  }
  if (occupancy_ + item.weight > capacity_) {
    throw InvariantViolation("admitting item " + describe(item.key()) + " overflows the cache: " +
                             std::to_string(occupancy_ + item.weight) + " > " +
                             std::to_string(capacity_) + " Mbit");
  }
  if (!items_.emplace(item.key(), item).second) {
    throw InvariantViolation("duplicate item key " + describe(item.key()));
  }
  resident_.insert(item.file_id);
  occupancy_ += item.weight;
}

void CacheState::erase(const ItemKey& key) {
  auto it = items_.find(key);
  if (it == items_.end()) throw InvariantViolation("evicting absent item " + describe(key));
  occupancy_ -= it->second.weight;
  resident_.erase(it->second.file_id);
  items_.erase(it);
}

AdmitResult admit_and_dedup(CacheState& cache, const SlotRequests& requests,
                            const FileCatalog& catalog) {
  AdmitResult result;
  // Users are scanned in index order, so the first admission of a file in this
  // slot is automatically the smallest-index requester.
  for (std::size_t k = 0; k < requests.choices.size(); ++k) {
    const FileId file = requests.choices[k];
    result.raw_volume += requests.loads[k];
    if (file == kSilence || cache.is_resident(file)) continue;
    CachedItem item{static_cast<std::int32_t>(k + 1), requests.slot_index, file, catalog.length(file),
                    catalog.popularity(file)};
    cache.insert(item);
    result.unique_volume += item.weight;
    result.admitted.push_back(item);
  }
  return result;
}

std::vector<CachedItem> expired_set(const CacheState& cache, std::int32_t current_slot,
                                    std::int32_t deadline_slots) {
  const std::int32_t last_expiring = current_slot - deadline_slots + 1;
  std::vector<CachedItem> out;
  for (const auto& [key, item] : cache.items()) {
    if (key.arrival_slot > last_expiring) break;  // canonical order is arrival-major
    out.push_back(item);
  }
  return out;
}

void evict(CacheState& cache, const std::vector<ItemKey>& keys) {
  for (const auto& key : keys) cache.erase(key);
}

void evict(CacheState& cache, const std::vector<CachedItem>& items) {
  for (const auto& item : items) cache.erase(item.key());
}

}  // namespace upcache
