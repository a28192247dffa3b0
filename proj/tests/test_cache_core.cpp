#include <doctest.h>

#include "upcache/cache_core.hpp"
#include "upcache/errors.hpp"

using namespace upcache;

namespace {

// Catalog where file j has length j (F = 10) and popularity zipf(10, 1).
FileCatalog ramp_catalog() {
  std::vector<Mbit> lengths;
  for (Mbit j = 1; j <= 10; ++j) lengths.push_back(j);
  return FileCatalog(lengths, zipf_pmf(10, 1.0));
}

SlotRequests slot(std::int32_t n, std::vector<FileId> choices, const FileCatalog& cat) {
  SlotRequests r;
  r.slot_index = n;
  r.choices = std::move(choices);
  for (FileId f : r.choices) r.loads.push_back(f == kSilence ? 0 : cat.length(f));
  return r;
}

}  // namespace

TEST_CASE("admit_and_dedup keeps the smallest-index copy") {
  std::vector<Mbit> lengths(10, 1);
  lengths[4] = 4;  // l_5 = 4
  const FileCatalog cat(lengths, zipf_pmf(10, 1.0));
  CacheState cache(100);

  const auto first = admit_and_dedup(cache, slot(1, {5, 5, 5}, cat), cat);
  REQUIRE(first.admitted.size() == 1);
  CHECK(first.admitted[0].owner == 1);
  CHECK(first.admitted[0].weight == 4);
  CHECK(first.raw_volume == 12);
  CHECK(first.unique_volume == 4);

  SUBCASE("resident file: nothing admitted") {
    const auto again = admit_and_dedup(cache, slot(2, {5, 5, 5}, cat), cat);
    CHECK(again.admitted.empty());
    CHECK(again.raw_volume == 12);
    CHECK(again.unique_volume == 0);
    CHECK(cache.items().begin()->first == ItemKey{1, 1});  // earlier version kept
  }
}

TEST_CASE("admit_and_dedup with distinct files and silence") {
  const auto cat = ramp_catalog();
  CacheState cache(100);
  const auto r = admit_and_dedup(cache, slot(1, {1, 2, 3}, cat), cat);
  CHECK(r.admitted.size() == 3);
  CHECK(r.unique_volume == 6);
  CHECK(r.raw_volume == 6);

  const auto silent = admit_and_dedup(cache, slot(2, {0, 0, 4, 0}, cat), cat);
  REQUIRE(silent.admitted.size() == 1);
  CHECK(silent.admitted[0].owner == 3);
  CHECK(silent.admitted[0].arrival_slot == 2);
  CHECK(silent.raw_volume == 4);
  CHECK(cache.occupancy() == 10);
}

TEST_CASE("admitting the same slot twice admits nothing the second time") {
  const auto cat = ramp_catalog();
  CacheState cache(100);
  const auto req = slot(1, {3, 7, 3, 9}, cat);
  admit_and_dedup(cache, req, cat);
  const Mbit before = cache.occupancy();
  const auto second = admit_and_dedup(cache, req, cat);
  CHECK(second.admitted.empty());
  CHECK(second.unique_volume == 0);
  CHECK(cache.occupancy() == before);
}

TEST_CASE("admission overflow is an invariant violation") {
  const auto cat = ramp_catalog();
  CacheState cache(10);
  CHECK_THROWS_AS(admit_and_dedup(cache, slot(1, {9, 8}, cat), cat), InvariantViolation);
}

TEST_CASE("expired_set") {
  const auto cat = ramp_catalog();
  CacheState cache(100);
  admit_and_dedup(cache, slot(3, {1}, cat), cat);
  admit_and_dedup(cache, slot(4, {2}, cat), cat);
  admit_and_dedup(cache, slot(5, {3}, cat), cat);

  SUBCASE("i_n = n - n_d + 1") {
    const auto out = expired_set(cache, 5, 3);
    REQUIRE(out.size() == 1);
    CHECK(out[0].arrival_slot == 3);
  }
  SUBCASE("n_d = 1 returns this slot's arrivals too") {
    CHECK(expired_set(cache, 5, 1).size() == 3);
  }
  SUBCASE("nothing expires before slot n_d") {
    CacheState fresh(100);
    admit_and_dedup(fresh, slot(1, {1}, cat), cat);
    admit_and_dedup(fresh, slot(2, {2}, cat), cat);
    CHECK(expired_set(fresh, 2, 5).empty());
  }
  SUBCASE("overdue items are caught too") {
    CHECK(expired_set(cache, 9, 3).size() == 3);
  }
}

TEST_CASE("evict and occupancy bookkeeping") {
  const auto cat = ramp_catalog();
  CacheState cache(100);
  CHECK(occupancy(cache) == 0);
  const auto r = admit_and_dedup(cache, slot(1, {3, 7}, cat), cat);
  CHECK(occupancy(cache) == 10);
  CHECK(occupancy(cache) == r.unique_volume);

  SUBCASE("evict one of two") {
    evict(cache, std::vector<ItemKey>{{1, 1}});
    CHECK(occupancy(cache) == 7);
    CHECK_FALSE(cache.is_resident(3));
    CHECK(cache.is_resident(7));
  }
  SUBCASE("evict all") {
    evict(cache, r.admitted);
    CHECK(occupancy(cache) == 0);
    CHECK(cache.resident_file_ids().empty());
    CHECK(cache.empty());
  }
  SUBCASE("evicting an absent item") {
    CHECK_THROWS_AS(evict(cache, std::vector<ItemKey>{{4, 1}}), InvariantViolation);
  }
}

TEST_CASE("a file evicted this STI is admitted fresh next slot") {
  const auto cat = ramp_catalog();
  CacheState cache(100);
  admit_and_dedup(cache, slot(1, {6}, cat), cat);
  evict(cache, expired_set(cache, 1, 1));
  const auto r = admit_and_dedup(cache, slot(2, {6}, cat), cat);
  CHECK(r.unique_volume == 6);
}

TEST_CASE("occupancy identity under random admit/evict") {
  std::mt19937_64 rng(12345);
  const auto cat = ramp_catalog();
  for (int trial = 0; trial < 200; ++trial) {
    CacheState cache(1000);
    for (std::int32_t n = 1; n <= 20; ++n) {
      std::vector<FileId> choices;
      for (int k = 0; k < 4; ++k) choices.push_back(std::uniform_int_distribution<FileId>(0, 10)(rng));
      const Mbit before = cache.occupancy();
      const auto r = admit_and_dedup(cache, slot(n, choices, cat), cat);
      CHECK(cache.occupancy() == before + r.unique_volume);
      CHECK(r.unique_volume <= r.raw_volume);

      std::vector<CachedItem> victims;
      for (const auto& [key, item] : cache.items()) {
        if (std::bernoulli_distribution(0.3)(rng)) victims.push_back(item);
      }
      Mbit removed = 0;
      for (const auto& v : victims) removed += v.weight;
      const Mbit mid = cache.occupancy();
      evict(cache, victims);
      CHECK(cache.occupancy() == mid - removed);
      CHECK(cache.resident_file_ids().size() == cache.size());
    }
  }
}
