#include <doctest.h>

#include <cmath>

#include "upcache/errors.hpp"
#include "upcache/scheduler.hpp"

using namespace upcache;

namespace {

CachedItem item(std::int32_t owner, std::int32_t slot, FileId file, Mbit w, double p) {
  return {owner, slot, file, w, p};
}

// Popularity that makes cbs() come out at `value` for an item with weight w and exponent q.
double popularity_for(double value, Mbit w, int q) {
  return 1.0 - std::pow(1.0 - value / static_cast<double>(w), 1.0 / q);
}

}  // namespace

TEST_CASE("cbs") {
  SUBCASE("expiring at this STI has q = 0") {
    CHECK(cbs(item(1, 3, 1, 10, 0.3), 5, 3, 5) == 0.0);
  }
  SUBCASE("direct evaluation") {
    // q = 5 * (3 - 1) = 10, (1 - 0.9^10) * 10
    CHECK(cbs(item(1, 4, 1, 10, 0.1), 4, 3, 5) == doctest::Approx(6.513215599).epsilon(1e-9));
  }
  SUBCASE("certain re-upload") {
    CHECK(cbs(item(2, 1, 1, 7, 1.0), 1, 4, 3) == 7.0);
  }
  SUBCASE("past the deadline") {
    CHECK_THROWS_AS(cbs(item(1, 1, 1, 10, 0.1), 5, 3, 5), ContractViolation);
  }
}

TEST_CASE("needs_knapsack uses a strict inequality") {
  CacheState cache(100);
  cache.insert(item(1, 1, 1, 10, 0.1));
  cache.insert(item(2, 2, 2, 70, 0.1));
  const std::vector<CachedItem> expired{item(1, 1, 1, 10, 0.1)};
  CHECK(needs_knapsack(cache, expired, 40));   // 40 > 100 - 80 + 10
  CHECK_FALSE(needs_knapsack(cache, expired, 30));

  CacheState empty(100);
  CHECK_FALSE(needs_knapsack(empty, {}, 100));
  CHECK(needs_knapsack(empty, {}, 101));
}

TEST_CASE("policy names round-trip") {
  for (PolicyKind p : kAllPolicies) CHECK(parse_policy(policy_name(p)) == p);
  CHECK_FALSE(parse_policy("lru").has_value());
}

TEST_CASE("n_d = 1 transmits every admission under every policy") {
  for (PolicyKind p : kAllPolicies) {
    CacheState cache(100);
    cache.insert(item(1, 4, 1, 10, 0.5));
    cache.insert(item(3, 4, 2, 12, 0.2));
    const auto d = decide(cache, 4, {1, 3, 10.0}, p, 50);
    CHECK(d.transmit.size() == 2);
    CHECK(d.stay.empty());
    CHECK(d.transmit_volume == 22);
    CHECK(d.sbs_rate == doctest::Approx(2.2));
  }
}

TEST_CASE("knapsack-triggered decision") {
  // unexpired items (w, CBS) = (50, 5.0), (30, 4.5), (30, 4.4); C = 60
  const int q = 10;  // K = 5, n_d = 3, age 1
  CacheState cache(120);
  cache.insert(item(1, 2, 11, 50, popularity_for(5.0, 50, q)));
  cache.insert(item(2, 2, 12, 30, popularity_for(4.5, 30, q)));
  cache.insert(item(3, 2, 13, 30, popularity_for(4.4, 30, q)));
  const SchedulerParams params{3, 5, 10.0};
  CHECK(cbs(cache.items().at({2, 1}), 2, 3, 5) == doctest::Approx(5.0));

  for (PolicyKind p : {PolicyKind::FiniteDP, PolicyKind::FiniteGreedy}) {
    const auto d = decide(cache, 2, params, p, 60);
    CHECK(d.knapsack_triggered);
    CHECK(d.knapsack_capacity == 60);
    CHECK(d.stay == std::vector<ItemKey>{{2, 2}, {2, 3}});
    CHECK(d.transmit == std::vector<ItemKey>{{2, 1}});
    CHECK(d.stay_volume == 60);
  }

  SUBCASE("unbounded policies ignore the cache limit") {
    const auto d = decide(cache, 2, params, PolicyKind::InfiniteCache, 60);
    CHECK_FALSE(d.knapsack_triggered);
    CHECK(d.transmit.empty());
    CHECK(d.stay.size() == 3);
  }
}

TEST_CASE("expired items are forced out even when the knapsack runs") {
  CacheState cache(60);
  cache.insert(item(1, 1, 1, 20, 0.9));  // expires at STI 3 with n_d = 3
  cache.insert(item(1, 2, 2, 20, 0.5));
  cache.insert(item(2, 3, 3, 20, 0.01));
  const auto d = decide(cache, 3, {3, 2, 10.0}, PolicyKind::FiniteDP, 40);
  CHECK(d.knapsack_triggered);  // 40 > 60 - 60 + 20
  CHECK(d.knapsack_capacity == 20);
  REQUIRE(d.stay.size() == 1);
  CHECK(d.stay[0] == ItemKey{2, 1});  // higher CBS of the two unexpired
  CHECK(d.transmit.front() == ItemKey{1, 1});
}

TEST_CASE("no trigger: finite policies match the infinite-cache decision") {
  CacheState cache(200);
  cache.insert(item(1, 1, 1, 20, 0.2));
  cache.insert(item(1, 2, 2, 15, 0.1));
  cache.insert(item(3, 3, 3, 5, 0.05));
  const SchedulerParams params{3, 3, 10.0};
  const auto ref = decide(cache, 3, params, PolicyKind::InfiniteCache, 60);
  for (PolicyKind p : {PolicyKind::FiniteDP, PolicyKind::FiniteGreedy}) {
    const auto d = decide(cache, 3, params, p, 60);
    CHECK_FALSE(d.knapsack_triggered);
    CHECK(d.transmit == ref.transmit);
    CHECK(d.stay == ref.stay);
  }
}
