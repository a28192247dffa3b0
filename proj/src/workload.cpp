#include "upcache/workload.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "upcache/errors.hpp"

namespace upcache {

FileCatalog::FileCatalog(std::vector<Mbit> lengths, std::vector<double> popularity)
    : lengths_(std::move(lengths)), popularity_(std::move(popularity)) {
  if (lengths_.empty()) throw ConfigError("file catalog must contain at least one file");
  if (lengths_.size() != popularity_.size()) {
    throw ConfigError("file catalog: lengths and popularity differ in size");
  }
  for (Mbit l : lengths_) {
    if (l < 1) throw ConfigError("file catalog: every file length must be >= 1 Mbit");
  }
  for (std::size_t j = 1; j < popularity_.size(); ++j) {
    if (popularity_[j] > popularity_[j - 1]) {
      throw ConfigError("file catalog: popularity must be non-increasing in file index");
    }
  }
  const double total = std::accumulate(popularity_.begin(), popularity_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) throw ConfigError("file catalog: popularity must sum to 1");

  cumulative_.resize(popularity_.size());
  std::partial_sum(popularity_.begin(), popularity_.end(), cumulative_.begin());
  cumulative_.back() = 1.0;
  max_length_ = *std::max_element(lengths_.begin(), lengths_.end());
}

FileId FileCatalog::sample(Rng& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return static_cast<FileId>(std::distance(cumulative_.begin(), it)) + 1;
}

Mbit SlotRequests::total_load() const { return std::accumulate(loads.begin(), loads.end(), Mbit{0}); }

std::vector<double> zipf_pmf(std::int32_t file_count, double alpha) {
  if (file_count < 1) throw ConfigError("zipf_pmf: file_count must be >= 1");
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw ConfigError("zipf_pmf: alpha must be finite and non-negative");
  }
  std::vector<double> pmf(static_cast<std::size_t>(file_count));
  for (std::int32_t j = 1; j <= file_count; ++j) {
    pmf[static_cast<std::size_t>(j - 1)] = std::pow(static_cast<double>(j), -alpha);
  }
  // Sum smallest-first so the normalizer is as accurate as the weights allow.
  const double norm = std::accumulate(pmf.rbegin(), pmf.rend(), 0.0);
  for (double& p : pmf) p /= norm;
  return pmf;
}

FileCatalog build_catalog(std::int32_t file_count, double alpha, Mbit length_min, Mbit length_max,
                          Rng& rng) {
  if (length_min < 1) throw ConfigError("build_catalog: length_min must be >= 1");
  if (length_min > length_max) {
    throw ConfigError("build_catalog: length range is inverted (" + std::to_string(length_min) +
                      " > " + std::to_string(length_max) + ")");
  }
  auto popularity = zipf_pmf(file_count, alpha);
  std::uniform_int_distribution<Mbit> length_dist(length_min, length_max);
  std::vector<Mbit> lengths(static_cast<std::size_t>(file_count));
  for (Mbit& l : lengths) l = length_dist(rng);
  return FileCatalog(std::move(lengths), std::move(popularity));
}

SlotRequests sample_slot_requests(const FileCatalog& catalog, std::int32_t user_count,
                                  std::int32_t slot_index, double silence_prob, Rng& rng) {
  if (user_count < 1) throw ConfigError("sample_slot_requests: user_count must be >= 1");
  if (!(silence_prob >= 0.0 && silence_prob <= 1.0)) {
    throw ConfigError("sample_slot_requests: silence_prob must lie in [0, 1]");
  }
  SlotRequests req;
  req.slot_index = slot_index;
  req.choices.reserve(static_cast<std::size_t>(user_count));
  req.loads.reserve(static_cast<std::size_t>(user_count));
  std::bernoulli_distribution silent(silence_prob);
  for (std::int32_t k = 0; k < user_count; ++k) {
    const FileId choice = silent(rng) ? kSilence : catalog.sample(rng);
    req.choices.push_back(choice);
    req.loads.push_back(choice == kSilence ? 0 : catalog.length(choice));
  }
  return req;
}

}  // namespace upcache
