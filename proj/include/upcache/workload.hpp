#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace upcache {

using Mbit = std::int64_t;
using FileId = std::int32_t;  // 0 is the silence file, 1..F are catalog entries
using Rng = std::mt19937_64;

inline constexpr FileId kSilence = 0;

/**
 * The chunk-file universe: per-file length (Mbit) and upload popularity.
 *
 * File ids are 1-based and ordered by popularity rank, so file 1 is the most
 * popular. Lengths and popularity are drawn independently.
 */
class FileCatalog {
 public:
  FileCatalog(std::vector<Mbit> lengths, std::vector<double> popularity);

  std::int32_t file_count() const { return static_cast<std::int32_t>(lengths_.size()); }
  Mbit length(FileId id) const { return lengths_.at(static_cast<std::size_t>(id - 1)); }
  double popularity(FileId id) const { return popularity_.at(static_cast<std::size_t>(id - 1)); }
  Mbit max_length() const { return max_length_; }

  const std::vector<Mbit>& lengths() const { return lengths_; }
  const std::vector<double>& popularity() const { return popularity_; }

  // Inverse-CDF draw of a file id according to popularity.
  FileId sample(Rng& rng) const;

 private:
  std::vector<Mbit> lengths_;
  std::vector<double> popularity_;
  std::vector<double> cumulative_;
  Mbit max_length_ = 0;
};

// One slot's upload choices. Users are 1-based: choices[k - 1] belongs to user k.
struct SlotRequests {
  std::int32_t slot_index = 0;
  std::vector<FileId> choices;
  std::vector<Mbit> loads;

  Mbit total_load() const;
};

// p_j = j^-alpha / sum_m m^-alpha, j = 1..file_count.
std::vector<double> zipf_pmf(std::int32_t file_count, double alpha);

FileCatalog build_catalog(std::int32_t file_count, double alpha, Mbit length_min, Mbit length_max,
                          Rng& rng);

SlotRequests sample_slot_requests(const FileCatalog& catalog, std::int32_t user_count,
                                  std::int32_t slot_index, double silence_prob, Rng& rng);

}  // namespace upcache
