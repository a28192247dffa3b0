#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "upcache/sim_engine.hpp"

namespace upcache::cli {

enum class SweepAxis { CacheCapacity, DeadlineSlots, ZipfAlpha, UserCount };

std::string_view axis_name(SweepAxis axis);
// Accepts the flag spelling (cache-size, deadline-slots, alpha, users).
std::optional<SweepAxis> parse_axis(std::string_view name);

struct SweepSpec {
  SimConfig base;
  SweepAxis axis = SweepAxis::CacheCapacity;
  std::vector<double> values;
  std::vector<PolicyKind> policies;

  // Values must be non-empty and strictly increasing, and every overridden
  // config must validate. Throws ConfigError.
  void validate() const;
  SimConfig at(double value, PolicyKind policy) const;
};

struct ResultRow {
  PolicyKind policy = PolicyKind::FiniteDP;
  Mbit cache_capacity = 0;
  std::int32_t deadline_slots = 0;
  std::int32_t user_count = 0;
  double zipf_alpha = 0.0;
  std::int32_t slot_count = 0;
  std::int32_t runs = 0;
  double eta_mean = 0.0;
  double eta_std = 0.0;
  double eta_max_mean = 0.0;
  double d0_mean = 0.0;
  double d1_mean = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr std::string_view kCsvHeader =
    "policy,S,n_d,K,alpha,N,runs,eta_mean,eta_std,eta_max_mean,d0_mean,d1_mean,seed";

ResultRow make_row(const SimConfig& config, const AggregateMetrics& metrics);

// Rows are emitted policy-major, then in axis-value order.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

// Curves for the four reference figures; `base` supplies runs, seed and anything
// the figure does not pin.
std::vector<SweepSpec> figure_preset(int figure, const SimConfig& base);

std::string format_csv(const std::vector<ResultRow>& rows);
// Throws std::runtime_error when the file cannot be written.
void write_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path);

// Python script that plots eta_mean against `axis` from the CSV at `csv_path`.
std::string plot_script(const std::filesystem::path& csv_path, std::string_view axis_column);

// Entry point behind the `upcache` binary. Returns 0 on success, 2 on bad
// configuration or flags, 1 on runtime failure.
int execute_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace upcache::cli
