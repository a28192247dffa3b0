#include "upcache/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "upcache/errors.hpp"

namespace upcache::cli {

namespace {

// Everything a user may set from a config file or flags; unset fields leave
// the underlying config alone.
struct Overrides {
  std::optional<std::int32_t> users;
  std::optional<std::int32_t> slots;
  std::optional<double> slot_duration;
  std::optional<std::int32_t> files;
  std::optional<double> alpha;
  std::optional<Mbit> cache_size;
  std::optional<std::int32_t> deadline_slots;
  std::optional<double> silence_prob;
  std::optional<Mbit> length_min;
  std::optional<Mbit> length_max;
  std::optional<std::int32_t> runs;
  std::optional<std::uint64_t> seed;
  std::optional<std::int32_t> threads;
  std::vector<std::string> policies;
};

void apply(SimConfig& c, const Overrides& o) {
  if (o.users) c.user_count = *o.users;
  if (o.slots) c.slot_count = *o.slots;
  if (o.slot_duration) c.slot_duration = *o.slot_duration;
  if (o.files) c.file_count = *o.files;
  if (o.alpha) c.zipf_alpha = *o.alpha;
  if (o.cache_size) c.cache_capacity = *o.cache_size;
  if (o.deadline_slots) c.deadline_slots = *o.deadline_slots;
  if (o.silence_prob) c.silence_prob = *o.silence_prob;
  if (o.length_min) c.length_min = *o.length_min;
  if (o.length_max) c.length_max = *o.length_max;
  if (o.runs) c.runs = *o.runs;
  if (o.seed) c.master_seed = *o.seed;
  if (o.threads) c.threads = *o.threads;
}

template <typename T>
void read_key(const nlohmann::json& j, const char* key, std::optional<T>& slot) {
  if (j.contains(key)) slot = j.at(key).get<T>();
}

Overrides load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Overrides o;
  try {
    const auto j = nlohmann::json::parse(in);
    if (!j.is_object()) throw ConfigError("config file '" + path + "' must hold a JSON object");
    read_key(j, "users", o.users);
    read_key(j, "slots", o.slots);
    read_key(j, "slot-duration", o.slot_duration);
    read_key(j, "files", o.files);
    read_key(j, "alpha", o.alpha);
    read_key(j, "cache-size", o.cache_size);
    read_key(j, "deadline-slots", o.deadline_slots);
    read_key(j, "silence-prob", o.silence_prob);
    read_key(j, "length-min", o.length_min);
    read_key(j, "length-max", o.length_max);
    read_key(j, "runs", o.runs);
    read_key(j, "seed", o.seed);
    read_key(j, "threads", o.threads);
    if (j.contains("policy")) {
      const auto& p = j.at("policy");
      if (p.is_array()) {
        o.policies = p.get<std::vector<std::string>>();
      } else {
        o.policies = {p.get<std::string>()};
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return o;
}

std::vector<PolicyKind> parse_policies(const std::vector<std::string>& names) {
  std::vector<PolicyKind> out;
  for (const auto& name : names) {
    auto p = parse_policy(name);
    if (!p) throw ConfigError("unknown policy '" + name + "' (expected infinite, dp, greedy, oracle)");
    out.push_back(*p);
  }
  return out;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::int32_t integral_value(double v, SweepAxis axis) {
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ConfigError("sweep axis '" + std::string(axis_name(axis)) +
                      "' needs integer values, got " + fixed6(v));
  }
  return static_cast<std::int32_t>(v);
}

std::string_view axis_column(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::CacheCapacity: return "S";
    case SweepAxis::DeadlineSlots: return "n_d";
    case SweepAxis::ZipfAlpha: return "alpha";
    case SweepAxis::UserCount: return "K";
  }
  return "S";
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("UPCACHE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("UPCACHE_SEED is not an unsigned integer: '") + env + "'");
    }
  }
  return SimConfig{}.master_seed;
}

void add_sim_options(CLI::App* app, Overrides& o, std::string& config_path) {
  app->add_option("--config", config_path, "JSON file with defaults (flag names as keys)");
  app->add_option("--users", o.users, "Number of users K");
  app->add_option("--slots", o.slots, "Number of time slots N");
  app->add_option("--slot-duration", o.slot_duration, "Slot duration T_s in seconds");
  app->add_option("--files", o.files, "Catalog size F");
  app->add_option("--alpha", o.alpha, "Zipf skewness");
  app->add_option("--cache-size", o.cache_size, "Cache capacity S in Mbit");
  app->add_option("--deadline-slots", o.deadline_slots, "Delay tolerance n_d in slots");
  app->add_option("--silence-prob", o.silence_prob, "Per-user probability of a silent slot");
  app->add_option("--length-min", o.length_min, "Smallest file length in Mbit");
  app->add_option("--length-max", o.length_max, "Largest file length in Mbit");
  app->add_option("--runs", o.runs, "Monte Carlo episodes per point");
  app->add_option("--seed", o.seed, "Master seed (default: $UPCACHE_SEED or 1)");
  app->add_option("--threads", o.threads, "Worker threads, 0 = all cores");
}

}  // namespace

std::string_view axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::CacheCapacity: return "cache-size";
    case SweepAxis::DeadlineSlots: return "deadline-slots";
    case SweepAxis::ZipfAlpha: return "alpha";
    case SweepAxis::UserCount: return "users";
  }
  return "cache-size";
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
  for (auto axis : {SweepAxis::CacheCapacity, SweepAxis::DeadlineSlots, SweepAxis::ZipfAlpha,
                    SweepAxis::UserCount}) {
    if (axis_name(axis) == name) return axis;
  }
  if (name == "cache_capacity") return SweepAxis::CacheCapacity;
  if (name == "deadline_slots") return SweepAxis::DeadlineSlots;
  if (name == "zipf_alpha") return SweepAxis::ZipfAlpha;
  if (name == "user_count") return SweepAxis::UserCount;
  return std::nullopt;
}

SimConfig SweepSpec::at(double value, PolicyKind policy) const {
  SimConfig c = base;
  c.policy = policy;
  switch (axis) {
    case SweepAxis::CacheCapacity: c.cache_capacity = integral_value(value, axis); break;
    case SweepAxis::DeadlineSlots: c.deadline_slots = integral_value(value, axis); break;
    case SweepAxis::ZipfAlpha: c.zipf_alpha = value; break;
    case SweepAxis::UserCount: c.user_count = integral_value(value, axis); break;
  }
  return c;
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  if (policies.empty()) throw ConfigError("sweep needs at least one policy");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) throw ConfigError("sweep values must be strictly increasing");
  }
  for (double v : values) {
    for (PolicyKind p : policies) at(v, p).validate();
  }
}

ResultRow make_row(const SimConfig& config, const AggregateMetrics& metrics) {
  return {config.policy,       config.cache_capacity, config.deadline_slots,  config.user_count,
          config.zipf_alpha,   config.slot_count,     metrics.run_count,      metrics.mean_eta,
          metrics.std_eta,     metrics.mean_eta_max,  metrics.mean_d0,        metrics.mean_d1,
          config.master_seed};
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<ResultRow> rows;
  for (PolicyKind policy : spec.policies) {
    for (double value : spec.values) {
      const SimConfig config = spec.at(value, policy);
      rows.push_back(make_row(config, run_monte_carlo(config)));
    }
  }
  return rows;
}

std::vector<SweepSpec> figure_preset(int figure, const SimConfig& base) {
  const std::vector<PolicyKind> both = {PolicyKind::FiniteDP, PolicyKind::FiniteGreedy};
  std::vector<SweepSpec> curves;
  auto curve = [&](SimConfig c, SweepAxis axis, std::vector<double> values) {
    curves.push_back({c, axis, std::move(values), both});
  };
  SimConfig c = base;
  switch (figure) {
    case 2:
      c.slot_count = 20;
      for (int nd : {1, 5, 10, 20}) {
        c.deadline_slots = nd;
        curve(c, SweepAxis::CacheCapacity, {100, 200, 300, 400, 500, 600, 700, 800});
      }
      break;
    case 3:
      c.slot_count = 100;
      for (Mbit s : {100, 200, 400, 800}) {
        c.cache_capacity = s;
        curve(c, SweepAxis::DeadlineSlots, {1, 5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100});
      }
      break;
    case 4:
      c.slot_count = 20;
      for (auto [nd, s] : {std::pair{1, 100}, {10, 200}, {20, 200}, {20, 800}}) {
        c.deadline_slots = nd;
        c.cache_capacity = s;
        curve(c, SweepAxis::ZipfAlpha, {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0});
      }
      break;
    case 5:
      c.slot_count = 20;
      for (auto [nd, s] : {std::pair{1, 200}, {20, 200}, {20, 800}}) {
        c.deadline_slots = nd;
        c.cache_capacity = s;
        curve(c, SweepAxis::UserCount, {2, 3, 4, 5, 6, 7, 8, 9, 10});
      }
      break;
    default:
      throw ConfigError("no preset for figure " + std::to_string(figure));
  }
  return curves;
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << policy_name(r.policy) << ',' << r.cache_capacity << ',' << r.deadline_slots << ','
       << r.user_count << ',' << fixed6(r.zipf_alpha) << ',' << r.slot_count << ',' << r.runs << ','
       << fixed6(r.eta_mean) << ',' << fixed6(r.eta_std) << ',' << fixed6(r.eta_max_mean) << ','
       << fixed6(r.d0_mean) << ',' << fixed6(r.d1_mean) << ',' << r.seed << '\n';
  }
  return os.str();
}

void write_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << format_csv(rows);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string plot_script(const std::filesystem::path& csv_path, std::string_view axis_column) {
  std::ostringstream os;
  os << "import csv\n"
        "from collections import defaultdict\n"
        "import matplotlib\n"
        "matplotlib.use('Agg')\n"
        "import matplotlib.pyplot as plt\n\n"
     << "CSV = " << std::quoted(csv_path.string()) << "\n"
     << "AXIS = " << std::quoted(std::string(axis_column)) << "\n"
     << "CURVE_KEYS = [k for k in ('policy', 'S', 'n_d', 'K', 'alpha', 'N') if k != AXIS]\n\n"
        "curves = defaultdict(list)\n"
        "with open(CSV) as f:\n"
        "    for row in csv.DictReader(f):\n"
        "        key = tuple((k, row[k]) for k in CURVE_KEYS)\n"
        "        curves[key].append((float(row[AXIS]), float(row['eta_mean']), "
        "float(row['eta_max_mean'])))\n\n"
        "fig, ax = plt.subplots()\n"
        "for key, pts in curves.items():\n"
        "    pts.sort()\n"
        "    label = ', '.join(f'{k}={v}' for k, v in key)\n"
        "    ax.plot([p[0] for p in pts], [100 * p[1] for p in pts], marker='o', label=label)\n"
        "ax.set_xlabel(AXIS)\n"
        "ax.set_ylabel('saved traffic (%)')\n"
        "ax.legend(fontsize='small')\n"
        "fig.savefig(CSV.rsplit('.', 1)[0] + '.png', dpi=150)\n";
  return os.str();
}

int execute_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cache-enabled uplink small-cell simulator"};
  app.require_subcommand(1);

  Overrides flags;
  std::string config_path;
  std::string out_path;
  bool emit_plot = false;
  std::string axis_text;
  std::vector<double> values;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "CSV output path (default: stdout)");
    sub->add_flag("--emit-plot-script", emit_plot, "Also write <out>.plot.py");
  };

  auto* run = app.add_subcommand("run", "Run one configuration, one row per policy");
  add_sim_options(run, flags, config_path);
  run->add_option("--policy", flags.policies, "infinite, dp, greedy or oracle (comma list ok)")
      ->delimiter(',');
  add_output(run);

  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter");
  add_sim_options(sweep, flags, config_path);
  sweep->add_option("--axis", axis_text, "cache-size, deadline-slots, alpha or users")->required();
  sweep->add_option("--values", values, "Comma-separated axis values")->required()->delimiter(',');
  sweep->add_option("--policies,--policy", flags.policies, "Comma-separated policies")
      ->delimiter(',');
  add_output(sweep);

  std::vector<CLI::App*> figures;
  for (int fig = 2; fig <= 5; ++fig) {
    auto* sub = app.add_subcommand("fig" + std::to_string(fig),
                                   "Reproduce the saved-traffic curves of figure " +
                                       std::to_string(fig));
    add_sim_options(sub, flags, config_path);
    sub->add_option("--policies,--policy", flags.policies, "Comma-separated policies")
        ->delimiter(',');
    add_output(sub);
    figures.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  std::vector<ResultRow> rows;
  std::string plot_axis = "S";
  try {
    SimConfig base;
    base.master_seed = default_seed();
    Overrides file;
    if (!config_path.empty()) file = load_config_file(config_path);
    const auto& policy_names = !flags.policies.empty() ? flags.policies : file.policies;

    auto configured = [&](SimConfig c) {
      apply(c, file);
      apply(c, flags);
      return c;
    };

    if (run->parsed()) {
      const SimConfig config = configured(base);
      const auto policies =
          policy_names.empty() ? std::vector<PolicyKind>{config.policy} : parse_policies(policy_names);
      std::vector<SimConfig> configs;
      for (PolicyKind p : policies) {
        SimConfig c = config;
        c.policy = p;
        c.validate();
        configs.push_back(c);
      }
      for (const auto& c : configs) rows.push_back(make_row(c, run_monte_carlo(c)));
    } else if (sweep->parsed()) {
      auto axis = parse_axis(axis_text);
      if (!axis) throw ConfigError("unknown sweep axis '" + axis_text + "'");
      SweepSpec spec{configured(base), *axis, values,
                     policy_names.empty() ? std::vector<PolicyKind>{PolicyKind::FiniteDP}
                                          : parse_policies(policy_names)};
      spec.validate();
      plot_axis = axis_column(*axis);
      rows = run_sweep(spec);
    } else {
      const int fig = static_cast<int>(
          std::find_if(figures.begin(), figures.end(), [](auto* s) { return s->parsed(); }) -
          figures.begin()) + 2;
      // Flags and config file adjust the shared base; each curve then pins its own axis
      // and curve parameters.
      auto specs = figure_preset(fig, configured(base));
      for (auto& spec : specs) {
        if (!policy_names.empty()) spec.policies = parse_policies(policy_names);
        spec.validate();
      }
      plot_axis = axis_column(specs.front().axis);
      for (const auto& spec : specs) {
        auto part = run_sweep(spec);
        rows.insert(rows.end(), part.begin(), part.end());
      }
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (out_path.empty()) {
      out << format_csv(rows);
    } else {
      write_csv(rows, out_path);
      if (emit_plot) {
        const std::filesystem::path script = out_path + ".plot.py";
        std::ofstream ps(script);
        if (!ps) throw std::runtime_error("cannot write plot script '" + script.string() + "'");
        ps << plot_script(out_path, plot_axis);
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace upcache::cli
