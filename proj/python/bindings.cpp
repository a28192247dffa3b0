#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <tuple>

#include "upcache/cli.hpp"
#include "upcache/errors.hpp"
#include "upcache/knapsack.hpp"
#include "upcache/scheduler.hpp"
#include "upcache/sim_engine.hpp"
#include "upcache/workload.hpp"

namespace py = pybind11;
using namespace upcache;

namespace {

knapsack::Instance make_instance(const std::vector<std::pair<knapsack::Weight, double>>& items,
                                 knapsack::Weight capacity) {
  knapsack::Instance inst;
  inst.capacity = capacity;
  for (std::size_t i = 0; i < items.size(); ++i) {
    inst.items.push_back({i, items[i].first, items[i].second});
  }
  return inst;
}

}  // namespace

PYBIND11_MODULE(_upcache, m) {
  m.doc() = "Cache-enabled uplink small-cell simulator: dedup caching with knapsack scheduling";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  py::enum_<PolicyKind>(m, "PolicyKind")
      .value("InfiniteCache", PolicyKind::InfiniteCache)
      .value("FiniteDP", PolicyKind::FiniteDP)
      .value("FiniteGreedy", PolicyKind::FiniteGreedy)
      .value("OracleHoldAll", PolicyKind::OracleHoldAll);

  py::class_<FileCatalog>(m, "FileCatalog")
      .def_property_readonly("file_count", &FileCatalog::file_count)
      .def_property_readonly("lengths", [](const FileCatalog& c) { return c.lengths(); })
      .def_property_readonly("popularity", [](const FileCatalog& c) { return c.popularity(); })
      .def_property_readonly("max_length", &FileCatalog::max_length);

  m.def("zipf_pmf", &zipf_pmf, py::arg("file_count"), py::arg("alpha"));
  m.def(
      "build_catalog",
      [](std::int32_t file_count, double alpha, Mbit length_min, Mbit length_max,
         std::uint64_t seed) {
        Rng rng = make_rng(seed);
        return build_catalog(file_count, alpha, length_min, length_max, rng);
      },
      py::arg("file_count"), py::arg("alpha"), py::arg("length_min") = 1,
      py::arg("length_max") = 20, py::arg("seed") = 1);

  py::class_<knapsack::Selection>(m, "Selection")
      .def_readonly("chosen", &knapsack::Selection::chosen)
      .def_readonly("total_value", &knapsack::Selection::total_value)
      .def_readonly("total_weight", &knapsack::Selection::total_weight);
  m.def("solve_dp", [](const std::vector<std::pair<knapsack::Weight, double>>& items,
                       knapsack::Weight capacity) {
    return knapsack::solve_dp(make_instance(items, capacity));
  }, py::arg("items"), py::arg("capacity"), "Items are (weight, value) pairs; keys are indices.");
  m.def("solve_greedy", [](const std::vector<std::pair<knapsack::Weight, double>>& items,
                           knapsack::Weight capacity) {
    return knapsack::solve_greedy(make_instance(items, capacity));
  }, py::arg("items"), py::arg("capacity"));
  m.def("solve_exhaustive", [](const std::vector<std::pair<knapsack::Weight, double>>& items,
                               knapsack::Weight capacity) {
    return knapsack::solve_exhaustive(make_instance(items, capacity));
  }, py::arg("items"), py::arg("capacity"));

  m.def(
      "cbs",
      [](double popularity, Mbit weight, std::int32_t arrival_slot, std::int32_t current_slot,
         std::int32_t deadline_slots, std::int32_t user_count) {
        CachedItem item{1, arrival_slot, 1, weight, popularity};
        return cbs(item, current_slot, deadline_slots, user_count);
      },
      py::arg("popularity"), py::arg("weight"), py::arg("arrival_slot"), py::arg("current_slot"),
      py::arg("deadline_slots"), py::arg("user_count"));

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("user_count", &SimConfig::user_count)
      .def_readwrite("slot_count", &SimConfig::slot_count)
      .def_readwrite("slot_duration", &SimConfig::slot_duration)
      .def_readwrite("file_count", &SimConfig::file_count)
      .def_readwrite("zipf_alpha", &SimConfig::zipf_alpha)
      .def_readwrite("length_min", &SimConfig::length_min)
      .def_readwrite("length_max", &SimConfig::length_max)
      .def_readwrite("cache_capacity", &SimConfig::cache_capacity)
      .def_readwrite("deadline_slots", &SimConfig::deadline_slots)
      .def_readwrite("silence_prob", &SimConfig::silence_prob)
      .def_readwrite("policy", &SimConfig::policy)
      .def_readwrite("runs", &SimConfig::runs)
      .def_readwrite("master_seed", &SimConfig::master_seed)
      .def_readwrite("threads", &SimConfig::threads)
      .def("validate", &SimConfig::validate);

  py::class_<EpisodeMetrics>(m, "EpisodeMetrics")
      .def_readonly("d0", &EpisodeMetrics::d0)
      .def_readonly("d1", &EpisodeMetrics::d1)
      .def_readonly("eta", &EpisodeMetrics::eta)
      .def_readonly("eta_max", &EpisodeMetrics::eta_max)
      .def_readonly("per_slot_sbs_volume", &EpisodeMetrics::per_slot_sbs_volume)
      .def_readonly("per_slot_occupancy", &EpisodeMetrics::per_slot_occupancy);

  py::class_<AggregateMetrics>(m, "AggregateMetrics")
      .def_readonly("mean_eta", &AggregateMetrics::mean_eta)
      .def_readonly("std_eta", &AggregateMetrics::std_eta)
      .def_readonly("mean_eta_max", &AggregateMetrics::mean_eta_max)
      .def_readonly("mean_d0", &AggregateMetrics::mean_d0)
      .def_readonly("mean_d1", &AggregateMetrics::mean_d1)
      .def_readonly("run_count", &AggregateMetrics::run_count);

  m.def("run_episode", &run_episode, py::arg("config"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_monte_carlo", &run_monte_carlo, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  m.def(
      "execute_command",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::execute_command(args, out, err);
        }
        return std::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a CLI command in-process; returns (exit_code, stdout, stderr).");
}
