#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gridcharge/harness.hpp"

namespace py = pybind11;
using namespace gridcharge;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Emissions-aware EV smart charging: dispatch, pricing, scheduling";

    py::class_<EvSession>(m, "EvSession")
        .def(py::init<>())
        .def(py::init([](int id, int arrival, int departure, double demand_kwh) {
                 return EvSession{id, arrival, departure, demand_kwh};
             }),
             py::arg("id"), py::arg("arrival"), py::arg("departure"),
             py::arg("demand_kwh"))
        .def_readwrite("id", &EvSession::id)
        .def_readwrite("arrival", &EvSession::arrival)
        .def_readwrite("departure", &EvSession::departure)
        .def_readwrite("demand_kwh", &EvSession::demand_kwh);

    py::class_<FleetParams>(m, "FleetParams")
        .def(py::init<>())
        .def_readwrite("n_evs", &FleetParams::n_evs)
        .def_readwrite("morning_peak_hour", &FleetParams::morning_peak_hour)
        .def_readwrite("afternoon_peak_hour", &FleetParams::afternoon_peak_hour)
        .def_readwrite("beta_shape", &FleetParams::beta_shape)
        .def_readwrite("socket_power_kw", &FleetParams::socket_power_kw)
        .def_readwrite("horizon_hours", &FleetParams::horizon_hours)
        .def_readwrite("step_hours", &FleetParams::step_hours);

    m.def(
        "sample_fleet",
        [](const FleetParams& p, std::uint64_t seed) {
            Rng rng(seed);
            return sample_fleet(p, rng);
        },
        py::arg("params"), py::arg("seed"));
    m.def("beta_alpha_for_peak", &beta_alpha_for_peak, py::arg("peak_hour"),
          py::arg("beta_shape"));

    py::class_<ChargingInstance>(m, "ChargingInstance")
        .def(py::init<>())
        .def_readwrite("sessions", &ChargingInstance::sessions)
        .def_readwrite("socket_power_kw", &ChargingInstance::socket_power_kw)
        .def_readwrite("station_capacity_kw", &ChargingInstance::station_capacity_kw)
        .def_readwrite("energy_price", &ChargingInstance::energy_price)
        .def_readwrite("emission_price", &ChargingInstance::emission_price)
        .def_readwrite("lambda_", &ChargingInstance::lambda)
        .def_readwrite("step_hours", &ChargingInstance::step_hours);

    py::class_<AllocationMatrix>(m, "AllocationMatrix")
        .def_readonly("n_steps", &AllocationMatrix::n_steps)
        .def_readonly("n_evs", &AllocationMatrix::n_evs)
        .def_readonly("power", &AllocationMatrix::power)
        .def("at", [](const AllocationMatrix& a, int t, int i) { return a.at(t, i); });

    py::class_<ScheduleMetrics>(m, "ScheduleMetrics")
        .def_readonly("energy_cost", &ScheduleMetrics::energy_cost)
        .def_readonly("emission_mass_kg", &ScheduleMetrics::emission_mass_kg)
        .def_readonly("emission_cost", &ScheduleMetrics::emission_cost)
        .def_readonly("total_objective", &ScheduleMetrics::total_objective)
        .def_readonly("unmet_kwh", &ScheduleMetrics::unmet_kwh)
        .def_readonly("per_step_load_kw", &ScheduleMetrics::per_step_load_kw);

    m.def("solve_smart_charging", &solve_smart_charging, py::arg("instance"));
    m.def("fifs_schedule", &fifs_schedule, py::arg("instance"));
    m.def("evaluate_schedule", &evaluate_schedule, py::arg("allocation"),
          py::arg("instance"), py::arg("fine_intensity"));
    m.def("resample_hold", &resample_hold, py::arg("hourly"),
          py::arg("fine_step_hours"));

    py::class_<PolicyResult>(m, "PolicyResult")
        .def_readonly("name", &PolicyResult::name)
        .def_readonly("metrics", &PolicyResult::metrics);

    py::class_<DispatchSchedule>(m, "DispatchSchedule")
        .def_readonly("source_names", &DispatchSchedule::source_names)
        .def_readonly("power", &DispatchSchedule::power)
        .def_readonly("hydro_water", &DispatchSchedule::hydro_water)
        .def_readonly("reservoir", &DispatchSchedule::reservoir)
        .def_readonly("total_cost", &DispatchSchedule::total_cost);

    py::class_<IntensitySeries>(m, "IntensitySeries")
        .def_readonly("values", &IntensitySeries::values)
        .def_readonly("totals_g", &IntensitySeries::totals_g)
        .def_readonly("energy_kwh", &IntensitySeries::energy_kwh);

    py::class_<RunReport>(m, "RunReport")
        .def_readonly("run_index", &RunReport::run_index)
        .def_readonly("dispatch", &RunReport::dispatch)
        .def_readonly("intensity", &RunReport::intensity)
        .def_readonly("price_profile", &RunReport::price_profile)
        .def_readonly("fleet", &RunReport::fleet)
        .def_readonly("policies", &RunReport::policies);

    py::class_<PolicyStats>(m, "PolicyStats")
        .def_readonly("name", &PolicyStats::name)
        .def_readonly("mean_cost", &PolicyStats::mean_cost)
        .def_readonly("sd_cost", &PolicyStats::sd_cost)
        .def_readonly("mean_emissions", &PolicyStats::mean_emissions)
        .def_readonly("sd_emissions", &PolicyStats::sd_emissions)
        .def_readonly("delta_cost_vs_fifs", &PolicyStats::delta_cost_vs_fifs)
        .def_readonly("delta_emissions_vs_fifs", &PolicyStats::delta_emissions_vs_fifs);

    py::class_<SummaryStats>(m, "SummaryStats")
        .def_readonly("n_runs", &SummaryStats::n_runs)
        .def_readonly("policies", &SummaryStats::policies);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_static("load", &ExperimentConfig::load, py::arg("path"))
        .def_readwrite("n_runs", &ExperimentConfig::n_runs)
        .def_readwrite("master_seed", &ExperimentConfig::master_seed)
        .def_readwrite("lambda_values", &ExperimentConfig::lambda_values)
        .def_readwrite("price_mode", &ExperimentConfig::price_mode)
        .def_readwrite("fleet", &ExperimentConfig::fleet);

    py::class_<Experiment>(m, "Experiment")
        .def(py::init<ExperimentConfig>(), py::arg("config"))
        .def("run_single", &Experiment::run_single, py::arg("run_index"))
        .def("run_monte_carlo", &Experiment::run_monte_carlo);
}
