#pragma once

#include <vector>

#include "gridcharge/lp.hpp"

namespace gridcharge {

// One charging session on the fine time grid; the vehicle occupies steps
// [arrival, departure).
struct EvSession {
    int id = 0;
    int arrival = 0;
    int departure = 0;
    double demand_kwh = 0.0;
};

struct ChargingInstance {
    std::vector<EvSession> sessions;
    double socket_power_kw = 22.0;
    std::vector<double> station_capacity_kw;  // per step
    std::vector<double> energy_price;         // currency/kWh per step
    std::vector<double> emission_price;       // currency/kWh per step
    double lambda = 10.0;
    double step_hours = 1.0 / 6.0;

    int steps() const { return static_cast<int>(station_capacity_kw.size()); }
    double effective_price(int t) const {
        return energy_price[t] + lambda * emission_price[t];
    }
};

struct AllocationMatrix {
    int n_steps = 0;
    int n_evs = 0;
    std::vector<double> power;  // kW, row-major [t][i]

    AllocationMatrix() = default;
    AllocationMatrix(int steps, int evs)
        : n_steps(steps), n_evs(evs),
          power(static_cast<size_t>(steps) * evs, 0.0) {}
    double& at(int t, int i) { return power[static_cast<size_t>(t) * n_evs + i]; }
    double at(int t, int i) const { return power[static_cast<size_t>(t) * n_evs + i]; }
};

struct ScheduleMetrics {
    double energy_cost = 0.0;       // currency
    double emission_mass_kg = 0.0;  // kg CO2
    double emission_cost = 0.0;     // currency
    double total_objective = 0.0;   // energy_cost + lambda * emission_cost
    double unmet_kwh = 0.0;
    std::vector<double> per_step_load_kw;
};

// Exact minimizer of sum_t (pi_t + lambda pi^CO2_t) * delta * load_t under
// the demand / window / socket / station constraints. Per-EV cheapest-slot
// fill when the station capacity can never bind; generic LP otherwise.
AllocationMatrix solve_smart_charging(const ChargingInstance& instance);

// Arrival-order baseline: full socket power to the earliest-arrived
// unfinished vehicles first; unmet demand is reported, not an error.
AllocationMatrix fifs_schedule(const ChargingInstance& instance);

ScheduleMetrics evaluate_schedule(const AllocationMatrix& alloc,
                                  const ChargingInstance& instance,
                                  const std::vector<double>& fine_intensity);

// Explicit LP form of the charging problem (variables only on in-window
// (t, i) pairs). Exposed for the oracle route and for `dump-lp`.
StandardFormLP build_charging_lp(const ChargingInstance& instance);

}  // namespace gridcharge
