#pragma once

#include <string>
#include <vector>

#include "gridcharge/lp.hpp"
#include "gridcharge/power_data.hpp"
#include "gridcharge/rng.hpp"

namespace gridcharge {

// Single aggregate reservoir. rho converts m^3 of released water into MWh,
// omega prices one m^3 of water off the hydro electricity tariff.
struct HydroSystem {
    double eta = 0.85;
    double water_density = 1000.0;  // kg/m^3
    double gravity = 9.81;          // m/s^2
    double head = 80.0;             // m
    double rho = 0.0;               // MWh/m^3
    double omega = 0.0;             // currency/m^3
    double v0 = 0.0;                // m^3
    double v_min = 0.0;
    double v_max = 0.0;
    double emission_rate = 24.0;  // g/kWh

    static double efficiency(double eta, double density, double gravity, double head) {
        return eta * density * gravity * head / 3.6e9;
    }
};

// Paper-default reservoir sized so that hydro at full tilt could carry its
// mix share of system capacity for the whole horizon.
HydroSystem default_hydro(SystemCapacity capacity, int horizon_hours,
                          double hydro_share = 0.284,
                          double hydro_cost_per_kwh = 1128.0,
                          double emission_rate = 24.0);

// T i.i.d. uniform draws on [0, v0/100].
std::vector<double> sample_inflows(const HydroSystem& hydro, int horizon, Rng& rng);

struct UcpInstance {
    DemandProfile demand;
    std::vector<SourceSpec> sources;                // non-hydro, dispatch order
    std::vector<AvailabilityProfile> availability;  // parallel to sources
    HydroSystem hydro;
    std::vector<double> inflows;  // m^3 per step
    double step_hours = 1.0;
    // instantaneous hydro power cap (the volume constraints alone leave
    // hydro power unbounded within one step); <= 0 disables
    double hydro_power_cap_mw = 0.0;
};

struct DispatchSchedule {
    std::vector<std::string> source_names;    // non-hydro
    std::vector<std::vector<double>> power;   // [t][j] MW
    std::vector<double> hydro_water;          // m^3 released per step
    std::vector<double> reservoir;            // m^3 at end of step
    double total_cost = 0.0;                  // currency
};

StandardFormLP build_ucp(const UcpInstance& instance);

// Builds and solves Eq.-style dispatch; throws on infeasible demand with
// the first uncoverable hour named.
DispatchSchedule solve_ucp(const UcpInstance& instance);

// Assemble the bundled Vietnam-2023 instance from data files.
struct UcpDataPaths {
    std::string demand_csv;
    std::string wind_manifest;
    std::string source_table_json;  // empty -> built-in table
};

UcpInstance make_default_instance(const UcpDataPaths& paths,
                                  const std::vector<double>& inflows,
                                  SystemCapacity capacity = {kVietnamPMaxMw},
                                  bool cap_hydro_power = true);

}  // namespace gridcharge
