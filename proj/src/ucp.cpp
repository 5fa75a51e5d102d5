#include "gridcharge/ucp.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gridcharge {

HydroSystem default_hydro(SystemCapacity capacity, int horizon_hours,
                          double hydro_share, double hydro_cost_per_kwh,
                          double emission_rate) {
    if (!(capacity.p_max > 0.0) || horizon_hours <= 0 || !(hydro_share > 0.0) ||
        hydro_share > 1.0 || hydro_cost_per_kwh < 0.0)
        throw std::runtime_error("default_hydro: non-positive parameter");
    HydroSystem h;
    h.rho = HydroSystem::efficiency(h.eta, h.water_density, h.gravity, h.head);
    h.omega = hydro_cost_per_kwh * 1000.0 * h.rho;
    h.v0 = hydro_share * capacity.p_max * horizon_hours / h.rho;
    h.v_min = 0.7 * h.v0;
    h.v_max = 2.0 * h.v0;
    h.emission_rate = emission_rate;
    return h;
}

std::vector<double> sample_inflows(const HydroSystem& hydro, int horizon, Rng& rng) {
    if (horizon <= 0) throw std::runtime_error("sample_inflows: horizon must be > 0");
    std::vector<double> f(horizon);
    for (auto& v : f) v = rng.uniform(0.0, hydro.v0 / 100.0);
    return f;
}

namespace {

void check_instance(const UcpInstance& in) {
    const size_t T = in.demand.values.size();
    if (T == 0) throw std::runtime_error("ucp: empty demand profile");
    if (in.sources.size() != in.availability.size())
        throw std::runtime_error("ucp: source/availability count mismatch");
    for (size_t j = 0; j < in.sources.size(); ++j) {
        if (in.sources[j].kind == AvailabilityKind::hydro)
            throw std::runtime_error("ucp: hydro belongs in UcpInstance::hydro, not sources");
        if (in.availability[j].caps.size() != T)
            throw std::runtime_error("ucp: availability of '" + in.sources[j].name +
                                     "' has wrong length");
    }
    if (in.inflows.size() != T)
        throw std::runtime_error("ucp: inflow series has wrong length");
    for (double f : in.inflows)
        if (f < 0.0) throw std::runtime_error("ucp: negative inflow");
    if (!(in.hydro.rho > 0.0)) throw std::runtime_error("ucp: hydro rho must be > 0");
}

}  // namespace

StandardFormLP build_ucp(const UcpInstance& in) {
    check_instance(in);
    const int T = static_cast<int>(in.demand.values.size());
    const int m = static_cast<int>(in.sources.size());
    const double dt = in.step_hours;
    const HydroSystem& h = in.hydro;

    StandardFormLP lp;
    // x[t][j] in MW; cost per kWh -> per MWh, times energy dt*x
    std::vector<int> xvar(static_cast<size_t>(T) * m);
    for (int t = 0; t < T; ++t)
        for (int j = 0; j < m; ++j)
            xvar[t * m + j] = lp.add_variable(
                "x[" + std::to_string(t) + "][" + in.sources[j].name + "]", 0.0,
                in.availability[j].caps[t], in.sources[j].unit_cost * 1000.0 * dt);

    const double vh_cap =
        in.hydro_power_cap_mw > 0.0 ? in.hydro_power_cap_mw * dt / h.rho : kLpInfinity;
    std::vector<int> vh(T), vres(T);
    for (int t = 0; t < T; ++t)
        vh[t] = lp.add_variable("vh[" + std::to_string(t) + "]", 0.0, vh_cap, h.omega);
    for (int t = 0; t < T; ++t)
        vres[t] = lp.add_variable("v[" + std::to_string(t) + "]", h.v_min, h.v_max, 0.0);

    for (int t = 0; t < T; ++t) {
        const double prev_const = t == 0 ? h.v0 : 0.0;
        std::vector<LinearTerm> cap_terms{{vh[t], 1.0}};
        std::vector<LinearTerm> flow_terms{{vres[t], 1.0}, {vh[t], 1.0}};
        if (t > 0) {
            cap_terms.push_back({vres[t - 1], -1.0});
            flow_terms.push_back({vres[t - 1], -1.0});
        }
        const std::string ts = std::to_string(t);
        // release cannot take the reservoir below v_min ...
        lp.add_le(cap_terms, prev_const + in.inflows[t] - h.v_min, "release_cap[" + ts + "]");
        // ... and must spill enough to stay below v_max
        lp.add_ge(cap_terms, prev_const + in.inflows[t] - h.v_max, "release_floor[" + ts + "]");
        lp.add_eq(flow_terms, prev_const + in.inflows[t], "flow[" + ts + "]");

        std::vector<LinearTerm> demand_terms;
        for (int j = 0; j < m; ++j) demand_terms.push_back({xvar[t * m + j], 1.0});
        demand_terms.push_back({vh[t], h.rho / dt});
        lp.add_ge(demand_terms, in.demand.values[t], "demand[" + ts + "]");
    }
    return lp;
}

DispatchSchedule solve_ucp(const UcpInstance& in) {
    check_instance(in);
    const int T = static_cast<int>(in.demand.values.size());
    const int m = static_cast<int>(in.sources.size());

    // advisory pre-check: instantaneous power can never cover demand
    for (int t = 0; t < T; ++t) {
        double avail = in.hydro_power_cap_mw > 0.0 ? in.hydro_power_cap_mw : kLpInfinity;
        if (std::isfinite(avail)) {
            for (int j = 0; j < m; ++j) avail += in.availability[j].caps[t];
            if (avail < in.demand.values[t] * (1.0 - 1e-12))
                throw std::runtime_error(
                    "ucp infeasible: demand " + std::to_string(in.demand.values[t]) +
                    " MW exceeds total available power " + std::to_string(avail) +
                    " MW at hour " + std::to_string(t));
        }
    }

    const StandardFormLP lp = build_ucp(in);
    const LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::infeasible)
        throw std::runtime_error(
            "ucp infeasible: reservoir constraints cannot sustain the demand profile");
    if (sol.status != LpStatus::optimal)
        throw std::runtime_error("ucp: solver failure");

    DispatchSchedule s;
    for (int j = 0; j < m; ++j) s.source_names.push_back(in.sources[j].name);
    s.power.assign(T, std::vector<double>(m, 0.0));
    s.hydro_water.assign(T, 0.0);
    s.reservoir.assign(T, 0.0);
    for (int t = 0; t < T; ++t) {
        for (int j = 0; j < m; ++j) s.power[t][j] = sol.values[t * m + j];
        s.hydro_water[t] = sol.values[static_cast<size_t>(T) * m + t];
        s.reservoir[t] = sol.values[static_cast<size_t>(T) * m + T + t];
    }
    s.total_cost = sol.objective_value;
    return s;
}

UcpInstance make_default_instance(const UcpDataPaths& paths,
                                  const std::vector<double>& inflows,
                                  SystemCapacity capacity, bool cap_hydro_power) {
    std::vector<SourceSpec> table;
    if (paths.source_table_json.empty()) {
        table = vietnam_2023_sources();
    } else {
        std::ifstream f(paths.source_table_json);
        if (!f)
            throw std::runtime_error("cannot open source table " + paths.source_table_json);
        table = load_source_table(nlohmann::json::parse(f));
    }

    UcpInstance in;
    in.demand = load_demand_csv(paths.demand_csv);
    const int T = static_cast<int>(in.demand.values.size());
    in.step_hours = in.demand.step_hours;

    double hydro_share = 0.0, hydro_cost = 0.0, hydro_rate = 24.0;
    for (const auto& s : table) {
        if (s.kind == AvailabilityKind::hydro) {
            hydro_share = s.mix_share;
            // table costs are per MWh-scale units; omega's formula wants
            // the per-kWh tariff (1128 VND/kWh in the bundled data)
            hydro_cost = s.unit_cost / 1000.0;
            hydro_rate = s.emission_rate;
            continue;
        }
        in.sources.push_back(s);
        if (s.kind == AvailabilityKind::constant) {
            in.availability.push_back(constant_availability(s, capacity, T));
        } else if (s.name == "pv") {
            in.availability.push_back(pv_availability_profile(
                12.0, 2.0, {7, 17}, s.mix_share * capacity.p_max * T * in.step_hours,
                in.step_hours));
        } else if (s.name == "wind") {
            const auto clusters = load_wind_clusters(paths.wind_manifest);
            in.availability.push_back(wind_availability_profile(
                clusters.factors, clusters.installed_mw,
                s.mix_share * capacity.p_max * 8760.0, in.step_hours));
        } else {
            throw std::runtime_error("no availability model for profile source '" +
                                     s.name + "'");
        }
    }
    if (hydro_share <= 0.0)
        throw std::runtime_error("source table has no hydro source");
    in.hydro = default_hydro(capacity, T, hydro_share, hydro_cost, hydro_rate);
    in.inflows = inflows;
    in.hydro_power_cap_mw = cap_hydro_power ? hydro_share * capacity.p_max : 0.0;
    return in;
}

}  // namespace gridcharge
