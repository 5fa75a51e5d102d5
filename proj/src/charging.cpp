#include "gridcharge/charging.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gridcharge {

namespace {

constexpr double kEnergyTol = 1e-9;

void check_instance(const ChargingInstance& in) {
    const int T = in.steps();
    if (T == 0) throw std::runtime_error("charging: empty horizon");
    if (in.energy_price.size() != static_cast<size_t>(T) ||
        in.emission_price.size() != static_cast<size_t>(T))
        throw std::runtime_error("charging: price series length mismatch");
    if (!(in.socket_power_kw > 0.0))
        throw std::runtime_error("charging: socket power must be > 0");
    if (in.lambda < 0.0) throw std::runtime_error("charging: lambda must be >= 0");
    if (!(in.step_hours > 0.0)) throw std::runtime_error("charging: step must be > 0");
    for (double c : in.station_capacity_kw)
        if (c < 0.0) throw std::runtime_error("charging: negative station capacity");
    for (const auto& s : in.sessions) {
        if (s.arrival < 0 || s.departure > T || s.arrival > s.departure)
            throw std::runtime_error("charging: session " + std::to_string(s.id) +
                                     " has window outside the horizon");
        if (s.demand_kwh < 0.0)
            throw std::runtime_error("charging: session " + std::to_string(s.id) +
                                     " has negative demand");
        const double window_kwh =
            in.socket_power_kw * in.step_hours * (s.departure - s.arrival);
        if (s.demand_kwh > window_kwh + 1e-6)
            throw std::runtime_error("charging infeasible: session " +
                                     std::to_string(s.id) + " requests " +
                                     std::to_string(s.demand_kwh) +
                                     " kWh but its window holds at most " +
                                     std::to_string(window_kwh) + " kWh");
    }
}

bool capacity_can_bind(const ChargingInstance& in) {
    std::vector<int> present(in.steps(), 0);
    for (const auto& s : in.sessions)
        for (int t = s.arrival; t < s.departure; ++t) ++present[t];
    for (int t = 0; t < in.steps(); ++t)
        if (present[t] * in.socket_power_kw > in.station_capacity_kw[t] + 1e-9)
            return true;
    return false;
}

// Exact when capacity never binds: each EV independently fills its
// cheapest in-window slots (fractional knapsack), ties to earliest step.
AllocationMatrix greedy_fill(const ChargingInstance& in) {
    AllocationMatrix alloc(in.steps(), static_cast<int>(in.sessions.size()));
    std::vector<int> order;
    for (size_t i = 0; i < in.sessions.size(); ++i) {
        const auto& s = in.sessions[i];
        order.clear();
        for (int t = s.arrival; t < s.departure; ++t) order.push_back(t);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return in.effective_price(a) < in.effective_price(b);
        });
        double remaining = s.demand_kwh;
        const double slot_kwh = in.socket_power_kw * in.step_hours;
        for (int t : order) {
            if (remaining <= kEnergyTol) break;
            const double e = std::min(slot_kwh, remaining);
            alloc.at(t, static_cast<int>(i)) = e / in.step_hours;
            remaining -= e;
        }
    }
    return alloc;
}

// Earliest-deadline-first simulation; used only to locate the overloaded
// step when the LP reports aggregate infeasibility.
int find_overloaded_step(const ChargingInstance& in) {
    std::vector<double> remaining;
    for (const auto& s : in.sessions) remaining.push_back(s.demand_kwh);
    for (int t = 0; t < in.steps(); ++t) {
        std::vector<size_t> present;
        for (size_t i = 0; i < in.sessions.size(); ++i)
            if (in.sessions[i].arrival <= t && t < in.sessions[i].departure &&
                remaining[i] > kEnergyTol)
                present.push_back(i);
        std::sort(present.begin(), present.end(), [&](size_t a, size_t b) {
            return in.sessions[a].departure < in.sessions[b].departure;
        });
        double cap = in.station_capacity_kw[t];
        bool starved = false;
        for (size_t i : present) {
            const double want =
                std::min(in.socket_power_kw, remaining[i] / in.step_hours);
            const double got = std::min(want, cap);
            cap -= got;
            remaining[i] -= got * in.step_hours;
            if (got + 1e-9 < want) starved = true;
        }
        if (starved && cap < 1e-9) return t;
    }
    return -1;
}

}  // namespace

StandardFormLP build_charging_lp(const ChargingInstance& in) {
    check_instance(in);
    StandardFormLP lp;
    const double dt = in.step_hours;
    // variables exist only inside each session's window
    std::vector<std::vector<LinearTerm>> capacity_terms(in.steps());
    for (size_t i = 0; i < in.sessions.size(); ++i) {
        const auto& s = in.sessions[i];
        std::vector<LinearTerm> demand_terms;
        for (int t = s.arrival; t < s.departure; ++t) {
            const int v = lp.add_variable(
                "Y[" + std::to_string(t) + "][" + std::to_string(s.id) + "]", 0.0,
                in.socket_power_kw, in.effective_price(t) * dt);
            demand_terms.push_back({v, dt});
            capacity_terms[t].push_back({v, 1.0});
        }
        lp.add_ge(std::move(demand_terms), s.demand_kwh,
                  "demand[" + std::to_string(s.id) + "]");
    }
    for (int t = 0; t < in.steps(); ++t)
        if (!capacity_terms[t].empty())
            lp.add_le(std::move(capacity_terms[t]), in.station_capacity_kw[t],
                      "capacity[" + std::to_string(t) + "]");
    return lp;
}

AllocationMatrix solve_smart_charging(const ChargingInstance& in) {
    check_instance(in);
    if (!capacity_can_bind(in)) return greedy_fill(in);

    const StandardFormLP lp = build_charging_lp(in);
    const LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::infeasible) {
        const int t = find_overloaded_step(in);
        throw std::runtime_error(
            "charging infeasible: station capacity overloaded" +
            (t >= 0 ? " first at step " + std::to_string(t) : std::string()));
    }
    if (sol.status != LpStatus::optimal)
        throw std::runtime_error("charging: solver failure");

    AllocationMatrix alloc(in.steps(), static_cast<int>(in.sessions.size()));
    int v = 0;
    for (size_t i = 0; i < in.sessions.size(); ++i)
        for (int t = in.sessions[i].arrival; t < in.sessions[i].departure; ++t)
            alloc.at(t, static_cast<int>(i)) = sol.values[v++];
    return alloc;
}

AllocationMatrix fifs_schedule(const ChargingInstance& in) {
    check_instance(in);
    AllocationMatrix alloc(in.steps(), static_cast<int>(in.sessions.size()));
    std::vector<double> remaining;
    for (const auto& s : in.sessions) remaining.push_back(s.demand_kwh);

    std::vector<size_t> by_arrival(in.sessions.size());
    std::iota(by_arrival.begin(), by_arrival.end(), size_t{0});
    std::sort(by_arrival.begin(), by_arrival.end(), [&](size_t a, size_t b) {
        if (in.sessions[a].arrival != in.sessions[b].arrival)
            return in.sessions[a].arrival < in.sessions[b].arrival;
        return in.sessions[a].id < in.sessions[b].id;
    });

    for (int t = 0; t < in.steps(); ++t) {
        double cap = in.station_capacity_kw[t];
        for (size_t i : by_arrival) {
            const auto& s = in.sessions[i];
            if (s.arrival > t || t >= s.departure || remaining[i] <= kEnergyTol)
                continue;
            if (cap <= 0.0) break;
            const double y =
                std::min({in.socket_power_kw, remaining[i] / in.step_hours, cap});
            alloc.at(t, static_cast<int>(i)) = y;
            remaining[i] -= y * in.step_hours;
            cap -= y;
        }
    }
    return alloc;
}

ScheduleMetrics evaluate_schedule(const AllocationMatrix& alloc,
                                  const ChargingInstance& in,
                                  const std::vector<double>& fine_intensity) {
    if (alloc.n_steps != in.steps() ||
        alloc.n_evs != static_cast<int>(in.sessions.size()) ||
        fine_intensity.size() != static_cast<size_t>(in.steps()))
        throw std::runtime_error("evaluate_schedule: dimension mismatch");

    ScheduleMetrics m;
    m.per_step_load_kw.assign(in.steps(), 0.0);
    const double dt = in.step_hours;
    for (int t = 0; t < in.steps(); ++t) {
        double load = 0.0;
        for (int i = 0; i < alloc.n_evs; ++i) load += alloc.at(t, i);
        m.per_step_load_kw[t] = load;
        const double kwh = load * dt;
        m.energy_cost += in.energy_price[t] * kwh;
        m.emission_cost += in.emission_price[t] * kwh;
        m.emission_mass_kg += fine_intensity[t] * kwh / 1000.0;
    }
    m.total_objective = m.energy_cost + in.lambda * m.emission_cost;
    for (int i = 0; i < alloc.n_evs; ++i) {
        double delivered = 0.0;
        for (int t = 0; t < in.steps(); ++t) delivered += alloc.at(t, i) * dt;
        m.unmet_kwh += std::max(0.0, in.sessions[i].demand_kwh - delivered);
    }
    return m;
}

}  // namespace gridcharge
