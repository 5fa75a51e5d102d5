#include "gridcharge/emissions.hpp"

#include <cmath>
#include <stdexcept>

namespace gridcharge {

IntensitySeries carbon_intensity(const DispatchSchedule& schedule,
                                 const std::vector<SourceSpec>& sources,
                                 const HydroSystem& hydro, double step_hours) {
    const size_t T = schedule.power.size();
    if (schedule.source_names.size() != sources.size())
        throw std::runtime_error("carbon_intensity: source list does not match schedule");
    for (size_t j = 0; j < sources.size(); ++j)
        if (schedule.source_names[j] != sources[j].name)
            throw std::runtime_error("carbon_intensity: source order mismatch at '" +
                                     sources[j].name + "'");

    IntensitySeries out;
    out.step_hours = step_hours;
    out.values.assign(T, 0.0);
    out.totals_g.assign(T, 0.0);
    out.energy_kwh.assign(T, 0.0);
    for (size_t t = 0; t < T; ++t) {
        double grams = 0.0, kwh = 0.0;
        for (size_t j = 0; j < sources.size(); ++j) {
            const double p = schedule.power[t][j];
            if (p < -1e-9)
                throw std::runtime_error("carbon_intensity: negative dispatch for '" +
                                         sources[j].name + "'");
            const double e = step_hours * std::max(p, 0.0) * 1000.0;  // kWh
            grams += sources[j].emission_rate * e;
            kwh += e;
        }
        const double hydro_kwh = hydro.rho * schedule.hydro_water[t] * 1000.0;
        grams += hydro.emission_rate * hydro_kwh;
        kwh += hydro_kwh;
        out.totals_g[t] = grams;
        out.energy_kwh[t] = kwh;
        out.values[t] = kwh > 0.0 ? grams / kwh : 0.0;
    }
    return out;
}

EmissionPriceSeries emission_price(const IntensitySeries& intensity,
                                   double carbon_price_per_ton) {
    if (carbon_price_per_ton < 0.0)
        throw std::runtime_error("emission_price: negative carbon price");
    EmissionPriceSeries out;
    out.carbon_price = carbon_price_per_ton;
    out.values.reserve(intensity.values.size());
    for (double g_per_kwh : intensity.values)
        out.values.push_back(carbon_price_per_ton * g_per_kwh * 1e-6);
    return out;
}

std::vector<double> resample_hold(const std::vector<double>& hourly,
                                  double fine_step_hours) {
    if (!(fine_step_hours > 0.0))
        throw std::runtime_error("resample_hold: step must be > 0");
    const double ratio = 1.0 / fine_step_hours;
    const int per_hour = static_cast<int>(std::lround(ratio));
    if (std::abs(ratio - per_hour) > 1e-9 || per_hour < 1)
        throw std::runtime_error("resample_hold: fine step must divide one hour evenly");
    std::vector<double> out;
    out.reserve(hourly.size() * per_hour);
    for (double v : hourly)
        for (int k = 0; k < per_hour; ++k) out.push_back(v);
    return out;
}

}  // namespace gridcharge
