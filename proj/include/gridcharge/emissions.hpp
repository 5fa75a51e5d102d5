#pragma once

#include <vector>

#include "gridcharge/power_data.hpp"
#include "gridcharge/ucp.hpp"

namespace gridcharge {

// Grid-average carbon intensity of a dispatch, plus the per-step emission
// totals the ratio was built from.
struct IntensitySeries {
    std::vector<double> values;       // g/kWh
    std::vector<double> totals_g;     // g emitted per step
    std::vector<double> energy_kwh;   // kWh generated per step
    double step_hours = 1.0;
};

struct EmissionPriceSeries {
    std::vector<double> values;  // currency/kWh
    double carbon_price = 0.0;   // currency/tonne
};

// Default carbon tax: 70 $/ton at 25 500 VND/$.
inline constexpr double kDefaultCarbonPriceVndPerTon = 1785000.0;

IntensitySeries carbon_intensity(const DispatchSchedule& schedule,
                                 const std::vector<SourceSpec>& sources,
                                 const HydroSystem& hydro, double step_hours = 1.0);

EmissionPriceSeries emission_price(const IntensitySeries& intensity,
                                   double carbon_price_per_ton);

// Zero-order hold from an hourly grid onto a finer grid; fine_step_hours
// must divide one hour evenly.
std::vector<double> resample_hold(const std::vector<double>& hourly,
                                  double fine_step_hours);

}  // namespace gridcharge
