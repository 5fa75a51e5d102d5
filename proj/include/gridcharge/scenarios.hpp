#pragma once

#include <filesystem>
#include <vector>

#include <Eigen/Dense>

#include "gridcharge/charging.hpp"
#include "gridcharge/rng.hpp"

namespace gridcharge {

struct DwellModel {
    double mean_hours;
    double std_hours;
};

struct FleetParams {
    int n_evs = 300;
    double morning_peak_hour = 7.0;
    double afternoon_peak_hour = 17.0;
    double beta_shape = 12.0;  // Beta distribution's second parameter
    DwellModel morning{7.0, 4.0};
    DwellModel afternoon{3.0, 1.0};
    double socket_power_kw = 22.0;
    double horizon_hours = 24.0;
    double step_hours = 1.0 / 6.0;
};

// Beta first parameter that places the distribution's mode at
// peak_hour/24: alpha = (1 + m (beta-2)) / (1 - m), m = peak_hour/24.
double beta_alpha_for_peak(double peak_hour, double beta_shape);

// Morning cohort first (it takes the extra vehicle when n is odd), ids
// sequential. Arrival floors onto the grid, departure ceils, dwell is
// truncated below at one step, demand is Beta(2,2) of the window energy.
std::vector<EvSession> sample_fleet(const FleetParams& params, Rng& rng);

struct PriceModel {
    Eigen::VectorXd mean;        // fine grid, currency/kWh
    Eigen::MatrixXd covariance;  // fine grid
    double floor = 0.0;
};

// Linear interpolation of each day's 24 hourly prices onto the fine grid
// (periodic wrap), then cross-day mean and sample covariance (divisor
// D-1), symmetrized with a 1e-10 ridge.
PriceModel fit_price_model(const std::vector<std::vector<double>>& daily_hourly,
                           double fine_step_hours);

// `timestamp,price` CSV at hourly resolution, grouped into full days.
std::vector<std::vector<double>> load_hourly_prices_csv(
    const std::filesystem::path& path);

// Draws mean + L z with L the symmetric PSD square root of the
// covariance; caches the factorization so batches reuse it.
class PriceSampler {
public:
    explicit PriceSampler(const PriceModel& model);
    std::vector<double> sample(Rng& rng) const;
    std::vector<double> mean() const;

private:
    PriceModel model_;
    Eigen::MatrixXd sqrt_;
};

std::vector<double> sample_price_profile(const PriceModel& model, Rng& rng);

}  // namespace gridcharge
