#include "gridcharge/scenarios.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "gridcharge/csv.hpp"

namespace gridcharge {

double beta_alpha_for_peak(double peak_hour, double beta_shape) {
    // the peak is a fraction of the day; mode(Beta(a,b)) = (a-1)/(a+b-2)
    const double m = peak_hour / 24.0;
    if (!(m > 0.0) || !(m < 1.0))
        throw std::runtime_error("fleet: peak hour must lie in (0, 24)");
    if (!(beta_shape > 2.0))
        throw std::runtime_error("fleet: beta shape must be > 2");
    return (1.0 + m * (beta_shape - 2.0)) / (1.0 - m);
}

std::vector<EvSession> sample_fleet(const FleetParams& p, Rng& rng) {
    if (p.n_evs < 1) throw std::runtime_error("fleet: need at least one EV");
    if (!(p.morning.std_hours > 0.0) || !(p.afternoon.std_hours > 0.0))
        throw std::runtime_error("fleet: dwell std must be > 0");
    if (!(p.step_hours > 0.0) || !(p.horizon_hours > 0.0))
        throw std::runtime_error("fleet: bad grid parameters");

    const int t_fine = static_cast<int>(std::lround(p.horizon_hours / p.step_hours));
    const double alpha_mor = beta_alpha_for_peak(p.morning_peak_hour, p.beta_shape);
    const double alpha_aft = beta_alpha_for_peak(p.afternoon_peak_hour, p.beta_shape);
    const int n_morning = (p.n_evs + 1) / 2;

    std::vector<EvSession> fleet;
    fleet.reserve(p.n_evs);
    for (int i = 0; i < p.n_evs; ++i) {
        const bool morning = i < n_morning;
        const double alpha = morning ? alpha_mor : alpha_aft;
        const DwellModel& dwell = morning ? p.morning : p.afternoon;

        const double arrival_hour = p.horizon_hours * rng.beta(alpha, p.beta_shape);
        int a = static_cast<int>(std::floor(arrival_hour / p.step_hours));
        a = std::min(a, t_fine - 1);

        double tau = rng.normal(dwell.mean_hours, dwell.std_hours);
        tau = std::max(tau, p.step_hours);  // departure before arrival is meaningless
        const int dwell_steps = static_cast<int>(std::ceil(tau / p.step_hours - 1e-12));
        const int d = std::min(a + std::max(dwell_steps, 1), t_fine);

        const double demand =
            rng.beta(2.0, 2.0) * p.socket_power_kw * (d - a) * p.step_hours;
        fleet.push_back({i, a, d, demand});
    }
    return fleet;
}

std::vector<std::vector<double>> load_hourly_prices_csv(
    const std::filesystem::path& path) {
    const auto records = csv::read_timestamped(path);
    std::map<int, std::vector<std::pair<int, double>>> by_day;
    for (const auto& r : records) {
        if (r.minute_of_day % 60 != 0)
            throw std::runtime_error("prices: record not on an hour boundary");
        by_day[r.day].push_back({r.minute_of_day / 60, r.value});
    }
    std::vector<std::vector<double>> days;
    for (auto& [day, rows] : by_day) {
        if (rows.size() != 24)
            throw std::runtime_error("prices: incomplete day " + std::to_string(day) +
                                     " (" + std::to_string(rows.size()) + " of 24 hours)");
        std::vector<double> vals(24, 0.0);
        std::vector<bool> seen(24, false);
        for (const auto& [h, v] : rows) {
            if (seen[h])
                throw std::runtime_error("prices: duplicate hour in day " +
                                         std::to_string(day));
            seen[h] = true;
            vals[h] = v;
        }
        days.push_back(std::move(vals));
    }
    return days;
}

PriceModel fit_price_model(const std::vector<std::vector<double>>& daily_hourly,
                           double fine_step_hours) {
    const size_t n_days = daily_hourly.size();
    if (n_days < 2) throw std::runtime_error("price model: need at least 2 full days");
    for (size_t d = 0; d < n_days; ++d)
        if (daily_hourly[d].size() != 24)
            throw std::runtime_error("price model: day " + std::to_string(d) +
                                     " does not have 24 hourly values");
    const double ratio = 1.0 / fine_step_hours;
    const int per_hour = static_cast<int>(std::lround(ratio));
    if (std::abs(ratio - per_hour) > 1e-9 || per_hour < 1)
        throw std::runtime_error("price model: fine step must divide one hour evenly");
    const int dim = 24 * per_hour;

    // each day interpolated onto the fine grid, periodic wrap at midnight
    Eigen::MatrixXd samples(dim, static_cast<Eigen::Index>(n_days));
    for (size_t d = 0; d < n_days; ++d) {
        for (int k = 0; k < dim; ++k) {
            const int h = k / per_hour;
            const double frac = static_cast<double>(k % per_hour) / per_hour;
            samples(k, static_cast<Eigen::Index>(d)) =
                (1.0 - frac) * daily_hourly[d][h] +
                frac * daily_hourly[d][(h + 1) % 24];
        }
    }

    PriceModel model;
    model.mean = samples.rowwise().mean();
    const Eigen::MatrixXd centered = samples.colwise() - model.mean;
    Eigen::MatrixXd cov =
        centered * centered.transpose() / static_cast<double>(n_days - 1);
    cov = 0.5 * (cov + cov.transpose());
    cov.diagonal().array() += 1e-10;
    model.covariance = std::move(cov);
    model.floor = 0.0;
    return model;
}

PriceSampler::PriceSampler(const PriceModel& model) : model_(model) {
    if (model_.mean.size() != model_.covariance.rows() ||
        model_.covariance.rows() != model_.covariance.cols())
        throw std::runtime_error("price model: mean/covariance dimension mismatch");
    if (!model_.covariance.isApprox(model_.covariance.transpose(), 1e-8))
        throw std::runtime_error("price model: covariance not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(model_.covariance);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("price model: covariance factorization failed");
    const Eigen::VectorXd vals = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    sqrt_ = eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().transpose();
}

std::vector<double> PriceSampler::sample(Rng& rng) const {
    Eigen::VectorXd z(model_.mean.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
    const Eigen::VectorXd x = model_.mean + sqrt_ * z;
    std::vector<double> out(static_cast<size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i)
        out[static_cast<size_t>(i)] = std::max(x(i), model_.floor);
    return out;
}

std::vector<double> PriceSampler::mean() const {
    std::vector<double> out(static_cast<size_t>(model_.mean.size()));
    for (Eigen::Index i = 0; i < model_.mean.size(); ++i)
        out[static_cast<size_t>(i)] = std::max(model_.mean(i), model_.floor);
    return out;
}

std::vector<double> sample_price_profile(const PriceModel& model, Rng& rng) {
    return PriceSampler(model).sample(rng);
}

}  // namespace gridcharge
