#include "gridcharge/power_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gridcharge {

namespace {

AvailabilityKind kind_from_string(const std::string& s) {
    if (s == "constant") return AvailabilityKind::constant;
    if (s == "profile") return AvailabilityKind::profile;
    if (s == "hydro") return AvailabilityKind::hydro;
    throw std::runtime_error("source table: unknown availability kind '" + s + "'");
}

void validate_table(std::vector<SourceSpec>& sources) {
    if (sources.empty()) throw std::runtime_error("source table: no sources");
    double sum = 0.0;
    int hydro_count = 0;
    for (const auto& s : sources) {
        if (s.mix_share < 0.0 || s.mix_share > 1.0)
            throw std::runtime_error("source table: share of '" + s.name +
                                     "' outside [0,1]");
        if (s.emission_rate < 0.0)
            throw std::runtime_error("source table: negative emission rate for '" +
                                     s.name + "'");
        if (s.unit_cost < 0.0)
            throw std::runtime_error("source table: negative cost for '" + s.name + "'");
        if (s.kind == AvailabilityKind::hydro) ++hydro_count;
        sum += s.mix_share;
    }
    if (hydro_count > 1)
        throw std::runtime_error("source table: more than one hydro source");
    const double kShareTol = 1e-3 + 1e-12;
    if (std::abs(sum - 1.0) > kShareTol)
        throw std::runtime_error("source table: mix shares sum to " +
                                 std::to_string(sum) + ", expected 1 within 1e-3");
    for (auto& s : sources) s.mix_share /= sum;
}

}  // namespace

std::vector<SourceSpec> vietnam_2023_sources() {
    std::vector<SourceSpec> t = {
        {"coal", 0.332, 820.0, 2100000.0, AvailabilityKind::constant},
        {"gas", 0.089, 490.0, 1428000.0, AvailabilityKind::constant},
        {"fuel", 0.014, 740.0, 3000000.0, AvailabilityKind::constant},
        {"pv", 0.1855, 48.0, 2046000.0, AvailabilityKind::profile},
        {"wind", 0.0825, 12.0, 2086000.0, AvailabilityKind::profile},
        {"hydro", 0.284, 24.0, 1128000.0, AvailabilityKind::hydro},
        {"import", 0.012, 300.0, 2200000.0, AvailabilityKind::constant},
    };
    validate_table(t);
    return t;
}

std::vector<SourceSpec> load_source_table(const nlohmann::json& config) {
    if (!config.contains("sources"))
        throw std::runtime_error("source table: missing 'sources' object");
    std::vector<SourceSpec> out;
    for (const auto& [name, row] : config.at("sources").items()) {
        SourceSpec s;
        s.name = name;
        try {
            s.mix_share = row.at("share").get<double>();
            s.emission_rate = row.at("emission_rate").get<double>();
            s.unit_cost = row.at("cost").get<double>();
            s.kind = kind_from_string(row.at("availability").get<std::string>());
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("source table: bad row '" + name +
                                     "': " + e.what());
        }
        out.push_back(std::move(s));
    }
    validate_table(out);
    return out;
}

DemandProfile hourly_demand_from_records(const std::vector<csv::MeterRecord>& records) {
    if (records.empty()) throw std::runtime_error("demand: no records");
    // index every (day, half-hour slot); each must appear exactly once
    std::map<std::pair<int, int>, double> slots;
    for (const auto& r : records) {
        if (r.minute_of_day % 30 != 0)
            throw std::runtime_error("demand: record not on a half-hour boundary (day " +
                                     std::to_string(r.day) + ", minute " +
                                     std::to_string(r.minute_of_day) + ")");
        auto key = std::make_pair(r.day, r.minute_of_day / 30);
        if (!slots.emplace(key, r.value).second)
            throw std::runtime_error("demand: duplicate slot at day " +
                                     std::to_string(r.day) + ", minute " +
                                     std::to_string(r.minute_of_day));
    }
    const int n_days = slots.rbegin()->first.first + 1;
    if (static_cast<int>(slots.size()) != n_days * 48) {
        for (int d = 0; d < n_days; ++d)
            for (int s = 0; s < 48; ++s)
                if (!slots.count({d, s}))
                    throw std::runtime_error(
                        "demand: missing half-hour slot at day " + std::to_string(d) +
                        ", minute " + std::to_string(s * 30));
    }

    DemandProfile profile;
    profile.step_hours = 1.0;
    profile.values.assign(24, 0.0);
    for (int h = 0; h < 24; ++h) {
        double acc = 0.0;
        for (int d = 0; d < n_days; ++d)
            acc += 0.5 * (slots.at({d, 2 * h}) + slots.at({d, 2 * h + 1}));
        profile.values[h] = acc / n_days;
        if (profile.values[h] < 0.0)
            throw std::runtime_error("demand: negative mean at hour " + std::to_string(h));
    }
    return profile;
}

DemandProfile load_demand_csv(const std::filesystem::path& path) {
    return hourly_demand_from_records(csv::read_timestamped(path));
}

AvailabilityProfile pv_availability_profile(double peak_hour, double sigma_hours,
                                            std::pair<int, int> window,
                                            double daily_energy_mwh,
                                            double step_hours) {
    const auto [w_lo, w_hi] = window;
    if (w_lo < 0 || w_hi >= 24 || w_lo > w_hi)
        throw std::runtime_error("pv: window must lie within [0,24) and be non-empty");
    if (!(sigma_hours > 0.0)) throw std::runtime_error("pv: sigma must be > 0");
    if (daily_energy_mwh < 0.0) throw std::runtime_error("pv: negative energy budget");

    AvailabilityProfile p;
    p.source = "pv";
    p.caps.assign(24, 0.0);
    double weight_sum = 0.0;
    for (int t = w_lo; t <= w_hi; ++t) {
        const double z = (t - peak_hour) / sigma_hours;
        p.caps[t] = std::exp(-0.5 * z * z);
        weight_sum += p.caps[t];
    }
    for (int t = w_lo; t <= w_hi; ++t)
        p.caps[t] *= daily_energy_mwh / (weight_sum * step_hours);
    return p;
}

AvailabilityProfile wind_availability_profile(
    const std::vector<std::vector<double>>& cluster_factors,
    const std::vector<double>& cluster_mw, double annual_energy_mwh,
    double step_hours) {
    if (cluster_factors.empty() || cluster_factors.size() != cluster_mw.size())
        throw std::runtime_error("wind: cluster series/capacity count mismatch");
    const size_t len = cluster_factors.front().size();
    if (len == 0 || len % 24 != 0)
        throw std::runtime_error("wind: series length must be a positive multiple of 24");
    for (const auto& f : cluster_factors)
        if (f.size() != len)
            throw std::runtime_error("wind: cluster series lengths differ");
    double total_mw = 0.0;
    for (double c : cluster_mw) {
        if (c < 0.0) throw std::runtime_error("wind: negative installed capacity");
        total_mw += c;
    }
    if (total_mw <= 0.0) throw std::runtime_error("wind: all cluster capacities zero");

    // capacity-weighted national profile
    std::vector<double> agg(len, 0.0);
    for (size_t c = 0; c < cluster_factors.size(); ++c)
        for (size_t t = 0; t < len; ++t)
            agg[t] += cluster_mw[c] * cluster_factors[c][t];

    double mean = 0.0;
    for (double v : agg) mean += v;
    mean /= static_cast<double>(len);
    if (mean <= 0.0) throw std::runtime_error("wind: aggregate profile is zero");

    // scale so a full year at this profile's mean produces the annual budget
    const double hours_per_year = 8760.0;
    const double mean_power_mw = annual_energy_mwh / hours_per_year;
    std::vector<double> power(len);
    for (size_t t = 0; t < len; ++t) power[t] = mean_power_mw * agg[t] / mean;
    (void)step_hours;

    AvailabilityProfile p;
    p.source = "wind";
    p.caps.assign(24, 0.0);
    const size_t days = len / 24;
    for (size_t t = 0; t < len; ++t) p.caps[t % 24] += power[t];
    for (double& v : p.caps) v /= static_cast<double>(days);
    return p;
}

WindClusterData load_wind_clusters(const std::filesystem::path& manifest) {
    std::ifstream in(manifest);
    if (!in) throw std::runtime_error("wind: cannot open manifest " + manifest.string());
    std::string line;
    std::getline(in, line);  // header
    WindClusterData data;
    const auto dir = manifest.parent_path();
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("wind: malformed manifest line " +
                                     std::to_string(line_no));
        const std::string id = line.substr(0, comma);
        data.installed_mw.push_back(std::stod(line.substr(comma + 1)));
        const auto series_path = dir / ("cluster_" + id + ".csv");
        const auto records = csv::read_timestamped(series_path);
        std::vector<double> factors;
        factors.reserve(records.size());
        for (const auto& r : records) factors.push_back(r.value);
        data.factors.push_back(std::move(factors));
    }
    return data;
}

AvailabilityProfile constant_availability(const SourceSpec& spec,
                                          SystemCapacity capacity, int horizon) {
    if (spec.kind != AvailabilityKind::constant)
        throw std::runtime_error("constant availability requested for non-constant source '" +
                                 spec.name + "'");
    AvailabilityProfile p;
    p.source = spec.name;
    p.caps.assign(horizon, spec.mix_share * capacity.p_max);
    return p;
}

}  // namespace gridcharge
