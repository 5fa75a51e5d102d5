#include "gridcharge/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gridcharge/csv.hpp"

namespace gridcharge {

namespace {

using nlohmann::json;

std::string lambda_policy_name(double lambda) {
    std::ostringstream os;
    os << "lambda_" << csv::format_double(lambda);
    return os.str();
}

[[noreturn]] void stage_error(const std::string& stage, int run,
                              const std::exception& e) {
    throw std::runtime_error("run " + std::to_string(run) + " failed at stage '" +
                             stage + "': " + e.what());
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("config: cannot open " + path.string());
    json j = json::parse(f);
    const auto dir = path.parent_path();
    auto resolve = [&dir](const std::string& p) -> std::filesystem::path {
        if (p.empty()) return {};
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : dir / fp;
    };

    ExperimentConfig c;
    c.capacity_mw = j.value("capacity_mw", c.capacity_mw);
    c.demand_csv = resolve(j.at("demand_csv").get<std::string>());
    c.wind_manifest = resolve(j.at("wind_manifest").get<std::string>());
    c.source_table = resolve(j.value("source_table", std::string{}));
    c.prices_csv = resolve(j.at("prices_csv").get<std::string>());
    c.price_currency = j.value("price_currency", c.price_currency);
    c.base_currency = j.value("base_currency", c.base_currency);
    if (j.contains("exchange_rates"))
        for (const auto& [k, v] : j.at("exchange_rates").items())
            c.exchange_rates[k] = v.get<double>();
    c.carbon_price_per_ton = j.value("carbon_price_per_ton", c.carbon_price_per_ton);
    if (j.contains("lambda_values"))
        c.lambda_values = j.at("lambda_values").get<std::vector<double>>();
    c.n_runs = j.value("n_runs", c.n_runs);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.fine_step_hours = j.value("fine_step_minutes", 10.0) / 60.0;
    c.price_mode = j.value("price_mode", c.price_mode);
    c.resample_inflows = j.value("resample_inflows", c.resample_inflows);
    c.station_capacity_kw = j.value("station_capacity_kw", c.station_capacity_kw);
    c.hydro_power_cap = j.value("hydro_power_cap", c.hydro_power_cap);
    if (j.contains("fleet")) {
        const auto& fj = j.at("fleet");
        c.fleet.n_evs = fj.value("n_evs", c.fleet.n_evs);
        c.fleet.socket_power_kw = fj.value("socket_power_kw", c.fleet.socket_power_kw);
        c.fleet.morning_peak_hour = fj.value("morning_peak_hour", c.fleet.morning_peak_hour);
        c.fleet.afternoon_peak_hour =
            fj.value("afternoon_peak_hour", c.fleet.afternoon_peak_hour);
        c.fleet.beta_shape = fj.value("beta_shape", c.fleet.beta_shape);
        if (fj.contains("morning_dwell"))
            c.fleet.morning = {fj.at("morning_dwell").at(0).get<double>(),
                               fj.at("morning_dwell").at(1).get<double>()};
        if (fj.contains("afternoon_dwell"))
            c.fleet.afternoon = {fj.at("afternoon_dwell").at(0).get<double>(),
                                 fj.at("afternoon_dwell").at(1).get<double>()};
    }
    c.fleet.step_hours = c.fine_step_hours;
    if (c.n_runs < 1) throw std::runtime_error("config: n_runs must be >= 1");
    if (c.lambda_values.empty())
        throw std::runtime_error("config: lambda_values must be non-empty");
    for (double l : c.lambda_values)
        if (l < 0.0) throw std::runtime_error("config: negative lambda");
    return c;
}

std::string ExperimentConfig::canonical_json() const {
    json j;
    j["capacity_mw"] = capacity_mw;
    j["demand_csv"] = demand_csv.string();
    j["wind_manifest"] = wind_manifest.string();
    j["source_table"] = source_table.string();
    j["prices_csv"] = prices_csv.string();
    j["price_currency"] = price_currency;
    j["base_currency"] = base_currency;
    j["exchange_rates"] = exchange_rates;
    j["carbon_price_per_ton"] = carbon_price_per_ton;
    j["lambda_values"] = lambda_values;
    j["n_runs"] = n_runs;
    j["master_seed"] = master_seed;
    j["fine_step_hours"] = fine_step_hours;
    j["price_mode"] = price_mode;
    j["resample_inflows"] = resample_inflows;
    j["station_capacity_kw"] = station_capacity_kw;
    j["hydro_power_cap"] = hydro_power_cap;
    j["fleet"] = {{"n_evs", fleet.n_evs},
                  {"socket_power_kw", fleet.socket_power_kw},
                  {"morning_peak_hour", fleet.morning_peak_hour},
                  {"afternoon_peak_hour", fleet.afternoon_peak_hour},
                  {"beta_shape", fleet.beta_shape},
                  {"morning_dwell", {fleet.morning.mean_hours, fleet.morning.std_hours}},
                  {"afternoon_dwell",
                   {fleet.afternoon.mean_hours, fleet.afternoon.std_hours}}};
    return j.dump();
}

std::uint64_t ExperimentConfig::config_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : canonical_json()) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

Experiment::Experiment(ExperimentConfig config)
    : cfg_(std::move(config)),
      base_(make_default_instance(
          {cfg_.demand_csv.string(), cfg_.wind_manifest.string(),
           cfg_.source_table.string()},
          std::vector<double>(24, 0.0), {cfg_.capacity_mw}, cfg_.hydro_power_cap)),
      sampler_(fit_price_model(load_hourly_prices_csv(cfg_.prices_csv),
                               cfg_.fine_step_hours)) {
    auto it = cfg_.exchange_rates.find(cfg_.price_currency);
    if (it == cfg_.exchange_rates.end())
        throw std::runtime_error("config: no exchange rate for price currency '" +
                                 cfg_.price_currency + "'");
    price_fx_ = it->second;
}

ChargingInstance Experiment::charging_instance(
    const RunReport& run, const std::vector<double>& fine_emission_price,
    double lambda) const {
    ChargingInstance in;
    in.sessions = run.fleet;
    in.socket_power_kw = cfg_.fleet.socket_power_kw;
    const double cap = cfg_.station_capacity_kw > 0.0
                           ? cfg_.station_capacity_kw
                           : cfg_.fleet.n_evs * cfg_.fleet.socket_power_kw;
    in.station_capacity_kw.assign(run.price_profile.size(), cap);
    in.energy_price = run.price_profile;
    in.emission_price = fine_emission_price;
    in.lambda = lambda;
    in.step_hours = cfg_.fine_step_hours;
    return in;
}

RunReport Experiment::run_single(int run_index) const {
    RunReport run;
    run.run_index = run_index;

    UcpInstance instance = base_;
    try {
        const int inflow_stream = cfg_.resample_inflows ? run_index : 0;
        Rng rng = Rng::derive(cfg_.master_seed, inflow_stream, "inflows");
        instance.inflows = sample_inflows(instance.hydro,
                                          static_cast<int>(instance.demand.values.size()),
                                          rng);
        run.dispatch = solve_ucp(instance);
    } catch (const std::exception& e) {
        stage_error("ucp", run_index, e);
    }

    std::vector<double> fine_emission_price, fine_intensity;
    try {
        run.intensity = carbon_intensity(run.dispatch, instance.sources, instance.hydro,
                                         instance.step_hours);
        run.emission_prices = emission_price(run.intensity, cfg_.carbon_price_per_ton);
        fine_emission_price = resample_hold(run.emission_prices.values, cfg_.fine_step_hours);
        fine_intensity = resample_hold(run.intensity.values, cfg_.fine_step_hours);
    } catch (const std::exception& e) {
        stage_error("emissions", run_index, e);
    }

    try {
        Rng fleet_rng = Rng::derive(cfg_.master_seed, run_index, "fleet");
        run.fleet = sample_fleet(cfg_.fleet, fleet_rng);
        std::vector<double> prices;
        if (cfg_.price_mode == "mean") {
            prices = sampler_.mean();
        } else if (cfg_.price_mode == "sample") {
            Rng price_rng = Rng::derive(cfg_.master_seed, run_index, "price");
            prices = sampler_.sample(price_rng);
        } else {
            throw std::runtime_error("unknown price_mode '" + cfg_.price_mode + "'");
        }
        for (double& p : prices) p *= price_fx_;
        run.price_profile = std::move(prices);
    } catch (const std::exception& e) {
        stage_error("scenario", run_index, e);
    }

    try {
        for (double lambda : cfg_.lambda_values) {
            auto in = charging_instance(run, fine_emission_price, lambda);
            auto alloc = solve_smart_charging(in);
            run.policies.push_back({lambda_policy_name(lambda), lambda,
                                    evaluate_schedule(alloc, in, fine_intensity)});
            run.allocations.push_back(std::move(alloc));
        }
        {
            auto in = charging_instance(run, fine_emission_price, 0.0);
            auto alloc = solve_smart_charging(in);
            run.policies.push_back({"power_allocation", 0.0,
                                    evaluate_schedule(alloc, in, fine_intensity)});
            run.allocations.push_back(std::move(alloc));
        }
        {
            auto in = charging_instance(run, fine_emission_price, 0.0);
            auto alloc = fifs_schedule(in);
            run.policies.push_back(
                {"fifs", std::nullopt, evaluate_schedule(alloc, in, fine_intensity)});
            run.allocations.push_back(std::move(alloc));
        }
    } catch (const std::exception& e) {
        stage_error("charging", run_index, e);
    }
    return run;
}

SummaryStats Experiment::summarize(const std::vector<RunReport>& runs) {
    if (runs.empty()) throw std::runtime_error("summarize: no runs");
    SummaryStats stats;
    stats.n_runs = static_cast<int>(runs.size());
    const size_t n_policies = runs.front().policies.size();
    const double k = static_cast<double>(runs.size());

    double fifs_mean_cost = 0.0, fifs_mean_emis = 0.0;
    for (size_t p = 0; p < n_policies; ++p) {
        PolicyStats ps;
        ps.name = runs.front().policies[p].name;
        ps.min_cost = ps.min_emissions = std::numeric_limits<double>::infinity();
        ps.max_cost = ps.max_emissions = -std::numeric_limits<double>::infinity();
        double sum_c = 0.0, sum_e = 0.0, sq_c = 0.0, sq_e = 0.0;
        for (const auto& run : runs) {
            const auto& m = run.policies[p].metrics;
            sum_c += m.energy_cost;
            sum_e += m.emission_mass_kg;
            ps.min_cost = std::min(ps.min_cost, m.energy_cost);
            ps.max_cost = std::max(ps.max_cost, m.energy_cost);
            ps.min_emissions = std::min(ps.min_emissions, m.emission_mass_kg);
            ps.max_emissions = std::max(ps.max_emissions, m.emission_mass_kg);
        }
        ps.mean_cost = sum_c / k;
        ps.mean_emissions = sum_e / k;
        for (const auto& run : runs) {
            const auto& m = run.policies[p].metrics;
            sq_c += (m.energy_cost - ps.mean_cost) * (m.energy_cost - ps.mean_cost);
            sq_e += (m.emission_mass_kg - ps.mean_emissions) *
                    (m.emission_mass_kg - ps.mean_emissions);
        }
        ps.sd_cost = runs.size() > 1 ? std::sqrt(sq_c / (k - 1.0)) : 0.0;
        ps.sd_emissions = runs.size() > 1 ? std::sqrt(sq_e / (k - 1.0)) : 0.0;
        if (ps.name == "fifs") {
            fifs_mean_cost = ps.mean_cost;
            fifs_mean_emis = ps.mean_emissions;
        }
        stats.policies.push_back(ps);
    }
    for (auto& ps : stats.policies) {
        ps.delta_cost_vs_fifs =
            fifs_mean_cost != 0.0 ? (fifs_mean_cost - ps.mean_cost) / fifs_mean_cost : 0.0;
        ps.delta_emissions_vs_fifs =
            fifs_mean_emis != 0.0 ? (fifs_mean_emis - ps.mean_emissions) / fifs_mean_emis
                                  : 0.0;
    }
    return stats;
}

SummaryStats Experiment::run_monte_carlo() const {
    std::vector<RunReport> runs;
    runs.reserve(cfg_.n_runs);
    for (int r = 0; r < cfg_.n_runs; ++r) runs.push_back(run_single(r));
    return summarize(runs);
}

void emit_summary(const SummaryStats& stats, const ExperimentConfig& cfg,
                  const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> rows;
    for (const auto& p : stats.policies) {
        std::ostringstream os;
        os << p.name << ',' << csv::format_double(p.mean_cost) << ','
           << csv::format_double(p.sd_cost) << ','
           << csv::format_double(p.mean_emissions) << ','
           << csv::format_double(p.sd_emissions) << ','
           << csv::format_double(p.delta_cost_vs_fifs) << ','
           << csv::format_double(p.delta_emissions_vs_fifs);
        rows.push_back(os.str());
    }
    csv::write_rows(out_dir / "summary.csv",
                    "policy,mean_cost,sd_cost,mean_emissions_kg,sd_emissions_kg,"
                    "delta_cost_vs_fifs,delta_emissions_vs_fifs",
                    rows);

    nlohmann::json j;
    j["n_runs"] = stats.n_runs;
    j["master_seed"] = cfg.master_seed;
    j["config_hash"] = cfg.config_hash();
    j["base_currency"] = cfg.base_currency;
    j["exchange_rates"] = cfg.exchange_rates;
    j["version"] = "1.0.0";
    for (const auto& p : stats.policies)
        j["policies"][p.name] = {{"mean_cost", p.mean_cost},
                                 {"sd_cost", p.sd_cost},
                                 {"min_cost", p.min_cost},
                                 {"max_cost", p.max_cost},
                                 {"mean_emissions_kg", p.mean_emissions},
                                 {"sd_emissions_kg", p.sd_emissions},
                                 {"min_emissions_kg", p.min_emissions},
                                 {"max_emissions_kg", p.max_emissions},
                                 {"delta_cost_vs_fifs", p.delta_cost_vs_fifs},
                                 {"delta_emissions_vs_fifs", p.delta_emissions_vs_fifs}};
    std::ofstream mf(out_dir / "manifest.json");
    if (!mf) throw std::runtime_error("cannot write " + (out_dir / "manifest.json").string());
    mf << j.dump(2) << '\n';
}

void emit_run_outputs(const RunReport& run, const ExperimentConfig& cfg,
                      const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    for (size_t p = 0; p < run.policies.size(); ++p) {
        const auto& alloc = run.allocations[p];
        std::vector<std::string> rows;
        for (int t = 0; t < alloc.n_steps; ++t)
            for (int i = 0; i < alloc.n_evs; ++i)
                if (alloc.at(t, i) > 0.0)
                    rows.push_back(std::to_string(t) + ',' + std::to_string(i) + ',' +
                                   csv::format_double(alloc.at(t, i)));
        csv::write_rows(out_dir / ("allocation_" + run.policies[p].name + ".csv"),
                        "step,ev_id,power_kw", rows);
    }

    const auto fine_emission =
        resample_hold(run.emission_prices.values, cfg.fine_step_hours);
    std::vector<std::string> rows;
    for (size_t t = 0; t < run.price_profile.size(); ++t) {
        std::ostringstream os;
        os << t << ',' << csv::format_double(run.price_profile[t]) << ','
           << csv::format_double(fine_emission[t]);
        for (size_t p = 0; p < run.policies.size(); ++p)
            os << ',' << csv::format_double(run.policies[p].metrics.per_step_load_kw[t]);
        rows.push_back(os.str());
    }
    std::string header = "step,price_per_kwh,emission_price_per_kwh";
    for (const auto& p : run.policies) header += ",load_kw_" + p.name;
    csv::write_rows(out_dir / "load_price.csv", header, rows);

    nlohmann::json j;
    j["run_index"] = run.run_index;
    j["master_seed"] = cfg.master_seed;
    for (const auto& p : run.policies)
        j["policies"][p.name] = {{"energy_cost", p.metrics.energy_cost},
                                 {"emission_mass_kg", p.metrics.emission_mass_kg},
                                 {"emission_cost", p.metrics.emission_cost},
                                 {"total_objective", p.metrics.total_objective},
                                 {"unmet_kwh", p.metrics.unmet_kwh}};
    std::ofstream mf(out_dir / "metrics.json");
    if (!mf) throw std::runtime_error("cannot write " + (out_dir / "metrics.json").string());
    mf << j.dump(2) << '\n';

    std::vector<std::string> fleet_rows;
    for (const auto& s : run.fleet)
        fleet_rows.push_back(std::to_string(s.id) + ',' + std::to_string(s.arrival) +
                             ',' + std::to_string(s.departure) + ',' +
                             csv::format_double(s.demand_kwh));
    csv::write_rows(out_dir / "fleet.csv", "ev_id,arrival_step,departure_step,demand_kwh",
                    fleet_rows);
}

void emit_dispatch_outputs(const DispatchSchedule& dispatch,
                           const IntensitySeries& intensity,
                           const EmissionPriceSeries& prices,
                           const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> rows;
    for (size_t t = 0; t < dispatch.power.size(); ++t)
        for (size_t j = 0; j < dispatch.source_names.size(); ++j)
            rows.push_back(std::to_string(t) + ',' + dispatch.source_names[j] + ',' +
                           csv::format_double(dispatch.power[t][j]));
    csv::write_rows(out_dir / "dispatch.csv", "hour,source,power_mw", rows);

    rows.clear();
    for (size_t t = 0; t < dispatch.hydro_water.size(); ++t)
        rows.push_back(std::to_string(t) + ',' +
                       csv::format_double(dispatch.hydro_water[t]) + ',' +
                       csv::format_double(dispatch.reservoir[t]));
    csv::write_rows(out_dir / "hydro.csv", "hour,hydro_water_m3,reservoir_m3", rows);

    rows.clear();
    for (size_t t = 0; t < intensity.values.size(); ++t)
        rows.push_back(std::to_string(t) + ',' +
                       csv::format_double(intensity.values[t]) + ',' +
                       csv::format_double(intensity.totals_g[t] / 1000.0) + ',' +
                       csv::format_double(prices.values[t]));
    csv::write_rows(out_dir / "intensity.csv",
                    "hour,intensity_g_per_kwh,total_emissions_kg,emission_price_per_kwh",
                    rows);

    nlohmann::json j;
    j["total_cost"] = dispatch.total_cost;
    std::map<std::string, double> energy_mwh;
    double total_mwh = 0.0;
    for (size_t t = 0; t < dispatch.power.size(); ++t)
        for (size_t s = 0; s < dispatch.source_names.size(); ++s) {
            energy_mwh[dispatch.source_names[s]] += dispatch.power[t][s];
            total_mwh += dispatch.power[t][s];
        }
    double hydro_mwh = 0.0;
    for (size_t t = 0; t < dispatch.hydro_water.size(); ++t)
        hydro_mwh += dispatch.hydro_water[t];
    j["hydro_water_m3"] = hydro_mwh;
    for (const auto& [name, e] : energy_mwh) {
        j["energy_mwh"][name] = e;
        j["energy_share"][name] = total_mwh > 0 ? e / total_mwh : 0.0;
    }
    std::ofstream sf(out_dir / "ucp_summary.json");
    if (!sf)
        throw std::runtime_error("cannot write " + (out_dir / "ucp_summary.json").string());
    sf << j.dump(2) << '\n';
}

}  // namespace gridcharge
