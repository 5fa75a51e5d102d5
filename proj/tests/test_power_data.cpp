#include "doctest.h"

#include <cmath>
#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "gridcharge/power_data.hpp"
#include "gridcharge/rng.hpp"

using namespace gridcharge;

namespace {

const std::filesystem::path kDataDir = GRIDCHARGE_DATA_DIR;

// Frozen oracle: per-hour mean of the bundled 365-day 30-minute demand
// fixture, computed once by an independent dataframe groupby script.
const double kDemandOracle[24] = {
    28492.30546561644,  27778.25605232877,  27204.23743479452,
    26797.58175150685,  26487.12383410959,  26995.887602739724,
    28494.49311972603,  30492.961419726027, 31993.735382602743,
    33033.35680178082,  33818.04673465754,  34296.09426890411,
    33972.16749917808,  34496.17354260274,  35000.099331095895,
    34587.50818,        33989.767240547946, 33200.127402191785,
    32497.398021917812, 33009.66940671233,  32509.107033698627,
    31497.441339999998, 30298.67884342466,  29197.966286438357};

// Frozen oracle: hour-of-day wind caps for the bundled 7-cluster fixture at
// an annual budget of 1e6 MWh (capacity-weighted aggregate, budget-scaled,
// hour-of-day mean), from the same independent script.
const double kWindOracle[24] = {
    113.41718705275584, 113.62924226527227, 113.87709999798729,
    114.14424612853087, 114.41149555129458, 114.6618083939388,
    114.87758249793706, 115.0435763159344,  115.14981323136784,
    115.18750077265922, 115.1555471881046,  115.05507382993623,
    114.89354213677011, 114.68139415941803, 114.43339895144594,
    114.16635710393525, 113.89885923489605, 113.64882481061038,
    113.43292896050605, 113.26691136300478, 113.16062713626661,
    113.12265077308379, 113.15486234048572, 113.2554972011183};

std::vector<csv::MeterRecord> constant_days(int days, double value) {
    std::vector<csv::MeterRecord> recs;
    for (int d = 0; d < days; ++d)
        for (int s = 0; s < 48; ++s) recs.push_back({d, s * 30, value});
    return recs;
}

nlohmann::json single_source_json(double share) {
    return {{"sources",
             {{"solo",
               {{"share", share}, {"emission_rate", 0.0}, {"cost", 0.0},
                {"availability", "constant"}}}}}};
}

}  // namespace

TEST_CASE("bundled table matches the published mix") {
    const auto table = vietnam_2023_sources();
    REQUIRE(table.size() == 7);
    const auto& coal = table.front();
    CHECK(coal.name == "coal");
    // raw shares sum to 0.999 and are renormalized, hence the loose epsilon
    CHECK(coal.mix_share == doctest::Approx(0.332).epsilon(2e-3));
    CHECK(coal.emission_rate == 820.0);
    CHECK(coal.unit_cost == 2100000.0);
    double sum = 0.0;
    for (const auto& s : table) sum += s.mix_share;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bundled table file loads to the same table") {
    std::ifstream f(kDataDir / "vietnam_2023.json");
    REQUIRE(f.good());
    const auto loaded = load_source_table(nlohmann::json::parse(f));
    const auto builtin = vietnam_2023_sources();
    REQUIRE(loaded.size() == builtin.size());
    for (const auto& want : builtin) {
        bool found = false;
        for (const auto& got : loaded)
            if (got.name == want.name) {
                found = true;
                CHECK(got.mix_share == doctest::Approx(want.mix_share).epsilon(1e-12));
                CHECK(got.emission_rate == want.emission_rate);
                CHECK(got.unit_cost == want.unit_cost);
                CHECK(got.kind == want.kind);
            }
        CHECK(found);
    }
}

TEST_CASE("source table validation") {
    SUBCASE("degenerate single-source mix is valid") {
        const auto t = load_source_table(single_source_json(1.0));
        REQUIRE(t.size() == 1);
        CHECK(t[0].mix_share == 1.0);
    }
    SUBCASE("shares summing to 0.98 are rejected, naming the sum") {
        try {
            load_source_table(single_source_json(0.98));
            FAIL("expected a validation error");
        } catch (const std::exception& e) {
            CHECK(std::string(e.what()).find("0.98") != std::string::npos);
        }
    }
    SUBCASE("negative cost is rejected") {
        auto j = single_source_json(1.0);
        j["sources"]["solo"]["cost"] = -1.0;
        CHECK_THROWS(load_source_table(j));
    }
}

TEST_CASE("hourly demand aggregation") {
    SUBCASE("constant records give a constant profile") {
        const auto p = hourly_demand_from_records(constant_days(2, 100.0));
        REQUIRE(p.values.size() == 24);
        for (double v : p.values) CHECK(v == doctest::Approx(100.0));
    }
    SUBCASE("within-hour readings are averaged") {
        auto recs = constant_days(1, 100.0);
        recs[0].value = 80.0;   // hour 0, first half
        recs[1].value = 120.0;  // hour 0, second half
        const auto p = hourly_demand_from_records(recs);
        CHECK(p.values[0] == doctest::Approx(100.0));
        CHECK(p.values[1] == doctest::Approx(100.0));
    }
    SUBCASE("missing half-hour slot is a hard error") {
        auto recs = constant_days(1, 100.0);
        recs.pop_back();
        CHECK_THROWS_WITH_AS(hourly_demand_from_records(recs),
                             doctest::Contains("missing half-hour slot"),
                             std::runtime_error);
    }
    SUBCASE("duplicate slot is a hard error") {
        auto recs = constant_days(1, 100.0);
        recs.push_back(recs.front());
        CHECK_THROWS_WITH_AS(hourly_demand_from_records(recs),
                             doctest::Contains("duplicate"), std::runtime_error);
    }
    SUBCASE("aggregation commutes with scaling") {
        Rng rng(3);
        auto recs = constant_days(3, 0.0);
        for (auto& r : recs) r.value = rng.uniform(50.0, 150.0);
        const auto base = hourly_demand_from_records(recs);
        for (auto& r : recs) r.value *= 2.5;
        const auto scaled = hourly_demand_from_records(recs);
        for (int h = 0; h < 24; ++h)
            CHECK(scaled.values[h] ==
                  doctest::Approx(2.5 * base.values[h]).epsilon(1e-12));
    }
}

TEST_CASE("demand fixture matches the frozen oracle") {
    const auto p = load_demand_csv(kDataDir / "demand_vn_2023_30min.csv");
    REQUIRE(p.values.size() == 24);
    for (int h = 0; h < 24; ++h)
        CHECK(p.values[h] == doctest::Approx(kDemandOracle[h]).epsilon(1e-9));
}

TEST_CASE("non-numeric demand value reports the line number") {
    const auto path = std::filesystem::temp_directory_path() / "bad_demand.csv";
    {
        std::ofstream f(path);
        f << "timestamp,power_mw\n2023-01-01 00:00,100\n2023-01-01 00:30,oops\n";
    }
    try {
        csv::read_timestamped(path);
        FAIL("expected a parse error");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::filesystem::remove(path);
}

TEST_CASE("pv profile") {
    const double budget = 0.1855 * kVietnamPMaxMw * 24.0;
    const auto p = pv_availability_profile(12.0, 2.0, {7, 17}, budget, 1.0);
    REQUIRE(p.caps.size() == 24);

    SUBCASE("hour-12 cap matches the normalized Gaussian weight") {
        double wsum = 0.0;
        for (int t = 7; t <= 17; ++t) wsum += std::exp(-(t - 12.0) * (t - 12.0) / 8.0);
        const double w12 = 1.0 / wsum;  // exp(0) / sum
        CHECK(w12 == doctest::Approx(0.2006).epsilon(1e-3));
        CHECK(p.caps[12] == doctest::Approx(budget * w12).epsilon(1e-12));
    }
    SUBCASE("energy budget is preserved") {
        double energy = 0.0;
        for (double c : p.caps) energy += c * 1.0;
        CHECK(energy == doctest::Approx(budget).epsilon(1e-6));
    }
    SUBCASE("caps outside the productive window are exactly zero") {
        for (int t = 0; t < 7; ++t) CHECK(p.caps[t] == 0.0);
        for (int t = 18; t < 24; ++t) CHECK(p.caps[t] == 0.0);
    }
    SUBCASE("zero budget gives a zero profile") {
        const auto z = pv_availability_profile(12.0, 2.0, {7, 17}, 0.0, 1.0);
        for (double c : z.caps) CHECK(c == 0.0);
    }
    SUBCASE("single-hour window concentrates the whole budget") {
        const auto s = pv_availability_profile(12.0, 2.0, {12, 12}, budget, 1.0);
        CHECK(s.caps[12] == doctest::Approx(budget).epsilon(1e-12));
        for (int t = 0; t < 24; ++t)
            if (t != 12) CHECK(s.caps[t] == 0.0);
    }
    SUBCASE("bad sigma rejected") {
        CHECK_THROWS(pv_availability_profile(12.0, 0.0, {7, 17}, budget, 1.0));
    }
}

TEST_CASE("wind profile") {
    SUBCASE("constant factor yields uniform caps at the budget mean") {
        const double budget = 87600.0;  // 10 MW-year
        const auto p = wind_availability_profile({std::vector<double>(48, 0.5)},
                                                 {100.0}, budget, 1.0);
        REQUIRE(p.caps.size() == 24);
        for (double c : p.caps)
            CHECK(c == doctest::Approx(budget / 8760.0).epsilon(1e-12));
    }
    SUBCASE("zero-capacity cluster drops out") {
        std::vector<double> varying(24);
        for (int t = 0; t < 24; ++t) varying[t] = 0.3 + 0.2 * std::sin(t * 0.3);
        const auto solo = wind_availability_profile({varying}, {10.0}, 1e5, 1.0);
        const auto with_ghost = wind_availability_profile(
            {varying, std::vector<double>(24, 0.9)}, {10.0, 0.0}, 1e5, 1.0);
        for (int h = 0; h < 24; ++h)
            CHECK(with_ghost.caps[h] == doctest::Approx(solo.caps[h]).epsilon(1e-12));
    }
    SUBCASE("bundled 7-cluster fixture matches the frozen oracle") {
        const auto clusters = load_wind_clusters(kDataDir / "wind" / "clusters.csv");
        REQUIRE(clusters.factors.size() == 7);
        const auto p = wind_availability_profile(clusters.factors,
                                                 clusters.installed_mw, 1e6, 1.0);
        for (int h = 0; h < 24; ++h)
            CHECK(p.caps[h] == doctest::Approx(kWindOracle[h]).epsilon(1e-9));
    }
    SUBCASE("length mismatch rejected") {
        CHECK_THROWS(wind_availability_profile(
            {std::vector<double>(24, 0.5), std::vector<double>(48, 0.5)},
            {1.0, 1.0}, 1e5, 1.0));
    }
    SUBCASE("all-zero capacities rejected") {
        CHECK_THROWS(wind_availability_profile({std::vector<double>(24, 0.5)},
                                               {0.0}, 1e5, 1.0));
    }
}

TEST_CASE("constant availability") {
    SystemCapacity cap{kVietnamPMaxMw};
    SUBCASE("coal cap is share times system capacity") {
        const SourceSpec coal{"coal", 0.332, 820.0, 2100000.0,
                              AvailabilityKind::constant};
        const auto p = constant_availability(coal, cap, 24);
        REQUIRE(p.caps.size() == 24);
        for (double c : p.caps) CHECK(c == doctest::Approx(15387.536).epsilon(1e-12));
    }
    SUBCASE("import cap") {
        const SourceSpec imp{"import", 0.012, 300.0, 2200000.0,
                             AvailabilityKind::constant};
        const auto p = constant_availability(imp, cap, 24);
        for (double c : p.caps) CHECK(c == doctest::Approx(556.176).epsilon(1e-12));
    }
    SUBCASE("zero share gives zero caps") {
        const SourceSpec none{"none", 0.0, 0.0, 0.0, AvailabilityKind::constant};
        for (double c : constant_availability(none, cap, 24).caps) CHECK(c == 0.0);
    }
    SUBCASE("non-constant source rejected") {
        const SourceSpec pv{"pv", 0.1, 48.0, 2046000.0, AvailabilityKind::profile};
        CHECK_THROWS(constant_availability(pv, cap, 24));
    }
}
