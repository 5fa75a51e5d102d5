#include "doctest.h"

#include <cmath>

#include "gridcharge/rng.hpp"

using gridcharge::Rng;

TEST_CASE("same seed reproduces the stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.uniform() == b.uniform());
}

TEST_CASE("derived streams are independent of each other") {
    Rng fleet = Rng::derive(7, 3, "fleet");
    Rng price = Rng::derive(7, 3, "price");
    Rng fleet2 = Rng::derive(7, 3, "fleet");
    CHECK(fleet.uniform() != price.uniform());
    Rng fleet3 = Rng::derive(7, 3, "fleet");
    CHECK(fleet2.uniform() == fleet3.uniform());
}

TEST_CASE("uniform stays inside its interval") {
    Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform(2.0, 5.0);
        CHECK(u >= 2.0);
        CHECK(u < 5.0);
    }
}

TEST_CASE("normal sample mean and variance") {
    Rng rng(11);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal(3.0, 2.0);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(mean == doctest::Approx(3.0).epsilon(0.01));
    CHECK(var == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("beta draws live in (0,1) and match the analytic mean") {
    Rng rng(5);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.beta(2.0, 2.0);
        CHECK(x > 0.0);
        CHECK(x < 1.0);
        sum += x;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("gamma rejects bad shape") {
    Rng rng(1);
    CHECK_THROWS(rng.gamma(0.0));
}
