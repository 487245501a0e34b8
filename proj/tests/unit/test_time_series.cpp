#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "recnet/errors.hpp"
#include "recnet/time_series.hpp"

using namespace recnet;
namespace fs = std::filesystem;

TEST_SUITE("time_series") {

TEST_CASE("shortest formatting round-trips exactly") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(25.0) == "25");
}

TEST_CASE("CSV and sidecar round trip is bit exact") {
    const fs::path dir = fs::temp_directory_path() / "recnet_ts_test";
    fs::remove_all(dir);
    TimeSeries ts;
    ts.dt = 2.5e-5;
    ts.meta = {{"generator", "test"}, {"k", 3}};
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (int i = 0; i < 1000; ++i) ts.values.push_back(g(rng));
    write_series(dir / "s.csv", ts);
    CHECK(fs::exists(dir / "s.json"));
    const TimeSeries back = read_series(dir / "s.csv");
    CHECK(back.values == ts.values);
    CHECK(back.dt == ts.dt);
    CHECK(back.meta == ts.meta);
    fs::remove_all(dir);
}

TEST_CASE("series without sidecar reads with unit spacing") {
    const fs::path dir = fs::temp_directory_path() / "recnet_ts_test2";
    fs::remove_all(dir);
    write_text_file(dir / "x.csv", "index,value\n0,1.5\n1,2\n2,-3e-2\n");
    const TimeSeries ts = read_series(dir / "x.csv");
    CHECK(ts.values == std::vector<double>{1.5, 2.0, -0.03});
    CHECK(ts.dt == 1.0);
    fs::remove_all(dir);
}

TEST_CASE("prefix and finiteness checks") {
    TimeSeries ts;
    ts.values = {1, 2, 3, 4};
    CHECK(ts.prefix(2).values == std::vector<double>{1, 2});
    CHECK_THROWS_AS(ts.prefix(5), PreconditionError);
    const double bad[] = {1.0, std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_AS(require_finite(bad), PreconditionError);
    CHECK(sidecar_path("a/b/c.csv") == fs::path("a/b/c.json"));
}

}
