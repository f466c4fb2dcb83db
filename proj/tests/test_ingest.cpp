#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <random>

#include "kvlab/csvio.hpp"
#include "kvlab/ingest.hpp"

using namespace kvlab;

TEST_CASE("two-column parsing") {
    auto rec = parse_two_column("0 0\n0.02 1.5\n0.04 -0.5\n");
    CHECK(rec.times == std::vector<double>{0.0, 0.02, 0.04});
    CHECK(rec.values == std::vector<double>{0.0, 1.5, -0.5});
    // comma separation and comments
    auto rec2 = parse_two_column("# header\n0, 1\n1, 2\n\n# trailing\n");
    CHECK(rec2.times == std::vector<double>{0.0, 1.0});
    CHECK(rec2.values == std::vector<double>{1.0, 2.0});
}

TEST_CASE("two-column rejects bad input with line numbers") {
    CHECK_THROWS_WITH_AS(parse_two_column("0 0\n0 1\n"), doctest::Contains("line 2"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_two_column("0 0\n0.5 x\n"), doctest::Contains("line 2"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_two_column("0 0\n1 2 3\n"), doctest::Contains("line 2"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_two_column("0 0\n# fine\n0.5 1\n0.25 2\n"),
                         doctest::Contains("line 4"), std::invalid_argument);
}

TEST_CASE("fixed-dt parsing") {
    auto rec = parse_fixed_dt("1.0\n2.0\n3.0\n", 0, 0.02);
    CHECK(rec.values == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(rec.times == std::vector<double>{0.0, 0.02, 0.04});

    // wrapped five-per-line layout flattens row-major
    auto wrapped = parse_fixed_dt("1 2 3 4 5\n6 7 8 9 10\n", 0, 0.5);
    CHECK(wrapped.values.size() == 10);
    CHECK(wrapped.values[4] == 5.0);
    CHECK(wrapped.values[5] == 6.0);
    CHECK(wrapped.times[9] == doctest::Approx(4.5));

    // header lines are skipped verbatim
    auto hdr = parse_fixed_dt("station A\nunits g\nnpts 3\ndt 0.02\n0.1 0.2 0.3\n", 4, 0.02);
    CHECK(hdr.values == std::vector<double>{0.1, 0.2, 0.3});

    std::string warning;
    parse_fixed_dt("0.1 0.2\n", 0, 0.02, 5, &warning);
    CHECK(warning == "record holds 2 values, 5 declared");
}

TEST_CASE("resampling to the integration grid") {
    std::vector<double> t = {0.0, 0.02, 0.04, 0.06};
    std::vector<double> v = {0.0, 1.0, 0.0, -1.0};
    auto same = resample_to_grid(t, v, 0.02, 3);
    CHECK(same == v);
    auto half = resample_to_grid(t, v, 0.01, 6);
    CHECK(half[1] == doctest::Approx(0.5));  // midpoints are neighbour means
    CHECK(half[3] == doctest::Approx(0.5));
    CHECK(half[5] == doctest::Approx(-0.5));
    CHECK_THROWS_WITH_AS(resample_to_grid(t, v, 0.02, 4), doctest::Contains("0.06"),
                         std::out_of_range);
}

TEST_CASE("resampling is exact for piecewise-linear records on refinement") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    std::vector<double> t(21), v(21);
    for (int i = 0; i <= 20; ++i) {
        t[i] = 0.04 * i;
        v[i] = ur(rng);
    }
    // h divides the native spacing four ways
    auto fine = resample_to_grid(t, v, 0.01, 80);
    for (int i = 0; i <= 80; ++i) {
        int cell = std::min(i / 4, 19);
        double w = (0.01 * i - t[cell]) / 0.04;
        double expect = v[cell] + w * (v[cell + 1] - v[cell]);
        CHECK(fine[i] == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("the bundled synthetic ground-motion record loads and covers 40 s") {
    RecordMeta meta;
    ParsedRecord rec = load_record(std::string(KVLAB_SOURCE_DIR) + "/data/synthetic_gm.dat",
                                   "two-column", 0, 0.0, "ground-accel", 2.5, &meta);
    CHECK(rec.times.size() == 2001);
    CHECK(rec.times.front() == 0.0);
    CHECK(rec.times.back() == doctest::Approx(40.0));
    CHECK(meta.n_points == 2001);
    CHECK(meta.explicit_time_column);
    CHECK(meta.native_dt == doctest::Approx(0.02));
    CHECK(meta.kind == "ground-accel");
    CHECK(meta.scale == 2.5);
    // resampling to a finer grid stays in coverage
    auto fine = resample_to_grid(rec.times, rec.values, 0.005, 8000);
    CHECK(fine.size() == 8001);
}

TEST_CASE("17-digit formatting round-trips doubles through parsing") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> ur(-1e3, 1e3);
    std::string text;
    std::vector<double> vals;
    double tprev = 0.0;
    for (int i = 0; i < 50; ++i) {
        double val = ur(rng);
        vals.push_back(val);
        text += fmt17(tprev) + " " + fmt17(val) + "\n";
        tprev += 0.02;
    }
    auto rec = parse_two_column(text);
    for (int i = 0; i < 50; ++i) CHECK(rec.values[i] == vals[i]);
}
