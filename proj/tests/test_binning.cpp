#include "qthermo/binning.hpp"

#include <doctest.h>

#include <stdexcept>
#include <vector>

using namespace qthermo;

TEST_SUITE("binning") {

TEST_CASE("per-value binning round-trips every grid temperature") {
    const std::vector<double> temps{0.1, 0.575, 1.05, 1.525, 2.0};
    const TemperatureBinning binning = bin_temperatures(temps, 0);

    CHECK(binning.per_value);
    CHECK(binning.num_classes() == 5);
    for (std::size_t i = 0; i < temps.size(); ++i) {
        const int label = binning.encode(temps[i]);
        CHECK(label == static_cast<int>(i));
        CHECK(binning.decode(label) == temps[i]);
    }

    // off-grid values map to the nearest class via the midpoint edges
    CHECK(binning.encode(0.3) == 0);
    CHECK(binning.encode(0.4) == 1);  // past the 0.3375 midpoint
}

TEST_CASE("per-value binning collapses duplicates and ignores order") {
    const TemperatureBinning binning = bin_temperatures({2.0, 0.1, 1.0, 0.1, 2.0}, 0);
    CHECK(binning.num_classes() == 3);
    CHECK(binning.decode(0) == 0.1);
    CHECK(binning.decode(2) == 2.0);
}

TEST_CASE("equal-width bins split the range evenly") {
    // [0.1, 2] in two bins: edges 0.1 | 1.05 | 2.0, centers 0.575 and 1.525
    const std::vector<double> temps{0.1, 0.5, 1.0, 1.5, 2.0};
    const TemperatureBinning binning = bin_temperatures(temps, 2);

    CHECK_FALSE(binning.per_value);
    REQUIRE(binning.bin_edges.size() == 3);
    CHECK(binning.bin_edges[0] == doctest::Approx(0.1));
    CHECK(binning.bin_edges[1] == doctest::Approx(1.05));
    CHECK(binning.bin_edges[2] == doctest::Approx(2.0));
    CHECK(binning.bin_centers[0] == doctest::Approx(0.575));
    CHECK(binning.bin_centers[1] == doctest::Approx(1.525));

    // bins are right-open except the last, which owns the top edge
    CHECK(binning.encode(1.0) == 0);
    CHECK(binning.encode(1.05) == 1);
    CHECK(binning.encode(2.0) == 1);
    CHECK(binning.decode(binning.encode(0.2)) == doctest::Approx(0.575));
}

TEST_CASE("out-of-range temperatures and labels are rejected") {
    const TemperatureBinning binning = bin_temperatures({0.1, 1.0, 2.0}, 0);
    CHECK_THROWS_AS((void)binning.encode(0.0999), std::out_of_range);
    CHECK_THROWS_AS((void)binning.encode(2.001), std::out_of_range);
    CHECK_THROWS_AS((void)binning.decode(-1), std::out_of_range);
    CHECK_THROWS_AS((void)binning.decode(3), std::out_of_range);

    CHECK_THROWS_AS((void)bin_temperatures({}, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)bin_temperatures({0.1, 2.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)bin_temperatures({0.1, 2.0}, -2), std::invalid_argument);
    // zero-width range cannot be cut into equal-width bins
    CHECK_THROWS_AS((void)bin_temperatures({1.0, 1.0}, 4), std::invalid_argument);
}

TEST_CASE("single-temperature grid still encodes itself") {
    const TemperatureBinning binning = bin_temperatures({1.5}, 0);
    CHECK(binning.num_classes() == 1);
    CHECK(binning.encode(1.5) == 0);
    CHECK(binning.decode(0) == 1.5);
}

}  // TEST_SUITE
