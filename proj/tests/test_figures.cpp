// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <ivb/duality.hpp>
#include <ivb/figures.hpp>

using Catch::Matchers::WithinAbs;

namespace {

struct Csv {
    std::string header;
    std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
    Csv out;
    std::istringstream in(text);
    std::getline(in, out.header);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::string render(const ivb::FigureSpec& spec) {
    std::ostringstream os;
    ivb::write_figure(spec, os);
    return os.str();
}

}  // namespace

TEST_CASE("figure output is deterministic", "[figures]") {
    const ivb::FigureSpec spec{"short", 15, 0.2, 0.3};
    CHECK(render(spec) == render(spec));
}

TEST_CASE("dual-price figure", "[figures]") {
    ivb::FigureSpec spec;
    spec.name = "chat";
    spec.grid_points = 21;
    const auto csv = parse_csv(render(spec));
    CHECK(csv.header == "c,c_hat");
    REQUIRE(csv.rows.size() == 21);
    // Grid runs c = 0.005 .. 0.995 and passes through 1/2 at the midpoint.
    CHECK_THAT(csv.rows.front().at(0), WithinAbs(0.005, 1e-15));
    CHECK_THAT(csv.rows.back().at(0), WithinAbs(0.995, 1e-15));
    CHECK_THAT(csv.rows.at(10).at(0), WithinAbs(0.5, 1e-15));
    for (const auto& row : csv.rows) {
        REQUIRE(row.size() == 2);
        CHECK_THAT(row[1], WithinAbs(ivb::c_hat(0.2, row[0]), 1e-11));
    }
    // The dual curve is decreasing.
    for (std::size_t i = 1; i < csv.rows.size(); ++i)
        CHECK(csv.rows[i][1] < csv.rows[i - 1][1]);
}

TEST_CASE("bound figures keep the enclosure ordering row by row", "[figures]") {
    SECTION("price-to-one regime") {
        const auto csv = parse_csv(render({"long", 15, 0.2, 0.3}));
        CHECK(csv.header == "c,y_upper,y_true,y_lower,y_asym");
        REQUIRE(csv.rows.size() == 15);
        for (const auto& r : csv.rows) {
            REQUIRE(r.size() == 5);
            CHECK(r[1] >= r[2]);            // upper >= true
            CHECK(r[2] >= r[3]);            // true >= lower
            CHECK(r[4] >= r[1] - 1e-12);    // asymptotic dominates from above
        }
    }
    SECTION("price-to-zero regime") {
        const auto csv = parse_csv(render({"short", 15, 0.2, 0.3}));
        REQUIRE(csv.rows.size() == 15);
        for (const auto& r : csv.rows) {
            CHECK(r[1] >= r[2]);
            CHECK(r[2] >= r[3]);
            CHECK(r[4] <= r[3] + 1e-12);    // asymptotic approaches from below
        }
    }
    SECTION("variance-gamma right wing") {
        const auto csv = parse_csv(render({"wing-vg", 6, 0.2, 0.3}));
        CHECK(csv.header == "k,y_upper,y_true,y_lower,y_asym");
        REQUIRE(csv.rows.size() == 6);
        for (const auto& r : csv.rows) {
            CHECK(r[1] >= r[2] - 1e-9);
            CHECK(r[2] >= r[3] - 1e-9);
            if (r[0] > 0.0) CHECK(r[4] <= r[3] + 1e-9);
        }
    }
    SECTION("jump-to-default left wing") {
        const auto csv = parse_csv(render({"left-jtd", 8, 0.2, 0.3}));
        REQUIRE(csv.rows.size() == 8);
        CHECK_THAT(csv.rows.front().at(0), WithinAbs(-3.5, 1e-15));
        CHECK_THAT(csv.rows.back().at(0), WithinAbs(0.0, 1e-15));
        for (const auto& r : csv.rows) {
            CHECK(r[1] >= r[2] - 1e-9);  // may be inf at the right edge
            CHECK(r[2] >= r[3] - 1e-9);
            CHECK(r[4] <= r[2] + 1e-9);
        }
    }
}

TEST_CASE("cobweb figure traces the fixed-point iteration", "[figures]") {
    const std::string text = render({"cobweb", 0, 0.2, 0.3});
    const auto csv = parse_csv(text);
    CHECK(csv.header == "n,y_n,F(y_n)");
    REQUIRE(csv.rows.size() >= 2);
    // Starts from the price-to-one upper bound.
    CHECK_THAT(csv.rows.front().at(1), WithinAbs(0.96279952975540931, 1e-13));
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        const auto& r = csv.rows[i];
        REQUIRE(r.size() == 3);
        CHECK(r[0] == static_cast<double>(i));
        // Chaining: F(y_n) is the next row's y.
        if (i + 1 < csv.rows.size()) CHECK(r[2] == csv.rows[i + 1][1]);
        // Monotone descent after the first application.
        if (i >= 1) CHECK(r[2] <= r[1]);
    }
}

TEST_CASE("figure request validation", "[figures]") {
    std::ostringstream os;
    CHECK_THROWS_AS(ivb::write_figure({"watermelon", 10, 0.2, 0.3}, os),
                    std::domain_error);
    CHECK_THROWS_AS(ivb::write_figure({"long", 1, 0.2, 0.3}, os),
                    std::domain_error);
}
