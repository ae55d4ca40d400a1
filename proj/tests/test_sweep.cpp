#include "lsv/sweep.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace lsv;

namespace {

// Synthetic table with a prescribed smooth profile, for testing the finite
// difference and smoothness machinery in isolation.
SweepTable synthetic_table(std::size_t points, double a0, double a1,
                           double (*f)(double)) {
    SweepTable t;
    for (std::size_t i = 0; i < points; ++i) {
        SweepRow r;
        r.alpha = a0 + (a1 - a0) * static_cast<double>(i) / static_cast<double>(points - 1);
        r.sigma_sq = f(r.alpha);
        r.valid = true;
        t.rows.push_back(r);
    }
    return t;
}

GreenKuboSettings fast_settings() {
    GreenKuboSettings s;
    s.n_branch = 200;
    s.cells_l = 32;
    s.marker_depth = 20000;
    s.k_max = 120;
    return s;
}

} // namespace

TEST_CASE("fd_derivative on a cubic profile") {
    auto t = synthetic_table(11, 0.1, 0.4, [](double a) { return a * a * a; });
    auto d = fd_derivative(t, "sigma_sq");
    REQUIRE(d.size() == 11 - 4);
    const double h = t.rows[1].alpha - t.rows[0].alpha;
    for (const auto& pt : d) {
        // central difference of a cubic: 3 a^2 + h^2 exactly
        CHECK(pt.slope == doctest::Approx(3.0 * pt.alpha * pt.alpha + h * h).epsilon(1e-10));
        CHECK(pt.two_scale_gap < 0.25);
    }

    auto small = synthetic_table(4, 0.1, 0.4, [](double a) { return a; });
    CHECK_THROWS_AS(fd_derivative(small, "sigma_sq"), std::domain_error);
    CHECK_THROWS_AS(fd_derivative(t, "no_such_column"), std::invalid_argument);
}

TEST_CASE("smoothness diagnostic separates smooth from oscillating profiles") {
    auto smooth = synthetic_table(21, 0.05, 0.45,
                                  [](double a) { return 0.3 - 0.2 * a + 0.1 * a * a; });
    auto rep = smoothness_report(smooth);
    CHECK(rep.pass);
    CHECK(rep.max_two_scale_gap <= 0.05);
    CHECK(rep.derivative_total_variation <= 3.0 * std::max(rep.derivative_range, 1e-12));
    CHECK(rep.label.find("not a proof") != std::string::npos);
    CHECK(rep.derivative.size() == 21 - 4);

    // grid-scale sawtooth: the FD derivative alternates sign, TV blows up
    auto rough = synthetic_table(21, 0.05, 0.45, [](double a) {
        return 0.3 + 0.05 * std::cos(a / 0.02);
    });
    auto bad = smoothness_report(rough);
    CHECK(!bad.pass);
}

TEST_CASE("sweep over a small alpha grid") {
    std::vector<double> grid = {0.10, 0.15, 0.20, 0.25, 0.30};
    auto table = sweep_sigma(grid, obs_coordinate(), fast_settings());
    REQUIRE(table.rows.size() == grid.size());

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& r = table.rows[i];
        CHECK(r.alpha == grid[i]);
        REQUIRE(r.valid);
        CHECK(r.error.empty());
        CHECK(r.sigma_sq > 0.0);
        CHECK(r.sigma_tilde_sq > 0.0);
        CHECK(r.kac > 2.0);
        CHECK(r.sigma_sq == doctest::Approx(r.sigma_tilde_sq / r.kac));
        CHECK(r.error_bracket >= 0.0);
        CHECK(r.drift > 0.0);
        CHECK(r.drift < 1.0);
    }

    // kac grows with alpha (heavier tails, longer excursions)
    for (std::size_t i = 1; i < table.rows.size(); ++i)
        CHECK(table.rows[i].kac > table.rows[i - 1].kac);

    // column accessors line up with the rows
    auto sig = table.column("sigma_sq");
    auto al = table.column("alpha");
    REQUIRE(sig.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(sig[i] == table.rows[i].sigma_sq);
        CHECK(al[i] == grid[i]);
    }

    // the real profile is smooth at this resolution
    auto rep = smoothness_report(table);
    CHECK(rep.value_modulus < 0.2);
}

TEST_CASE("sweep records row failures without aborting") {
    std::vector<double> grid = {0.2, 0.7, 0.3}; // 0.7 is outside [0, 1/2)
    auto table = sweep_sigma(grid, obs_coordinate(), fast_settings());
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0].valid);
    CHECK(!table.rows[1].valid);
    CHECK(!table.rows[1].error.empty());
    CHECK(table.rows[2].valid);
}
