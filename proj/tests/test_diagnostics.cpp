#include <doctest.h>

#include <cmath>

#include "diagnostics.hpp"
#include "errors.hpp"

using namespace aggrekin;

namespace {

MacroState state_from_rho(std::vector<double> rho, const PointyPotential& pot,
                          const ConvolutionWeights& weights, const Grid1D& grid)
{
    return macro_init(std::move(rho), pot, weights, grid);
}

} // namespace

TEST_CASE("report")
{
    Grid1D grid = Grid1D::over_domain(-2.0, 2.0, 40, 0.01);
    const auto pot = PointyPotential::zero();
    const ConvolutionWeights weights;

    SUBCASE("zero state reports zeros") {
        const MacroState st = state_from_rho(std::vector<double>(41, 0.0), pot, weights, grid);
        const StepReport r = report(st, VelocityLaw::identity(), grid,
                                    VelocityMode::volpert_literal);
        CHECK(r.mass == 0.0);
        CHECK(r.min_rho == 0.0);
        CHECK(r.max_rho == 0.0);
        CHECK(r.max_abs_velocity == 0.0);
        CHECK(r.tv_cumulative == 0.0);
        CHECK(r.support_leak == 0.0);
    }
    SUBCASE("unit-mass state reports unit mass") {
        std::vector<double> rho(41, 0.0);
        rho[20] = 1.0 / grid.dx;
        const MacroState st = state_from_rho(rho, pot, weights, grid);
        const StepReport r = report(st, VelocityLaw::identity(), grid,
                                    VelocityMode::volpert_literal);
        CHECK(r.mass == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.tv_cumulative == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("osl_max matches a hand computation on a 4-cell face profile") {
        std::vector<double> rho(41, 0.0);
        rho[20] = 1.0;
        const MacroState st = state_from_rho(rho, pot, weights, grid);
        std::vector<double> faces(grid.nx, 0.0);
        faces[10] = -0.2;
        faces[11] = 0.3;
        faces[12] = 0.1;
        const StepReport r = report(st, faces, grid);
        CHECK(r.osl_max == doctest::Approx(0.5 / grid.dx).epsilon(1e-13));
    }
    SUBCASE("support_leak counts the 5 boundary cells on each side") {
        std::vector<double> rho(41, 0.0);
        rho[3] = 2.0;
        rho[38] = 1.0;
        rho[20] = 5.0;
        const MacroState st = state_from_rho(rho, pot, weights, grid);
        const StepReport r = report(st, VelocityLaw::identity(), grid,
                                    VelocityMode::volpert_literal);
        CHECK(r.support_leak == doctest::Approx(3.0 * grid.dx).epsilon(1e-13));
    }
}

TEST_CASE("blowup_indicator")
{
    Grid1D grid = Grid1D::over_domain(-1.0, 1.0, 20, 0.01);
    SUBCASE("needs ten snapshots") {
        MacroTrajectory traj;
        traj.times = {0.0};
        traj.rho = {std::vector<double>(21, 0.0)};
        CHECK_THROWS_AS(blowup_indicator(traj, grid), contract_error);
    }
    SUBCASE("flat history never triggers") {
        MacroTrajectory traj;
        for (int n = 0; n < 12; ++n) {
            traj.times.push_back(0.1 * n);
            traj.rho.push_back(std::vector<double>(21, 0.3));
        }
        CHECK_FALSE(blowup_indicator(traj, grid).has_value());
    }
    SUBCASE("single-cell dirac initial data triggers at t = 0") {
        MacroTrajectory traj;
        for (int n = 0; n < 12; ++n) {
            std::vector<double> rho(21, 0.0);
            rho[10] = 1.0 / grid.dx; // a full unit of mass in one cell
            traj.times.push_back(0.1 * n);
            traj.rho.push_back(rho);
        }
        const auto onset = blowup_indicator(traj, grid);
        REQUIRE(onset.has_value());
        CHECK(*onset == 0.0);
    }
    SUBCASE("later concentration is found at the right snapshot") {
        MacroTrajectory traj;
        for (int n = 0; n < 12; ++n) {
            std::vector<double> rho(21, 0.01);
            if (n >= 7) rho[10] = 0.8 / grid.dx;
            traj.times.push_back(0.1 * n);
            traj.rho.push_back(rho);
        }
        const auto onset = blowup_indicator(traj, grid);
        REQUIRE(onset.has_value());
        CHECK(*onset == doctest::Approx(0.7).epsilon(1e-13));
    }
}

TEST_CASE("w1_cross_grid agrees with wasserstein1 on a shared grid")
{
    Grid1D grid = Grid1D::over_domain(-1.0, 1.0, 32, 0.01);
    std::vector<double> a(33, 0.0), b(33, 0.0);
    a[10] = 1.0 / grid.dx;
    b[14] = 1.0 / grid.dx;
    CHECK(w1_cross_grid(a, grid, b, grid) ==
          doctest::Approx(wasserstein1(a, b, grid)).epsilon(1e-13));
}

TEST_CASE("refinement_study")
{
    const ProblemPreset pre = preset("vpfp_one_bump");
    SUBCASE("identical grids give zero errors") {
        const int grids[] = {60, 60, 60};
        const RefinementTable t =
            refinement_study(pre, grids, 0.5, VelocityMode::volpert_literal);
        REQUIRE(t.rows.size() == 2);
        for (const auto& row : t.rows) CHECK(row.error <= 1e-14);
    }
    SUBCASE("errors decrease monotonically with dx") {
        const int grids[] = {40, 80, 160, 320};
        const RefinementTable t =
            refinement_study(pre, grids, 1.0, VelocityMode::volpert_literal);
        REQUIRE(t.rows.size() == 3);
        CHECK(t.rows[0].error > t.rows[1].error);
        CHECK(t.rows[1].error > t.rows[2].error);
        CHECK(t.fitted_order > 0.0);
    }
    SUBCASE("fewer than three grids is refused") {
        const int grids[] = {40, 80};
        CHECK_THROWS_AS(refinement_study(pre, grids, 0.5, VelocityMode::volpert_literal),
                        config_error);
    }
}

TEST_CASE("compare_ap on a short run")
{
    const ProblemPreset pre = preset("chemo_kinetic_two_speed");
    const double eps_list[] = {0.1, 1e-3, 1e-10};
    const ApTable t = compare_ap(pre, eps_list, 100, 20);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].gap > t.rows[1].gap);
    CHECK(t.rows[1].gap > t.rows[2].gap);
    CHECK(t.rows[2].gap <= 1e-8);
    CHECK(t.dt == doctest::Approx(0.95 * (5.0 / 100.0) / 1.0).epsilon(1e-14));
    CHECK_THROWS_AS(compare_ap(preset("chemo_two_bumps"), eps_list, 50, 5), config_error);
}
