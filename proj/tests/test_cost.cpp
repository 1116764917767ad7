#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "rsc/cost.hpp"
#include "rsc/numeric.hpp"

using namespace rsc;
using rsc::testing::make_random_pp;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("eval matches the defining formulas") {
    const auto step_dec = RadialCost::step_decreasing(0.5, 1.0);
    CHECK(step_dec.eval(0.3) == 0.0);
    CHECK(step_dec.eval(0.8) == -1.0);
    CHECK(step_dec.eval(0.5) == 0.0);  // 0 on [0, rho]
    CHECK(step_dec.eval_side(0.5, Side::Right) == -1.0);

    const auto step_inc = RadialCost::step_increasing(0.5, 1.0);
    CHECK(step_inc.eval(0.3) == -1.0);
    CHECK(step_inc.eval(0.5) == 0.0);  // 0 on [rho, R)
    CHECK(step_inc.eval_side(0.5, Side::Left) == -1.0);

    const auto sin_cost = RadialCost::sinusoid(6.0);
    CHECK(sin_cost.eval(kPi / 2) == doctest::Approx(1.0).epsilon(1e-15));

    const auto pow_cost = RadialCost::power_law(1.5, +1, 1.0);
    CHECK(pow_cost.eval(0.25) == doctest::Approx(8.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)pow_cost.eval(0.0), EvalAtSingularOrigin);
}

TEST_CASE("right derivatives are exact") {
    CHECK(RadialCost::sinusoid(6.0).right_derivative(1.0) ==
          doctest::Approx(std::cos(1.0)).epsilon(1e-15));
    CHECK(RadialCost::step_increasing(0.5, 1.0).right_derivative(0.5) == 0.0);
    CHECK(RadialCost::power_law(1.0, +1, 1.0).right_derivative(0.5) ==
          doctest::Approx(-4.0).epsilon(1e-14));
}

TEST_CASE("integral examples") {
    const auto pow_cost = RadialCost::power_law(1.5, +1, 1.0);
    CHECK(pow_cost.integral_sf(0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)pow_cost.integral_f(0.0, 1.0), DivergentIntegral);

    const auto step_dec = RadialCost::step_decreasing(0.5, 1.0);
    CHECK(step_dec.integral_f(0.0, 1.0) == doctest::Approx(-0.5).epsilon(1e-15));

    const auto sin_cost = RadialCost::sinusoid(6.0);
    CHECK(sin_cost.integral_f(0.0, kPi) == doctest::Approx(2.0).epsilon(1e-14));

    const auto pow25 = RadialCost::power_law(2.5, +1, 1.0);
    CHECK_THROWS_AS((void)pow25.integral_sf(0.0, 0.5), DivergentIntegral);
    CHECK(std::isfinite(pow25.integral_sf(0.1, 0.5)));
}

TEST_CASE("analytic integrals agree with quadrature over random intervals") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<RadialCost> costs = {
        RadialCost::step_decreasing(0.5, 1.0), RadialCost::step_increasing(0.4, 1.0),
        RadialCost::sinusoid(6.0),             RadialCost::power_law(0.5, +1, 1.0),
        RadialCost::power_law(1.5, +1, 1.0),   make_random_pp(11),
    };
    for (const auto& c : costs) {
        for (int i = 0; i < 100; ++i) {
            // keep away from the singular origin for the quadrature reference
            double a = (0.05 + 0.9 * u(gen)) * c.R;
            double b = (0.05 + 0.9 * u(gen)) * c.R;
            if (a > b) std::swap(a, b);
            CHECK(std::abs(c.integral_f(a, b) - testing::quad_f(c, a, b)) < 1e-9);
            CHECK(std::abs(c.integral_sf(a, b) - testing::quad_sf(c, a, b)) < 1e-9);
        }
    }
}

TEST_CASE("derivative sign-change count matches the kind") {
    auto count_flips = [](const RadialCost& c) {
        const int n = 10000;
        int flips = 0, prev = 0;
        for (int i = 1; i < n; ++i) {
            const double d = c.right_derivative(c.R * i / n);
            const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
            if (s != 0 && prev != 0 && s != prev) ++flips;
            if (s != 0) prev = s;
        }
        return flips;
    };
    CHECK(count_flips(RadialCost::sinusoid(6.0)) == 2);  // cos flips at pi/2, 3pi/2
    CHECK(count_flips(RadialCost::power_law(0.7, +1, 1.0)) == 0);
    CHECK(count_flips(RadialCost::step_decreasing(0.5, 1.0)) == 0);
}

TEST_CASE("power-law growth declaration follows the alpha threshold table") {
    CHECK(RadialCost::power_law(0.5, +1, 1.0).origin_growth == OriginGrowth::IntegrableF);
    CHECK(RadialCost::power_law(1.0, +1, 1.0).origin_growth == OriginGrowth::IntegrableSFOnly);
    CHECK(RadialCost::power_law(1.9, +1, 1.0).origin_growth == OriginGrowth::IntegrableSFOnly);
    CHECK(RadialCost::power_law(2.0, +1, 1.0).origin_growth == OriginGrowth::NonIntegrableSF);
    CHECK(RadialCost::power_law(0.5, -1, 1.0).origin_growth == OriginGrowth::IntegrableF);
    CHECK(RadialCost::power_law(1.2, -1, 1.0).origin_growth ==
          OriginGrowth::NegativeNonIntegrable);

    // declared growth conflicting with the table is a load error
    nlohmann::json j = {{"kind", "power"}, {"alpha", 2.5}, {"sign", 1}, {"R", 1.0},
                        {"dimension", 2},  {"origin_growth", "bounded"}};
    CHECK_THROWS_AS((void)RadialCost::from_json(j), InconsistentDeclaration);
}

TEST_CASE("JSON round trip preserves behaviour") {
    std::vector<RadialCost> costs = {
        RadialCost::step_increasing(0.3, 2.0), RadialCost::sinusoid(6.0),
        RadialCost::power_law(1.5, +1, 1.0), make_random_pp(3)};
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (const auto& c : costs) {
        const auto back = RadialCost::from_json(c.to_json());
        CHECK(back.origin_growth == c.origin_growth);
        CHECK(back.origin_monotone == c.origin_monotone);
        for (int i = 0; i < 32; ++i) {
            const double r = u(gen) * c.R;
            CHECK(back.eval(r) == c.eval(r));
            CHECK(back.right_derivative(r) == c.right_derivative(r));
        }
    }
}

TEST_CASE("piecewise polynomial construction") {
    // f(r) = r on [0, 1/2), then the matching cubic on [1/2, 1]
    const auto c = RadialCost::piecewise_poly({0.0, 0.5, 1.0},
                                              {{0.0, 1.0}, {0.25, 0.25, 0.0, 1.0}}, 1.0);
    CHECK(c.eval(0.25) == doctest::Approx(0.25));
    CHECK(c.eval(0.75) == doctest::Approx(0.25 + 0.25 * 0.75 + 0.421875));
    CHECK(c.origin_monotone == OriginMonotone::IncreasingNearZero);

    // discontinuous pieces must be rejected
    CHECK_THROWS_AS((void)RadialCost::piecewise_poly({0.0, 0.5, 1.0}, {{0.0, 1.0}, {9.0}}, 1.0),
                    InconsistentDeclaration);
}
