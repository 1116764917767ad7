#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsc/errors.hpp"

namespace rsc {

enum class CostKind { StepDecreasing, StepIncreasing, Sinusoid, PowerLaw, PiecewisePoly };

// Convergence class of the improper integrals of f at the origin. Declared,
// not inferred: convergence cannot be decided from samples.
enum class OriginGrowth {
    Bounded,                // f bounded near 0
    IntegrableF,            // int_0 f finite (f may be unbounded)
    IntegrableSFOnly,       // int_0 f = +inf, int_0 s f finite
    NonIntegrableSF,        // int_0 s f = +inf
    NegativeNonIntegrable,  // int_0 f = -inf
};

enum class OriginMonotone { IncreasingNearZero, DecreasingNearZero };

enum class Side { Left, Right };

// Radially symmetric running cost f(x) = ftilde(|x|) on the ball of radius R,
// as a closed family of analytic kinds carrying exact calculus (one-sided
// derivatives and the antiderivatives of f and s*f).
struct RadialCost {
    CostKind kind = CostKind::Sinusoid;
    double R = 1.0;
    int dimension = 2;
    OriginGrowth origin_growth = OriginGrowth::Bounded;
    OriginMonotone origin_monotone = OriginMonotone::IncreasingNearZero;
    double eta = 0.0;  // monotonicity witness: ftilde monotone on (0, eta)

    double rho = 0.0;    // step kinds
    double alpha = 0.0;  // power law exponent, > 0
    int sign = 1;        // power law sign, +-1

    // piecewise polynomial: pieces on [breakpoints[k], breakpoints[k+1]),
    // coeffs[k] holds ascending powers of r
    std::vector<double> breakpoints;
    std::vector<std::vector<double>> coeffs;

    static RadialCost step_decreasing(double rho, double R, int dimension = 2);
    static RadialCost step_increasing(double rho, double R, int dimension = 2);
    static RadialCost sinusoid(double R, int dimension = 2);
    static RadialCost power_law(double alpha, int sign, double R, int dimension = 2);
    static RadialCost piecewise_poly(std::vector<double> breakpoints,
                                     std::vector<std::vector<double>> coeffs, double R,
                                     int dimension = 2,
                                     std::optional<OriginMonotone> monotone = std::nullopt);

    // ftilde(r). r = 0 is allowed only for costs bounded at the origin.
    double eval(double r) const;

    // One-sided value; differs from eval only at the jump of the step kinds.
    double eval_side(double r, Side side) const;

    // Right derivative ftilde'_+(r), exact per kind.
    double right_derivative(double r) const;

    // int_a^b ftilde(s) ds and int_a^b s ftilde(s) ds by analytic
    // antiderivative. Throws DivergentIntegral when a = 0 and the improper
    // integral does not converge.
    double integral_f(double a, double b) const;
    double integral_sf(double a, double b) const;

    bool continuous_on_domain() const {
        return kind != CostKind::StepDecreasing && kind != CostKind::StepIncreasing;
    }
    bool bounded_at_origin() const { return origin_growth == OriginGrowth::Bounded; }

    static RadialCost from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

private:
    void validate() const;
};

std::string to_string(OriginGrowth g);
std::string to_string(OriginMonotone m);
std::string to_string(CostKind k);

}  // namespace rsc
