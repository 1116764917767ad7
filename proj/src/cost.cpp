#include "rsc/cost.hpp"

#include <algorithm>
#include <cmath>

namespace rsc {

namespace {

double poly_eval(const std::vector<double>& c, double r) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * r + *it;
    return v;
}

double poly_deriv(const std::vector<double>& c, double r) {
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) v = v * r + static_cast<double>(k) * c[k];
    return v;
}

// int_a^b r^p * poly(r) dr, p in {0, 1}
double poly_integral(const std::vector<double>& c, double a, double b, int p) {
    double v = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double n = static_cast<double>(k + p + 1);
        v += c[k] / n * (std::pow(b, n) - std::pow(a, n));
    }
    return v;
}

OriginGrowth power_growth_table(double alpha, int sign) {
    if (sign > 0) {
        if (alpha < 1.0) return OriginGrowth::IntegrableF;
        if (alpha < 2.0) return OriginGrowth::IntegrableSFOnly;
        return OriginGrowth::NonIntegrableSF;
    }
    if (alpha < 1.0) return OriginGrowth::IntegrableF;
    return OriginGrowth::NegativeNonIntegrable;
}

}  // namespace

RadialCost RadialCost::step_decreasing(double rho, double R, int dimension) {
    RadialCost c;
    c.kind = CostKind::StepDecreasing;
    c.rho = rho;
    c.R = R;
    c.dimension = dimension;
    c.origin_growth = OriginGrowth::Bounded;
    c.origin_monotone = OriginMonotone::DecreasingNearZero;
    c.eta = rho;
    c.validate();
    return c;
}

RadialCost RadialCost::step_increasing(double rho, double R, int dimension) {
    RadialCost c;
    c.kind = CostKind::StepIncreasing;
    c.rho = rho;
    c.R = R;
    c.dimension = dimension;
    c.origin_growth = OriginGrowth::Bounded;
    c.origin_monotone = OriginMonotone::IncreasingNearZero;
    c.eta = rho;
    c.validate();
    return c;
}

RadialCost RadialCost::sinusoid(double R, int dimension) {
    RadialCost c;
    c.kind = CostKind::Sinusoid;
    c.R = R;
    c.dimension = dimension;
    c.origin_growth = OriginGrowth::Bounded;
    c.origin_monotone = OriginMonotone::IncreasingNearZero;
    c.eta = std::min(std::asin(1.0), R);  // pi/2
    c.validate();
    return c;
}

RadialCost RadialCost::power_law(double alpha, int sign, double R, int dimension) {
    RadialCost c;
    c.kind = CostKind::PowerLaw;
    c.alpha = alpha;
    c.sign = sign;
    c.R = R;
    c.dimension = dimension;
    c.origin_growth = power_growth_table(alpha, sign);
    c.origin_monotone =
        sign > 0 ? OriginMonotone::DecreasingNearZero : OriginMonotone::IncreasingNearZero;
    c.eta = R;
    c.validate();
    return c;
}

RadialCost RadialCost::piecewise_poly(std::vector<double> breakpoints,
                                      std::vector<std::vector<double>> coeffs, double R,
                                      int dimension, std::optional<OriginMonotone> monotone) {
    RadialCost c;
    c.kind = CostKind::PiecewisePoly;
    c.breakpoints = std::move(breakpoints);
    c.coeffs = std::move(coeffs);
    c.R = R;
    c.dimension = dimension;
    c.origin_growth = OriginGrowth::Bounded;
    if (monotone) {
        c.origin_monotone = *monotone;
    } else {
        // sign of f'_+ just right of 0 decides the case
        double d = 0.0;
        if (!c.coeffs.empty()) {
            const double probe = 1e-6 * R;
            d = poly_deriv(c.coeffs.front(), probe);
            if (d == 0.0) d = poly_deriv(c.coeffs.front(), 1e-3 * R);
        }
        c.origin_monotone =
            d < 0.0 ? OriginMonotone::DecreasingNearZero : OriginMonotone::IncreasingNearZero;
    }
    // witness: distance to the first sign flip of f'_+
    c.eta = R;
    {
        const int n = 4096;
        int prev = 0;
        for (int i = 1; i < n; ++i) {
            const double r = R * static_cast<double>(i) / n;
            const double d = c.right_derivative(r);
            const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
            if (s != 0 && prev != 0 && s != prev) {
                c.eta = r;
                break;
            }
            if (s != 0) prev = s;
        }
    }
    c.validate();
    return c;
}

void RadialCost::validate() const {
    if (!(R > 0.0)) throw InconsistentDeclaration("R must be positive");
    if (dimension < 2) throw InconsistentDeclaration("dimension must be >= 2");
    switch (kind) {
        case CostKind::StepDecreasing:
        case CostKind::StepIncreasing:
            if (!(rho > 0.0 && rho < R))
                throw InconsistentDeclaration("step cost requires rho in (0, R)");
            if (origin_growth != OriginGrowth::Bounded)
                throw InconsistentDeclaration("step costs are bounded at the origin");
            break;
        case CostKind::Sinusoid:
            if (origin_growth != OriginGrowth::Bounded)
                throw InconsistentDeclaration("sin cost is bounded at the origin");
            if (origin_monotone != OriginMonotone::IncreasingNearZero)
                throw InconsistentDeclaration("sin is increasing near the origin");
            break;
        case CostKind::PowerLaw: {
            if (!(alpha > 0.0)) throw InconsistentDeclaration("power law requires alpha > 0");
            if (sign != 1 && sign != -1)
                throw InconsistentDeclaration("power law sign must be +-1");
            if (origin_growth != power_growth_table(alpha, sign))
                throw InconsistentDeclaration(
                    "declared origin_growth conflicts with the power-law alpha table");
            const auto want = sign > 0 ? OriginMonotone::DecreasingNearZero
                                       : OriginMonotone::IncreasingNearZero;
            if (origin_monotone != want)
                throw InconsistentDeclaration(
                    "declared origin_monotone conflicts with the power-law sign");
            break;
        }
        case CostKind::PiecewisePoly: {
            if (breakpoints.size() < 2 || coeffs.size() + 1 != breakpoints.size())
                throw InconsistentDeclaration("piecewise_poly needs n+1 breakpoints for n pieces");
            if (breakpoints.front() != 0.0 || std::abs(breakpoints.back() - R) > 1e-12 * R)
                throw InconsistentDeclaration("breakpoints must span [0, R]");
            for (std::size_t k = 1; k < breakpoints.size(); ++k)
                if (!(breakpoints[k] > breakpoints[k - 1]))
                    throw InconsistentDeclaration("breakpoints must be strictly increasing");
            for (std::size_t k = 0; k + 1 < coeffs.size(); ++k) {
                const double b = breakpoints[k + 1];
                const double l = poly_eval(coeffs[k], b);
                const double r = poly_eval(coeffs[k + 1], b);
                if (std::abs(l - r) > 1e-9 * std::max(1.0, std::abs(l)))
                    throw InconsistentDeclaration("piecewise_poly must be continuous on (0, R)");
            }
            if (origin_growth != OriginGrowth::Bounded)
                throw InconsistentDeclaration("piecewise_poly is bounded at the origin");
            break;
        }
    }
}

double RadialCost::eval(double r) const {
    if (r == 0.0 && !bounded_at_origin())
        throw EvalAtSingularOrigin("eval at r = 0 for a cost unbounded at the origin");
    // at the step's jump, the value follows the defining half-open intervals:
    // step_decreasing is 0 on [0, rho], step_increasing is 0 on [rho, R)
    return eval_side(r, kind == CostKind::StepDecreasing ? Side::Left : Side::Right);
}

double RadialCost::eval_side(double r, Side side) const {
    switch (kind) {
        case CostKind::StepDecreasing:
            // 0 on [0, rho], -1 on (rho, R)
            if (r < rho) return 0.0;
            if (r > rho) return -1.0;
            return side == Side::Right ? -1.0 : 0.0;
        case CostKind::StepIncreasing:
            // -1 on [0, rho), 0 on [rho, R)
            if (r < rho) return -1.0;
            if (r > rho) return 0.0;
            return side == Side::Right ? 0.0 : -1.0;
        case CostKind::Sinusoid:
            return std::sin(r);
        case CostKind::PowerLaw:
            return sign * std::pow(r, -alpha);
        case CostKind::PiecewisePoly: {
            std::size_t k = 0;
            while (k + 1 < coeffs.size() && r >= breakpoints[k + 1]) ++k;
            // left limit at an interior breakpoint belongs to the left piece
            if (side == Side::Left && k > 0 && r == breakpoints[k]) --k;
            return poly_eval(coeffs[k], r);
        }
    }
    return 0.0;
}

double RadialCost::right_derivative(double r) const {
    switch (kind) {
        case CostKind::StepDecreasing:
        case CostKind::StepIncreasing:
            return 0.0;  // piecewise constant
        case CostKind::Sinusoid:
            return std::cos(r);
        case CostKind::PowerLaw:
            return -sign * alpha * std::pow(r, -alpha - 1.0);
        case CostKind::PiecewisePoly: {
            std::size_t k = 0;
            while (k + 1 < coeffs.size() && r >= breakpoints[k + 1]) ++k;
            return poly_deriv(coeffs[k], r);
        }
    }
    return 0.0;
}

double RadialCost::integral_f(double a, double b) const {
    if (!(0.0 <= a && a <= b && b <= R * (1.0 + 1e-12)))
        throw cost_error("integral_f: need 0 <= a <= b <= R");
    switch (kind) {
        case CostKind::StepDecreasing:
            return -(std::max(b, rho) - std::max(a, rho));
        case CostKind::StepIncreasing:
            return -(std::min(b, rho) - std::min(a, rho));
        case CostKind::Sinusoid:
            return std::cos(a) - std::cos(b);
        case CostKind::PowerLaw: {
            if (a == 0.0 && alpha >= 1.0)
                throw DivergentIntegral("int_0 f diverges for power law with alpha >= 1");
            auto P = [&](double r) {
                if (r == 0.0) return 0.0;
                return alpha == 1.0 ? std::log(r) : std::pow(r, 1.0 - alpha) / (1.0 - alpha);
            };
            return sign * (P(b) - P(a));
        }
        case CostKind::PiecewisePoly: {
            double v = 0.0;
            for (std::size_t k = 0; k < coeffs.size(); ++k) {
                const double lo = std::max(a, breakpoints[k]);
                const double hi = std::min(b, breakpoints[k + 1]);
                if (hi > lo) v += poly_integral(coeffs[k], lo, hi, 0);
            }
            return v;
        }
    }
    return 0.0;
}

double RadialCost::integral_sf(double a, double b) const {
    if (!(0.0 <= a && a <= b && b <= R * (1.0 + 1e-12)))
        throw cost_error("integral_sf: need 0 <= a <= b <= R");
    switch (kind) {
        case CostKind::StepDecreasing: {
            const double lo = std::max(a, rho), hi = std::max(b, rho);
            return -0.5 * (hi * hi - lo * lo);
        }
        case CostKind::StepIncreasing: {
            const double lo = std::min(a, rho), hi = std::min(b, rho);
            return -0.5 * (hi * hi - lo * lo);
        }
        case CostKind::Sinusoid:
            return (std::sin(b) - b * std::cos(b)) - (std::sin(a) - a * std::cos(a));
        case CostKind::PowerLaw: {
            if (a == 0.0 && alpha >= 2.0)
                throw DivergentIntegral("int_0 s f diverges for power law with alpha >= 2");
            auto Q = [&](double r) {
                if (r == 0.0) return 0.0;
                return alpha == 2.0 ? std::log(r) : std::pow(r, 2.0 - alpha) / (2.0 - alpha);
            };
            return sign * (Q(b) - Q(a));
        }
        case CostKind::PiecewisePoly: {
            double v = 0.0;
            for (std::size_t k = 0; k < coeffs.size(); ++k) {
                const double lo = std::max(a, breakpoints[k]);
                const double hi = std::min(b, breakpoints[k + 1]);
                if (hi > lo) v += poly_integral(coeffs[k], lo, hi, 1);
            }
            return v;
        }
    }
    return 0.0;
}

namespace {

const char* kind_name(CostKind k) {
    switch (k) {
        case CostKind::StepDecreasing: return "step_decreasing";
        case CostKind::StepIncreasing: return "step_increasing";
        case CostKind::Sinusoid: return "sin";
        case CostKind::PowerLaw: return "power";
        case CostKind::PiecewisePoly: return "piecewise_poly";
    }
    return "?";
}

const char* growth_name(OriginGrowth g) {
    switch (g) {
        case OriginGrowth::Bounded: return "bounded";
        case OriginGrowth::IntegrableF: return "integrable_f";
        case OriginGrowth::IntegrableSFOnly: return "integrable_sf_only";
        case OriginGrowth::NonIntegrableSF: return "non_integrable_sf";
        case OriginGrowth::NegativeNonIntegrable: return "negative_non_integrable";
    }
    return "?";
}

const char* monotone_name(OriginMonotone m) {
    return m == OriginMonotone::IncreasingNearZero ? "increasing" : "decreasing";
}

OriginGrowth growth_from_name(const std::string& s) {
    if (s == "bounded") return OriginGrowth::Bounded;
    if (s == "integrable_f") return OriginGrowth::IntegrableF;
    if (s == "integrable_sf_only") return OriginGrowth::IntegrableSFOnly;
    if (s == "non_integrable_sf") return OriginGrowth::NonIntegrableSF;
    if (s == "negative_non_integrable") return OriginGrowth::NegativeNonIntegrable;
    throw InconsistentDeclaration("unknown origin_growth: " + s);
}

OriginMonotone monotone_from_name(const std::string& s) {
    if (s == "increasing") return OriginMonotone::IncreasingNearZero;
    if (s == "decreasing") return OriginMonotone::DecreasingNearZero;
    throw InconsistentDeclaration("unknown origin_monotone: " + s);
}

}  // namespace

std::string to_string(OriginGrowth g) { return growth_name(g); }
std::string to_string(OriginMonotone m) { return monotone_name(m); }
std::string to_string(CostKind k) { return kind_name(k); }

RadialCost RadialCost::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const double R = j.at("R").get<double>();
    const int dim = j.value("dimension", 2);
    RadialCost c;
    if (kind == "step_decreasing") {
        c = step_decreasing(j.at("rho").get<double>(), R, dim);
    } else if (kind == "step_increasing") {
        c = step_increasing(j.at("rho").get<double>(), R, dim);
    } else if (kind == "sin") {
        c = sinusoid(R, dim);
    } else if (kind == "power") {
        c = power_law(j.at("alpha").get<double>(), j.value("sign", 1), R, dim);
    } else if (kind == "piecewise_poly") {
        std::optional<OriginMonotone> mono;
        if (j.contains("origin_monotone"))
            mono = monotone_from_name(j.at("origin_monotone").get<std::string>());
        c = piecewise_poly(j.at("breakpoints").get<std::vector<double>>(),
                           j.at("coeffs").get<std::vector<std::vector<double>>>(), R, dim, mono);
    } else {
        throw InconsistentDeclaration("unknown cost kind: " + kind);
    }
    // explicit declarations override the inferred ones, then get re-checked
    if (j.contains("origin_growth"))
        c.origin_growth = growth_from_name(j.at("origin_growth").get<std::string>());
    if (j.contains("origin_monotone") && kind != "piecewise_poly")
        c.origin_monotone = monotone_from_name(j.at("origin_monotone").get<std::string>());
    c.validate();
    return c;
}

nlohmann::json RadialCost::to_json() const {
    nlohmann::json j;
    j["kind"] = kind_name(kind);
    j["R"] = R;
    j["dimension"] = dimension;
    j["origin_growth"] = growth_name(origin_growth);
    j["origin_monotone"] = monotone_name(origin_monotone);
    switch (kind) {
        case CostKind::StepDecreasing:
        case CostKind::StepIncreasing:
            j["rho"] = rho;
            break;
        case CostKind::PowerLaw:
            j["alpha"] = alpha;
            j["sign"] = sign;
            break;
        case CostKind::PiecewisePoly:
            j["breakpoints"] = breakpoints;
            j["coeffs"] = coeffs;
            break;
        case CostKind::Sinusoid:
            break;
    }
    return j;
}

}  // namespace rsc
