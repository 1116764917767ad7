#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "rsc/cost.hpp"
#include "rsc/numeric.hpp"

namespace rsc::testing {

// Random continuous piecewise-cubic cost on [0, R]: pieces glued by value,
// rejected until f'_+ changes sign at most four times and keeps one sign near
// the origin (the assumptions the schedule construction needs).
inline RadialCost make_random_pp(std::uint32_t seed, double R = 1.0) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> coef(-1.5, 1.5);
    std::uniform_int_distribution<int> npieces(1, 4);
    for (int attempt = 0; attempt < 200; ++attempt) {
        const int m = npieces(gen);
        std::vector<double> bp(m + 1);
        bp[0] = 0.0;
        bp[m] = R;
        for (int k = 1; k < m; ++k) bp[k] = R * k / m;
        std::vector<std::vector<double>> cs;
        double carry = coef(gen);
        for (int k = 0; k < m; ++k) {
            std::vector<double> c = {0.0, coef(gen), coef(gen), coef(gen)};
            double v = 0.0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * bp[k] + *it;
            c[0] = carry - v;  // continuity at the left breakpoint
            double vr = 0.0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) vr = vr * bp[k + 1] + *it;
            carry = vr;
            cs.push_back(c);
        }
        RadialCost cost;
        try {
            cost = RadialCost::piecewise_poly(bp, cs, R);
        } catch (const cost_error&) {
            continue;
        }
        // count strict sign flips of the right derivative
        int flips = 0, prev = 0;
        bool near_origin_ok = true;
        const int n = 2000;
        for (int i = 1; i < n; ++i) {
            const double r = R * i / n;
            const double d = cost.right_derivative(r);
            const int s = d > 1e-12 ? 1 : (d < -1e-12 ? -1 : 0);
            if (s != 0 && prev != 0 && s != prev) {
                ++flips;
                if (r < 0.05 * R) near_origin_ok = false;
            }
            if (s != 0) prev = s;
        }
        const double d0 = cost.right_derivative(1e-7 * R);
        if (flips <= 4 && near_origin_ok && std::abs(d0) > 1e-9) return cost;
    }
    // fall back to something valid so callers always get a cost
    return RadialCost::piecewise_poly({0.0, R}, {{0.0, 1.0}}, R);
}

inline double quad_f(const RadialCost& c, double a, double b) {
    return num::integrate([&](double s) { return c.eval(s); }, a, b, 1e-12);
}

inline double quad_sf(const RadialCost& c, double a, double b) {
    return num::integrate([&](double s) { return s * c.eval(s); }, a, b, 1e-12);
}

}  // namespace rsc::testing
