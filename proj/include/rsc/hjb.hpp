#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "rsc/value.hpp"

namespace rsc {

struct HjbRow {
    double r;
    double res_radial;      // (1/2) V'' + f
    double res_tangential;  // V' / (2 r) + f
    Regime active;
};

enum class HjbStatus { Pass, Fail, Skipped };

struct HjbReport {
    HjbStatus status = HjbStatus::Pass;
    double tol = 0.0;
    std::vector<HjbRow> rows;
    // worst offenders
    double worst_residual = 0.0;  // largest |min(res_radial, res_tangential)|
    double worst_residual_r = 0.0;
    double worst_negative = 0.0;  // most negative residual over both branches
    double worst_negative_r = 0.0;

    void write_csv(std::ostream& os) const;
};

// Finite-difference residuals of the radial HJB characterisation at the grid
// points, from an arbitrary evaluator (h = 1e-4 R central differences).
// The constructed value satisfies min(res_radial, res_tangential) = 0 with
// both branches nonnegative; the branch at zero is the active one.
std::vector<HjbRow> hjb_residuals(const std::function<double(double)>& value_fn,
                                  const RadialCost& cost, const SwitchingSchedule& schedule,
                                  const std::vector<double>& grid);

// PASS iff every grid point has min(res_radial, res_tangential) in [-tol, tol]
// and both residuals >= -tol, with tol = 1e-3 scaled by max |f| on the grid.
// Step costs are discontinuous inside the ball, where the viscosity
// characterisation does not apply: SKIP.
HjbReport hjb_verify(const PiecewiseValue& value);
HjbReport hjb_verify_fn(const std::function<double(double)>& value_fn, const RadialCost& cost,
                        const SwitchingSchedule& schedule);

// Default verification grid: uniform on (0.01 R, 0.99 R) minus a 10 h margin
// around every switching point.
std::vector<double> hjb_default_grid(const RadialCost& cost, const SwitchingSchedule& schedule,
                                     int n = 800);

}  // namespace rsc
