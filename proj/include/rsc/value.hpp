#pragma once

#include <iosfwd>
#include <vector>

#include "rsc/cost.hpp"
#include "rsc/switching.hpp"

namespace rsc {

enum class Branch { Radial, Tangential };

struct ValueSegment {
    double a = 0.0;  // interval (a, b]
    double b = 0.0;
    Branch branch = Branch::Radial;
    double seed_slope = 0.0;  // V'(a+) on radial segments
    double value_at_b = 0.0;
};

struct FitEntry {
    double point;
    double value_gap;
    double deriv_gap;
};

struct FitReport {
    std::vector<FitEntry> entries;
    bool pass = true;
};

// Piecewise value function: radial segments solve u'' = -2 f with the seeded
// slope, tangential segments solve w' = -2 r f, all anchored by V(R) = 0.
// Keeps its own copy of the cost, so it stays valid and immutable on its own.
class PiecewiseValue {
public:
    PiecewiseValue() = default;

    double eval(double r) const;
    double eval_derivative(double r, Side side) const;

    // Direct evaluation of the two-case closed formula with the constants
    // frak_F; an assembly independent of the segment chain.
    double closed_form(double r) const;

    // Continuity and smooth-fit gaps at every switching point (plus the jump
    // radius of the step costs, where the kink is expected).
    FitReport check_fit() const;

    // CSV: r, V, dV_left, dV_right, branch
    void tabulate(std::ostream& os, int grid_n) const;

    const std::vector<ValueSegment>& segments() const { return segments_; }
    const SwitchingSchedule& schedule() const { return schedule_; }
    const RadialCost& cost() const { return cost_; }
    double origin_value() const { return alpha_const_; }  // may be +-inf
    const std::vector<double>& frak_F() const { return frak_F_; }

    friend PiecewiseValue build_value(const RadialCost& cost, const SwitchingSchedule& schedule);

private:
    RadialCost cost_;
    SwitchingSchedule schedule_;
    std::vector<ValueSegment> segments_;
    double alpha_const_ = 0.0;
    std::vector<double> frak_F_;
    // capped switching arrays for the closed form: rr_[j], ss_[j]
    std::vector<double> rr_, ss_;
    int blocks_ = 0;  // K (Case I) or L (Case II)

    const ValueSegment& segment_at(double r) const;
};

PiecewiseValue build_value(const RadialCost& cost, const SwitchingSchedule& schedule);

}  // namespace rsc
