#include "rsc/hjb.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace rsc {

std::vector<double> hjb_default_grid(const RadialCost& cost, const SwitchingSchedule& schedule,
                                     int n) {
    const double R = cost.R;
    const double h = 1e-4 * R;
    const double lo = 0.01 * R;
    const double hi = 0.99 * R;
    std::vector<double> grid;
    grid.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double r = lo + (hi - lo) * (i + 0.5) / n;
        bool excluded = false;
        for (const auto& p : schedule.points)
            if (std::abs(r - p.value) < 10.0 * h) {
                excluded = true;
                break;
            }
        if (!excluded) grid.push_back(r);
    }
    return grid;
}

std::vector<HjbRow> hjb_residuals(const std::function<double(double)>& value_fn,
                                  const RadialCost& cost, const SwitchingSchedule& schedule,
                                  const std::vector<double>& grid) {
    const double h = 1e-4 * cost.R;
    std::vector<HjbRow> rows;
    rows.reserve(grid.size());
    for (double r : grid) {
        const double vm = value_fn(r - h);
        const double v0 = value_fn(r);
        const double vp = value_fn(r + h);
        const double d1 = (vp - vm) / (2.0 * h);
        const double d2 = (vp - 2.0 * v0 + vm) / (h * h);
        const double f = cost.eval(r);
        HjbRow row;
        row.r = r;
        row.res_radial = 0.5 * d2 + f;
        row.res_tangential = d1 / (2.0 * r) + f;
        row.active = schedule.regime_at(r);
        rows.push_back(row);
    }
    return rows;
}

HjbReport hjb_verify_fn(const std::function<double(double)>& value_fn, const RadialCost& cost,
                        const SwitchingSchedule& schedule) {
    HjbReport report;
    if (!cost.continuous_on_domain()) {
        report.status = HjbStatus::Skipped;
        return report;
    }
    const auto grid = hjb_default_grid(cost, schedule);
    report.rows = hjb_residuals(value_fn, cost, schedule, grid);
    double fmax = 1.0;
    for (double r : grid) fmax = std::max(fmax, std::abs(cost.eval(r)));
    report.tol = 1e-3 * fmax;
    bool ok = true;
    for (const auto& row : report.rows) {
        const double lo = std::min(row.res_radial, row.res_tangential);
        if (std::abs(lo) > std::abs(report.worst_residual)) {
            report.worst_residual = lo;
            report.worst_residual_r = row.r;
        }
        const double neg = std::min(row.res_radial, row.res_tangential);
        if (neg < report.worst_negative) {
            report.worst_negative = neg;
            report.worst_negative_r = row.r;
        }
        if (std::abs(lo) > report.tol || row.res_radial < -report.tol ||
            row.res_tangential < -report.tol)
            ok = false;
    }
    report.status = ok ? HjbStatus::Pass : HjbStatus::Fail;
    return report;
}

HjbReport hjb_verify(const PiecewiseValue& value) {
    return hjb_verify_fn([&](double r) { return value.eval(r); }, value.cost(),
                         value.schedule());
}

void HjbReport::write_csv(std::ostream& os) const {
    os << "r,res_radial,res_tangential,active_branch\n";
    for (const auto& row : rows)
        os << row.r << ',' << row.res_radial << ',' << row.res_tangential << ','
           << (row.active == Regime::Radial ? "radial" : "tangential") << '\n';
}

}  // namespace rsc
