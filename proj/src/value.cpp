#include "rsc/value.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace rsc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// int_lo^hi int_a^y f(t) dt dy, via Fubini: int_a^x (x - t) f(t) dt
double f2(const RadialCost& c, double a, double x) {
    return x * c.integral_f(a, x) - c.integral_sf(a, x);
}

double f2_part(const RadialCost& c, double a, double lo, double hi) {
    return f2(c, a, hi) - f2(c, a, lo);
}

double seed_product(const RadialCost& c, double s) {
    return s == 0.0 ? 0.0 : s * c.eval(s);
}

}  // namespace

PiecewiseValue build_value(const RadialCost& cost, const SwitchingSchedule& schedule) {
    PiecewiseValue v;
    v.cost_ = cost;
    v.schedule_ = schedule;
    const double R = cost.R;

    // segment layout from the alternation, last segment extended to R
    {
        const bool case1 = schedule.case_tag == CaseTag::I;
        double a = 0.0;
        Branch branch = case1 ? Branch::Radial : Branch::Tangential;
        for (const auto& p : schedule.points) {
            ValueSegment s;
            s.a = a;
            s.b = p.value;
            s.branch = branch;
            v.segments_.push_back(s);
            a = p.value;
            branch = p.label == PointLabel::r ? Branch::Tangential : Branch::Radial;
        }
        ValueSegment last;
        last.a = a;
        last.b = R;
        last.branch = branch;
        v.segments_.push_back(last);
    }
    for (auto& s : v.segments_)
        if (s.branch == Branch::Radial) s.seed_slope = -2.0 * seed_product(cost, s.a);

    // anchor V(R) = 0 and integrate the chain leftwards; the first segment's
    // left end is the origin and is handled via alpha below
    double value_right = 0.0;
    for (std::size_t k = v.segments_.size(); k-- > 0;) {
        auto& s = v.segments_[k];
        s.value_at_b = value_right;
        if (k == 0) break;
        const double drop = s.branch == Branch::Radial
                                ? s.seed_slope * (s.b - s.a) - 2.0 * f2(cost, s.a, s.b)
                                : -2.0 * cost.integral_sf(s.a, s.b);
        value_right -= drop;
    }

    // V(0+): finite unless the relevant improper integral diverges. A radial
    // first segment with int_0 f = -inf is this constructor's declared error.
    {
        const auto& first = v.segments_.front();
        if (first.branch == Branch::Radial) {
            v.alpha_const_ =
                first.value_at_b - (first.seed_slope * first.b - 2.0 * f2(cost, 0.0, first.b));
        } else {
            try {
                v.alpha_const_ = first.value_at_b + 2.0 * cost.integral_sf(0.0, first.b);
            } catch (const DivergentIntegral&) {
                v.alpha_const_ = kInf;  // decreasing cost, int_0 s f = +inf
            }
        }
    }

    // capped switching arrays and the frak_F table for the closed form
    {
        std::vector<double> rpts, spts;
        for (const auto& p : schedule.points)
            (p.label == PointLabel::r ? rpts : spts).push_back(p.value);
        if (schedule.case_tag == CaseTag::I) {
            // ss_[0] = 0, blocks j = 1..K of radial (ss_[j-1], rr_[j]] then
            // tangential (rr_[j], ss_[j]]; R lands in block K
            const bool radial_tail = rpts.size() == spts.size();
            const int K = static_cast<int>(rpts.size()) + (radial_tail ? 1 : 0);
            v.blocks_ = std::max(K, 1);
            v.ss_.assign(v.blocks_ + 1, R);
            v.rr_.assign(v.blocks_ + 1, R);
            v.ss_[0] = 0.0;
            for (std::size_t j = 0; j < rpts.size(); ++j) v.rr_[j + 1] = rpts[j];
            for (std::size_t j = 0; j < spts.size(); ++j) v.ss_[j + 1] = spts[j];
        } else {
            // rr_[0] = 0, blocks i = 0..L of tangential (rr_[i], ss_[i]] then
            // radial (ss_[i], rr_[i+1]]; R lands in block L
            const int L = static_cast<int>(rpts.size());
            v.blocks_ = L;
            v.ss_.assign(L + 1, R);
            v.rr_.assign(L + 2, R);
            v.rr_[0] = 0.0;
            for (std::size_t j = 0; j < spts.size(); ++j) v.ss_[j] = spts[j];
            for (std::size_t j = 0; j < rpts.size(); ++j) v.rr_[j + 1] = rpts[j];
        }
        const int n = v.blocks_;
        v.frak_F_.assign(n + 1, 0.0);
        for (int i = n - 1; i >= 0; --i) {
            const int j = i + 1;
            const double term = (v.rr_[j] - v.ss_[j - 1]) * seed_product(cost, v.ss_[j - 1]) +
                                f2_part(cost, v.ss_[j - 1], v.ss_[j - 1], v.rr_[j]) +
                                cost.integral_sf(v.rr_[j], v.ss_[j]);
            v.frak_F_[i] = v.frak_F_[i + 1] + 2.0 * term;
        }
    }
    return v;
}

const ValueSegment& PiecewiseValue::segment_at(double r) const {
    for (const auto& s : segments_)
        if (r <= s.b) return s;
    return segments_.back();
}

double PiecewiseValue::eval(double r) const {
    const double R = cost_.R;
    if (!(r >= 0.0 && r <= R * (1.0 + 1e-12)))
        throw cost_error("eval_value: r outside [0, R]");
    if (r == 0.0) {
        if (!std::isfinite(alpha_const_))
            throw OriginValueInfinite("V(0) is infinite for this cost");
        return alpha_const_;
    }
    const auto& s = segment_at(r);
    if (s.branch == Branch::Radial)
        return s.value_at_b - (s.seed_slope * (s.b - r) - 2.0 * f2_part(cost_, s.a, r, s.b));
    return s.value_at_b + 2.0 * cost_.integral_sf(r, s.b);
}

double PiecewiseValue::eval_derivative(double r, Side side) const {
    const double R = cost_.R;
    if (!(r >= 0.0 && r <= R * (1.0 + 1e-12)))
        throw cost_error("eval_derivative: r outside [0, R]");
    if (r == 0.0) {
        const auto& first = segments_.front();
        if (first.branch == Branch::Radial) return 0.0;
        // tangential at the origin: slope -2 lim r f(r)
        switch (cost_.origin_growth) {
            case OriginGrowth::Bounded:
            case OriginGrowth::IntegrableF:
                return 0.0;
            default:
                return -kInf;
        }
    }
    // pick the segment whose one-sided limit is requested
    const ValueSegment* seg = &segment_at(r);
    if (side == Side::Right && r == seg->b) {
        for (std::size_t k = 0; k + 1 < segments_.size(); ++k)
            if (segments_[k].b == r) {
                seg = &segments_[k + 1];
                break;
            }
    }
    if (seg->branch == Branch::Radial) return seg->seed_slope - 2.0 * cost_.integral_f(seg->a, r);
    return -2.0 * r * cost_.eval_side(r, side);
}

double PiecewiseValue::closed_form(double r) const {
    const double R = cost_.R;
    if (!(r >= 0.0 && r <= R * (1.0 + 1e-12)))
        throw cost_error("closed_form: r outside [0, R]");
    const auto& c = cost_;
    if (schedule_.case_tag == CaseTag::I) {
        // block i covers (ss_[i-1], ss_[i]]; r = 0 evaluates block 1's limit
        int i = 1;
        while (i < blocks_ && r > ss_[i]) ++i;
        const double lo = std::min(r, rr_[i]);
        const double hi = std::max(r, rr_[i]);
        const double bracket = (rr_[i] - lo) * seed_product(c, ss_[i - 1]) +
                               f2_part(c, ss_[i - 1], lo, rr_[i]) + c.integral_sf(hi, ss_[i]) +
                               0.5 * frak_F_[i];
        return 2.0 * bracket;
    }
    // Case II: block i covers (rr_[i], rr_[i+1]]
    int i = 0;
    while (i < blocks_ && r > rr_[i + 1]) ++i;
    const double head = -2.0 * c.integral_sf(std::min(R, ss_[blocks_]), ss_[blocks_]) +
                        2.0 * (std::max(R, ss_[blocks_]) - ss_[blocks_]) *
                            seed_product(c, ss_[blocks_]) +
                        2.0 * f2_part(c, ss_[blocks_], ss_[blocks_], std::max(R, ss_[blocks_]));
    const double lo = std::min(r, ss_[i]);
    const double hi = std::max(r, ss_[i]);
    const double bracket = c.integral_sf(lo, ss_[i]) - (hi - ss_[i]) * seed_product(c, ss_[i]) -
                           f2_part(c, ss_[i], ss_[i], hi) + 0.5 * frak_F_[i];
    return head + 2.0 * bracket;
}

FitReport PiecewiseValue::check_fit() const {
    FitReport report;
    std::vector<double> pts;
    for (const auto& p : schedule_.points) pts.push_back(p.value);
    // step costs carry their own kink, worth reporting even with no schedule
    if (!cost_.continuous_on_domain()) pts.push_back(cost_.rho);
    for (double p : pts) {
        FitEntry e;
        e.point = p;
        // continuity: value from the left segment vs the right segment chain
        double left_val = 0.0, right_val = 0.0;
        {
            const auto& ls = segment_at(p);
            left_val = (ls.b == p)
                           ? ls.value_at_b
                           : eval(p);
            bool found = false;
            for (std::size_t k = 0; k + 1 < segments_.size(); ++k)
                if (segments_[k].b == p) {
                    const auto& rs = segments_[k + 1];
                    right_val =
                        rs.value_at_b -
                        (rs.branch == Branch::Radial
                             ? rs.seed_slope * (rs.b - p) - 2.0 * f2_part(cost_, rs.a, p, rs.b)
                             : -2.0 * cost_.integral_sf(p, rs.b));
                    found = true;
                    break;
                }
            if (!found) right_val = eval(p);
        }
        e.value_gap = std::abs(left_val - right_val);
        e.deriv_gap = std::abs(eval_derivative(p, Side::Left) - eval_derivative(p, Side::Right));
        if (e.value_gap >= 1e-8 || e.deriv_gap >= 1e-6) report.pass = false;
        report.entries.push_back(e);
    }
    return report;
}

void PiecewiseValue::tabulate(std::ostream& os, int grid_n) const {
    os << "r,V,dV_left,dV_right,branch\n";
    for (int i = 1; i <= grid_n; ++i) {
        const double r = cost_.R * static_cast<double>(i) / grid_n;
        const auto& s = segment_at(r);
        os << r << ',' << eval(r) << ',' << eval_derivative(r, Side::Left) << ','
           << eval_derivative(r, Side::Right) << ','
           << (s.branch == Branch::Radial ? "radial" : "tangential") << '\n';
    }
}

}  // namespace rsc
