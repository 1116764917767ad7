#include "rsc/switching.hpp"

#include <cmath>

#include "rsc/numeric.hpp"

namespace rsc {

namespace {

constexpr int kScanCells = 10000;

// Seed product s * f(s). At s = 0 this is the limit r f(r) as r -> 0, which
// vanishes whenever int_0 f converges (monotone f); divergent cases surface
// later as DivergentIntegral from the running integral itself.
double seed_product(const RadialCost& cost, double s) {
    if (s == 0.0) return 0.0;
    return s * cost.eval(s);
}

}  // namespace

std::optional<double> next_r(const RadialCost& cost, double s_prev,
                             std::vector<std::string>* diagnostics) {
    const double R = cost.R;
    const double seed = seed_product(cost, s_prev);
    auto g = [&](double r) {
        return seed + cost.integral_f(s_prev, r) - r * cost.eval(r);
    };
    const double h = (R - s_prev) / kScanCells;
    if (!(h > 0.0)) return std::nullopt;
    double lo = s_prev;
    for (int j = 1; j <= kScanCells; ++j) {
        const double x = (j == kScanCells) ? R : s_prev + j * h;
        const double gx = g(x);
        if (gx > 0.0) {
            const double root =
                num::bisect_boundary([&](double r) { return g(r) > 0.0; }, lo, x, 1e-12 * R);
            if (root >= R) return std::nullopt;
            return root;
        }
        if (diagnostics && gx == 0.0 && x > s_prev && diagnostics->size() < 8)
            diagnostics->push_back("tangency without crossing of g near r = " +
                                   std::to_string(x) + "; skipped");
        lo = x;
    }
    return std::nullopt;
}

std::optional<double> next_s(const RadialCost& cost, double r_prev) {
    const double R = cost.R;
    const double h = (R - r_prev) / kScanCells;
    if (!(h > 0.0)) return std::nullopt;
    double lo = r_prev;
    for (int j = 1; j <= kScanCells; ++j) {
        const double x = (j == kScanCells) ? R : r_prev + j * h;
        if (cost.right_derivative(x) > 0.0) {
            const double point = num::bisect_boundary(
                [&](double r) { return cost.right_derivative(r) > 0.0; }, lo, x, 1e-12 * R);
            if (point >= R) return std::nullopt;
            return point;
        }
        lo = x;
    }
    return std::nullopt;
}

SwitchingSchedule build_schedule(const RadialCost& cost) {
    SwitchingSchedule sched;
    sched.R = cost.R;
    sched.case_tag = cost.origin_monotone == OriginMonotone::IncreasingNearZero ? CaseTag::I
                                                                                : CaseTag::II;
    // step specials bypass the solver entirely
    if (!cost.continuous_on_domain()) return sched;

    // declared monotonicity must match the sampled derivative signs on (0, eta)
    {
        const bool incr = cost.origin_monotone == OriginMonotone::IncreasingNearZero;
        const int n = 32;
        const double lo = 1e-6 * cost.eta, hi = 0.999 * cost.eta;
        const double factor = std::pow(hi / lo, 1.0 / (n - 1));
        double r = lo;
        for (int i = 0; i < n; ++i, r *= factor) {
            const double d = cost.right_derivative(r);
            if ((incr && d < 0.0) || (!incr && d > 0.0))
                throw NotMonotoneAtOrigin("declared " + to_string(cost.origin_monotone) +
                                          " but f'_+ has the opposite sign at r = " +
                                          std::to_string(r));
        }
    }

    const int max_points = 128;  // finitely many sign changes guaranteed
    if (sched.case_tag == CaseTag::I) {
        double s_prev = 0.0;
        while (static_cast<int>(sched.points.size()) < max_points) {
            auto r = next_r(cost, s_prev, &sched.diagnostics);
            if (!r) break;
            sched.points.push_back({PointLabel::r, *r});
            auto s = next_s(cost, *r);
            if (!s) break;
            sched.points.push_back({PointLabel::s, *s});
            s_prev = *s;
        }
    } else {
        auto s = next_s(cost, 0.0);
        while (s && static_cast<int>(sched.points.size()) < max_points) {
            sched.points.push_back({PointLabel::s, *s});
            auto r = next_r(cost, *s, &sched.diagnostics);
            if (!r) break;
            sched.points.push_back({PointLabel::r, *r});
            s = next_s(cost, *r);
        }
    }
    return sched;
}

Regime SwitchingSchedule::regime_at(double r) const {
    // walk the alternation; bands [r_i, s_i] are tangential (closed), the
    // rest radial. Case II opens with the tangential band (0, s_0].
    Regime regime = case_tag == CaseTag::II ? Regime::Tangential : Regime::Radial;
    for (const auto& p : points) {
        if (p.label == PointLabel::r) {
            if (r < p.value) return regime;
            regime = Regime::Tangential;
        } else {
            if (r <= p.value) return regime;
            regime = Regime::Radial;
        }
    }
    return regime;
}

nlohmann::json SwitchingSchedule::to_json() const {
    nlohmann::json j;
    j["case"] = case_tag == CaseTag::I ? "I" : "II";
    j["points"] = nlohmann::json::array();
    for (const auto& p : points)
        j["points"].push_back(
            {{"label", p.label == PointLabel::r ? "r" : "s"}, {"value", p.value}});
    j["R"] = R;
    return j;
}

SwitchingSchedule SwitchingSchedule::from_json(const nlohmann::json& j) {
    SwitchingSchedule s;
    const std::string c = j.at("case").get<std::string>();
    if (c == "I")
        s.case_tag = CaseTag::I;
    else if (c == "II")
        s.case_tag = CaseTag::II;
    else
        throw cost_error("schedule case must be I or II");
    if (j.contains("R")) s.R = j.at("R").get<double>();
    double prev = 0.0;
    for (const auto& e : j.at("points")) {
        SwitchPoint p;
        const std::string l = e.at("label").get<std::string>();
        p.label = l == "r" ? PointLabel::r : PointLabel::s;
        p.value = e.at("value").get<double>();
        if (p.value <= prev) throw cost_error("schedule points must be strictly increasing");
        prev = p.value;
        s.points.push_back(p);
    }
    return s;
}

}  // namespace rsc
