// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rsc/hjb.hpp"
#include "rsc/montecarlo.hpp"
#include "rsc/numeric.hpp"
#include "rsc/origin.hpp"
#include "rsc/value.hpp"

using namespace rsc;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %s%s%s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

SimConfig mc_config(std::int64_t paths, double dt, std::uint64_t seed) {
    SimConfig cfg;
    cfg.n_paths = paths;
    cfg.dt = dt;
    cfg.seed = seed;
    return cfg;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// ---- 1. exit-time conservation --------------------------------------------
void criterion_exit_time() {
    const auto cost = RadialCost::step_decreasing(0.5, 1.0);
    const auto sched = build_schedule(cost);
    bool pass = true;
    std::string detail;
    for (const std::string& name : {"radial", "tangential", "optimal", "lambda"}) {
        for (double x0 : {0.0, 0.4, 0.8}) {
            ControlPolicy policy = name == "radial"       ? ControlPolicy::radial()
                                   : name == "tangential" ? ControlPolicy::tangential()
                                   : name == "optimal"    ? ControlPolicy::optimal(sched)
                                                          : ControlPolicy::constant_lambda(0.5);
            if (x0 == 0.0 && !policy.defined_at_origin())
                policy = ControlPolicy::origin_delta(0.01, std::move(policy), cost);
            const auto est =
                estimate_exit_time(cost, policy, x0, mc_config(100000, 1e-4, 2024));
            const double target = 1.0 - x0 * x0;
            const bool ok = std::abs(est.mean - target) <= 3.0 * est.std_error + 1e-9 &&
                            est.capped_fraction < 0.01;
            if (!ok) {
                pass = false;
                detail += name + "@x0=" + fmt(x0) + ": mean " + fmt(est.mean) + " vs " +
                          fmt(target) + " (3SE " + fmt(3.0 * est.std_error) + "); ";
            }
        }
    }
    if (pass) detail = "12/12 cells match R^2 - x0^2 within 3 SE, 1e5 paths, dt 1e-4";
    report(1, "exit-time conservation across policies", pass, detail);
}

// ---- 2. step-decreasing value ----------------------------------------------
void criterion_step_decreasing() {
    const auto cost = RadialCost::step_decreasing(0.5, 1.0);
    const auto value = build_value(cost, build_schedule(cost));
    bool pass = std::abs(value.eval(0.3) - (-0.75)) < 1e-12 &&
                std::abs(value.eval(0.8) - (-0.36)) < 1e-12;
    std::string detail = "V(0.3) = " + fmt(value.eval(0.3)) + ", V(0.8) = " + fmt(value.eval(0.8));
    for (double x0 : {0.0, 0.3, 0.8}) {
        ControlPolicy policy = ControlPolicy::optimal(value.schedule());
        if (x0 == 0.0) policy = ControlPolicy::origin_delta(0.01, std::move(policy), cost);
        const auto est = estimate_cost(cost, policy, x0, mc_config(100000, 1e-4, 7));
        const double target = value.eval(x0);
        if (std::abs(est.mean - target) > 3.0 * est.std_error + kEulerBiasAllowance) {
            pass = false;
            detail += "; MC@x0=" + fmt(x0) + " " + fmt(est.mean) + " vs " + fmt(target);
        }
    }
    report(2, "step-decreasing analytic and Monte Carlo values", pass, detail);
}

// ---- 3. step-increasing value ----------------------------------------------
void criterion_step_increasing() {
    const auto cost = RadialCost::step_increasing(0.5, 1.0);
    const auto value = build_value(cost, build_schedule(cost));
    bool pass = std::abs(value.eval(0.0) - (-0.75)) < 1e-12 &&
                std::abs(value.eval(0.8) - (-0.2)) < 1e-12;
    pass = pass && std::abs(radial_oracle(cost, 0.0) - value.eval(0.0)) < 1e-10;
    std::string detail = "V(0) = " + fmt(value.eval(0.0)) + ", V(0.8) = " + fmt(value.eval(0.8)) +
                         ", radial oracle gap " +
                         fmt(std::abs(radial_oracle(cost, 0.0) - value.eval(0.0)));
    for (double x0 : {0.0, 0.8}) {
        const auto est =
            estimate_cost(cost, ControlPolicy::radial(), x0, mc_config(100000, 1e-4, 8));
        const double target = value.eval(x0);
        if (std::abs(est.mean - target) > 3.0 * est.std_error + kEulerBiasAllowance) {
            pass = false;
            detail += "; MC@x0=" + fmt(x0) + " " + fmt(est.mean) + " vs " + fmt(target);
        }
    }
    report(3, "step-increasing analytic, oracle and Monte Carlo values", pass, detail);
}

// ---- 4. sinusoid switching points, smooth fit, HJB --------------------------
void criterion_sinusoid() {
    const auto cost = RadialCost::sinusoid(6.0);
    const auto sched = build_schedule(cost);
    bool pass = sched.points.size() == 2;
    std::string detail;
    if (pass) {
        const double r1 = sched.points[0].value;
        const double s1 = sched.points[1].value;
        // independent root finder: Brent on 1 - cos r - r sin r, equivalently
        // the fixed point of tan(r/2) = r
        const double r1_brent = num::brent(
            [](double r) { return 1.0 - std::cos(r) - r * std::sin(r); }, 2.0, 3.0, 1e-14);
        const double pi = std::acos(-1.0);
        pass = std::abs(r1 - r1_brent) < 1e-6 && std::abs(r1_brent - 2.331122) < 5e-6 &&
               std::abs(std::tan(r1_brent / 2) - r1_brent) < 1e-8 &&
               std::abs(s1 - 1.5 * pi) < 1e-9;
        detail = "r1 = " + fmt(r1) + " (brent " + fmt(r1_brent) + "), s1 - 3pi/2 = " +
                 fmt(s1 - 1.5 * pi);
        const auto value = build_value(cost, sched);
        const auto fit = value.check_fit();
        for (const auto& e : fit.entries) {
            if (e.deriv_gap >= 1e-6 || e.value_gap >= 1e-8) pass = false;
            detail += ", fit@" + fmt(e.point) + " dV gap " + fmt(e.deriv_gap);
        }
        const auto hjb = hjb_verify(value);
        if (hjb.status != HjbStatus::Pass) pass = false;
        detail += ", HJB " + std::string(hjb.status == HjbStatus::Pass ? "PASS" : "FAIL") +
                  " (tol " + fmt(hjb.tol) + ")";
    }
    report(4, "sinusoid switching points, smooth fit and HJB verification", pass, detail);
}

// ---- 5. policy dominance -----------------------------------------------------
struct DominanceCell {
    RadialCost cost;
    double x0;
    double dt;
};

void criterion_dominance() {
    bool pass = true;
    std::string detail;
    std::vector<DominanceCell> cells = {
        {RadialCost::sinusoid(6.0), 1.0, 1e-3},
        {RadialCost::step_decreasing(0.5, 1.0), 0.0, 1e-4},
        {RadialCost::step_increasing(0.5, 1.0), 0.0, 1e-4},
    };
    int cell_idx = 0;
    for (const auto& cell : cells) {
        const auto& cost = cell.cost;
        const auto sched = build_schedule(cost);
        const auto value = build_value(cost, sched);
        const double analytic_opt = value.eval(cell.x0);
        const double delta = 0.01 * cost.R;

        auto wrap = [&](ControlPolicy p) {
            if (cell.x0 == 0.0 && !p.defined_at_origin())
                return ControlPolicy::origin_delta(delta, std::move(p), cost);
            return p;
        };
        const auto cfg = mc_config(100000, cell.dt, 100 + cell_idx);
        const auto opt = estimate_cost(cost, wrap(ControlPolicy::optimal(sched)), cell.x0, cfg);
        const auto rad = estimate_cost(cost, ControlPolicy::radial(), cell.x0, cfg);
        const auto tan = estimate_cost(cost, wrap(ControlPolicy::tangential()), cell.x0, cfg);
        const auto half = estimate_cost(cost, ControlPolicy::constant_lambda(0.5), cell.x0, cfg);

        // optimal estimate must sit on the analytic value
        if (std::abs(opt.mean - analytic_opt) > opt.ci95_halfwidth + kEulerBiasAllowance) {
            pass = false;
            detail += "opt vs V mismatch on cell " + std::to_string(cell_idx) + " (" +
                      fmt(opt.mean) + " vs " + fmt(analytic_opt) + "); ";
        }
        // alternatives with a known analytic value and a real gap must lose
        struct Alt {
            const CostEstimate* est;
            double analytic;
        };
        const double analytic_radial = radial_oracle(cost, cell.x0);
        const double start = std::max(cell.x0, cell.x0 == 0.0 ? delta : cell.x0);
        double analytic_tangential = 2.0 * cost.integral_sf(start, cost.R);
        if (cell.x0 == 0.0)
            analytic_tangential +=
                2.0 * num::integrate([&](double y) { return (delta - y) * cost.eval(y); }, 0.0,
                                     delta, 1e-12);
        for (const Alt& alt : {Alt{&rad, analytic_radial}, Alt{&tan, analytic_tangential}}) {
            if (!std::isfinite(alt.analytic)) continue;
            if (alt.analytic - analytic_opt > 0.05) {
                const double ci =
                    1.96 * std::sqrt(opt.std_error * opt.std_error +
                                     alt.est->std_error * alt.est->std_error);
                if (!(opt.mean <= alt.est->mean - 2.0 * ci)) {
                    pass = false;
                    detail += "dominance failed on cell " + std::to_string(cell_idx) + "; ";
                }
            }
        }
        // no analytic value for lambda = 0.5: optimal may not lose at CI level
        const double ci_half = 1.96 * std::sqrt(opt.std_error * opt.std_error +
                                                half.std_error * half.std_error);
        if (!(opt.mean <= half.mean + 2.0 * ci_half + kEulerBiasAllowance)) {
            pass = false;
            detail += "optimal lost to lambda=0.5 on cell " + std::to_string(cell_idx) + "; ";
        }
        ++cell_idx;
    }
    if (pass) detail = "optimal matches V(x0) and dominates on all 3 costs, 1e5 paths";
    report(5, "policy dominance and optimal-value agreement", pass, detail);
}

// ---- 6. origin classification table ----------------------------------------
void criterion_origin_table() {
    using M = OriginMonotone;
    using G = OriginGrowth;
    const OriginRegime F = OriginRegime::FiniteEqualsV;
    struct Row {
        M m;
        G g;
        bool consistent;
        OriginRegime d2;
        OriginRegime d3;
    };
    const Row table[] = {
        {M::IncreasingNearZero, G::Bounded, true, F, F},
        {M::IncreasingNearZero, G::IntegrableF, true, F, F},
        {M::IncreasingNearZero, G::IntegrableSFOnly, false, F, F},
        {M::IncreasingNearZero, G::NonIntegrableSF, false, F, F},
        {M::IncreasingNearZero, G::NegativeNonIntegrable, true,
         OriginRegime::MinusInfinityEverywhere, OriginRegime::MinusInfinityEverywhere},
        {M::DecreasingNearZero, G::Bounded, true, F, F},
        {M::DecreasingNearZero, G::IntegrableF, true, F, F},
        {M::DecreasingNearZero, G::IntegrableSFOnly, true, OriginRegime::WeakFiniteStrongOpen, F},
        {M::DecreasingNearZero, G::NonIntegrableSF, true, OriginRegime::PlusInfinityAtOrigin,
         OriginRegime::PlusInfinityAtOrigin},
        {M::DecreasingNearZero, G::NegativeNonIntegrable, false, F, F},
    };
    bool pass = true;
    std::string detail;
    for (const auto& row : table) {
        for (int d : {2, 3}) {
            try {
                const auto got = classify_regime(row.m, row.g, d);
                if (!row.consistent || got != (d == 2 ? row.d2 : row.d3)) pass = false;
            } catch (const InconsistentDeclaration&) {
                if (row.consistent) pass = false;
            }
        }
    }
    // power-law origin values against a quadrature oracle; the substitution
    // s = u^2 turns 2 s^{1-alpha} ds into the smooth 4 u^{3-2 alpha} du
    auto sf_oracle = [](double alpha) {
        return num::integrate(
            [alpha](double u) { return 4.0 * std::pow(u, 3.0 - 2.0 * alpha); }, 0.0, 1.0, 1e-12);
    };
    const auto c05 = classify_origin(RadialCost::power_law(0.5, +1, 1.0, 2));
    const auto c15w = classify_origin(RadialCost::power_law(1.5, +1, 1.0, 2));
    const auto c15s = classify_origin(RadialCost::power_law(1.5, +1, 1.0, 3));
    pass = pass && c05.regime == OriginRegime::FiniteEqualsV && c05.v0 &&
           std::abs(*c05.v0 - sf_oracle(0.5)) < 1e-8 && std::abs(*c05.v0 - 4.0 / 3.0) < 1e-8;
    pass = pass && c15w.regime == OriginRegime::WeakFiniteStrongOpen && c15w.v0 &&
           std::abs(*c15w.v0 - sf_oracle(1.5)) < 1e-8 && std::abs(*c15w.v0 - 4.0) < 1e-8;
    pass = pass && c15s.regime == OriginRegime::FiniteEqualsV;
    detail = "10-row table exact; v0(alpha=0.5) = " + fmt(c05.v0 ? *c05.v0 : 0.0) +
             ", v0(alpha=1.5, d=2) = " + fmt(c15w.v0 ? *c15w.v0 : 0.0);
    report(6, "origin classification truth table and power-law values", pass, detail);
}

// ---- 7. delta-approximation convergence -------------------------------------
void criterion_delta_convergence() {
    const auto cost = RadialCost::power_law(0.5, +1, 1.0);
    const auto value = build_value(cost, build_schedule(cost));
    const double v0 = value.origin_value();  // 4/3
    bool pass = std::abs(v0 - 4.0 / 3.0) < 1e-10;
    std::string detail = "V(0) = " + fmt(v0);
    double prev_mean = 1e300, prev_ci = 0.0;
    for (double delta : {0.1, 0.05, 0.025}) {
        const auto policy =
            ControlPolicy::origin_delta(delta, ControlPolicy::tangential(), cost);
        const auto est = estimate_cost(cost, policy, 0.0, mc_config(20000, 5e-5, 55));
        // analytic excess cost of the delta policy over V(0):
        // E(delta) = 2 int_0^delta (delta - 2y) f(y) dy via the antiderivatives
        const double err_analytic = 2.0 * (delta * cost.integral_f(0.0, delta) -
                                           2.0 * cost.integral_sf(0.0, delta));
        const double empirical = est.mean - v0;
        detail += "; delta " + fmt(delta) + ": excess " + fmt(empirical) + " (E(delta) " +
                  fmt(err_analytic) + ")";
        if (std::abs(empirical) > 2.0 * err_analytic + est.ci95_halfwidth + kEulerBiasAllowance)
            pass = false;
        // means decrease towards V(0) as delta shrinks, within CI slack
        if (est.mean > prev_mean + 1.96 * (prev_ci + est.ci95_halfwidth) + kEulerBiasAllowance)
            pass = false;
        prev_mean = est.mean;
        prev_ci = est.ci95_halfwidth;
    }
    report(7, "delta-approximation converges to V(0) within the analytic error", pass, detail);
}

// ---- 8. martingale / DPP suite ----------------------------------------------
struct ProbeStats {
    std::vector<double> mean;
    std::vector<double> se;
};

ProbeStats probe_value_process(const RadialCost& cost, const PiecewiseValue& value,
                               const ControlPolicy& policy, double x0, const SimConfig& base,
                               const std::vector<double>& times) {
    SimConfig cfg = base;
    cfg.sample_times = times;
    std::vector<std::vector<double>> m(times.size(),
                                       std::vector<double>(static_cast<std::size_t>(cfg.n_paths)));
    for_each_path(cost, policy, x0, cfg, 0, [&](std::int64_t i, const PathResult& p) {
        for (std::size_t t = 0; t < times.size(); ++t)
            m[t][static_cast<std::size_t>(i)] =
                value.eval(std::sqrt(p.samples[t].z)) + p.samples[t].cost;
    });
    ProbeStats out;
    for (const auto& col : m) {
        double mean = 0.0, m2 = 0.0;
        std::int64_t n = 0;
        for (double v : col) {
            ++n;
            const double d = v - mean;
            mean += d / static_cast<double>(n);
            m2 += d * (v - mean);
        }
        out.mean.push_back(mean);
        out.se.push_back(std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)));
    }
    return out;
}

void criterion_martingale() {
    const auto cost = RadialCost::step_decreasing(0.5, 1.0);
    const auto value = build_value(cost, build_schedule(cost));
    const std::vector<double> times = {0.1, 0.3, 0.5};
    const auto cfg = mc_config(50000, 1e-4, 99);
    bool pass = true;
    std::string detail;

    // optimal policy: V(sqrt(Z_{t ^ tau})) + running cost is a martingale
    const auto opt_policy = ControlPolicy::origin_delta(
        0.01, ControlPolicy::optimal(value.schedule()), cost);
    const auto opt = probe_value_process(cost, value, opt_policy, 0.0, cfg, times);
    const double m0 = value.eval(0.0);
    for (std::size_t t = 0; t < times.size(); ++t) {
        if (std::abs(opt.mean[t] - m0) > 3.0 * opt.se[t] + 2e-3) pass = false;
        detail += "M(" + fmt(times[t]) + ") = " + fmt(opt.mean[t]) + "; ";
    }

    // suboptimal radial policy: submartingale, so the means must not decrease
    const auto rad = probe_value_process(cost, value, ControlPolicy::radial(), 0.0, cfg, times);
    if (!(rad.mean[0] >= m0 - 3.0 * rad.se[0] - 2e-3)) pass = false;
    for (std::size_t t = 1; t < times.size(); ++t) {
        const double slack =
            3.0 * std::sqrt(rad.se[t] * rad.se[t] + rad.se[t - 1] * rad.se[t - 1]) + 2e-3;
        if (!(rad.mean[t] >= rad.mean[t - 1] - slack)) pass = false;
    }
    detail += "radial drift " + fmt(rad.mean.back() - rad.mean.front());
    report(8, "martingale for the optimal policy, submartingale for radial", pass, detail);
}

// ---- 9. mutation sensitivity -------------------------------------------------
void criterion_mutation() {
    const auto cost = RadialCost::sinusoid(6.0);
    const auto sched = build_schedule(cost);
    const auto value = build_value(cost, sched);
    const auto broken = hjb_verify_fn(
        [&](double r) { return value.eval(r) + 0.01 * std::sin(5.0 * r); }, cost, sched);
    bool pass = broken.status == HjbStatus::Fail;
    std::string detail =
        "perturbed HJB verify: " + std::string(pass ? "FAIL as expected" : "unexpected PASS");

    auto tampered = sched;
    tampered.points[0].value += 0.05;
    const auto tampered_value = build_value(cost, tampered);
    const auto fit = tampered_value.check_fit();
    double gap_at_r1 = 0.0;
    for (const auto& e : fit.entries)
        if (std::abs(e.point - tampered.points[0].value) < 1e-12) gap_at_r1 = e.deriv_gap;
    if (!(gap_at_r1 > 1e-2)) pass = false;
    detail += "; smooth-fit gap after shifting r1 by 0.05: " + fmt(gap_at_r1);
    report(9, "mutation sensitivity of HJB verify and smooth fit", pass, detail);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_exit_time();
    criterion_step_decreasing();
    criterion_step_increasing();
    criterion_sinusoid();
    criterion_dominance();
    criterion_origin_table();
    criterion_delta_convergence();
    criterion_martingale();
    criterion_mutation();
    if (g_failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
