#include "rsc/sim.hpp"

#include <cmath>
#include <cstdio>

#include "rsc/rng.hpp"

namespace rsc {

ControlPolicy ControlPolicy::radial() {
    ControlPolicy p;
    p.kind = Kind::PureRadial;
    p.lambda = 1.0;
    return p;
}

ControlPolicy ControlPolicy::tangential() {
    ControlPolicy p;
    p.kind = Kind::PureTangential;
    p.lambda = 0.0;
    return p;
}

ControlPolicy ControlPolicy::optimal(SwitchingSchedule schedule) {
    ControlPolicy p;
    p.kind = Kind::OptimalSwitch;
    p.schedule = std::move(schedule);
    return p;
}

ControlPolicy ControlPolicy::constant_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw cost_error("ConstantLambda requires lambda in [0, 1]");
    ControlPolicy p;
    p.kind = Kind::ConstantLambda;
    p.lambda = lambda;
    return p;
}

ControlPolicy ControlPolicy::origin_delta(double delta, ControlPolicy inner,
                                          const RadialCost& cost) {
    if (!(delta > 0.0 && delta < cost.eta))
        throw cost_error("OriginDelta requires delta in (0, eta)");
    ControlPolicy p;
    p.kind = Kind::OriginDelta;
    p.delta = delta;
    p.inner = std::make_shared<ControlPolicy>(std::move(inner));
    return p;
}

double ControlPolicy::lambda_at(double z) const {
    switch (kind) {
        case Kind::PureRadial: return 1.0;
        case Kind::PureTangential: return 0.0;
        case Kind::ConstantLambda: return lambda;
        case Kind::OptimalSwitch:
            return schedule.regime_at(std::sqrt(z)) == Regime::Tangential ? 0.0 : 1.0;
        case Kind::OriginDelta:
            return z < delta * delta ? 1.0 : inner->lambda_at(z);
    }
    return 1.0;
}

bool ControlPolicy::defined_at_origin() const {
    switch (kind) {
        case Kind::PureTangential:
            return false;
        case Kind::OptimalSwitch:
            // Case II opens tangentially at the origin
            return schedule.case_tag == CaseTag::I;
        default:
            return true;
    }
}

std::string ControlPolicy::name() const {
    switch (kind) {
        case Kind::PureRadial: return "radial";
        case Kind::PureTangential: return "tangential";
        case Kind::OptimalSwitch: return "optimal";
        case Kind::ConstantLambda: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "lambda=%g", lambda);
            return buf;
        }
        case Kind::OriginDelta: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "delta=%g", delta);
            return std::string(buf) + "(" + inner->name() + ")";
        }
    }
    return "?";
}

double step_z(double z, double lambda, double dw, double dt) {
    if (lambda == 0.0) return z + dt;
    if (z == 0.0) return z + dt;
    // (sqrt(z) + lambda dw)^2 + (1 - lambda^2) dt: conditional mean exactly
    // z + dt and nonnegative by construction. Plain Euler with a clamp at 0
    // picks up an O(sqrt(dt)) upward drift near the origin, which shows up as
    // a bias in exit times; for lambda = 1 this form is the exact transition
    // of the squared 1D Brownian radius.
    const double root = std::sqrt(z) + lambda * dw;
    return root * root + (1.0 - lambda * lambda) * dt;
}

PathResult simulate_path(const RadialCost& cost, const ControlPolicy& policy, double x0_radius,
                         const SimConfig& cfg, std::uint64_t path_index) {
    const double R = cost.R;
    const double R2 = R * R;
    if (!(x0_radius >= 0.0 && x0_radius < R))
        throw cost_error("simulate_path: x0 must lie in [0, R)");
    if (x0_radius == 0.0 && !policy.defined_at_origin())
        throw PolicyUndefinedAtOrigin(
            "tangential motion is not defined at the origin; wrap the policy in OriginDelta");
    if (!(cfg.dt > 0.0)) throw cost_error("simulate_path: dt must be positive");
    const double max_time = cfg.max_time > 0.0 ? cfg.max_time : 10.0 * R2;
    const double dt = cfg.dt;
    const double sqrt_dt = std::sqrt(dt);
    // costs unbounded at the origin are evaluated no closer than this radius
    const double r_floor = cost.bounded_at_origin() ? 0.0 : 1e-3 * R;

    PathRng rng(cfg.seed, path_index);
    PathResult out;
    out.samples.reserve(cfg.sample_times.size());

    double z = x0_radius * x0_radius;
    // deterministic stretches are anchored so z carries no accumulation drift
    double z_anchor = z;
    std::uint64_t k_anchor = 0;
    std::size_t next_sample = 0;

    // planar coordinates, only advanced when a positional trace is wanted
    double theta = 0.0;
    double dir = 1.0;

    auto record_trace = [&](std::uint64_t k, double t, double zz, Regime regime) {
        if (cfg.trace_stride > 0 && k % static_cast<std::uint64_t>(cfg.trace_stride) == 0) {
            TraceRow row{t, zz, regime, 0.0, 0.0};
            if (cfg.positional) {
                const double r = dir * std::sqrt(zz);
                row.x1 = r * std::cos(theta);
                row.x2 = r * std::sin(theta);
            }
            out.trace.push_back(row);
        }
    };

    std::uint64_t k = 0;
    double cost_acc = 0.0;
    while (true) {
        const double t = static_cast<double>(k) * dt;
        while (next_sample < cfg.sample_times.size() && t >= cfg.sample_times[next_sample]) {
            out.samples.push_back({cfg.sample_times[next_sample], z, cost_acc});
            ++next_sample;
        }
        if (t >= max_time) {
            out.exit_time = max_time;
            out.accumulated_cost = cost_acc;
            out.hit_cap = true;
            break;
        }
        const double lambda = policy.lambda_at(z);
        record_trace(k, t, z, lambda == 0.0 ? Regime::Tangential : Regime::Radial);
        const double r_eval = std::max(std::sqrt(z), r_floor);
        const double f_here = cost.eval(r_eval);

        double z_next;
        bool exited = false;
        double theta_step = 0.0;
        if (lambda == 0.0) {
            z_next = z_anchor + static_cast<double>(k + 1 - k_anchor) * dt;
            if (cfg.positional && z > 0.0)
                theta_step = rng.normal(k, 1) * sqrt_dt / std::sqrt(z);
            if (z_next >= R2) {
                const double theta_frac = (R2 - z) / dt;  // dz/dt = 1 on this stretch
                cost_acc += f_here * theta_frac * dt;
                out.exit_time = t + theta_frac * dt;
                exited = true;
            }
        } else {
            const auto u = rng.uniforms(k, 0);
            const double dw = num::normal_icdf(u.a) * sqrt_dt;
            z_next = step_z(z, lambda, dw, dt);
            // signed radius crossing zero flips the ray for the planar trace
            if (cfg.positional && std::sqrt(z) + lambda * dw < 0.0) dir = -dir;
            if (z_next >= R2) {
                const double frac = (R2 - z) / (z_next - z);
                cost_acc += f_here * frac * dt;
                out.exit_time = t + frac * dt;
                exited = true;
            } else {
                // Brownian bridge test for an excursion above R^2 inside the
                // step; without it the exit time carries an O(sqrt(dt)) bias
                const double sigma = 2.0 * lambda * std::sqrt(z);
                if (sigma > 0.0) {
                    const double expo = -2.0 * (R2 - z) * (R2 - z_next) / (sigma * sigma * dt);
                    if (expo > -700.0 && u.b < std::exp(expo)) {
                        const double frac = (R2 - z) / ((R2 - z) + (R2 - z_next));
                        cost_acc += f_here * frac * dt;
                        out.exit_time = t + frac * dt;
                        exited = true;
                    }
                }
            }
            z_anchor = z_next;
            k_anchor = k + 1;
        }
        if (exited) {
            out.accumulated_cost = cost_acc;
            z = R2;
            break;
        }
        cost_acc += f_here * dt;
        theta += theta_step;
        z = z_next;
        ++k;
    }
    // freeze remaining samples at the stopped state
    while (next_sample < cfg.sample_times.size()) {
        out.samples.push_back({cfg.sample_times[next_sample], z, out.accumulated_cost});
        ++next_sample;
    }
    return out;
}

}  // namespace rsc
