#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rsc/cost.hpp"
#include "rsc/switching.hpp"

namespace rsc {

// Simulatable control. OriginDelta wraps another policy and forces radial
// motion inside the ball of radius delta, which is the approximation the
// tangential strategies need to start from the exact origin.
struct ControlPolicy {
    enum class Kind { PureRadial, PureTangential, OptimalSwitch, ConstantLambda, OriginDelta };

    Kind kind = Kind::PureRadial;
    double lambda = 1.0;          // ConstantLambda
    SwitchingSchedule schedule;   // OptimalSwitch
    double delta = 0.0;           // OriginDelta
    std::shared_ptr<const ControlPolicy> inner;

    static ControlPolicy radial();
    static ControlPolicy tangential();
    static ControlPolicy optimal(SwitchingSchedule schedule);
    static ControlPolicy constant_lambda(double lambda);
    static ControlPolicy origin_delta(double delta, ControlPolicy inner, const RadialCost& cost);

    // lambda in [0,1] of the radius SDE at squared radius z: 1 is radial,
    // 0 is tangential.
    double lambda_at(double z) const;

    bool defined_at_origin() const;
    std::string name() const;
};

struct SimConfig {
    double dt = 1e-4;
    std::uint64_t seed = 0;
    std::int64_t n_paths = 100000;
    double max_time = -1.0;  // < 0: defaults to 10 R^2
    std::vector<double> sample_times;  // sorted; state is recorded at t and frozen after exit
    int trace_stride = 0;              // > 0: record every stride-th step
    bool positional = false;           // d = 2 planar coordinates in the trace
};

struct PathSample {
    double t;
    double z;
    double cost;
};

struct TraceRow {
    double t;
    double z;
    Regime regime;
    double x1 = 0.0;
    double x2 = 0.0;
};

struct PathResult {
    double exit_time = 0.0;
    double accumulated_cost = 0.0;
    bool hit_cap = false;
    std::vector<PathSample> samples;
    std::vector<TraceRow> trace;
};

// One Euler step of the squared radius: z + dt + 2 lambda sqrt(z) dW,
// clamped at zero. lambda = 0 reproduces the deterministic tangential drift,
// lambda = 1 the squared Bessel radial dynamics.
double step_z(double z, double lambda, double dw, double dt);

// Simulates Z under the policy until exit from the ball or the time cap,
// accumulating the running cost by the left-point rule. Fully determined by
// (cfg.seed, path_index).
PathResult simulate_path(const RadialCost& cost, const ControlPolicy& policy, double x0_radius,
                         const SimConfig& cfg, std::uint64_t path_index);

}  // namespace rsc
