#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsc/sim.hpp"

namespace rsc {

struct CostEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    double ci95_halfwidth = 0.0;  // 1.96 * std_error
    std::int64_t n_paths = 0;
    double capped_fraction = 0.0;

    nlohmann::json to_json() const;
};

// Runs every path of the configuration and hands the results to the sink in
// an unspecified thread, indexed by path. Results are bitwise independent of
// the worker count because each path's randomness is keyed by its index.
void for_each_path(const RadialCost& cost, const ControlPolicy& policy, double x0,
                   const SimConfig& cfg, int n_threads,
                   const std::function<void(std::int64_t, const PathResult&)>& sink);

// Mean / standard error of statistic(path) over cfg.n_paths paths, reduced in
// path order with a streaming accumulator.
CostEstimate estimate_statistic(const RadialCost& cost, const ControlPolicy& policy, double x0,
                                const SimConfig& cfg,
                                const std::function<double(const PathResult&)>& statistic,
                                int n_threads = 0);

CostEstimate estimate_cost(const RadialCost& cost, const ControlPolicy& policy, double x0,
                           const SimConfig& cfg, int n_threads = 0);

CostEstimate estimate_exit_time(const RadialCost& cost, const ControlPolicy& policy, double x0,
                                const SimConfig& cfg, int n_threads = 0);

// Closed-form expected cost of pure radial motion through the 1D Green's
// function with speed measure 2 dy:
//   2 int_{x0}^R (R - y) f(y) dy + 2 (R - x0) int_0^{x0} f(y) dy.
// Divergent growth at the origin yields the appropriate +-infinity.
double radial_oracle(const RadialCost& cost, double x0);

struct PolicyComparison {
    struct Row {
        std::string policy;
        CostEstimate estimate;
    };
    std::vector<Row> ranked;  // ascending mean: best policy first
    double analytic_value = 0.0;
    bool analytic_lower_bound_ok = true;  // V(x0) <= every estimate + ci95 + bias
    bool optimal_matches_value = true;    // |optimal mean - V(x0)| <= ci95 + bias

    nlohmann::json to_json() const;
};

// Runs {optimal, radial, tangential, lambda=0.5} and ranks them against the
// analytic value. At x0 = 0 the tangential-at-origin policies are wrapped in
// OriginDelta with delta = 0.01 R.
PolicyComparison compare_policies(const RadialCost& cost, double x0, const SimConfig& cfg,
                                  int n_threads = 0);

// Euler bias allowance used when comparing Monte Carlo means to analytic
// values, measured by dt-halving on the step costs.
inline constexpr double kEulerBiasAllowance = 5e-3;

}  // namespace rsc
