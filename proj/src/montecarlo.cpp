#include "rsc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "rsc/value.hpp"

namespace rsc {

void for_each_path(const RadialCost& cost, const ControlPolicy& policy, double x0,
                   const SimConfig& cfg, int n_threads,
                   const std::function<void(std::int64_t, const PathResult&)>& sink) {
    if (cfg.n_paths < 1) throw cost_error("n_paths must be >= 1");
    int workers = n_threads > 0 ? n_threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = static_cast<int>(std::min<std::int64_t>(workers, cfg.n_paths));
    if (workers == 1) {
        for (std::int64_t i = 0; i < cfg.n_paths; ++i)
            sink(i, simulate_path(cost, policy, x0, cfg, static_cast<std::uint64_t>(i)));
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::int64_t i = w; i < cfg.n_paths; i += workers)
                    sink(i, simulate_path(cost, policy, x0, cfg, static_cast<std::uint64_t>(i)));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

CostEstimate estimate_statistic(const RadialCost& cost, const ControlPolicy& policy, double x0,
                                const SimConfig& cfg,
                                const std::function<double(const PathResult&)>& statistic,
                                int n_threads) {
    std::vector<double> values(static_cast<std::size_t>(cfg.n_paths));
    std::vector<char> capped(static_cast<std::size_t>(cfg.n_paths), 0);
    for_each_path(cost, policy, x0, cfg, n_threads,
                  [&](std::int64_t i, const PathResult& p) {
                      values[static_cast<std::size_t>(i)] = statistic(p);
                      capped[static_cast<std::size_t>(i)] = p.hit_cap ? 1 : 0;
                  });
    // Welford in path order: the estimate is bitwise independent of workers
    double mean = 0.0, m2 = 0.0;
    std::int64_t n = 0, n_capped = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        ++n;
        const double d = values[i] - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (values[i] - mean);
        n_capped += capped[i];
    }
    CostEstimate est;
    est.n_paths = n;
    est.mean = mean;
    const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    est.std_error = std::sqrt(var / static_cast<double>(n));
    est.ci95_halfwidth = 1.96 * est.std_error;
    est.capped_fraction = static_cast<double>(n_capped) / static_cast<double>(n);
    return est;
}

CostEstimate estimate_cost(const RadialCost& cost, const ControlPolicy& policy, double x0,
                           const SimConfig& cfg, int n_threads) {
    return estimate_statistic(cost, policy, x0, cfg,
                              [](const PathResult& p) { return p.accumulated_cost; }, n_threads);
}

CostEstimate estimate_exit_time(const RadialCost& cost, const ControlPolicy& policy, double x0,
                                const SimConfig& cfg, int n_threads) {
    return estimate_statistic(cost, policy, x0, cfg,
                              [](const PathResult& p) { return p.exit_time; }, n_threads);
}

double radial_oracle(const RadialCost& cost, double x0) {
    const double R = cost.R;
    if (!(x0 >= 0.0 && x0 < R)) throw cost_error("radial_oracle: x0 must lie in [0, R)");
    const double inf = std::numeric_limits<double>::infinity();
    const double diverges = cost.origin_monotone == OriginMonotone::DecreasingNearZero
                                ? inf    // positive blow-up at the origin
                                : -inf;  // negative blow-up at the origin
    try {
        const double outer = R * cost.integral_f(x0, R) - cost.integral_sf(x0, R);
        if (x0 == 0.0) return 2.0 * outer;
        return 2.0 * outer + 2.0 * (R - x0) * cost.integral_f(0.0, x0);
    } catch (const DivergentIntegral&) {
        return diverges;
    }
}

PolicyComparison compare_policies(const RadialCost& cost, double x0, const SimConfig& cfg,
                                  int n_threads) {
    const auto schedule = build_schedule(cost);
    const auto value = build_value(cost, schedule);

    auto wrap_at_origin = [&](ControlPolicy p) {
        if (x0 == 0.0 && !p.defined_at_origin())
            return ControlPolicy::origin_delta(0.01 * cost.R, std::move(p), cost);
        return p;
    };

    std::vector<ControlPolicy> policies;
    policies.push_back(wrap_at_origin(ControlPolicy::optimal(schedule)));
    policies.push_back(ControlPolicy::radial());
    policies.push_back(wrap_at_origin(ControlPolicy::tangential()));
    policies.push_back(ControlPolicy::constant_lambda(0.5));
    const std::vector<std::string> names = {"optimal", "radial", "tangential", "lambda=0.5"};

    PolicyComparison out;
    out.analytic_value = value.eval(x0);
    double optimal_mean = 0.0, optimal_ci = 0.0;
    for (std::size_t i = 0; i < policies.size(); ++i) {
        auto est = estimate_cost(cost, policies[i], x0, cfg, n_threads);
        if (i == 0) {
            optimal_mean = est.mean;
            optimal_ci = est.ci95_halfwidth;
        }
        if (out.analytic_value > est.mean + est.ci95_halfwidth + kEulerBiasAllowance)
            out.analytic_lower_bound_ok = false;
        out.ranked.push_back({names[i], est});
    }
    out.optimal_matches_value =
        std::abs(optimal_mean - out.analytic_value) <= optimal_ci + kEulerBiasAllowance;
    std::stable_sort(out.ranked.begin(), out.ranked.end(),
                     [](const auto& a, const auto& b) { return a.estimate.mean < b.estimate.mean; });
    return out;
}

nlohmann::json CostEstimate::to_json() const {
    nlohmann::json j;
    j["mean"] = mean;
    j["se"] = std_error;
    j["ci95"] = ci95_halfwidth;
    j["n"] = n_paths;
    j["capped_fraction"] = capped_fraction;
    return j;
}

nlohmann::json PolicyComparison::to_json() const {
    nlohmann::json j;
    j["analytic_value"] = analytic_value;
    j["analytic_lower_bound_ok"] = analytic_lower_bound_ok;
    j["optimal_matches_value"] = optimal_matches_value;
    j["ranked"] = nlohmann::json::array();
    for (const auto& row : ranked) {
        auto e = row.estimate.to_json();
        e["policy"] = row.policy;
        j["ranked"].push_back(e);
    }
    return j;
}

}  // namespace rsc
