#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsc/hjb.hpp"
#include "rsc/montecarlo.hpp"
#include "rsc/origin.hpp"
#include "rsc/value.hpp"

namespace {

// exit codes: 0 success / PASS, 1 FAIL, 2 usage error, 3 cost spec error
constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kSpec = 3;

rsc::RadialCost load_cost(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rsc::cost_error("cannot open cost spec: " + path);
    nlohmann::json j;
    in >> j;
    return rsc::RadialCost::from_json(j);
}

rsc::ControlPolicy parse_policy(const std::string& name, const rsc::RadialCost& cost,
                                std::optional<double> delta, double x0) {
    rsc::ControlPolicy p;
    if (name == "radial") {
        p = rsc::ControlPolicy::radial();
    } else if (name == "tangential") {
        p = rsc::ControlPolicy::tangential();
    } else if (name == "optimal") {
        p = rsc::ControlPolicy::optimal(rsc::build_schedule(cost));
    } else if (name.rfind("lambda=", 0) == 0) {
        p = rsc::ControlPolicy::constant_lambda(std::stod(name.substr(7)));
    } else {
        throw CLI::ValidationError("--policy", "expected optimal|radial|tangential|lambda=<v>");
    }
    if (delta) return rsc::ControlPolicy::origin_delta(*delta, std::move(p), cost);
    if (x0 == 0.0 && !p.defined_at_origin())
        throw rsc::PolicyUndefinedAtOrigin(
            "policy '" + name + "' is undefined at the origin; pass --delta");
    return p;
}

void check_flags(double x0, const rsc::RadialCost& cost, double dt, std::int64_t paths) {
    if (!(x0 >= 0.0 && x0 < cost.R)) throw CLI::ValidationError("--x0", "must lie in [0, R)");
    if (!(dt > 0.0)) throw CLI::ValidationError("--dt", "must be positive");
    if (paths < 1) throw CLI::ValidationError("--paths", "must be >= 1");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver and simulator for radially symmetric unit-QV martingale control"};
    app.require_subcommand(1);

    std::string cost_path, out_path, policy_name = "optimal", trace_path, xy_path;
    double x0 = 0.0, dt = 1e-4;
    std::int64_t paths = 100000;
    std::uint64_t seed = 0;
    int grid_n = 512, threads = 0;
    std::optional<double> delta;

    auto add_cost = [&](CLI::App* cmd) {
        cmd->add_option("--cost", cost_path, "cost spec JSON file")->required();
    };

    auto* solve = app.add_subcommand("solve", "switching schedule + value table");
    add_cost(solve);
    solve->add_option("--grid", grid_n, "value table grid size");
    solve->add_option("--out", out_path, "value table CSV path");

    auto* classify = app.add_subcommand("classify", "origin growth classification");
    add_cost(classify);

    auto* simulate = app.add_subcommand("simulate", "simulate one controlled path");
    add_cost(simulate);
    simulate->add_option("--policy", policy_name, "optimal|radial|tangential|lambda=<v>");
    simulate->add_option("--x0", x0, "starting radius");
    simulate->add_option("--delta", delta, "origin delta-approximation radius");
    simulate->add_option("--dt", dt, "time step");
    simulate->add_option("--seed", seed, "RNG seed");
    simulate->add_option("--trace", trace_path, "trajectory CSV (t, Z, regime)");
    simulate->add_option("--xy", xy_path, "planar trace CSV (t, x1, x2), d = 2 only");

    auto* estimate = app.add_subcommand("estimate", "Monte Carlo cost estimate");
    add_cost(estimate);
    estimate->add_option("--policy", policy_name, "optimal|radial|tangential|lambda=<v>");
    estimate->add_option("--x0", x0, "starting radius");
    estimate->add_option("--delta", delta, "origin delta-approximation radius");
    estimate->add_option("--paths", paths, "number of paths");
    estimate->add_option("--dt", dt, "time step");
    estimate->add_option("--seed", seed, "RNG seed");
    estimate->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* compare = app.add_subcommand("compare", "rank policies against the analytic value");
    add_cost(compare);
    compare->add_option("--x0", x0, "starting radius");
    compare->add_option("--paths", paths, "number of paths");
    compare->add_option("--dt", dt, "time step");
    compare->add_option("--seed", seed, "RNG seed");
    compare->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* check = app.add_subcommand("check-hjb", "finite-difference HJB verification");
    add_cost(check);
    check->add_option("--out", out_path, "residual CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const auto cost = load_cost(cost_path);

        if (solve->parsed()) {
            const auto schedule = rsc::build_schedule(cost);
            const auto value = rsc::build_value(cost, schedule);
            std::cout << schedule.to_json().dump(2) << "\n";
            if (!out_path.empty()) {
                std::ofstream os(out_path);
                value.tabulate(os, grid_n);
            }
            return kOk;
        }
        if (classify->parsed()) {
            std::cout << rsc::classify_origin(cost).to_json().dump(2) << "\n";
            return kOk;
        }
        if (simulate->parsed()) {
            check_flags(x0, cost, dt, 1);
            const auto policy = parse_policy(policy_name, cost, delta, x0);
            rsc::SimConfig cfg;
            cfg.dt = dt;
            cfg.seed = seed;
            cfg.trace_stride = (!trace_path.empty() || !xy_path.empty()) ? 1 : 0;
            cfg.positional = !xy_path.empty();
            if (cfg.positional && cost.dimension != 2)
                throw CLI::ValidationError("--xy", "planar trace requires dimension = 2");
            const auto path = rsc::simulate_path(cost, policy, x0, cfg, 0);
            if (!trace_path.empty()) {
                std::ofstream os(trace_path);
                os << "t,Z,regime\n";
                for (const auto& row : path.trace)
                    os << row.t << ',' << row.z << ','
                       << (row.regime == rsc::Regime::Radial ? "radial" : "tangential") << '\n';
            }
            if (!xy_path.empty()) {
                std::ofstream os(xy_path);
                os << "t,x1,x2\n";
                for (const auto& row : path.trace)
                    os << row.t << ',' << row.x1 << ',' << row.x2 << '\n';
            }
            nlohmann::json j;
            j["exit_time"] = path.exit_time;
            j["cost"] = path.accumulated_cost;
            j["hit_cap"] = path.hit_cap;
            std::cout << j.dump(2) << "\n";
            return kOk;
        }
        if (estimate->parsed()) {
            check_flags(x0, cost, dt, paths);
            const auto policy = parse_policy(policy_name, cost, delta, x0);
            rsc::SimConfig cfg;
            cfg.dt = dt;
            cfg.seed = seed;
            cfg.n_paths = paths;
            auto est = rsc::estimate_cost(cost, policy, x0, cfg, threads).to_json();
            est["policy"] = policy.name();
            std::cout << est.dump(2) << "\n";
            return kOk;
        }
        if (compare->parsed()) {
            check_flags(x0, cost, dt, paths);
            rsc::SimConfig cfg;
            cfg.dt = dt;
            cfg.seed = seed;
            cfg.n_paths = paths;
            const auto table = rsc::compare_policies(cost, x0, cfg, threads);
            std::cout << table.to_json().dump(2) << "\n";
            return (table.analytic_lower_bound_ok && table.optimal_matches_value) ? kOk : kFail;
        }
        if (check->parsed()) {
            const auto value = rsc::build_value(cost, rsc::build_schedule(cost));
            const auto report = rsc::hjb_verify(value);
            if (!out_path.empty()) {
                std::ofstream os(out_path);
                report.write_csv(os);
            }
            if (report.status == rsc::HjbStatus::Skipped) {
                std::cout << "SKIP (cost discontinuous in (0, R); "
                             "viscosity characterisation does not apply)\n";
                return kOk;
            }
            if (report.status == rsc::HjbStatus::Pass) {
                std::cout << "PASS (tol " << report.tol << ")\n";
                return kOk;
            }
            std::cout << "FAIL (tol " << report.tol << ", worst residual "
                      << report.worst_residual << " at r = " << report.worst_residual_r << ")\n";
            return kFail;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const rsc::cost_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSpec;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad cost spec: " << e.what() << "\n";
        return kSpec;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSpec;
    }
    return kUsage;
}
