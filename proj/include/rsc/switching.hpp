#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsc/cost.hpp"

namespace rsc {

enum class CaseTag { I, II };
enum class PointLabel { r, s };
enum class Regime { Radial, Tangential };

struct SwitchPoint {
    PointLabel label;
    double value;
};

// Free-boundary schedule {r_i, s_i} on (0, R). Case I starts implicitly at
// s_0 = 0 and alternates r, s, r, ...; Case II starts at r_0 = 0 and
// alternates s, r, s, ...
struct SwitchingSchedule {
    CaseTag case_tag = CaseTag::I;
    std::vector<SwitchPoint> points;
    double R = 1.0;
    std::vector<std::string> diagnostics;

    // Optimal regime at radius r: tangential on the closed bands [r_i, s_i]
    // (Case II also on (0, s_0]), radial elsewhere.
    Regime regime_at(double r) const;

    nlohmann::json to_json() const;
    static SwitchingSchedule from_json(const nlohmann::json& j);
};

// First point r > s_prev where the running average of the cost overtakes its
// current value: smallest root of
//   g(r) = s_prev f(s_prev) + int_{s_prev}^r f - r f(r)
// crossing into g > 0. Grid scan (1e4 cells) plus bisection to 1e-12 * R.
std::optional<double> next_r(const RadialCost& cost, double s_prev,
                             std::vector<std::string>* diagnostics = nullptr);

// First point after r_prev where f'_+ becomes strictly positive.
std::optional<double> next_s(const RadialCost& cost, double r_prev);

// Alternates next_r / next_s from the case-appropriate seed. Step costs get
// an empty schedule (their value functions are closed forms, no switching).
SwitchingSchedule build_schedule(const RadialCost& cost);

}  // namespace rsc
