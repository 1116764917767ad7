#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "rsc/cost.hpp"

namespace rsc {

enum class OriginRegime {
    FiniteEqualsV,            // v(0) finite, strong = weak = V(0)
    MinusInfinityEverywhere,  // v = -inf on all of D
    PlusInfinityAtOrigin,     // v(0) = +inf, v finite away from 0
    WeakFiniteStrongOpen,     // d = 2 intermediate growth: weak value V(0), strong open
};

struct OriginClassification {
    OriginRegime regime;
    std::optional<double> v0;
    std::string notes;

    nlohmann::json to_json() const;
};

// Pure table lookup on (monotonicity, growth, dimension). Combinations that
// no cost can realise (e.g. increasing with a +inf divergence class) raise
// InconsistentDeclaration.
OriginRegime classify_regime(OriginMonotone monotone, OriginGrowth growth, int dimension);

// Classification plus the origin value where the table says it is finite.
OriginClassification classify_origin(const RadialCost& cost);

std::string to_string(OriginRegime r);

}  // namespace rsc
