#include "rsc/origin.hpp"

#include "rsc/value.hpp"

namespace rsc {

OriginRegime classify_regime(OriginMonotone monotone, OriginGrowth growth, int dimension) {
    if (dimension < 2) throw InconsistentDeclaration("dimension must be >= 2");
    if (monotone == OriginMonotone::IncreasingNearZero) {
        switch (growth) {
            case OriginGrowth::Bounded:
            case OriginGrowth::IntegrableF:
                return OriginRegime::FiniteEqualsV;
            case OriginGrowth::NegativeNonIntegrable:
                return OriginRegime::MinusInfinityEverywhere;
            case OriginGrowth::IntegrableSFOnly:
            case OriginGrowth::NonIntegrableSF:
                // a cost increasing towards the origin is bounded above there,
                // so the +inf divergence classes cannot occur
                throw InconsistentDeclaration(
                    "increasing at the origin is incompatible with a +inf divergence class");
        }
    } else {
        switch (growth) {
            case OriginGrowth::Bounded:
            case OriginGrowth::IntegrableF:
                return OriginRegime::FiniteEqualsV;
            case OriginGrowth::IntegrableSFOnly:
                return dimension >= 3 ? OriginRegime::FiniteEqualsV
                                      : OriginRegime::WeakFiniteStrongOpen;
            case OriginGrowth::NonIntegrableSF:
                return OriginRegime::PlusInfinityAtOrigin;
            case OriginGrowth::NegativeNonIntegrable:
                // decreasing costs take their largest values at the origin
                throw InconsistentDeclaration(
                    "decreasing at the origin is incompatible with int_0 f = -inf");
        }
    }
    throw InconsistentDeclaration("unreachable origin classification");
}

OriginClassification classify_origin(const RadialCost& cost) {
    OriginClassification out;
    out.regime = classify_regime(cost.origin_monotone, cost.origin_growth, cost.dimension);
    switch (out.regime) {
        case OriginRegime::FiniteEqualsV: {
            const auto value = build_value(cost, build_schedule(cost));
            out.v0 = value.origin_value();
            out.notes = "value finite; strong and weak formulations agree, v(0) = V(0)";
            break;
        }
        case OriginRegime::WeakFiniteStrongOpen: {
            const auto value = build_value(cost, build_schedule(cost));
            out.v0 = value.origin_value();
            out.notes =
                "d = 2 with int_0 f = inf, int_0 s f < inf: v0 is the weak value; "
                "equality with the strong value at the origin is open";
            break;
        }
        case OriginRegime::MinusInfinityEverywhere:
            out.notes = "int_0 f = -inf: value is -inf everywhere in the ball";
            break;
        case OriginRegime::PlusInfinityAtOrigin:
            out.notes = "int_0 s f = inf: v(0) = +inf; v remains finite for x != 0";
            break;
    }
    return out;
}

std::string to_string(OriginRegime r) {
    switch (r) {
        case OriginRegime::FiniteEqualsV: return "FiniteEqualsV";
        case OriginRegime::MinusInfinityEverywhere: return "MinusInfinityEverywhere";
        case OriginRegime::PlusInfinityAtOrigin: return "PlusInfinityAtOrigin";
        case OriginRegime::WeakFiniteStrongOpen: return "WeakFiniteStrongOpen";
    }
    return "?";
}

nlohmann::json OriginClassification::to_json() const {
    nlohmann::json j;
    j["regime"] = to_string(regime);
    if (v0)
        j["v0"] = *v0;
    else
        j["v0"] = nullptr;
    j["notes"] = notes;
    return j;
}

}  // namespace rsc
