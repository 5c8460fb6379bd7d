#include "wattagent/energy_profile.hpp"

#include "wattagent/errors.hpp"

namespace wattagent {

EnergySource energy_source_from_string(std::string_view name) {
    if (name == "measured") return EnergySource::Measured;
    if (name == "cost-proxy") return EnergySource::CostProxy;
    if (name == "reported") return EnergySource::Reported;
    throw ValidationError("unknown energy source '" + std::string(name) +
                          "' (expected measured, cost-proxy or reported)");
}

std::string_view to_string(EnergySource source) {
    switch (source) {
    case EnergySource::Measured: return "measured";
    case EnergySource::CostProxy: return "cost-proxy";
    case EnergySource::Reported: return "reported";
    }
    throw ValidationError("unknown energy source");
}

} // namespace wattagent
