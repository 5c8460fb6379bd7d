#pragma once

#include <string>
#include <string_view>

#include "wattagent/interval.hpp"

namespace wattagent {

// How an energy-per-token figure was obtained.
enum class EnergySource { Measured, CostProxy, Reported };

EnergySource energy_source_from_string(std::string_view name);
std::string_view to_string(EnergySource source);

// Energy per processed input token for one model, with provenance. Every
// profile must say where its number comes from; reporting refuses profiles
// with an empty provenance note.
struct ModelEnergyProfile {
    std::string name;
    Interval energy_per_token_wh;
    EnergySource source{EnergySource::Reported};
    std::string provenance;

    friend bool operator==(const ModelEnergyProfile&, const ModelEnergyProfile&) = default;
};

} // namespace wattagent
