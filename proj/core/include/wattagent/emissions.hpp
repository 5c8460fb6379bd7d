#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "wattagent/interval.hpp"
#include "wattagent/pipeline.hpp"
#include "wattagent/units.hpp"

namespace wattagent {

// EPA figure for a typical passenger vehicle, grams CO2e per km driven.
inline constexpr double kDefaultCarGramsPerKm = 248.55;

// Documented defaults for training-footprint estimates when the run report
// omits them: device TDP and datacenter PUE.
inline constexpr double kDefaultDevicePowerW = 300.0;
inline constexpr double kDefaultPue = 1.67;

struct MixEntry {
    double intensity_g_per_wh{0.0};
    std::string source_note;

    friend bool operator==(const MixEntry&, const MixEntry&) = default;
};

// Grid carbon intensity per region, stored in g CO2e per Wh. CSV inputs are
// quoted per kWh and converted on load.
class EnergyMixTable {
public:
    void add(const std::string& region, double intensity_g_per_wh, std::string source_note);

    double lookup(const std::string& region) const; // LookupError lists regions
    const MixEntry& entry(const std::string& region) const;
    std::vector<std::string> regions() const;
    bool empty() const { return entries_.empty(); }

    // The bundled anchors: US 0.453 g/Wh, NO/CH 0.020, AU/ZA 0.800.
    static EnergyMixTable defaults();

    // CSV with header "region,intensity_g_per_kwh,source".
    static EnergyMixTable from_csv(const std::string& text);
    static EnergyMixTable load_csv(const std::filesystem::path& path);

private:
    std::map<std::string, MixEntry> entries_;
};

double lookup_intensity(const EnergyMixTable& table, const std::string& region);

// Grams CO2e for one complete task, with the inputs echoed so a result is
// self-describing.
struct EmissionsResult {
    Interval grams;
    std::string region;
    double mean_actions{0.0};
    double intensity_g_per_wh{0.0};
    Interval action_energy_wh;

    friend bool operator==(const EmissionsResult&, const EmissionsResult&) = default;
};

// grams = mean actions x intensity x action energy, componentwise.
EmissionsResult task_emissions(const TaskProfile& profile, double intensity_g_per_wh,
                               const Interval& action_energy_wh, std::string region = "");

// Componentwise division by grams-per-km.
Interval car_distance_equivalent(const Interval& grams, double grams_per_km);

// One training run, described the way run reports describe them.
struct TrainingRunSpec {
    double duration_hours{0.0};
    std::uint32_t device_count{0};
    double device_power_w{kDefaultDevicePowerW};
    double utilization{1.0}; // in (0, 1]
    double pue{kDefaultPue}; // >= 1

    void validate() const;
};

struct TrainingFootprint {
    EnergyWh energy;
    double co2_grams{0.0};
};

// E = hours x devices x watts x utilization x PUE; grams = E x intensity.
TrainingFootprint training_footprint(const TrainingRunSpec& spec, double intensity_g_per_wh);

// Display conventions: grams with 2 decimals; car distances as whole km at or
// above 1 km and whole meters below, rounded half-up.
std::string format_grams(double grams);
std::string format_car_distance(double km);

} // namespace wattagent
