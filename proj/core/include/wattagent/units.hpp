#pragma once

#include <string>
#include <string_view>

namespace wattagent {

// Canonical internal units: Wh for energy, Wh/token, $/Wh, g CO2e.
// Inputs quoted in kWh (prices, grid intensities) are converted on ingestion.

enum class EnergyUnit { Wh, kWh, MWh };

EnergyUnit energy_unit_from_string(std::string_view name);
std::string_view to_string(EnergyUnit unit);

// Exact power-of-ten rescaling between energy units. A conversion performs a
// single correctly rounded multiply or divide, so the result is the double
// nearest the exact rational value.
double convert_energy(double value, EnergyUnit from, EnergyUnit to);

// Energy in watt-hours; nonnegative and finite.
struct EnergyWh {
    double value{0.0};
    EnergyWh() = default;
    explicit EnergyWh(double wh);
    friend bool operator==(const EnergyWh&, const EnergyWh&) = default;
};

// Energy per processed input token, Wh/token.
struct EnergyPerTokenWh {
    double value{0.0};
    EnergyPerTokenWh() = default;
    explicit EnergyPerTokenWh(double wh_per_token);
    friend bool operator==(const EnergyPerTokenWh&, const EnergyPerTokenWh&) = default;
};

// Price per token in dollars.
struct MoneyPerToken {
    double value{0.0};
    MoneyPerToken() = default;
    explicit MoneyPerToken(double dollars_per_token);
    friend bool operator==(const MoneyPerToken&, const MoneyPerToken&) = default;
};

// Price per watt-hour in dollars; strictly positive.
struct MoneyPerWh {
    double value{0.0};
    MoneyPerWh() = default;
    explicit MoneyPerWh(double dollars_per_wh);
    // Utility prices are usually quoted per kWh.
    static MoneyPerWh from_per_kwh(double dollars_per_kwh);
    friend bool operator==(const MoneyPerWh&, const MoneyPerWh&) = default;
};

} // namespace wattagent
