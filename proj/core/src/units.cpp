#include "wattagent/units.hpp"

#include <cmath>

#include "wattagent/errors.hpp"

namespace wattagent {

namespace {

// Decimal exponent of each unit relative to Wh.
int decimal_exponent(EnergyUnit unit) {
    switch (unit) {
    case EnergyUnit::Wh: return 0;
    case EnergyUnit::kWh: return 3;
    case EnergyUnit::MWh: return 6;
    }
    throw ValidationError("unknown energy unit");
}

constexpr double kPow10[7] = {1.0, 10.0, 100.0, 1000.0, 10000.0, 100000.0, 1000000.0};

void require_nonneg_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw ValidationError(std::string(what) + " must be finite");
    }
    if (v < 0.0) {
        throw ValidationError(std::string(what) + " must be nonnegative");
    }
}

} // namespace

EnergyUnit energy_unit_from_string(std::string_view name) {
    if (name == "Wh") return EnergyUnit::Wh;
    if (name == "kWh") return EnergyUnit::kWh;
    if (name == "MWh") return EnergyUnit::MWh;
    throw ValidationError("unknown energy unit '" + std::string(name) +
                          "' (expected Wh, kWh or MWh)");
}

std::string_view to_string(EnergyUnit unit) {
    switch (unit) {
    case EnergyUnit::Wh: return "Wh";
    case EnergyUnit::kWh: return "kWh";
    case EnergyUnit::MWh: return "MWh";
    }
    throw ValidationError("unknown energy unit");
}

double convert_energy(double value, EnergyUnit from, EnergyUnit to) {
    if (!std::isfinite(value)) {
        throw ValidationError("energy value must be finite");
    }
    const int shift = decimal_exponent(from) - decimal_exponent(to);
    if (shift == 0) {
        return value;
    }
    // One rounding step in either direction; the power-of-ten constants are
    // exact doubles.
    return shift > 0 ? value * kPow10[shift] : value / kPow10[-shift];
}

EnergyWh::EnergyWh(double wh) : value(wh) {
    require_nonneg_finite(wh, "energy (Wh)");
}

EnergyPerTokenWh::EnergyPerTokenWh(double wh_per_token) : value(wh_per_token) {
    require_nonneg_finite(wh_per_token, "energy per token (Wh/token)");
}

MoneyPerToken::MoneyPerToken(double dollars_per_token) : value(dollars_per_token) {
    require_nonneg_finite(dollars_per_token, "token price ($/token)");
}

MoneyPerWh::MoneyPerWh(double dollars_per_wh) : value(dollars_per_wh) {
    if (!std::isfinite(dollars_per_wh) || dollars_per_wh <= 0.0) {
        throw ValidationError("energy price ($/Wh) must be finite and positive");
    }
}

MoneyPerWh MoneyPerWh::from_per_kwh(double dollars_per_kwh) {
    if (!std::isfinite(dollars_per_kwh) || dollars_per_kwh <= 0.0) {
        throw ValidationError("energy price ($/kWh) must be finite and positive");
    }
    return MoneyPerWh(dollars_per_kwh / 1000.0);
}

} // namespace wattagent
