#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wattagent/energy_profile.hpp"
#include "wattagent/units.hpp"

namespace wattagent {

struct PowerSample {
    double timestamp_s{0.0};
    double power_w{0.0};
};

// Time-ordered power samples from an external sampler (RAPL, NVML, a wall
// meter). Timestamps strictly increase, power is nonnegative, and a trace has
// at least two samples.
struct PowerTrace {
    std::vector<PowerSample> samples;
    std::string device_label;
    std::string run_label;

    double duration_s() const;
    void validate() const;
};

// CSV with the exact header "timestamp_s,power_w", one sample per line.
PowerTrace parse_trace_csv(const std::string& text, std::string device_label = "",
                           std::string run_label = "");
PowerTrace load_trace_csv(const std::filesystem::path& path);

// Trapezoidal integral of power over time, seconds*watts / 3600 -> Wh.
// Traces are sparse samples of a continuous signal, so the trapezoid rule is
// the integration rule; it is applied in sample order, making results
// bit-reproducible.
EnergyWh integrate_power_trace(const PowerTrace& trace);

// e = (sum of trace energies - baseline share) / total_tokens.
//
// The baseline (idle) trace may cover a different duration than the
// measurement runs: its mean power is scaled to the summed measurement
// duration. If the scaled baseline exceeds the measurement, e clamps to 0 and
// the provenance note says so.
ModelEnergyProfile measured_energy_per_token(std::span<const PowerTrace> traces,
                                             std::uint64_t total_tokens,
                                             const std::optional<PowerTrace>& baseline = {},
                                             std::string model_name = "measured-model");

} // namespace wattagent
