#include "wattagent/emissions.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "wattagent/corpus.hpp"
#include "wattagent/errors.hpp"

namespace wattagent {

void EnergyMixTable::add(const std::string& region, double intensity_g_per_wh,
                         std::string source_note) {
    if (region.empty()) {
        throw ValidationError("mix table region code must not be empty");
    }
    if (!std::isfinite(intensity_g_per_wh) || intensity_g_per_wh <= 0.0) {
        throw ValidationError("grid intensity for region '" + region +
                              "' must be finite and positive");
    }
    const auto [it, inserted] =
        entries_.emplace(region, MixEntry{intensity_g_per_wh, std::move(source_note)});
    if (!inserted) {
        throw ValidationError("duplicate mix table region '" + region + "'");
    }
}

double EnergyMixTable::lookup(const std::string& region) const {
    return entry(region).intensity_g_per_wh;
}

const MixEntry& EnergyMixTable::entry(const std::string& region) const {
    const auto it = entries_.find(region);
    if (it == entries_.end()) {
        std::ostringstream msg;
        msg << "unknown region '" << region << "'; available regions:";
        for (const auto& [code, unused] : entries_) {
            msg << ' ' << code;
        }
        throw LookupError(msg.str());
    }
    return it->second;
}

std::vector<std::string> EnergyMixTable::regions() const {
    std::vector<std::string> codes;
    codes.reserve(entries_.size());
    for (const auto& [code, unused] : entries_) {
        codes.push_back(code);
    }
    return codes;
}

EnergyMixTable EnergyMixTable::defaults() {
    EnergyMixTable table;
    table.add("US", 0.453, "bundled default, US grid average");
    table.add("NO", 0.020, "bundled default, hydro-dominated grid");
    table.add("CH", 0.020, "bundled default, hydro-dominated grid");
    table.add("AU", 0.800, "bundled default, coal-heavy grid");
    table.add("ZA", 0.800, "bundled default, coal-heavy grid");
    return table;
}

EnergyMixTable EnergyMixTable::from_csv(const std::string& text) {
    std::istringstream lines(text);
    std::string line;
    if (!std::getline(lines, line)) {
        throw ValidationError("mix table CSV is empty");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "region,intensity_g_per_kwh,source") {
        throw ValidationError(
            "mix table CSV must start with header 'region,intensity_g_per_kwh,source', got '" +
            line + "'");
    }
    EnergyMixTable table;
    std::size_t line_no = 1;
    while (std::getline(lines, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto first = line.find(',');
        const auto second = first == std::string::npos ? std::string::npos
                                                       : line.find(',', first + 1);
        if (first == std::string::npos || second == std::string::npos) {
            throw ValidationError("mix table CSV line " + std::to_string(line_no) +
                                  " is not 'region,intensity,source'");
        }
        const std::string region = line.substr(0, first);
        const std::string intensity_text = line.substr(first + 1, second - first - 1);
        std::string source = line.substr(second + 1);
        double per_kwh = 0.0;
        try {
            per_kwh = std::stod(intensity_text);
        } catch (const std::exception&) {
            throw ValidationError("mix table CSV line " + std::to_string(line_no) +
                                  " has a malformed intensity");
        }
        table.add(region, per_kwh / 1000.0, std::move(source));
    }
    return table;
}

EnergyMixTable EnergyMixTable::load_csv(const std::filesystem::path& path) {
    return from_csv(read_text_file(path));
}

double lookup_intensity(const EnergyMixTable& table, const std::string& region) {
    return table.lookup(region);
}

EmissionsResult task_emissions(const TaskProfile& profile, double intensity_g_per_wh,
                               const Interval& action_energy_wh, std::string region) {
    profile.validate();
    if (!std::isfinite(intensity_g_per_wh) || intensity_g_per_wh <= 0.0) {
        throw ValidationError("grid intensity must be finite and positive");
    }
    EmissionsResult result;
    result.grams = interval_scale(interval_scale(action_energy_wh, intensity_g_per_wh),
                                  profile.mean_actions_per_task);
    result.region = std::move(region);
    result.mean_actions = profile.mean_actions_per_task;
    result.intensity_g_per_wh = intensity_g_per_wh;
    result.action_energy_wh = action_energy_wh;
    return result;
}

Interval car_distance_equivalent(const Interval& grams, double grams_per_km) {
    if (!std::isfinite(grams_per_km) || grams_per_km <= 0.0) {
        throw ValidationError("grams per km must be finite and positive");
    }
    return Interval(grams.lo / grams_per_km, grams.hi / grams_per_km);
}

void TrainingRunSpec::validate() const {
    if (!std::isfinite(duration_hours) || duration_hours <= 0.0) {
        throw ValidationError("training duration must be finite and positive");
    }
    if (device_count < 1) {
        throw ValidationError("training device count must be >= 1");
    }
    if (!std::isfinite(device_power_w) || device_power_w <= 0.0) {
        throw ValidationError("device power must be finite and positive");
    }
    if (!std::isfinite(utilization) || utilization <= 0.0 || utilization > 1.0) {
        throw ValidationError("utilization must lie in (0, 1]");
    }
    if (!std::isfinite(pue) || pue < 1.0) {
        throw ValidationError("PUE must be >= 1");
    }
}

TrainingFootprint training_footprint(const TrainingRunSpec& spec, double intensity_g_per_wh) {
    spec.validate();
    if (!std::isfinite(intensity_g_per_wh) || intensity_g_per_wh <= 0.0) {
        throw ValidationError("grid intensity must be finite and positive");
    }
    const double energy_wh = spec.duration_hours * static_cast<double>(spec.device_count) *
                             spec.device_power_w * spec.utilization * spec.pue;
    TrainingFootprint footprint;
    footprint.energy = EnergyWh(energy_wh);
    footprint.co2_grams = energy_wh * intensity_g_per_wh;
    return footprint;
}

std::string format_grams(double grams) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), grams, std::chars_format::fixed, 2);
    return std::string(buf, result.ptr);
}

std::string format_car_distance(double km) {
    const auto round_half_up = [](double v) {
        return static_cast<long long>(std::floor(v + 0.5));
    };
    if (km >= 1.0) {
        return std::to_string(round_half_up(km)) + " km";
    }
    return std::to_string(round_half_up(km * 1000.0)) + " m";
}

} // namespace wattagent
