#include "wattagent/power_trace.hpp"

#include <cmath>
#include <sstream>

#include "wattagent/corpus.hpp"
#include "wattagent/errors.hpp"

namespace wattagent {

double PowerTrace::duration_s() const {
    return samples.empty() ? 0.0 : samples.back().timestamp_s - samples.front().timestamp_s;
}

void PowerTrace::validate() const {
    if (samples.size() < 2) {
        throw ValidationError("power trace needs at least 2 samples, got " +
                              std::to_string(samples.size()));
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const PowerSample& s = samples[i];
        if (!std::isfinite(s.timestamp_s) || !std::isfinite(s.power_w)) {
            throw ValidationError("power trace sample " + std::to_string(i) + " is not finite");
        }
        if (s.power_w < 0.0) {
            throw ValidationError("power trace sample " + std::to_string(i) +
                                  " has negative power");
        }
        if (i > 0 && s.timestamp_s <= samples[i - 1].timestamp_s) {
            throw ValidationError("power trace timestamps must strictly increase (sample " +
                                  std::to_string(i) + ")");
        }
    }
}

PowerTrace parse_trace_csv(const std::string& text, std::string device_label,
                           std::string run_label) {
    std::istringstream lines(text);
    std::string line;
    if (!std::getline(lines, line)) {
        throw ValidationError("power trace CSV is empty");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "timestamp_s,power_w") {
        throw ValidationError("power trace CSV must start with header 'timestamp_s,power_w', got '" +
                              line + "'");
    }
    PowerTrace trace;
    trace.device_label = std::move(device_label);
    trace.run_label = std::move(run_label);
    std::size_t line_no = 1;
    while (std::getline(lines, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ValidationError("power trace CSV line " + std::to_string(line_no) +
                                  " is not 'timestamp,power'");
        }
        try {
            std::size_t used = 0;
            const double t = std::stod(line.substr(0, comma), &used);
            const double p = std::stod(line.substr(comma + 1), &used);
            trace.samples.push_back({t, p});
        } catch (const std::exception&) {
            throw ValidationError("power trace CSV line " + std::to_string(line_no) +
                                  " has a malformed number");
        }
    }
    trace.validate();
    return trace;
}

PowerTrace load_trace_csv(const std::filesystem::path& path) {
    PowerTrace trace = parse_trace_csv(read_text_file(path));
    trace.run_label = path.filename().string();
    return trace;
}

EnergyWh integrate_power_trace(const PowerTrace& trace) {
    trace.validate();
    double watt_seconds = 0.0;
    for (std::size_t i = 1; i < trace.samples.size(); ++i) {
        const PowerSample& a = trace.samples[i - 1];
        const PowerSample& b = trace.samples[i];
        watt_seconds += (b.timestamp_s - a.timestamp_s) * (a.power_w + b.power_w) / 2.0;
    }
    return EnergyWh(watt_seconds / 3600.0);
}

ModelEnergyProfile measured_energy_per_token(std::span<const PowerTrace> traces,
                                             std::uint64_t total_tokens,
                                             const std::optional<PowerTrace>& baseline,
                                             std::string model_name) {
    if (traces.empty()) {
        throw ValidationError("at least one power trace is required");
    }
    if (total_tokens == 0) {
        throw ValidationError("total token count must be positive");
    }
    double energy_wh = 0.0;
    double duration_s = 0.0;
    for (const PowerTrace& trace : traces) {
        energy_wh += integrate_power_trace(trace).value;
        duration_s += trace.duration_s();
    }

    std::ostringstream note;
    note << "measured: " << traces.size() << (traces.size() == 1 ? " trace" : " traces") << ", "
         << energy_wh << " Wh over " << total_tokens << " tokens";
    if (!traces.front().device_label.empty()) {
        note << " on " << traces.front().device_label;
    }

    if (baseline) {
        const double baseline_energy = integrate_power_trace(*baseline).value;
        const double baseline_duration = baseline->duration_s();
        const double baseline_mean_w = baseline_energy * 3600.0 / baseline_duration;
        const double baseline_share_wh = baseline_mean_w * duration_s / 3600.0;
        note << "; baseline " << baseline_mean_w << " W scaled to " << duration_s << " s";
        energy_wh -= baseline_share_wh;
        if (energy_wh < 0.0) {
            energy_wh = 0.0;
            note << "; baseline exceeded measurement, clamped to 0";
        }
    }

    ModelEnergyProfile profile;
    profile.name = std::move(model_name);
    profile.energy_per_token_wh = Interval::point(energy_wh / static_cast<double>(total_tokens));
    profile.source = EnergySource::Measured;
    profile.provenance = note.str();
    return profile;
}

} // namespace wattagent
