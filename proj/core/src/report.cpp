#include "wattagent/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "wattagent/errors.hpp"
#include "wattagent/serialize.hpp"

namespace wattagent {

namespace {

void require_provenance(const DedicatedMetricsBlock& metrics, const std::string& agent) {
    for (const ModelMetrics& model : metrics.models) {
        if (model.provenance.empty()) {
            throw TransparencyError("model '" + model.model_name + "' of agent '" + agent +
                                    "' has no provenance note; refusing to report it");
        }
    }
}

// Shortest exact decimal representation, for machine-readable CSV columns.
std::string format_shortest(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

std::string format_interval_fixed(const Interval& value, int decimals) {
    if (value.is_point()) {
        return format_fixed(value.lo, decimals);
    }
    return format_fixed(value.lo, decimals) + "-" + format_fixed(value.hi, decimals);
}

std::string format_grams_interval(const Interval& grams) {
    if (grams.is_point()) {
        return format_grams(grams.lo);
    }
    return format_grams(grams.lo) + "-" + format_grams(grams.hi);
}

std::string format_car_interval(const Interval& km) {
    if (km.is_point()) {
        return format_car_distance(km.lo);
    }
    return format_car_distance(km.lo) + "-" + format_car_distance(km.hi);
}

std::string format_ratio_bound(double value) {
    return std::isfinite(value) ? format_fixed(value, 6) : "unbounded";
}

// RFC 4180: quote fields containing commas, quotes or newlines.
std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) {
        return field;
    }
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') {
            quoted += "\"\"";
        } else {
            quoted += c;
        }
    }
    quoted += "\"";
    return quoted;
}

std::string render_markdown(const ComparisonReport& report) {
    std::ostringstream out;
    out << "# Agent energy comparison\n\n";
    out << "Energy per action (Wh) is the primary quantity; it does not depend on any\n"
           "grid mix. CO2 per task and the car-distance equivalence derive from each\n"
           "row's region.\n\n";

    out << "## Action energy\n\n";
    out << "| agent | E_action (Wh) | tokens per action | CO2 per task (g) | region | car "
           "equivalent |\n";
    out << "|---|---|---|---|---|---|\n";
    for (const AgentComparisonEntry& entry : report.agents) {
        const Interval car = car_distance_equivalent(entry.emissions.grams, kDefaultCarGramsPerKm);
        Interval tokens;
        if (!entry.metrics.models.empty()) {
            tokens = entry.metrics.total_tokens_per_action;
        } else {
            std::vector<Interval> stage_tokens;
            for (const auto& [name, value] : entry.estimate.per_stage_tokens) {
                stage_tokens.push_back(value);
            }
            tokens = interval_sum(stage_tokens);
        }
        out << "| " << entry.name << " | " << format_interval_fixed(entry.estimate.total_wh, 6)
            << " | " << format_interval_fixed(tokens, 0) << " | "
            << format_grams_interval(entry.emissions.grams) << " | " << entry.emissions.region
            << " | " << format_car_interval(car) << " |\n";
    }

    bool have_metrics = false;
    for (const AgentComparisonEntry& entry : report.agents) {
        if (!entry.metrics.models.empty()) {
            have_metrics = true;
            break;
        }
    }
    if (have_metrics) {
        out << "\n## Dedicated metrics\n\n";
        out << "| agent | model | stages | tokens per action | energy per token (Wh) | source "
               "|\n";
        out << "|---|---|---|---|---|---|\n";
        for (const AgentComparisonEntry& entry : report.agents) {
            for (const ModelMetrics& model : entry.metrics.models) {
                std::string stages;
                for (const std::string& stage : model.stage_names) {
                    if (!stages.empty()) {
                        stages += ", ";
                    }
                    stages += stage;
                }
                out << "| " << entry.name << " | " << model.model_name << " | " << stages
                    << " | " << format_interval_fixed(model.tokens_per_action, 0) << " | "
                    << format_interval_fixed(model.energy_per_token_wh, 6) << " | "
                    << to_string(model.source) << " |\n";
            }
        }
        out << "\nProvenance:\n";
        for (const AgentComparisonEntry& entry : report.agents) {
            for (const ModelMetrics& model : entry.metrics.models) {
                out << "- " << entry.name << " / " << model.model_name << ": "
                    << model.provenance << "\n";
            }
        }
    }

    out << "\n## Energy ratios\n\n";
    out << "Extreme-case interval bounds: lower = numerator lower bound over denominator\n"
           "upper bound; upper = numerator upper bound over denominator lower bound.\n\n";
    out << "| numerator | denominator | ratio |\n";
    out << "|---|---|---|\n";
    for (const PairwiseRatio& ratio : report.ratios) {
        out << "| " << ratio.numerator << " | " << ratio.denominator << " | "
            << format_ratio_bound(ratio.range.lo) << "-" << format_ratio_bound(ratio.range.hi)
            << " |\n";
    }
    return out.str();
}

std::string render_csv(const ComparisonReport& report) {
    std::ostringstream out;
    out << "record,agent,counterpart,e_action_lo_wh,e_action_hi_wh,co2_lo_g,co2_hi_g,region,"
           "car_lo_km,car_hi_km,ratio_lo,ratio_hi,ratio_unbounded\n";
    for (const AgentComparisonEntry& entry : report.agents) {
        const Interval car = car_distance_equivalent(entry.emissions.grams, kDefaultCarGramsPerKm);
        out << "agent," << csv_quote(entry.name) << ",," << format_shortest(entry.estimate.total_wh.lo)
            << ',' << format_shortest(entry.estimate.total_wh.hi) << ','
            << format_shortest(entry.emissions.grams.lo) << ','
            << format_shortest(entry.emissions.grams.hi) << ',' << csv_quote(entry.emissions.region)
            << ',' << format_shortest(car.lo) << ',' << format_shortest(car.hi) << ",,,\n";
    }
    for (const PairwiseRatio& ratio : report.ratios) {
        out << "ratio," << csv_quote(ratio.numerator) << ',' << csv_quote(ratio.denominator)
            << ",,,,,,,,"
            << (std::isfinite(ratio.range.lo) ? format_shortest(ratio.range.lo) : "") << ','
            << (std::isfinite(ratio.range.hi) ? format_shortest(ratio.range.hi) : "") << ','
            << (ratio.range.unbounded ? "true" : "false") << "\n";
    }
    return out.str();
}

} // namespace

DedicatedMetricsBlock dedicated_metrics(const AgentPipeline& pipeline, const CorpusStats& stats) {
    const ActionEnergyEstimate estimate = action_energy(pipeline, stats);

    DedicatedMetricsBlock metrics;
    std::map<std::string, std::size_t> index_by_model;
    std::vector<std::vector<Interval>> tokens_by_model;
    for (std::size_t i = 0; i < pipeline.stages.size(); ++i) {
        const Stage& stage = pipeline.stages[i];
        const ModelEnergyProfile& profile = *stage.model;
        auto [it, inserted] = index_by_model.emplace(profile.name, metrics.models.size());
        if (inserted) {
            ModelMetrics m;
            m.model_name = profile.name;
            m.energy_per_token_wh = profile.energy_per_token_wh;
            m.source = profile.source;
            m.provenance = profile.provenance;
            metrics.models.push_back(std::move(m));
            tokens_by_model.emplace_back();
        } else {
            const ModelMetrics& existing = metrics.models[it->second];
            if (existing.energy_per_token_wh != profile.energy_per_token_wh ||
                existing.source != profile.source) {
                throw ValidationError("model '" + profile.name +
                                      "' appears with differing energy profiles");
            }
        }
        metrics.models[it->second].stage_names.push_back(stage.name);
        tokens_by_model[it->second].push_back(estimate.per_stage_tokens[i].second);
    }
    for (std::size_t i = 0; i < metrics.models.size(); ++i) {
        metrics.models[i].tokens_per_action = interval_sum(tokens_by_model[i]);
    }
    std::vector<Interval> all_tokens;
    for (const auto& [name, tokens] : estimate.per_stage_tokens) {
        all_tokens.push_back(tokens);
    }
    metrics.total_tokens_per_action = interval_sum(all_tokens);
    metrics.total_energy_wh = estimate.total_wh;

    require_provenance(metrics, pipeline.name);
    return metrics;
}

RatioRange ratio_range(const Interval& numerator, const Interval& denominator) {
    RatioRange range;
    range.unbounded = denominator.lo == 0.0 || denominator.hi == 0.0;
    range.lo = denominator.hi == 0.0 ? std::numeric_limits<double>::infinity()
                                     : numerator.lo / denominator.hi;
    range.hi = denominator.lo == 0.0 ? std::numeric_limits<double>::infinity()
                                     : numerator.hi / denominator.lo;
    return range;
}

ComparisonReport compare_agents(std::span<const AgentComparisonEntry> agents) {
    if (agents.size() < 2) {
        throw ValidationError("agent comparison needs at least 2 agents, got " +
                              std::to_string(agents.size()));
    }
    ComparisonReport report;
    report.agents.assign(agents.begin(), agents.end());
    for (const AgentComparisonEntry& a : agents) {
        for (const AgentComparisonEntry& b : agents) {
            PairwiseRatio ratio;
            ratio.numerator = a.name;
            ratio.denominator = b.name;
            ratio.range = ratio_range(a.estimate.total_wh, b.estimate.total_wh);
            report.ratios.push_back(std::move(ratio));
        }
    }
    return report;
}

ReportFormat report_format_from_string(std::string_view name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "markdown") return ReportFormat::Markdown;
    if (name == "csv") return ReportFormat::Csv;
    throw ValidationError("unknown report format '" + std::string(name) +
                          "' (expected json, markdown or csv)");
}

std::string render_report(const ComparisonReport& report, ReportFormat format) {
    for (const AgentComparisonEntry& entry : report.agents) {
        require_provenance(entry.metrics, entry.name);
    }
    switch (format) {
    case ReportFormat::Json: return comparison_to_json(report);
    case ReportFormat::Markdown: return render_markdown(report);
    case ReportFormat::Csv: return render_csv(report);
    }
    throw ValidationError("unknown report format");
}

ComparisonReport parse_report(const std::string& json_text) {
    return comparison_from_json(json_text);
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    const auto result =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, decimals);
    return std::string(buf, result.ptr);
}

} // namespace wattagent
