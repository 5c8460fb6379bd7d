#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wattagent/emissions.hpp"
#include "wattagent/energy_profile.hpp"
#include "wattagent/interval.hpp"
#include "wattagent/pipeline.hpp"

namespace wattagent {

// Per-model reporting block: for each LLM in a pipeline, the tokens it
// processes per action and its energy per token with source and provenance.
struct ModelMetrics {
    std::string model_name;
    Interval tokens_per_action;
    Interval energy_per_token_wh;
    EnergySource source{EnergySource::Reported};
    std::string provenance;
    std::vector<std::string> stage_names;

    friend bool operator==(const ModelMetrics&, const ModelMetrics&) = default;
};

struct DedicatedMetricsBlock {
    std::vector<ModelMetrics> models; // first-appearance order
    Interval total_tokens_per_action;
    Interval total_energy_wh;

    friend bool operator==(const DedicatedMetricsBlock&, const DedicatedMetricsBlock&) = default;
};

// Refuses profiles with empty provenance (TransparencyError): a metrics block
// must say where every number comes from.
DedicatedMetricsBlock dedicated_metrics(const AgentPipeline& pipeline, const CorpusStats& stats);

// Extreme-case ratio of two energy intervals: [a.lo/b.hi, a.hi/b.lo]. A zero
// denominator bound makes the affected bound infinite and sets unbounded.
struct RatioRange {
    double lo{0.0};
    double hi{0.0};
    bool unbounded{false};

    friend bool operator==(const RatioRange&, const RatioRange&) = default;
};

RatioRange ratio_range(const Interval& numerator, const Interval& denominator);

struct AgentComparisonEntry {
    std::string name;
    ActionEnergyEstimate estimate;
    EmissionsResult emissions;
    DedicatedMetricsBlock metrics;

    friend bool operator==(const AgentComparisonEntry&, const AgentComparisonEntry&) = default;
};

struct PairwiseRatio {
    std::string numerator;
    std::string denominator;
    RatioRange range;

    friend bool operator==(const PairwiseRatio&, const PairwiseRatio&) = default;
};

struct ComparisonReport {
    std::vector<AgentComparisonEntry> agents;
    std::vector<PairwiseRatio> ratios; // every ordered pair, including self

    friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

// Ratios are recomputed from the stored estimates, never entered by hand.
// Requires at least two agents.
ComparisonReport compare_agents(std::span<const AgentComparisonEntry> agents);

enum class ReportFormat { Json, Markdown, Csv };

ReportFormat report_format_from_string(std::string_view name);

// Deterministic, locale-independent rendering. JSON round-trips losslessly
// through parse_report; markdown leads with the energy table (Wh) and derives
// CO2 and car equivalences as secondary columns; CSV uses RFC 4180 quoting.
std::string render_report(const ComparisonReport& report, ReportFormat format);

ComparisonReport parse_report(const std::string& json_text);

// Fixed-point formatting via std::to_chars: deterministic and independent of
// the process locale.
std::string format_fixed(double value, int decimals);

// Bundle written by the estimate step and consumed by emissions/compare.
struct EstimateDocument {
    ActionEnergyEstimate estimate;
    DedicatedMetricsBlock metrics;
    std::string counter_id;
    double mean_tokens_per_page{0.0};
    std::optional<Interval> task_energy_wh;
    std::optional<double> task_actions;

    friend bool operator==(const EstimateDocument&, const EstimateDocument&) = default;
};

} // namespace wattagent
