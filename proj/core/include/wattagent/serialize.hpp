#pragma once

#include <string>

#include "wattagent/corpus.hpp"
#include "wattagent/emissions.hpp"
#include "wattagent/energy_profile.hpp"
#include "wattagent/expansion.hpp"
#include "wattagent/pipeline.hpp"
#include "wattagent/report.hpp"

namespace wattagent {

// JSON codecs for the toolkit's file formats. Writers are deterministic
// (sorted keys, two-space indent, trailing newline); malformed input raises
// ConfigError with the offending key path where one exists.

std::string corpus_stats_to_json(const CorpusStats& stats);
CorpusStats corpus_stats_from_json(const std::string& text);

std::string profile_to_json(const ModelEnergyProfile& profile);
ModelEnergyProfile profile_from_json(const std::string& text);

// Pipeline configs reject unknown fields so typos cannot silently change an
// estimate. A stage model may omit energy_per_token to reference a profile
// resolved later by name.
AgentPipeline pipeline_from_json(const std::string& text);
std::string pipeline_to_json(const AgentPipeline& pipeline);

std::string expansion_to_json(const ExpansionEstimate& estimate, const std::string& counter_id,
                              ContextPolicy policy);

std::string estimate_document_to_json(const EstimateDocument& doc);
EstimateDocument estimate_document_from_json(const std::string& text);

std::string emissions_to_json(const EmissionsResult& result, double car_grams_per_km);
EmissionsResult emissions_from_json(const std::string& text);

std::string comparison_to_json(const ComparisonReport& report);
ComparisonReport comparison_from_json(const std::string& text);

} // namespace wattagent
