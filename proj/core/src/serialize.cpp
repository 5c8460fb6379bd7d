#include "wattagent/serialize.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "wattagent/errors.hpp"

namespace wattagent {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        throw ConfigError("malformed JSON");
    }
    return doc;
}

std::string dump(const json& doc) {
    return doc.dump(2) + "\n";
}

const json& require_field(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) {
        throw ConfigError(path + ": expected a JSON object");
    }
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ConfigError(path + "." + key + ": missing required field");
    }
    return *it;
}

double get_number(const json& obj, const char* key, const std::string& path) {
    const json& value = require_field(obj, key, path);
    if (!value.is_number()) {
        throw ConfigError(path + "." + key + ": expected a number");
    }
    return value.get<double>();
}

std::uint64_t get_nonneg_integer(const json& obj, const char* key, const std::string& path) {
    const json& value = require_field(obj, key, path);
    if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
        throw ConfigError(path + "." + key + ": expected a nonnegative integer");
    }
    return value.get<std::uint64_t>();
}

std::string get_string(const json& obj, const char* key, const std::string& path) {
    const json& value = require_field(obj, key, path);
    if (!value.is_string()) {
        throw ConfigError(path + "." + key + ": expected a string");
    }
    return value.get<std::string>();
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& path) {
    for (const auto& [key, unused] : obj.items()) {
        bool known = false;
        for (const char* candidate : allowed) {
            if (key == candidate) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError(path + "." + key + ": unknown field");
        }
    }
}

json interval_to_json(const Interval& value) {
    return json{{"lo", value.lo}, {"hi", value.hi}};
}

Interval interval_from_json(const json& obj, const std::string& path) {
    const double lo = get_number(obj, "lo", path);
    const double hi = get_number(obj, "hi", path);
    try {
        return Interval(lo, hi);
    } catch (const ValidationError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

json profile_body_to_json(const ModelEnergyProfile& profile) {
    return json{{"name", profile.name},
                {"energy_per_token",
                 {{"lo", profile.energy_per_token_wh.lo},
                  {"hi", profile.energy_per_token_wh.hi},
                  {"unit", "Wh/token"}}},
                {"source", std::string(to_string(profile.source))},
                {"provenance", profile.provenance}};
}

ModelEnergyProfile profile_body_from_json(const json& obj, const std::string& path) {
    ModelEnergyProfile profile;
    profile.name = get_string(obj, "name", path);
    const json& e = require_field(obj, "energy_per_token", path);
    profile.energy_per_token_wh = interval_from_json(e, path + ".energy_per_token");
    const std::string unit = get_string(e, "unit", path + ".energy_per_token");
    if (unit != "Wh/token") {
        throw ConfigError(path + ".energy_per_token.unit: unsupported unit '" + unit +
                          "' (accepted: Wh/token)");
    }
    profile.source = energy_source_from_string(get_string(obj, "source", path));
    profile.provenance = get_string(obj, "provenance", path);
    return profile;
}

json estimate_to_json_obj(const ActionEnergyEstimate& estimate) {
    json stages = json::array();
    for (std::size_t i = 0; i < estimate.per_stage_tokens.size(); ++i) {
        stages.push_back(json{{"name", estimate.per_stage_tokens[i].first},
                              {"tokens", interval_to_json(estimate.per_stage_tokens[i].second)},
                              {"energy_wh",
                               interval_to_json(estimate.per_stage_energy_wh[i].second)}});
    }
    return json{{"pipeline", estimate.pipeline_name},
                {"per_stage", std::move(stages)},
                {"total_wh", interval_to_json(estimate.total_wh)}};
}

ActionEnergyEstimate estimate_from_json_obj(const json& obj, const std::string& path) {
    ActionEnergyEstimate estimate;
    estimate.pipeline_name = get_string(obj, "pipeline", path);
    const json& stages = require_field(obj, "per_stage", path);
    if (!stages.is_array()) {
        throw ConfigError(path + ".per_stage: expected an array");
    }
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const std::string stage_path = path + ".per_stage[" + std::to_string(i) + "]";
        const json& stage = stages[i];
        const std::string name = get_string(stage, "name", stage_path);
        estimate.per_stage_tokens.emplace_back(
            name, interval_from_json(require_field(stage, "tokens", stage_path),
                                     stage_path + ".tokens"));
        estimate.per_stage_energy_wh.emplace_back(
            name, interval_from_json(require_field(stage, "energy_wh", stage_path),
                                     stage_path + ".energy_wh"));
    }
    estimate.total_wh =
        interval_from_json(require_field(obj, "total_wh", path), path + ".total_wh");
    return estimate;
}

json metrics_to_json_obj(const DedicatedMetricsBlock& metrics) {
    json models = json::array();
    for (const ModelMetrics& model : metrics.models) {
        models.push_back(json{{"name", model.model_name},
                              {"stages", model.stage_names},
                              {"tokens_per_action", interval_to_json(model.tokens_per_action)},
                              {"energy_per_token_wh",
                               interval_to_json(model.energy_per_token_wh)},
                              {"source", std::string(to_string(model.source))},
                              {"provenance", model.provenance}});
    }
    return json{{"models", std::move(models)},
                {"total_tokens_per_action", interval_to_json(metrics.total_tokens_per_action)},
                {"total_energy_wh", interval_to_json(metrics.total_energy_wh)}};
}

DedicatedMetricsBlock metrics_from_json_obj(const json& obj, const std::string& path) {
    DedicatedMetricsBlock metrics;
    const json& models = require_field(obj, "models", path);
    if (!models.is_array()) {
        throw ConfigError(path + ".models: expected an array");
    }
    for (std::size_t i = 0; i < models.size(); ++i) {
        const std::string model_path = path + ".models[" + std::to_string(i) + "]";
        const json& model = models[i];
        ModelMetrics m;
        m.model_name = get_string(model, "name", model_path);
        const json& stages = require_field(model, "stages", model_path);
        if (!stages.is_array()) {
            throw ConfigError(model_path + ".stages: expected an array");
        }
        for (const json& stage : stages) {
            if (!stage.is_string()) {
                throw ConfigError(model_path + ".stages: expected strings");
            }
            m.stage_names.push_back(stage.get<std::string>());
        }
        m.tokens_per_action =
            interval_from_json(require_field(model, "tokens_per_action", model_path),
                               model_path + ".tokens_per_action");
        m.energy_per_token_wh =
            interval_from_json(require_field(model, "energy_per_token_wh", model_path),
                               model_path + ".energy_per_token_wh");
        m.source = energy_source_from_string(get_string(model, "source", model_path));
        m.provenance = get_string(model, "provenance", model_path);
        metrics.models.push_back(std::move(m));
    }
    metrics.total_tokens_per_action =
        interval_from_json(require_field(obj, "total_tokens_per_action", path),
                           path + ".total_tokens_per_action");
    metrics.total_energy_wh = interval_from_json(
        require_field(obj, "total_energy_wh", path), path + ".total_energy_wh");
    return metrics;
}

json emissions_to_json_obj(const EmissionsResult& result) {
    return json{{"region", result.region},
                {"mean_actions", result.mean_actions},
                {"intensity_g_per_wh", result.intensity_g_per_wh},
                {"action_energy_wh", interval_to_json(result.action_energy_wh)},
                {"grams", interval_to_json(result.grams)}};
}

EmissionsResult emissions_from_json_obj(const json& obj, const std::string& path) {
    EmissionsResult result;
    result.region = get_string(obj, "region", path);
    result.mean_actions = get_number(obj, "mean_actions", path);
    result.intensity_g_per_wh = get_number(obj, "intensity_g_per_wh", path);
    result.action_energy_wh = interval_from_json(
        require_field(obj, "action_energy_wh", path), path + ".action_energy_wh");
    result.grams = interval_from_json(require_field(obj, "grams", path), path + ".grams");
    return result;
}

} // namespace

std::string corpus_stats_to_json(const CorpusStats& stats) {
    return dump(json{{"counter_id", stats.counter_id},
                     {"page_count", stats.page_count},
                     {"total_tokens", stats.total_tokens},
                     {"mean_tokens_per_page", stats.mean_tokens_per_page}});
}

CorpusStats corpus_stats_from_json(const std::string& text) {
    const json doc = parse_json(text);
    CorpusStats stats;
    stats.counter_id = get_string(doc, "counter_id", "stats");
    stats.page_count = get_nonneg_integer(doc, "page_count", "stats");
    stats.total_tokens = get_nonneg_integer(doc, "total_tokens", "stats");
    stats.mean_tokens_per_page = get_number(doc, "mean_tokens_per_page", "stats");
    if (stats.page_count < 1) {
        throw ConfigError("stats.page_count: must be >= 1");
    }
    const double expected_mean =
        static_cast<double>(stats.total_tokens) / static_cast<double>(stats.page_count);
    const double tolerance = 1e-9 * std::max(1.0, expected_mean);
    if (std::abs(stats.mean_tokens_per_page - expected_mean) > tolerance) {
        throw ConfigError("stats.mean_tokens_per_page: inconsistent with total/page_count");
    }
    return stats;
}

std::string profile_to_json(const ModelEnergyProfile& profile) {
    return dump(profile_body_to_json(profile));
}

ModelEnergyProfile profile_from_json(const std::string& text) {
    return profile_body_from_json(parse_json(text), "profile");
}

AgentPipeline pipeline_from_json(const std::string& text) {
    const json doc = parse_json(text);
    const std::string root = "pipeline";
    if (!doc.is_object()) {
        throw ConfigError(root + ": expected a JSON object");
    }
    reject_unknown_keys(doc, {"name", "counter_id", "stages"}, root);

    AgentPipeline pipeline;
    pipeline.name = get_string(doc, "name", root);
    pipeline.corpus_counter_id = get_string(doc, "counter_id", root);
    const json& stages = require_field(doc, "stages", root);
    if (!stages.is_array()) {
        throw ConfigError(root + ".stages: expected an array");
    }
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const std::string stage_path = root + ".stages[" + std::to_string(i) + "]";
        const json& stage_doc = stages[i];
        if (!stage_doc.is_object()) {
            throw ConfigError(stage_path + ": expected a JSON object");
        }
        reject_unknown_keys(stage_doc, {"name", "model", "tokens", "repetitions"}, stage_path);

        Stage stage;
        stage.name = get_string(stage_doc, "name", stage_path);

        const json& model_doc = require_field(stage_doc, "model", stage_path);
        const std::string model_path = stage_path + ".model";
        if (!model_doc.is_object()) {
            throw ConfigError(model_path + ": expected a JSON object");
        }
        reject_unknown_keys(model_doc, {"name", "energy_per_token", "provenance"}, model_path);
        stage.model_name = get_string(model_doc, "name", model_path);
        if (model_doc.contains("energy_per_token")) {
            const json& e = model_doc["energy_per_token"];
            const std::string e_path = model_path + ".energy_per_token";
            if (!e.is_object()) {
                throw ConfigError(e_path + ": expected a JSON object");
            }
            reject_unknown_keys(e, {"lo", "hi", "unit", "source"}, e_path);
            ModelEnergyProfile profile;
            profile.name = stage.model_name;
            profile.energy_per_token_wh = interval_from_json(e, e_path);
            const std::string unit = get_string(e, "unit", e_path);
            if (unit != "Wh/token") {
                throw ConfigError(e_path + ".unit: unsupported unit '" + unit +
                                  "' (accepted: Wh/token)");
            }
            profile.source = energy_source_from_string(get_string(e, "source", e_path));
            if (model_doc.contains("provenance")) {
                profile.provenance = get_string(model_doc, "provenance", model_path);
            } else {
                profile.provenance = "declared in pipeline config '" + pipeline.name +
                                     "' (source: " + std::string(to_string(profile.source)) + ")";
            }
            stage.model = std::move(profile);
        } else if (model_doc.contains("provenance")) {
            throw ConfigError(model_path + ".provenance: requires energy_per_token");
        }

        const json& tokens_doc = require_field(stage_doc, "tokens", stage_path);
        const std::string tokens_path = stage_path + ".tokens";
        if (!tokens_doc.is_object()) {
            throw ConfigError(tokens_path + ": expected a JSON object");
        }
        reject_unknown_keys(tokens_doc, {"per_page_multiplier", "fixed"}, tokens_path);
        stage.tokens.per_page_multiplier =
            interval_from_json(require_field(tokens_doc, "per_page_multiplier", tokens_path),
                               tokens_path + ".per_page_multiplier");
        stage.tokens.fixed_tokens = get_nonneg_integer(tokens_doc, "fixed", tokens_path);

        const json& reps = require_field(stage_doc, "repetitions", stage_path);
        if (!reps.is_number_integer() || reps.get<std::int64_t>() < 1) {
            throw ConfigError(stage_path + ".repetitions: expected a positive integer");
        }
        stage.repetitions = reps.get<std::uint32_t>();

        pipeline.stages.push_back(std::move(stage));
    }
    pipeline.validate();
    return pipeline;
}

std::string pipeline_to_json(const AgentPipeline& pipeline) {
    json stages = json::array();
    for (const Stage& stage : pipeline.stages) {
        json model{{"name", stage.model_name.empty() && stage.model ? stage.model->name
                                                                    : stage.model_name}};
        if (stage.model) {
            model["energy_per_token"] = json{{"lo", stage.model->energy_per_token_wh.lo},
                                             {"hi", stage.model->energy_per_token_wh.hi},
                                             {"unit", "Wh/token"},
                                             {"source",
                                              std::string(to_string(stage.model->source))}};
            model["provenance"] = stage.model->provenance;
        }
        stages.push_back(
            json{{"name", stage.name},
                 {"model", std::move(model)},
                 {"tokens", {{"per_page_multiplier",
                              interval_to_json(stage.tokens.per_page_multiplier)},
                             {"fixed", stage.tokens.fixed_tokens}}},
                 {"repetitions", stage.repetitions}});
    }
    return dump(json{{"name", pipeline.name},
                     {"counter_id", pipeline.corpus_counter_id},
                     {"stages", std::move(stages)}});
}

std::string expansion_to_json(const ExpansionEstimate& estimate, const std::string& counter_id,
                              ContextPolicy policy) {
    return dump(json{{"schema_version", 1},
                     {"counter_id", counter_id},
                     {"policy", std::string(to_string(policy))},
                     {"k_hat", estimate.k_hat},
                     {"per_page_k", estimate.per_page_k},
                     {"within_paper_bounds", estimate.within_paper_bounds}});
}

std::string estimate_document_to_json(const EstimateDocument& doc) {
    json out{{"schema_version", 1},
             {"pipeline", doc.estimate.pipeline_name},
             {"counter_id", doc.counter_id},
             {"mean_tokens_per_page", doc.mean_tokens_per_page},
             {"per_stage", estimate_to_json_obj(doc.estimate)["per_stage"]},
             {"total_wh", interval_to_json(doc.estimate.total_wh)},
             {"dedicated_metrics", metrics_to_json_obj(doc.metrics)}};
    if (doc.task_energy_wh) {
        out["task_energy_wh"] = interval_to_json(*doc.task_energy_wh);
    }
    if (doc.task_actions) {
        out["task_actions"] = *doc.task_actions;
    }
    return dump(out);
}

EstimateDocument estimate_document_from_json(const std::string& text) {
    const json obj = parse_json(text);
    const std::string path = "estimate";
    EstimateDocument doc;
    doc.estimate = estimate_from_json_obj(obj, path);
    doc.metrics = metrics_from_json_obj(require_field(obj, "dedicated_metrics", path),
                                        path + ".dedicated_metrics");
    doc.counter_id = get_string(obj, "counter_id", path);
    doc.mean_tokens_per_page = get_number(obj, "mean_tokens_per_page", path);
    if (obj.contains("task_energy_wh")) {
        doc.task_energy_wh = interval_from_json(obj["task_energy_wh"], path + ".task_energy_wh");
    }
    if (obj.contains("task_actions")) {
        doc.task_actions = obj["task_actions"].get<double>();
    }
    return doc;
}

std::string emissions_to_json(const EmissionsResult& result, double car_grams_per_km) {
    const Interval car_km = car_distance_equivalent(result.grams, car_grams_per_km);
    json out = emissions_to_json_obj(result);
    out["schema_version"] = 1;
    out["car_grams_per_km"] = car_grams_per_km;
    out["car_km"] = interval_to_json(car_km);
    const std::string grams_display =
        result.grams.is_point()
            ? format_grams(result.grams.lo)
            : format_grams(result.grams.lo) + "-" + format_grams(result.grams.hi);
    const std::string car_display =
        car_km.is_point() ? format_car_distance(car_km.lo)
                          : format_car_distance(car_km.lo) + "-" + format_car_distance(car_km.hi);
    out["display"] = json{{"grams", grams_display}, {"car", car_display}};
    return dump(out);
}

EmissionsResult emissions_from_json(const std::string& text) {
    return emissions_from_json_obj(parse_json(text), "emissions");
}

std::string comparison_to_json(const ComparisonReport& report) {
    json agents = json::array();
    for (const AgentComparisonEntry& entry : report.agents) {
        agents.push_back(json{{"name", entry.name},
                              {"estimate", estimate_to_json_obj(entry.estimate)},
                              {"emissions", emissions_to_json_obj(entry.emissions)},
                              {"dedicated_metrics", metrics_to_json_obj(entry.metrics)}});
    }
    json ratios = json::array();
    for (const PairwiseRatio& ratio : report.ratios) {
        json r{{"numerator", ratio.numerator},
               {"denominator", ratio.denominator},
               {"unbounded", ratio.range.unbounded}};
        r["lo"] = std::isfinite(ratio.range.lo) ? json(ratio.range.lo) : json(nullptr);
        r["hi"] = std::isfinite(ratio.range.hi) ? json(ratio.range.hi) : json(nullptr);
        ratios.push_back(std::move(r));
    }
    return dump(json{{"schema_version", 1},
                     {"agents", std::move(agents)},
                     {"ratios", std::move(ratios)}});
}

ComparisonReport comparison_from_json(const std::string& text) {
    const json doc = parse_json(text);
    const std::string root = "comparison";
    const json& version = require_field(doc, "schema_version", root);
    if (!version.is_number_integer() || version.get<std::int64_t>() != 1) {
        throw ConfigError(root + ".schema_version: expected 1");
    }
    ComparisonReport report;
    const json& agents = require_field(doc, "agents", root);
    if (!agents.is_array()) {
        throw ConfigError(root + ".agents: expected an array");
    }
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const std::string agent_path = root + ".agents[" + std::to_string(i) + "]";
        const json& agent = agents[i];
        AgentComparisonEntry entry;
        entry.name = get_string(agent, "name", agent_path);
        entry.estimate = estimate_from_json_obj(require_field(agent, "estimate", agent_path),
                                                agent_path + ".estimate");
        entry.emissions = emissions_from_json_obj(require_field(agent, "emissions", agent_path),
                                                  agent_path + ".emissions");
        entry.metrics =
            metrics_from_json_obj(require_field(agent, "dedicated_metrics", agent_path),
                                  agent_path + ".dedicated_metrics");
        report.agents.push_back(std::move(entry));
    }
    const json& ratios = require_field(doc, "ratios", root);
    if (!ratios.is_array()) {
        throw ConfigError(root + ".ratios: expected an array");
    }
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        const std::string ratio_path = root + ".ratios[" + std::to_string(i) + "]";
        const json& ratio = ratios[i];
        PairwiseRatio p;
        p.numerator = get_string(ratio, "numerator", ratio_path);
        p.denominator = get_string(ratio, "denominator", ratio_path);
        const json& unbounded = require_field(ratio, "unbounded", ratio_path);
        if (!unbounded.is_boolean()) {
            throw ConfigError(ratio_path + ".unbounded: expected a boolean");
        }
        p.range.unbounded = unbounded.get<bool>();
        const json& lo = require_field(ratio, "lo", ratio_path);
        const json& hi = require_field(ratio, "hi", ratio_path);
        p.range.lo = lo.is_null() ? std::numeric_limits<double>::infinity() : lo.get<double>();
        p.range.hi = hi.is_null() ? std::numeric_limits<double>::infinity() : hi.get<double>();
        report.ratios.push_back(std::move(p));
    }
    return report;
}

} // namespace wattagent
