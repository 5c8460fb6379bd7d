#include "wattagent/pipeline.hpp"

#include <cmath>
#include <unordered_set>

#include "wattagent/errors.hpp"

namespace wattagent {

void AgentPipeline::validate() const {
    if (name.empty()) {
        throw ValidationError("pipeline name must not be empty");
    }
    if (corpus_counter_id.empty()) {
        throw ValidationError("pipeline '" + name + "' has no corpus counter id");
    }
    if (stages.empty()) {
        throw ValidationError("pipeline '" + name + "' has no stages");
    }
    std::unordered_set<std::string> seen;
    for (const Stage& stage : stages) {
        if (stage.name.empty()) {
            throw ValidationError("pipeline '" + name + "' has a stage with an empty name");
        }
        if (!seen.insert(stage.name).second) {
            throw ValidationError("pipeline '" + name + "' has duplicate stage name '" +
                                  stage.name + "'");
        }
        if (stage.repetitions < 1) {
            throw ValidationError("stage '" + stage.name + "' must have repetitions >= 1");
        }
        if (stage.tokens.per_page_multiplier == Interval{} && stage.tokens.fixed_tokens == 0) {
            throw ValidationError("stage '" + stage.name +
                                  "' has a zero tokens-per-action expression");
        }
    }
}

void resolve_models(AgentPipeline& pipeline, std::span<const ModelEnergyProfile> profiles) {
    for (Stage& stage : pipeline.stages) {
        if (stage.model) {
            continue;
        }
        for (const ModelEnergyProfile& profile : profiles) {
            if (profile.name == stage.model_name) {
                stage.model = profile;
                break;
            }
        }
    }
}

void TaskProfile::validate() const {
    if (!std::isfinite(mean_actions_per_task) || mean_actions_per_task <= 0.0) {
        throw ValidationError("mean actions per task must be finite and positive");
    }
    if (max_actions) {
        if (*max_actions < 1) {
            throw ValidationError("max actions must be >= 1");
        }
        if (mean_actions_per_task > static_cast<double>(*max_actions)) {
            throw ValidationError("mean actions per task exceeds max actions");
        }
    }
}

Interval stage_tokens_per_action(const Stage& stage, const CorpusStats& stats,
                                 const std::string& pipeline_counter_id) {
    if (stats.counter_id != pipeline_counter_id) {
        throw ValidationError("corpus stats counter '" + stats.counter_id +
                              "' does not match pipeline counter '" + pipeline_counter_id + "'");
    }
    if (stage.tokens.per_page_multiplier == Interval{} && stage.tokens.fixed_tokens == 0) {
        throw ValidationError("stage '" + stage.name +
                              "' has a zero tokens-per-action expression");
    }
    if (stage.repetitions < 1) {
        throw ValidationError("stage '" + stage.name + "' must have repetitions >= 1");
    }
    const Interval per_page =
        interval_scale(stage.tokens.per_page_multiplier, stats.mean_tokens_per_page);
    const double fixed = static_cast<double>(stage.tokens.fixed_tokens);
    const Interval per_repetition(per_page.lo + fixed, per_page.hi + fixed);
    return interval_scale(per_repetition, static_cast<double>(stage.repetitions));
}

ActionEnergyEstimate action_energy(const AgentPipeline& pipeline, const CorpusStats& stats) {
    pipeline.validate();

    ActionEnergyEstimate estimate;
    estimate.pipeline_name = pipeline.name;
    std::vector<Interval> stage_energies;
    stage_energies.reserve(pipeline.stages.size());
    for (const Stage& stage : pipeline.stages) {
        if (!stage.model) {
            throw ConfigError("stage '" + stage.name + "' references model '" +
                              stage.model_name + "' but no profile is resolved");
        }
        const Interval tokens = stage_tokens_per_action(stage, stats, pipeline.corpus_counter_id);
        const Interval energy = interval_mul(tokens, stage.model->energy_per_token_wh);
        estimate.per_stage_tokens.emplace_back(stage.name, tokens);
        estimate.per_stage_energy_wh.emplace_back(stage.name, energy);
        stage_energies.push_back(energy);
    }
    estimate.total_wh = interval_sum(stage_energies);
    return estimate;
}

Interval task_energy(const ActionEnergyEstimate& estimate, const TaskProfile& profile,
                     TaskEnergyMode mode) {
    profile.validate();
    if (mode == TaskEnergyMode::Mean) {
        return interval_scale(estimate.total_wh, profile.mean_actions_per_task);
    }
    if (!profile.max_actions) {
        throw ValidationError("worst-case task energy requires a max-actions cap");
    }
    return interval_scale(estimate.total_wh, static_cast<double>(*profile.max_actions));
}

} // namespace wattagent
