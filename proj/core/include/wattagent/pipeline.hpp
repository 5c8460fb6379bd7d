#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wattagent/corpus.hpp"
#include "wattagent/energy_profile.hpp"
#include "wattagent/interval.hpp"

namespace wattagent {

// Tokens one stage repetition processes, affine in the corpus mean page size:
// multiplier * mean_tokens_per_page + fixed. A stage reading the whole page
// uses the multiplier (with its uncertainty interval); a stage with a
// fixed-size prompt uses fixed tokens and multiplier [0, 0].
struct TokensPerActionExpr {
    Interval per_page_multiplier{}; // [0, 0] when the stage input is fixed-size
    std::uint64_t fixed_tokens{0};
};

// One stage of an agent pipeline: which model runs, how many tokens one
// repetition feeds it, and how many repetitions one action takes.
//
// A stage may carry its model profile inline or reference it by name only; an
// unresolved reference is a configuration error at evaluation time.
struct Stage {
    std::string name;
    std::string model_name;
    std::optional<ModelEnergyProfile> model;
    TokensPerActionExpr tokens;
    std::uint32_t repetitions{1};
};

// Staged token-flow model of a web agent.
struct AgentPipeline {
    std::string name;
    std::vector<Stage> stages;
    std::string corpus_counter_id;

    // Enforces: nonempty stages, unique stage names, repetitions >= 1, and a
    // nonzero tokens-per-action expression per stage.
    void validate() const;
};

// Fill unresolved stage models from a profile list, matching by name.
void resolve_models(AgentPipeline& pipeline, std::span<const ModelEnergyProfile> profiles);

// How many actions a complete task takes.
struct TaskProfile {
    double mean_actions_per_task{0.0};
    std::optional<std::uint32_t> max_actions;

    void validate() const;
};

// Per-action energy of a pipeline, with interval bounds propagated from the
// stage multipliers and model profiles.
struct ActionEnergyEstimate {
    std::string pipeline_name;
    std::vector<std::pair<std::string, Interval>> per_stage_tokens;    // stage order
    std::vector<std::pair<std::string, Interval>> per_stage_energy_wh; // stage order
    Interval total_wh;

    friend bool operator==(const ActionEnergyEstimate&, const ActionEnergyEstimate&) = default;
};

// repetitions * (multiplier * mean_tokens_per_page + fixed), interval-valued.
// The stats must have been produced under the pipeline's counter.
Interval stage_tokens_per_action(const Stage& stage, const CorpusStats& stats,
                                 const std::string& pipeline_counter_id);

// Per-stage energy = stage tokens x model energy per token; total = sum.
ActionEnergyEstimate action_energy(const AgentPipeline& pipeline, const CorpusStats& stats);

enum class TaskEnergyMode { Mean, WorstCase };

// Scale per-action energy to a whole task: mean mode multiplies by the mean
// actions per task, worst-case by the action cap (which must be present).
Interval task_energy(const ActionEnergyEstimate& estimate, const TaskProfile& profile,
                     TaskEnergyMode mode);

} // namespace wattagent
