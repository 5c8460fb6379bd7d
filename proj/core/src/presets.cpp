#include "wattagent/presets.hpp"

#include "wattagent/cost_proxy.hpp"

namespace wattagent {

AgentPipeline mindact_paper_pipeline() {
    AgentPipeline pipeline;
    pipeline.name = "mindact-paper";
    pipeline.corpus_counter_id = "deberta";

    Stage ranking;
    ranking.name = "candidate-generation";
    ranking.model_name = "DeBERTa-86M";
    ranking.model = ModelEnergyProfile{
        "DeBERTa-86M", Interval::point(4e-6), EnergySource::Measured,
        "bundled preset: fixed-token measurement runs on a consumer GPU (4e-6 Wh/token)"};
    ranking.tokens = TokensPerActionExpr{Interval(1.0, 3.0), 0};
    ranking.repetitions = 1;

    Stage prediction;
    prediction.name = "action-prediction";
    prediction.model_name = "flan-T5-XL";
    prediction.model = ModelEnergyProfile{
        "flan-T5-XL", Interval::point(102e-6), EnergySource::Measured,
        "bundled preset: fixed-token measurement runs on a consumer GPU (102e-6 Wh/token)"};
    prediction.tokens = TokensPerActionExpr{Interval(0.0, 0.0), 512};
    prediction.repetitions = 10;

    pipeline.stages = {std::move(ranking), std::move(prediction)};
    return pipeline;
}

AgentPipeline laser_paper_pipeline() {
    AgentPipeline pipeline;
    pipeline.name = "laser-paper";
    pipeline.corpus_counter_id = "gpt-4";

    CostProxyInputs proxy;
    proxy.token_price = MoneyPerToken(10e-6);
    proxy.energy_price = MoneyPerWh::from_per_kwh(0.16);
    proxy.energy_cost_share = Interval::point(0.5);

    Stage action;
    action.name = "action";
    action.model_name = "GPT-4";
    action.model = cost_proxy_energy_per_token(proxy, "GPT-4");
    // The raw page is the prompt; one-shot examples and the memory buffer add
    // tokens this preset does not model, so it is a lower-bound configuration.
    action.tokens = TokensPerActionExpr{Interval(1.0, 1.0), 0};
    action.repetitions = 1;

    pipeline.stages = {std::move(action)};
    return pipeline;
}

CorpusStats mindact_paper_corpus_stats() {
    return CorpusStats{"deberta", 1, 118798, 118798.0};
}

CorpusStats laser_paper_corpus_stats() {
    return CorpusStats{"gpt-4", 1, 93778, 93778.0};
}

TaskProfile mind2web_task_profile() {
    return TaskProfile{7.3, 15};
}

} // namespace wattagent
