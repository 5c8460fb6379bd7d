#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "wattagent/errors.hpp"
#include "wattagent/presets.hpp"
#include "wattagent/report.hpp"
#include "wattagent/serialize.hpp"

using namespace wattagent;

#ifndef WATTAGENT_BUNDLED_DATA_DIR
#define WATTAGENT_BUNDLED_DATA_DIR ""
#endif

namespace {

std::string bundled(const std::string& name) {
    return testsupport::read_file(std::filesystem::path(WATTAGENT_BUNDLED_DATA_DIR) / name);
}

} // namespace

TEST_CASE("bundled pipeline files match the code presets") {
    SUBCASE("two-stage preset") {
        const AgentPipeline pipeline = pipeline_from_json(bundled("mindact-paper.json"));
        const AgentPipeline code = mindact_paper_pipeline();
        CHECK(pipeline.name == code.name);
        CHECK(pipeline.corpus_counter_id == code.corpus_counter_id);
        REQUIRE(pipeline.stages.size() == 2);
        CHECK(pipeline.stages[1].repetitions == 10);
        CHECK(pipeline.stages[1].tokens.fixed_tokens == 512);
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(pipeline.stages[i].model->energy_per_token_wh ==
                  code.stages[i].model->energy_per_token_wh);
            CHECK(pipeline.stages[i].tokens.per_page_multiplier ==
                  code.stages[i].tokens.per_page_multiplier);
        }
    }
    SUBCASE("one-stage preset") {
        const AgentPipeline pipeline = pipeline_from_json(bundled("laser-paper.json"));
        const AgentPipeline code = laser_paper_pipeline();
        REQUIRE(pipeline.stages.size() == 1);
        CHECK(pipeline.stages[0].tokens.per_page_multiplier == Interval(1, 1));
        CHECK(pipeline.stages[0].model->energy_per_token_wh ==
              code.stages[0].model->energy_per_token_wh);
    }
    SUBCASE("bundled stats match the code presets") {
        CHECK(corpus_stats_from_json(bundled("mindact-paper-stats.json")) ==
              mindact_paper_corpus_stats());
        CHECK(corpus_stats_from_json(bundled("laser-paper-stats.json")) ==
              laser_paper_corpus_stats());
    }
}

TEST_CASE("pipeline schema rejects unknown fields with the key path") {
    const std::string config = R"({
        "name": "x", "counter_id": "c", "typo_field": 1,
        "stages": [{"name": "s",
                    "model": {"name": "m", "energy_per_token":
                              {"lo": 1e-6, "hi": 1e-6, "unit": "Wh/token", "source": "reported"}},
                    "tokens": {"per_page_multiplier": {"lo": 1, "hi": 1}, "fixed": 0},
                    "repetitions": 1}]})";
    try {
        pipeline_from_json(config);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("pipeline.typo_field") != std::string::npos);
    }

    const std::string nested = R"({
        "name": "x", "counter_id": "c",
        "stages": [{"name": "s",
                    "model": {"name": "m", "energy_per_token":
                              {"lo": 1e-6, "hi": 1e-6, "unit": "Wh/token",
                               "source": "reported", "extra": true}},
                    "tokens": {"per_page_multiplier": {"lo": 1, "hi": 1}, "fixed": 0},
                    "repetitions": 1}]})";
    try {
        pipeline_from_json(nested);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("stages[0].model.energy_per_token.extra") !=
              std::string::npos);
    }
}

TEST_CASE("pipeline schema enforcement") {
    const std::string base_prefix = R"({"name": "x", "counter_id": "c", "stages": [)";
    const std::string stage_ok =
        R"({"name": "s", "model": {"name": "m", "energy_per_token":
            {"lo": 1e-6, "hi": 1e-6, "unit": "Wh/token", "source": "reported"}},
            "tokens": {"per_page_multiplier": {"lo": 1, "hi": 1}, "fixed": 0},
            "repetitions": 1})";

    SUBCASE("repetitions 0 rejected") {
        std::string broken = base_prefix + stage_ok + "]}";
        const auto pos = broken.find("\"repetitions\": 1");
        broken.replace(pos, std::string("\"repetitions\": 1").size(), "\"repetitions\": 0");
        CHECK_THROWS_AS(pipeline_from_json(broken), ConfigError);
    }
    SUBCASE("unknown unit rejected") {
        std::string broken = base_prefix + stage_ok + "]}";
        const auto pos = broken.find("Wh/token");
        broken.replace(pos, 8, "J/token");
        CHECK_THROWS_AS(pipeline_from_json(broken), ConfigError);
    }
    SUBCASE("malformed JSON rejected") {
        CHECK_THROWS_AS(pipeline_from_json("{"), ConfigError);
    }
    SUBCASE("zero token expression rejected") {
        std::string broken = base_prefix + stage_ok + "]}";
        const auto pos = broken.find(R"({"lo": 1, "hi": 1})");
        broken.replace(pos, std::string(R"({"lo": 1, "hi": 1})").size(), R"({"lo": 0, "hi": 0})");
        CHECK_THROWS_AS(pipeline_from_json(broken), ValidationError);
    }
    SUBCASE("name-only model is an unresolved reference") {
        const std::string config = R"({
            "name": "x", "counter_id": "c",
            "stages": [{"name": "s", "model": {"name": "external"},
                        "tokens": {"per_page_multiplier": {"lo": 1, "hi": 1}, "fixed": 0},
                        "repetitions": 1}]})";
        const AgentPipeline pipeline = pipeline_from_json(config);
        CHECK_FALSE(pipeline.stages[0].model.has_value());
        CHECK(pipeline.stages[0].model_name == "external");
    }
    SUBCASE("provenance synthesized when omitted") {
        const AgentPipeline pipeline = pipeline_from_json(
            base_prefix + stage_ok + "]}");
        REQUIRE(pipeline.stages[0].model.has_value());
        CHECK_FALSE(pipeline.stages[0].model->provenance.empty());
        CHECK(pipeline.stages[0].model->provenance.find("reported") != std::string::npos);
    }
}

TEST_CASE("pipeline to_json round trip") {
    for (const AgentPipeline& pipeline : {mindact_paper_pipeline(), laser_paper_pipeline()}) {
        const AgentPipeline back = pipeline_from_json(pipeline_to_json(pipeline));
        CHECK(back.name == pipeline.name);
        REQUIRE(back.stages.size() == pipeline.stages.size());
        for (std::size_t i = 0; i < back.stages.size(); ++i) {
            CHECK(back.stages[i].model->energy_per_token_wh ==
                  pipeline.stages[i].model->energy_per_token_wh);
            CHECK(back.stages[i].model->provenance == pipeline.stages[i].model->provenance);
            CHECK(back.stages[i].repetitions == pipeline.stages[i].repetitions);
        }
    }
}

TEST_CASE("profile JSON round trip") {
    const ModelEnergyProfile profile{"GPT-4", Interval(0.03125, 0.03125),
                                     EnergySource::CostProxy, "cost proxy note"};
    CHECK(profile_from_json(profile_to_json(profile)) == profile);

    CHECK_THROWS_AS(profile_from_json(R"({"name":"m"})"), ConfigError);
    CHECK_THROWS_AS(
        profile_from_json(
            R"({"name":"m","energy_per_token":{"lo":1,"hi":1,"unit":"J"},"source":"reported","provenance":"p"})"),
        ConfigError);
}

TEST_CASE("estimate document round trip") {
    const AgentPipeline pipeline = mindact_paper_pipeline();
    const CorpusStats stats = mindact_paper_corpus_stats();
    EstimateDocument doc;
    doc.estimate = action_energy(pipeline, stats);
    doc.metrics = dedicated_metrics(pipeline, stats);
    doc.counter_id = stats.counter_id;
    doc.mean_tokens_per_page = stats.mean_tokens_per_page;
    doc.task_energy_wh = task_energy(doc.estimate, mind2web_task_profile(), TaskEnergyMode::Mean);
    doc.task_actions = 7.3;

    const EstimateDocument back = estimate_document_from_json(estimate_document_to_json(doc));
    CHECK(back == doc);
}

TEST_CASE("comparison JSON rejects other schema versions") {
    const std::string doc = R"({"schema_version": 2, "agents": [], "ratios": []})";
    CHECK_THROWS_AS(comparison_from_json(doc), ConfigError);
    CHECK_THROWS_AS(comparison_from_json(R"({"agents": [], "ratios": []})"), ConfigError);
}

TEST_CASE("emissions JSON round trip ignores derived display fields") {
    const EmissionsResult result = task_emissions(TaskProfile{7.3, std::nullopt}, 0.453,
                                                  Interval(0.997432, 1.947816), "US");
    const std::string text = emissions_to_json(result, kDefaultCarGramsPerKm);
    CHECK(text.find("\"display\"") != std::string::npos);
    CHECK(text.find("3.30") != std::string::npos);
    CHECK(emissions_from_json(text) == result);
}
