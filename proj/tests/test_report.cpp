#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "wattagent/errors.hpp"
#include "wattagent/presets.hpp"
#include "wattagent/report.hpp"
#include "wattagent/serialize.hpp"

using namespace wattagent;
using testsupport::within_ulps;

namespace {

AgentComparisonEntry preset_entry(const AgentPipeline& pipeline, const CorpusStats& stats) {
    AgentComparisonEntry entry;
    entry.name = pipeline.name;
    entry.estimate = action_energy(pipeline, stats);
    entry.metrics = dedicated_metrics(pipeline, stats);
    entry.emissions = task_emissions(TaskProfile{7.3, std::nullopt}, 0.453,
                                     entry.estimate.total_wh, "US");
    return entry;
}

AgentComparisonEntry synthetic_entry(const std::string& name, const Interval& total) {
    AgentComparisonEntry entry;
    entry.name = name;
    entry.estimate.pipeline_name = name;
    entry.estimate.per_stage_tokens.emplace_back("s", Interval(1, 1));
    entry.estimate.per_stage_energy_wh.emplace_back("s", total);
    entry.estimate.total_wh = total;
    entry.emissions =
        task_emissions(TaskProfile{1.0, std::nullopt}, 1.0, total, "US");
    return entry;
}

ComparisonReport preset_report() {
    const std::vector<AgentComparisonEntry> entries{
        preset_entry(mindact_paper_pipeline(), mindact_paper_corpus_stats()),
        preset_entry(laser_paper_pipeline(), laser_paper_corpus_stats())};
    return compare_agents(entries);
}

const PairwiseRatio& find_ratio(const ComparisonReport& report, const std::string& numerator,
                                const std::string& denominator) {
    for (const PairwiseRatio& ratio : report.ratios) {
        if (ratio.numerator == numerator && ratio.denominator == denominator) {
            return ratio;
        }
    }
    throw std::runtime_error("ratio not found");
}

} // namespace

TEST_CASE("dedicated metrics for the presets") {
    SUBCASE("two models, per-model token sums") {
        const DedicatedMetricsBlock metrics =
            dedicated_metrics(mindact_paper_pipeline(), mindact_paper_corpus_stats());
        REQUIRE(metrics.models.size() == 2);
        CHECK(metrics.models[0].model_name == "DeBERTa-86M");
        CHECK(metrics.models[0].tokens_per_action == Interval(118798, 356394));
        CHECK(metrics.models[0].energy_per_token_wh == Interval(4e-6, 4e-6));
        CHECK(metrics.models[0].source == EnergySource::Measured);
        CHECK(metrics.models[1].model_name == "flan-T5-XL");
        CHECK(metrics.models[1].tokens_per_action == Interval(5120, 5120));
        CHECK(metrics.models[1].energy_per_token_wh == Interval(102e-6, 102e-6));
        CHECK(metrics.models[1].stage_names == std::vector<std::string>{"action-prediction"});
    }
    SUBCASE("single-model block") {
        const DedicatedMetricsBlock metrics =
            dedicated_metrics(laser_paper_pipeline(), laser_paper_corpus_stats());
        REQUIRE(metrics.models.size() == 1);
        CHECK(metrics.models[0].model_name == "GPT-4");
        CHECK(metrics.models[0].tokens_per_action == Interval(93778, 93778));
        CHECK(metrics.models[0].energy_per_token_wh == Interval(0.03125, 0.03125));
        CHECK(metrics.models[0].source == EnergySource::CostProxy);
    }
    SUBCASE("empty provenance is refused") {
        AgentPipeline pipeline = mindact_paper_pipeline();
        pipeline.stages[0].model->provenance.clear();
        CHECK_THROWS_AS(dedicated_metrics(pipeline, mindact_paper_corpus_stats()),
                        TransparencyError);
    }
    SUBCASE("stages sharing a model are summed") {
        AgentPipeline pipeline = mindact_paper_pipeline();
        pipeline.stages[1].model = pipeline.stages[0].model;
        pipeline.stages[1].model_name = pipeline.stages[0].model_name;
        const DedicatedMetricsBlock metrics =
            dedicated_metrics(pipeline, mindact_paper_corpus_stats());
        REQUIRE(metrics.models.size() == 1);
        CHECK(metrics.models[0].stage_names.size() == 2);
        CHECK(metrics.models[0].tokens_per_action == Interval(118798 + 5120, 356394 + 5120));
    }
}

TEST_CASE("compare_agents ratio ranges") {
    const ComparisonReport report = preset_report();
    REQUIRE(report.agents.size() == 2);
    REQUIRE(report.ratios.size() == 4);

    const RatioRange laser_vs_mindact =
        find_ratio(report, "laser-paper", "mindact-paper").range;
    CHECK(laser_vs_mindact.lo == doctest::Approx(1504.54).epsilon(1e-5));
    CHECK(laser_vs_mindact.hi == doctest::Approx(2938.11).epsilon(1e-5));
    CHECK_FALSE(laser_vs_mindact.unbounded);

    const RatioRange self = find_ratio(report, "mindact-paper", "mindact-paper").range;
    CHECK(self.lo == doctest::Approx(0.512).epsilon(1e-3));
    CHECK(self.hi == doctest::Approx(1.953).epsilon(1e-3));
    CHECK(self.lo <= 1.0);
    CHECK(self.hi >= 1.0);
}

TEST_CASE("identical point estimates give ratio [1, 1]") {
    const std::vector<AgentComparisonEntry> entries{
        synthetic_entry("a", Interval::point(3.5)), synthetic_entry("b", Interval::point(3.5))};
    const ComparisonReport report = compare_agents(entries);
    CHECK(find_ratio(report, "a", "b").range.lo == 1.0);
    CHECK(find_ratio(report, "a", "b").range.hi == 1.0);
}

TEST_CASE("zero-energy denominator is flagged unbounded") {
    const std::vector<AgentComparisonEntry> entries{
        synthetic_entry("live", Interval(1.0, 2.0)), synthetic_entry("dead", Interval(0.0, 0.0))};
    const ComparisonReport report = compare_agents(entries);
    const RatioRange range = find_ratio(report, "live", "dead").range;
    CHECK(range.unbounded);
    CHECK(std::isinf(range.hi));
}

TEST_CASE("fewer than two agents is rejected") {
    const std::vector<AgentComparisonEntry> one{synthetic_entry("solo", Interval(1, 2))};
    CHECK_THROWS_AS(compare_agents(one), ValidationError);
}

TEST_CASE("ratio antisymmetry") {
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> value(1e-6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double a_lo = value(rng);
        const double b_lo = value(rng);
        const Interval a(a_lo, a_lo * (1.0 + value(rng) / 1e6));
        const Interval b(b_lo, b_lo * (1.0 + value(rng) / 1e6));
        const RatioRange forward = ratio_range(a, b);
        const RatioRange backward = ratio_range(b, a);
        CHECK(within_ulps(forward.lo, 1.0 / backward.hi, 1));
        CHECK(within_ulps(forward.hi, 1.0 / backward.lo, 1));
    }
}

TEST_CASE("markdown rendering") {
    const ComparisonReport report = preset_report();
    const std::string markdown = render_report(report, ReportFormat::Markdown);

    CHECK(markdown.find("0.997432-1.947816") != std::string::npos);
    CHECK(markdown.find("2930.5625") != std::string::npos);
    CHECK(markdown.find("9691.08") != std::string::npos);
    CHECK(markdown.find("3.30-6.44") != std::string::npos);
    CHECK(markdown.find("| mindact-paper |") != std::string::npos);
    CHECK(markdown.find("## Dedicated metrics") != std::string::npos);
    CHECK(markdown.find("0.000004") != std::string::npos); // DeBERTa e per token
    CHECK(markdown.find("cost-proxy") != std::string::npos);
    CHECK(markdown.find("39 km") != std::string::npos);

    // deterministic: same input, same bytes
    CHECK(render_report(report, ReportFormat::Markdown) == markdown);
}

TEST_CASE("json render round-trips losslessly") {
    const ComparisonReport report = preset_report();
    const std::string json_text = render_report(report, ReportFormat::Json);
    const ComparisonReport parsed = parse_report(json_text);
    CHECK(parsed == report);
    CHECK(render_report(parsed, ReportFormat::Json) == json_text);
}

TEST_CASE("json round trip preserves unbounded ratios") {
    const std::vector<AgentComparisonEntry> entries{
        synthetic_entry("live", Interval(1.0, 2.0)), synthetic_entry("dead", Interval(0.0, 0.0))};
    const ComparisonReport report = compare_agents(entries);
    const ComparisonReport parsed = parse_report(render_report(report, ReportFormat::Json));
    CHECK(parsed == report);
}

TEST_CASE("csv rendering") {
    ComparisonReport report = preset_report();
    report.agents[0].name = "agent, with \"quotes\"";
    report.ratios.clear();
    const std::string csv = render_report(report, ReportFormat::Csv);
    CHECK(csv.find("\"agent, with \"\"quotes\"\"\"") != std::string::npos);
    CHECK(csv.rfind("record,agent,counterpart,", 0) == 0);
    CHECK(csv.find("2930.5625") != std::string::npos);
}

TEST_CASE("rendering refuses missing provenance") {
    ComparisonReport report = preset_report();
    report.agents[0].metrics.models[0].provenance.clear();
    CHECK_THROWS_AS(render_report(report, ReportFormat::Markdown), TransparencyError);
    CHECK_THROWS_AS(render_report(report, ReportFormat::Json), TransparencyError);
}

TEST_CASE("unknown format name is rejected") {
    CHECK_THROWS_AS(report_format_from_string("xml"), ValidationError);
    CHECK(report_format_from_string("json") == ReportFormat::Json);
    CHECK(report_format_from_string("markdown") == ReportFormat::Markdown);
    CHECK(report_format_from_string("csv") == ReportFormat::Csv);
}

TEST_CASE("format_fixed is plain decimal") {
    CHECK(format_fixed(0.997432, 6) == "0.997432");
    CHECK(format_fixed(2930.5625, 6) == "2930.562500");
    CHECK(format_fixed(118798.0, 0) == "118798");
    CHECK(format_fixed(0.0, 2) == "0.00");
}
