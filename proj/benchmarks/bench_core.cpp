#include <benchmark/benchmark.h>

#include <sstream>
#include <string>

#include "wattagent/emissions.hpp"
#include "wattagent/expansion.hpp"
#include "wattagent/html.hpp"
#include "wattagent/pipeline.hpp"
#include "wattagent/presets.hpp"
#include "wattagent/report.hpp"
#include "wattagent/tokenizer.hpp"

namespace {

using namespace wattagent;

std::string synthetic_page(int elements) {
    std::ostringstream page;
    page << "<html><body>";
    for (int i = 0; i < elements; ++i) {
        page << "<div id=\"e" << i << "\" class=\"row\"><a href=\"/item/" << i
             << "\">entry number " << i << "</a> some filler text for realism</div>";
    }
    page << "</body></html>";
    return page.str();
}

void BM_CountTokensHeuristic(benchmark::State& state) {
    const std::string page = synthetic_page(static_cast<int>(state.range(0)));
    const TokenCounter counter = TokenCounter::heuristic_chars(4.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(counter.count(page));
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(page.size()));
}
BENCHMARK(BM_CountTokensHeuristic)->Arg(100)->Arg(1135);

void BM_CountTokensWords(benchmark::State& state) {
    const std::string page = synthetic_page(static_cast<int>(state.range(0)));
    const TokenCounter counter = TokenCounter::whitespace_words();
    for (auto _ : state) {
        benchmark::DoNotOptimize(counter.count(page));
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(page.size()));
}
BENCHMARK(BM_CountTokensWords)->Arg(1135);

void BM_DomParse(benchmark::State& state) {
    const std::string page = synthetic_page(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dom_elements(page));
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(page.size()));
}
BENCHMARK(BM_DomParse)->Arg(100)->Arg(1135);

void BM_DomExpansion(benchmark::State& state) {
    const std::string page = synthetic_page(static_cast<int>(state.range(0)));
    const TokenCounter counter = TokenCounter::heuristic_chars(4.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            dom_expansion_factor(page, counter, ContextPolicy::FullContext));
    }
}
BENCHMARK(BM_DomExpansion)->Arg(100)->Arg(1135);

void BM_ActionEnergy(benchmark::State& state) {
    const AgentPipeline pipeline = mindact_paper_pipeline();
    const CorpusStats stats = mindact_paper_corpus_stats();
    for (auto _ : state) {
        benchmark::DoNotOptimize(action_energy(pipeline, stats));
    }
}
BENCHMARK(BM_ActionEnergy);

void BM_CompareAndRender(benchmark::State& state) {
    AgentComparisonEntry mindact;
    mindact.name = "mindact-paper";
    mindact.estimate = action_energy(mindact_paper_pipeline(), mindact_paper_corpus_stats());
    mindact.metrics = dedicated_metrics(mindact_paper_pipeline(), mindact_paper_corpus_stats());
    mindact.emissions = task_emissions(TaskProfile{7.3, std::nullopt}, 0.453,
                                       mindact.estimate.total_wh, "US");
    AgentComparisonEntry laser;
    laser.name = "laser-paper";
    laser.estimate = action_energy(laser_paper_pipeline(), laser_paper_corpus_stats());
    laser.metrics = dedicated_metrics(laser_paper_pipeline(), laser_paper_corpus_stats());
    laser.emissions = task_emissions(TaskProfile{7.3, std::nullopt}, 0.453,
                                     laser.estimate.total_wh, "US");
    const std::vector<AgentComparisonEntry> entries{mindact, laser};
    for (auto _ : state) {
        const ComparisonReport report = compare_agents(entries);
        benchmark::DoNotOptimize(render_report(report, ReportFormat::Markdown));
    }
}
BENCHMARK(BM_CompareAndRender);

} // namespace

BENCHMARK_MAIN();
