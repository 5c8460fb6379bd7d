// wattagent: staged token-flow energy and CO2 accounting for LLM web agents.
//
// Exit codes: 0 success, 1 validation/configuration errors, 2 I/O errors.
// Diagnostics go to stderr; data goes to stdout or the --out file.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wattagent/corpus.hpp"
#include "wattagent/cost_proxy.hpp"
#include "wattagent/emissions.hpp"
#include "wattagent/errors.hpp"
#include "wattagent/expansion.hpp"
#include "wattagent/pipeline.hpp"
#include "wattagent/power_trace.hpp"
#include "wattagent/report.hpp"
#include "wattagent/serialize.hpp"
#include "wattagent/tokenizer.hpp"

#ifndef WATTAGENT_INSTALL_DATA_DIR
#define WATTAGENT_INSTALL_DATA_DIR ""
#endif

namespace {

namespace fs = std::filesystem;
using namespace wattagent;

// Inputs resolve against the working directory first, then the bundled data
// directory (WATTAGENT_DATA_DIR env var, falling back to the installed one).
fs::path resolve_input(const std::string& path_text) {
    fs::path path(path_text);
    if (fs::exists(path)) {
        return path;
    }
    if (const char* env = std::getenv("WATTAGENT_DATA_DIR")) {
        const fs::path candidate = fs::path(env) / path;
        if (fs::exists(candidate)) {
            return candidate;
        }
    }
    const fs::path installed = fs::path(WATTAGENT_INSTALL_DATA_DIR) / path;
    if (!std::string(WATTAGENT_INSTALL_DATA_DIR).empty() && fs::exists(installed)) {
        return installed;
    }
    throw IoError("file not found: " + path_text);
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open output file: " + out_path);
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("cannot write output file: " + out_path);
    }
}

struct CounterFlags {
    std::string kind = "heuristic-chars";
    double chars_per_token = 4.0;
    std::string bpe_vocab;
    std::string bpe_merges;
    std::string counter_id;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--counter", kind,
                        "Counter kind: heuristic-chars, whitespace-words or bpe")
            ->default_val(kind);
        cmd->add_option("--chars-per-token", chars_per_token,
                        "Divisor for the heuristic-chars counter")
            ->default_val(chars_per_token);
        cmd->add_option("--bpe-vocab", bpe_vocab, "BPE vocabulary file (JSON token->id)");
        cmd->add_option("--bpe-merges", bpe_merges, "BPE merges file (one pair per line)");
        cmd->add_option("--counter-id", counter_id, "Override the counter id label");
    }

    TokenCounter make() const {
        if (kind == "heuristic-chars") {
            return TokenCounter::heuristic_chars(chars_per_token, counter_id);
        }
        if (kind == "whitespace-words") {
            return TokenCounter::whitespace_words(counter_id);
        }
        if (kind == "bpe") {
            if (bpe_vocab.empty() || bpe_merges.empty()) {
                throw ConfigError("bpe counter requires --bpe-vocab and --bpe-merges");
            }
            return TokenCounter::bpe(resolve_input(bpe_vocab), resolve_input(bpe_merges),
                                     counter_id);
        }
        throw ValidationError("unknown counter kind '" + kind +
                              "' (expected heuristic-chars, whitespace-words or bpe)");
    }
};

Interval parse_share(const std::string& text) {
    try {
        const auto comma = text.find(',');
        if (comma == std::string::npos) {
            return Interval::point(std::stod(text));
        }
        return Interval(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("cannot parse share '" + text + "' (expected X or LO,HI)");
    }
}

EnergyMixTable load_mix(const std::string& mix_path) {
    return mix_path.empty() ? EnergyMixTable::defaults()
                            : EnergyMixTable::load_csv(resolve_input(mix_path));
}

int run(int argc, char** argv) {
    CLI::App app{"wattagent: staged token-flow energy and CO2 accounting for LLM web agents"};
    app.require_subcommand(1);

    // corpus-stats ----------------------------------------------------------
    auto* corpus_cmd =
        app.add_subcommand("corpus-stats", "Average tokens per page over an HTML corpus");
    struct {
        std::string corpus;
        bool exclude_script_style = false;
        std::string out;
        CounterFlags counter;
    } corpus_opt;
    corpus_cmd->add_option("--corpus", corpus_opt.corpus,
                           "Directory of *.html/*.htm files or a manifest of paths")
        ->required();
    corpus_opt.counter.add_to(corpus_cmd);
    corpus_cmd->add_flag("--exclude-script-style", corpus_opt.exclude_script_style,
                         "Strip <script>/<style> contents before counting");
    corpus_cmd->add_option("--out", corpus_opt.out, "Write JSON here instead of stdout");
    corpus_cmd->callback([&] {
        const TokenCounter counter = corpus_opt.counter.make();
        const CorpusStats stats =
            corpus_stats_from_path(resolve_input(corpus_opt.corpus), counter,
                                   {corpus_opt.exclude_script_style});
        write_output(corpus_stats_to_json(stats), corpus_opt.out);
    });

    // dom-expansion ---------------------------------------------------------
    auto* expansion_cmd = app.add_subcommand(
        "dom-expansion", "Estimate the per-element context expansion factor of a corpus");
    struct {
        std::string corpus;
        std::string policy = "full-context";
        std::string out;
        CounterFlags counter;
    } expansion_opt;
    expansion_cmd->add_option("--corpus", expansion_opt.corpus,
                              "Directory of *.html/*.htm files or a manifest of paths")
        ->required();
    expansion_opt.counter.add_to(expansion_cmd);
    expansion_cmd->add_option("--policy", expansion_opt.policy,
                              "Context policy: full-context or no-context")
        ->default_val(expansion_opt.policy);
    expansion_cmd->add_option("--out", expansion_opt.out, "Write JSON here instead of stdout");
    expansion_cmd->callback([&] {
        const TokenCounter counter = expansion_opt.counter.make();
        const ContextPolicy policy = context_policy_from_string(expansion_opt.policy);
        const auto paths = load_corpus_paths(resolve_input(expansion_opt.corpus));
        std::vector<std::string> pages;
        pages.reserve(paths.size());
        for (const auto& path : paths) {
            pages.push_back(read_text_file(path));
        }
        const ExpansionEstimate estimate = dom_expansion_factor(pages, counter, policy);
        write_output(expansion_to_json(estimate, counter.id(), policy), expansion_opt.out);
    });

    // estimate ---------------------------------------------------------------
    auto* estimate_cmd =
        app.add_subcommand("estimate", "Per-action energy of a pipeline over corpus stats");
    struct {
        std::string pipeline;
        std::string stats;
        std::vector<std::string> profiles;
        double actions = 0.0;
        std::uint32_t max_actions = 0;
        std::string mode = "mean";
        std::string out;
    } estimate_opt;
    estimate_cmd->add_option("--pipeline", estimate_opt.pipeline, "Pipeline config JSON")
        ->required();
    estimate_cmd->add_option("--corpus-stats", estimate_opt.stats, "Corpus stats JSON")
        ->required();
    estimate_cmd->add_option("--profile", estimate_opt.profiles,
                             "Model profile JSON resolving named references (repeatable)");
    estimate_cmd->add_option("--actions", estimate_opt.actions,
                             "Mean actions per task; adds task energy to the output");
    estimate_cmd->add_option("--max-actions", estimate_opt.max_actions,
                             "Action cap for worst-case task energy");
    estimate_cmd->add_option("--mode", estimate_opt.mode, "Task energy mode: mean or worst-case")
        ->default_val(estimate_opt.mode);
    estimate_cmd->add_option("--out", estimate_opt.out, "Write JSON here instead of stdout");
    estimate_cmd->callback([&] {
        AgentPipeline pipeline =
            pipeline_from_json(read_text_file(resolve_input(estimate_opt.pipeline)));
        std::vector<ModelEnergyProfile> profiles;
        for (const std::string& path : estimate_opt.profiles) {
            profiles.push_back(profile_from_json(read_text_file(resolve_input(path))));
        }
        resolve_models(pipeline, profiles);
        const CorpusStats stats =
            corpus_stats_from_json(read_text_file(resolve_input(estimate_opt.stats)));

        EstimateDocument doc;
        doc.estimate = action_energy(pipeline, stats);
        doc.metrics = dedicated_metrics(pipeline, stats);
        doc.counter_id = stats.counter_id;
        doc.mean_tokens_per_page = stats.mean_tokens_per_page;
        if (estimate_opt.actions > 0.0) {
            TaskProfile profile{estimate_opt.actions, std::nullopt};
            if (estimate_opt.max_actions > 0) {
                profile.max_actions = estimate_opt.max_actions;
            }
            const TaskEnergyMode mode = estimate_opt.mode == "worst-case"
                                            ? TaskEnergyMode::WorstCase
                                            : TaskEnergyMode::Mean;
            if (estimate_opt.mode != "mean" && estimate_opt.mode != "worst-case") {
                throw ValidationError("unknown task energy mode '" + estimate_opt.mode +
                                      "' (expected mean or worst-case)");
            }
            doc.task_energy_wh = task_energy(doc.estimate, profile, mode);
            doc.task_actions = estimate_opt.actions;
        }
        write_output(estimate_document_to_json(doc), estimate_opt.out);
    });

    // cost-proxy -------------------------------------------------------------
    auto* proxy_cmd = app.add_subcommand(
        "cost-proxy", "Energy per token from token pricing and electricity pricing");
    struct {
        double token_price = 0.0;
        double energy_price_per_kwh = 0.0;
        std::string share = "0.5";
        std::string name = "cost-proxy-model";
        std::string provenance;
        std::string out;
    } proxy_opt;
    proxy_cmd->add_option("--token-price", proxy_opt.token_price, "Price per token in $")
        ->required();
    proxy_cmd->add_option("--energy-price", proxy_opt.energy_price_per_kwh,
                          "Electricity price in $/kWh")
        ->required();
    proxy_cmd->add_option("--share", proxy_opt.share,
                          "Energy share of the token price, X or LO,HI in (0,1]")
        ->default_val(proxy_opt.share);
    proxy_cmd->add_option("--name", proxy_opt.name, "Model name for the profile")
        ->default_val(proxy_opt.name);
    proxy_cmd->add_option("--provenance", proxy_opt.provenance,
                          "Extra provenance text appended to the computed note");
    proxy_cmd->add_option("--out", proxy_opt.out, "Write JSON here instead of stdout");
    proxy_cmd->callback([&] {
        CostProxyInputs inputs;
        inputs.token_price = MoneyPerToken(proxy_opt.token_price);
        inputs.energy_price = MoneyPerWh::from_per_kwh(proxy_opt.energy_price_per_kwh);
        inputs.energy_cost_share = parse_share(proxy_opt.share);
        ModelEnergyProfile profile = cost_proxy_energy_per_token(inputs, proxy_opt.name);
        if (!proxy_opt.provenance.empty()) {
            profile.provenance += "; " + proxy_opt.provenance;
        }
        write_output(profile_to_json(profile), proxy_opt.out);
    });

    // measure ----------------------------------------------------------------
    auto* measure_cmd =
        app.add_subcommand("measure", "Energy per token from measured power traces");
    struct {
        std::vector<std::string> traces;
        std::uint64_t tokens = 0;
        std::string baseline;
        std::string name = "measured-model";
        std::string device;
        std::string provenance;
        std::string out;
    } measure_opt;
    measure_cmd->add_option("--trace", measure_opt.traces,
                            "Power trace CSV 'timestamp_s,power_w' (repeatable)")
        ->required();
    measure_cmd->add_option("--tokens", measure_opt.tokens,
                            "Total tokens processed across the traces")
        ->required();
    measure_cmd->add_option("--baseline", measure_opt.baseline, "Idle power trace CSV");
    measure_cmd->add_option("--name", measure_opt.name, "Model name for the profile")
        ->default_val(measure_opt.name);
    measure_cmd->add_option("--device", measure_opt.device, "Device label for provenance");
    measure_cmd->add_option("--provenance", measure_opt.provenance,
                            "Extra provenance text appended to the computed note");
    measure_cmd->add_option("--out", measure_opt.out, "Write JSON here instead of stdout");
    measure_cmd->callback([&] {
        std::vector<PowerTrace> traces;
        for (const std::string& path : measure_opt.traces) {
            PowerTrace trace = load_trace_csv(resolve_input(path));
            trace.device_label = measure_opt.device;
            traces.push_back(std::move(trace));
        }
        std::optional<PowerTrace> baseline;
        if (!measure_opt.baseline.empty()) {
            baseline = load_trace_csv(resolve_input(measure_opt.baseline));
        }
        ModelEnergyProfile profile =
            measured_energy_per_token(traces, measure_opt.tokens, baseline, measure_opt.name);
        if (!measure_opt.provenance.empty()) {
            profile.provenance += "; " + measure_opt.provenance;
        }
        write_output(profile_to_json(profile), measure_opt.out);
    });

    // emissions ---------------------------------------------------------------
    auto* emissions_cmd =
        app.add_subcommand("emissions", "CO2 per task from an estimate and a grid region");
    struct {
        std::string estimate;
        std::string region = "US";
        double actions = 0.0;
        std::string mix_table;
        double car_grams_per_km = kDefaultCarGramsPerKm;
        std::string out;
    } emissions_opt;
    emissions_cmd->add_option("--estimate", emissions_opt.estimate, "Estimate JSON")->required();
    emissions_cmd->add_option("--region", emissions_opt.region, "Grid region code")
        ->default_val(emissions_opt.region);
    emissions_cmd->add_option("--actions", emissions_opt.actions, "Mean actions per task")
        ->required();
    emissions_cmd->add_option("--mix-table", emissions_opt.mix_table,
                              "Mix table CSV 'region,intensity_g_per_kwh,source'");
    emissions_cmd
        ->add_option("--car-grams-per-km", emissions_opt.car_grams_per_km,
                     "CO2 per km for the car equivalence")
        ->default_val(emissions_opt.car_grams_per_km);
    emissions_cmd->add_option("--out", emissions_opt.out, "Write JSON here instead of stdout");
    emissions_cmd->callback([&] {
        const EstimateDocument doc =
            estimate_document_from_json(read_text_file(resolve_input(emissions_opt.estimate)));
        const EnergyMixTable table = load_mix(emissions_opt.mix_table);
        const double intensity = table.lookup(emissions_opt.region);
        const TaskProfile profile{emissions_opt.actions, std::nullopt};
        const EmissionsResult result =
            task_emissions(profile, intensity, doc.estimate.total_wh, emissions_opt.region);
        write_output(emissions_to_json(result, emissions_opt.car_grams_per_km),
                     emissions_opt.out);
    });

    // compare -----------------------------------------------------------------
    auto* compare_cmd =
        app.add_subcommand("compare", "Agent-vs-agent comparison with extreme-case ratios");
    struct {
        std::vector<std::string> estimates;
        std::vector<std::string> emissions;
        std::string region = "US";
        double actions = 0.0;
        std::string mix_table;
        std::string out;
    } compare_opt;
    compare_cmd->add_option("--estimate", compare_opt.estimates,
                            "Estimate JSON, one per agent (repeatable, >= 2)")
        ->required();
    compare_cmd->add_option("--emissions", compare_opt.emissions,
                            "Emissions JSON paired with --estimate by order (repeatable)");
    compare_cmd->add_option("--region", compare_opt.region,
                            "Grid region when emissions are computed inline")
        ->default_val(compare_opt.region);
    compare_cmd->add_option("--actions", compare_opt.actions,
                            "Mean actions per task when emissions are computed inline");
    compare_cmd->add_option("--mix-table", compare_opt.mix_table,
                            "Mix table CSV for inline emissions");
    compare_cmd->add_option("--out", compare_opt.out, "Write JSON here instead of stdout");
    compare_cmd->callback([&] {
        if (compare_opt.estimates.size() < 2) {
            throw ValidationError("compare needs at least 2 --estimate files");
        }
        if (!compare_opt.emissions.empty() &&
            compare_opt.emissions.size() != compare_opt.estimates.size()) {
            throw ValidationError("--emissions count must match --estimate count");
        }
        if (compare_opt.emissions.empty() && compare_opt.actions <= 0.0) {
            throw ValidationError("provide --emissions files or --actions for inline emissions");
        }
        std::vector<AgentComparisonEntry> entries;
        for (std::size_t i = 0; i < compare_opt.estimates.size(); ++i) {
            const EstimateDocument doc = estimate_document_from_json(
                read_text_file(resolve_input(compare_opt.estimates[i])));
            AgentComparisonEntry entry;
            entry.name = doc.estimate.pipeline_name;
            entry.estimate = doc.estimate;
            entry.metrics = doc.metrics;
            if (compare_opt.emissions.empty()) {
                const EnergyMixTable table = load_mix(compare_opt.mix_table);
                const TaskProfile profile{compare_opt.actions, std::nullopt};
                entry.emissions = task_emissions(profile, table.lookup(compare_opt.region),
                                                 doc.estimate.total_wh, compare_opt.region);
            } else {
                entry.emissions = emissions_from_json(
                    read_text_file(resolve_input(compare_opt.emissions[i])));
                if (entry.emissions.action_energy_wh != doc.estimate.total_wh) {
                    throw ValidationError("emissions file '" + compare_opt.emissions[i] +
                                          "' was not derived from estimate '" +
                                          compare_opt.estimates[i] + "'");
                }
            }
            entries.push_back(std::move(entry));
        }
        const ComparisonReport report = compare_agents(entries);
        write_output(comparison_to_json(report), compare_opt.out);
    });

    // report ------------------------------------------------------------------
    auto* report_cmd = app.add_subcommand("report", "Render a comparison as json/markdown/csv");
    struct {
        std::string comparison;
        std::string format = "markdown";
        std::string out;
    } report_opt;
    report_cmd->add_option("--comparison", report_opt.comparison, "Comparison JSON")->required();
    report_cmd->add_option("--format", report_opt.format, "Output format: json, markdown or csv")
        ->default_val(report_opt.format);
    report_cmd->add_option("--out", report_opt.out, "Write here instead of stdout");
    report_cmd->callback([&] {
        const ComparisonReport report =
            parse_report(read_text_file(resolve_input(report_opt.comparison)));
        const ReportFormat format = report_format_from_string(report_opt.format);
        write_output(render_report(report, format), report_opt.out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << app.help() << "\nerror: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const wattagent::IoError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const wattagent::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
