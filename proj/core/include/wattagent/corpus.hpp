#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "wattagent/tokenizer.hpp"

namespace wattagent {

// Average tokens per page of a corpus under one token counter. counter_id is
// an opaque label: pipelines name the counter their per-page multipliers were
// calibrated against, and evaluation refuses stats produced under a another
// counter.
struct CorpusStats {
    std::string counter_id;
    std::uint64_t page_count{0};
    std::uint64_t total_tokens{0};
    double mean_tokens_per_page{0.0};

    friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

struct CorpusOptions {
    // Strip <script>/<style> contents before counting.
    bool exclude_script_style = false;
};

CorpusStats corpus_stats(std::span<const std::string> pages, const TokenCounter& counter,
                         const CorpusOptions& options = {});

// Corpus input is either a directory (all *.html / *.htm files, sorted by
// path) or a newline-delimited manifest of file paths, resolved relative to
// the manifest's directory.
std::vector<std::filesystem::path> load_corpus_paths(const std::filesystem::path& dir_or_manifest);

std::string read_text_file(const std::filesystem::path& path);

CorpusStats corpus_stats_from_path(const std::filesystem::path& dir_or_manifest,
                                   const TokenCounter& counter, const CorpusOptions& options = {});

} // namespace wattagent
