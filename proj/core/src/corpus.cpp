#include "wattagent/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "wattagent/errors.hpp"
#include "wattagent/html.hpp"

namespace wattagent {

CorpusStats corpus_stats(std::span<const std::string> pages, const TokenCounter& counter,
                         const CorpusOptions& options) {
    if (pages.empty()) {
        throw ValidationError("corpus is empty");
    }
    std::uint64_t total = 0;
    for (const std::string& page : pages) {
        total += options.exclude_script_style ? counter.count(strip_script_style_content(page))
                                              : counter.count(page);
    }
    CorpusStats stats;
    stats.counter_id = counter.id();
    stats.page_count = pages.size();
    stats.total_tokens = total;
    stats.mean_tokens_per_page = static_cast<double>(total) / static_cast<double>(pages.size());
    return stats;
}

std::vector<std::filesystem::path> load_corpus_paths(
    const std::filesystem::path& dir_or_manifest) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (fs::is_directory(dir_or_manifest, ec)) {
        std::vector<fs::path> paths;
        try {
            for (const auto& entry : fs::directory_iterator(dir_or_manifest)) {
                if (!entry.is_regular_file()) {
                    continue;
                }
                std::string ext = entry.path().extension().string();
                std::transform(ext.begin(), ext.end(), ext.begin(),
                               [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
                if (ext == ".html" || ext == ".htm") {
                    paths.push_back(entry.path());
                }
            }
        } catch (const fs::filesystem_error& e) {
            throw IoError("cannot list corpus directory " + dir_or_manifest.string() + ": " +
                          e.what());
        }
        std::sort(paths.begin(), paths.end());
        return paths;
    }
    if (fs::is_regular_file(dir_or_manifest, ec)) {
        // manifest: one path per line, relative to the manifest's directory
        const std::string text = read_text_file(dir_or_manifest);
        std::istringstream lines(text);
        std::string line;
        std::vector<fs::path> paths;
        const fs::path base = dir_or_manifest.parent_path();
        while (std::getline(lines, line)) {
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty()) {
                continue;
            }
            fs::path p(line);
            paths.push_back(p.is_absolute() ? p : base / p);
        }
        return paths;
    }
    throw IoError("corpus path does not exist: " + dir_or_manifest.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("cannot read file: " + path.string());
    }
    return buf.str();
}

CorpusStats corpus_stats_from_path(const std::filesystem::path& dir_or_manifest,
                                   const TokenCounter& counter, const CorpusOptions& options) {
    const auto paths = load_corpus_paths(dir_or_manifest);
    std::vector<std::string> pages;
    pages.reserve(paths.size());
    for (const auto& path : paths) {
        pages.push_back(read_text_file(path));
    }
    return corpus_stats(pages, counter, options);
}

} // namespace wattagent
