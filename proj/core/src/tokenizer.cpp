#include "wattagent/tokenizer.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "wattagent/errors.hpp"

namespace wattagent {

namespace detail {

struct BpeModel {
    std::unordered_set<std::string> vocab;
    // "left\x1fright" -> rank; \x1f cannot occur in either side of a merge
    // rule read from a space-separated file.
    std::unordered_map<std::string, std::size_t> merge_ranks;
};

} // namespace detail

namespace {

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string merge_key(const std::string& left, const std::string& right) {
    std::string key;
    key.reserve(left.size() + right.size() + 1);
    key += left;
    key += '\x1f';
    key += right;
    return key;
}

std::string read_asset_file(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(std::string(what) + " file not readable: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw ConfigError(std::string(what) + " file not readable: " + path.string());
    }
    return buf.str();
}

std::shared_ptr<const detail::BpeModel> load_bpe_model(const std::filesystem::path& vocab_file,
                                                       const std::filesystem::path& merges_file) {
    auto model = std::make_shared<detail::BpeModel>();

    const std::string vocab_text = read_asset_file(vocab_file, "BPE vocabulary");
    nlohmann::json vocab = nlohmann::json::parse(vocab_text, nullptr, false);
    if (vocab.is_discarded() || !vocab.is_object()) {
        throw ConfigError("BPE vocabulary must be one JSON object mapping token to id: " +
                          vocab_file.string());
    }
    for (const auto& [token, id] : vocab.items()) {
        if (!id.is_number_integer()) {
            throw ConfigError("BPE vocabulary ids must be integers: " + vocab_file.string());
        }
        model->vocab.insert(token);
    }

    const std::string merges_text = read_asset_file(merges_file, "BPE merges");
    std::istringstream lines(merges_text);
    std::string line;
    std::size_t rank = 0;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto space = line.find(' ');
        if (space == std::string::npos || space == 0 || space + 1 >= line.size() ||
            line.find(' ', space + 1) != std::string::npos) {
            throw ConfigError("BPE merge rule must be one space-separated pair, got '" + line +
                              "' in " + merges_file.string());
        }
        const std::string key = merge_key(line.substr(0, space), line.substr(space + 1));
        // first occurrence wins
        model->merge_ranks.emplace(key, rank);
        ++rank;
    }
    return model;
}

std::uint64_t bpe_count_run(std::string_view run, const detail::BpeModel& model) {
    std::vector<std::string> symbols;
    symbols.reserve(run.size());
    for (char c : run) {
        symbols.emplace_back(1, c);
    }
    while (symbols.size() > 1) {
        std::size_t best_rank = SIZE_MAX;
        std::size_t best_pos = 0;
        for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
            auto it = model.merge_ranks.find(merge_key(symbols[i], symbols[i + 1]));
            if (it != model.merge_ranks.end() && it->second < best_rank) {
                best_rank = it->second;
                best_pos = i;
            }
        }
        if (best_rank == SIZE_MAX) {
            break;
        }
        // merge every occurrence of the chosen pair, left to right
        const std::string left = symbols[best_pos];
        const std::string right = symbols[best_pos + 1];
        std::vector<std::string> merged;
        merged.reserve(symbols.size());
        for (std::size_t i = 0; i < symbols.size();) {
            if (i + 1 < symbols.size() && symbols[i] == left && symbols[i + 1] == right) {
                merged.push_back(left + right);
                i += 2;
            } else {
                merged.push_back(symbols[i]);
                ++i;
            }
        }
        symbols = std::move(merged);
    }
    return symbols.size();
}

} // namespace

std::string_view to_string(CounterKind kind) {
    switch (kind) {
    case CounterKind::HeuristicChars: return "heuristic-chars";
    case CounterKind::WhitespaceWords: return "whitespace-words";
    case CounterKind::Bpe: return "bpe";
    }
    throw ValidationError("unknown counter kind");
}

TokenCounter::TokenCounter(CounterKind kind, std::string id) : kind_(kind), id_(std::move(id)) {}

TokenCounter TokenCounter::heuristic_chars(double chars_per_token, std::string id) {
    if (!std::isfinite(chars_per_token) || chars_per_token <= 0.0) {
        throw ValidationError("chars-per-token divisor must be finite and positive");
    }
    if (id.empty()) {
        std::ostringstream name;
        name << "heuristic-chars:" << chars_per_token;
        id = name.str();
    }
    TokenCounter counter(CounterKind::HeuristicChars, std::move(id));
    counter.chars_per_token_ = chars_per_token;
    return counter;
}

TokenCounter TokenCounter::whitespace_words(std::string id) {
    if (id.empty()) {
        id = "whitespace-words";
    }
    return TokenCounter(CounterKind::WhitespaceWords, std::move(id));
}

TokenCounter TokenCounter::bpe(const std::filesystem::path& vocab_file,
                               const std::filesystem::path& merges_file, std::string id) {
    if (id.empty()) {
        id = "bpe:" + vocab_file.stem().string();
    }
    TokenCounter counter(CounterKind::Bpe, std::move(id));
    counter.bpe_ = load_bpe_model(vocab_file, merges_file);
    return counter;
}

std::uint64_t TokenCounter::count(std::string_view text) const {
    if (text.empty()) {
        return 0;
    }
    switch (kind_) {
    case CounterKind::HeuristicChars:
        return static_cast<std::uint64_t>(
            std::ceil(static_cast<double>(text.size()) / chars_per_token_));
    case CounterKind::WhitespaceWords: {
        std::uint64_t words = 0;
        bool in_word = false;
        for (char c : text) {
            if (is_ascii_space(c)) {
                in_word = false;
            } else if (!in_word) {
                in_word = true;
                ++words;
            }
        }
        return words;
    }
    case CounterKind::Bpe: {
        std::uint64_t total = 0;
        std::size_t pos = 0;
        while (pos < text.size()) {
            const bool ws = is_ascii_space(text[pos]);
            std::size_t end = pos;
            while (end < text.size() && is_ascii_space(text[end]) == ws) {
                ++end;
            }
            total += bpe_count_run(text.substr(pos, end - pos), *bpe_);
            pos = end;
        }
        return total;
    }
    }
    throw ValidationError("unknown counter kind");
}

std::uint64_t count_tokens(std::string_view text, const TokenCounter& counter) {
    return counter.count(text);
}

} // namespace wattagent
