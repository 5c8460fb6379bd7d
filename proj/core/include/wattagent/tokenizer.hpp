#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

namespace wattagent {

enum class CounterKind { HeuristicChars, WhitespaceWords, Bpe };

std::string_view to_string(CounterKind kind);

namespace detail {
struct BpeModel;
}

// Deterministic token counter. Counting is a pure function of the input text:
// the same text always yields the same count, and the empty string counts 0.
//
// Kinds:
//   heuristic-chars   ceil(byte_length / chars_per_token); the default divisor
//                     of 4 is the common English-text approximation.
//   whitespace-words  number of maximal non-whitespace runs.
//   bpe               byte-level byte-pair encoding driven by a vocabulary
//                     file (one JSON object, token -> id) and a merges file
//                     (one space-separated pair per line, '#' lines skipped).
//                     Text is split into alternating whitespace/non-whitespace
//                     runs, each run starts as single bytes, and merge rules
//                     apply lowest rank first. The count is the number of
//                     symbols left after no rule applies.
class TokenCounter {
public:
    static TokenCounter heuristic_chars(double chars_per_token = 4.0, std::string id = "");
    static TokenCounter whitespace_words(std::string id = "");
    static TokenCounter bpe(const std::filesystem::path& vocab_file,
                            const std::filesystem::path& merges_file,
                            std::string id = "");

    std::uint64_t count(std::string_view text) const;

    const std::string& id() const { return id_; }
    CounterKind kind() const { return kind_; }
    double chars_per_token() const { return chars_per_token_; }

private:
    TokenCounter(CounterKind kind, std::string id);

    CounterKind kind_;
    std::string id_;
    double chars_per_token_{4.0};
    std::shared_ptr<const detail::BpeModel> bpe_; // immutable, shared across threads
};

// Free-function spelling of TokenCounter::count.
std::uint64_t count_tokens(std::string_view text, const TokenCounter& counter);

} // namespace wattagent
