#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "test_support.hpp"
#include "wattagent/corpus.hpp"
#include "wattagent/errors.hpp"
#include "wattagent/serialize.hpp"

using namespace wattagent;
using testsupport::TempDir;
using testsupport::write_file;

TEST_CASE("mean over three pages") {
    // 10/20/30 tokens under the length counter
    const std::vector<std::string> pages{std::string(10, 'a'), std::string(20, 'b'),
                                         std::string(30, 'c')};
    const CorpusStats stats = corpus_stats(pages, TokenCounter::heuristic_chars(1.0));
    CHECK(stats.page_count == 3);
    CHECK(stats.total_tokens == 60);
    CHECK(stats.mean_tokens_per_page == 20.0);
}

TEST_CASE("singleton corpus") {
    const std::vector<std::string> pages{std::string(17, 'x')};
    const CorpusStats stats = corpus_stats(pages, TokenCounter::heuristic_chars(4.0));
    CHECK(stats.page_count == 1);
    CHECK(stats.total_tokens == 5); // ceil(17/4)
    CHECK(stats.mean_tokens_per_page == 5.0);
}

TEST_CASE("paper-scale synthetic corpus") {
    // char lengths force heuristic counts {100000, 137596} -> mean 118798
    const std::vector<std::string> pages{std::string(400000, 'a'), std::string(550384, 'b')};
    const CorpusStats stats = corpus_stats(pages, TokenCounter::heuristic_chars(4.0));
    CHECK(stats.total_tokens == 237596);
    CHECK(stats.mean_tokens_per_page == 118798.0);
}

TEST_CASE("empty corpus is rejected") {
    const std::vector<std::string> none;
    CHECK_THROWS_AS(corpus_stats(none, TokenCounter::heuristic_chars(4.0)), ValidationError);
}

TEST_CASE("stats are permutation invariant") {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<int> len(0, 4000);
    std::vector<std::string> pages;
    for (int i = 0; i < 40; ++i) {
        pages.push_back(std::string(static_cast<std::size_t>(len(rng)), 'p'));
    }
    const TokenCounter counter = TokenCounter::heuristic_chars(4.0);
    const CorpusStats reference = corpus_stats(pages, counter);
    for (int round = 0; round < 25; ++round) {
        std::shuffle(pages.begin(), pages.end(), rng);
        const CorpusStats shuffled = corpus_stats(pages, counter);
        CHECK(shuffled.total_tokens == reference.total_tokens);
        CHECK(shuffled.mean_tokens_per_page == reference.mean_tokens_per_page);
    }
}

TEST_CASE("script/style exclusion flag") {
    const std::vector<std::string> pages{
        "<html><script>var xxxxxxxxxxxxxxxx;</script><p>body</p></html>"};
    const TokenCounter chars = TokenCounter::heuristic_chars(1.0);
    const CorpusStats with = corpus_stats(pages, chars, {false});
    const CorpusStats without = corpus_stats(pages, chars, {true});
    CHECK(with.total_tokens == pages[0].size());
    CHECK(without.total_tokens == with.total_tokens - std::string("var xxxxxxxxxxxxxxxx;").size());
}

TEST_CASE("directory corpus: html files, sorted") {
    TempDir dir;
    write_file(dir.file("b.html"), std::string(8, 'b'));
    write_file(dir.file("a.htm"), std::string(4, 'a'));
    write_file(dir.file("notes.txt"), "ignored");
    write_file(dir.file("c.HTML"), std::string(12, 'c'));

    const auto paths = load_corpus_paths(dir.path());
    REQUIRE(paths.size() == 3);
    CHECK(paths[0].filename() == "a.htm");
    CHECK(paths[1].filename() == "b.html");
    CHECK(paths[2].filename() == "c.HTML");

    const CorpusStats stats = corpus_stats_from_path(dir.path(), TokenCounter::heuristic_chars(1.0));
    CHECK(stats.page_count == 3);
    CHECK(stats.total_tokens == 24);
}

TEST_CASE("manifest corpus resolves relative to the manifest") {
    TempDir dir;
    write_file(dir.file("one.html"), std::string(10, '1'));
    write_file(dir.file("two.html"), std::string(30, '2'));
    write_file(dir.file("list.txt"), "one.html\ntwo.html\n\n");

    const auto paths = load_corpus_paths(dir.file("list.txt"));
    REQUIRE(paths.size() == 2);
    const CorpusStats stats =
        corpus_stats_from_path(dir.file("list.txt"), TokenCounter::heuristic_chars(1.0));
    CHECK(stats.total_tokens == 40);
    CHECK(stats.mean_tokens_per_page == 20.0);
}

TEST_CASE("missing corpus paths raise IoError") {
    TempDir dir;
    CHECK_THROWS_AS(load_corpus_paths(dir.file("nowhere")), IoError);

    write_file(dir.file("list.txt"), "ghost.html\n");
    CHECK_THROWS_AS(corpus_stats_from_path(dir.file("list.txt"), TokenCounter::heuristic_chars(4.0)),
                    IoError);
}

TEST_CASE("stats JSON round trip and validation") {
    const CorpusStats stats{"deberta", 2, 237596, 118798.0};
    const CorpusStats back = corpus_stats_from_json(corpus_stats_to_json(stats));
    CHECK(back == stats);

    CHECK_THROWS_AS(corpus_stats_from_json("{"), ConfigError);
    CHECK_THROWS_AS(corpus_stats_from_json(R"({"counter_id":"x","page_count":0,)"
                                           R"("total_tokens":0,"mean_tokens_per_page":0.0})"),
                    ConfigError);
    // mean inconsistent with total/pages
    CHECK_THROWS_AS(corpus_stats_from_json(R"({"counter_id":"x","page_count":2,)"
                                           R"("total_tokens":10,"mean_tokens_per_page":7.0})"),
                    ConfigError);
}
