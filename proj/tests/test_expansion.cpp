#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "wattagent/errors.hpp"
#include "wattagent/expansion.hpp"

using namespace wattagent;

namespace {

// Brute-force reference: walks the public element list and recomputes every
// slice and snippet count from scratch, one element at a time.
double oracle_expansion(const std::string& html, const TokenCounter& counter,
                        ContextPolicy policy) {
    const auto elements = dom_elements(html);
    long long inflated = 0;
    for (const auto& e : elements) {
        long long own = static_cast<long long>(
            counter.count(html.substr(e.source_span.begin, e.source_span.size())));
        for (int child : e.children) {
            const SourceSpan& span = elements[static_cast<std::size_t>(child)].source_span;
            own -= static_cast<long long>(counter.count(html.substr(span.begin, span.size())));
        }
        long long context = 0;
        if (policy == ContextPolicy::FullContext) {
            if (e.parent_repr) {
                context += static_cast<long long>(counter.count(*e.parent_repr));
            }
            for (const std::string& repr : e.child_reprs) {
                context += static_cast<long long>(counter.count(repr));
            }
        }
        inflated += own + context;
    }
    return static_cast<double>(inflated) / static_cast<double>(counter.count(html));
}

std::string random_flat_document(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> child_count(1, 12);
    std::uniform_int_distribution<int> text_len(0, 17);
    std::ostringstream page;
    page << "<root>";
    const int n = child_count(rng);
    for (int i = 0; i < n; ++i) {
        page << "<item>" << std::string(text_len(rng), 'w') << "</item>";
    }
    page << "</root>";
    return page.str();
}

} // namespace

TEST_CASE("flat documents yield exactly 1.0 under no-context") {
    // the per-element own counts telescope to the root slice count, so any
    // document that is exactly one flat root element divides to exactly 1,
    // for any counter
    std::mt19937_64 rng(23);
    const TokenCounter divisor4 = TokenCounter::heuristic_chars(4.0);
    const TokenCounter words = TokenCounter::whitespace_words();
    for (int i = 0; i < 200; ++i) {
        const std::string page = random_flat_document(rng);
        const ExpansionEstimate estimate =
            dom_expansion_factor(page, divisor4, ContextPolicy::NoContext);
        CHECK(estimate.k_hat == 1.0);
        CHECK(estimate.within_paper_bounds);
        CHECK(dom_expansion_factor(page, words, ContextPolicy::NoContext).k_hat == 1.0);
    }
}

TEST_CASE("constructed max-context page yields exactly 3.0") {
    // With the length counter, every snippet weighs exactly as much as the
    // node's own slice:
    //   root own   = "<r>" + "ttttttt" + "</r>"    -> 14 = |snippet(root)|
    //   child own  = "<c></c>"                     ->  7 = |snippet(child)|
    // Four children then double the page in context: the root collects
    // 4 x 7 = 28 child-snippet chars, each child collects the 14-char root
    // snippet, so context = 28 + 4 x 14 = 84 = 2 x 42 page chars, and
    // k = (42 + 84) / 42 = 3 exactly.
    const std::string page = "<r>ttttttt<c></c><c></c><c></c><c></c></r>";
    const TokenCounter chars = TokenCounter::heuristic_chars(1.0);
    const ExpansionEstimate estimate =
        dom_expansion_factor(page, chars, ContextPolicy::FullContext);
    CHECK(estimate.k_hat == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(estimate.within_paper_bounds);
    CHECK(oracle_expansion(page, chars, ContextPolicy::FullContext) == estimate.k_hat);
}

TEST_CASE("ten nested divs, full context") {
    // each level carries more own text than the 32-char snippet cap, so the
    // parent/child context stays below the own weight and k lands inside (1, 3]
    std::ostringstream page;
    for (int i = 0; i < 10; ++i) {
        page << "<div>" << std::string(48, static_cast<char>('a' + i));
    }
    for (int i = 0; i < 10; ++i) {
        page << "</div>";
    }
    const TokenCounter divisor4 = TokenCounter::heuristic_chars(4.0);
    const ExpansionEstimate estimate =
        dom_expansion_factor(page.str(), divisor4, ContextPolicy::FullContext);
    CHECK(estimate.k_hat > 1.0);
    CHECK(estimate.k_hat <= 3.0);
    CHECK(estimate.within_paper_bounds);
    CHECK(estimate.k_hat == oracle_expansion(page.str(), divisor4, ContextPolicy::FullContext));
}

TEST_CASE("fast path equals the brute-force oracle on random documents") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> depth(1, 6);
    std::uniform_int_distribution<int> width(1, 4);
    std::uniform_int_distribution<int> text_len(0, 9);
    const TokenCounter divisor4 = TokenCounter::heuristic_chars(4.0);
    const TokenCounter words = TokenCounter::whitespace_words();

    for (int round = 0; round < 100; ++round) {
        std::ostringstream page;
        std::function<void(int)> emit = [&](int levels) {
            if (levels == 0) {
                page << std::string(text_len(rng), 'x') << ' ';
                return;
            }
            const int n = width(rng);
            for (int i = 0; i < n; ++i) {
                page << "<n" << levels << ">";
                emit(levels - 1);
                page << "</n" << levels << ">";
            }
        };
        page << "<top>";
        emit(depth(rng));
        page << "</top>";
        const std::string html = page.str();
        for (const ContextPolicy policy :
             {ContextPolicy::NoContext, ContextPolicy::FullContext}) {
            CHECK(dom_expansion_factor(html, divisor4, policy).k_hat ==
                  oracle_expansion(html, divisor4, policy));
            CHECK(dom_expansion_factor(html, words, policy).k_hat ==
                  oracle_expansion(html, words, policy));
        }
    }
}

TEST_CASE("per-element no-context repr counts stay within the markup bound") {
    // sum over elements of ceil-counted own reprs can exceed the page count
    // by at most one token per element
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> depth(1, 5);
    std::uniform_int_distribution<int> width(1, 3);
    std::uniform_int_distribution<int> text_len(0, 11);
    const TokenCounter divisor4 = TokenCounter::heuristic_chars(4.0);

    auto check_page = [&](const std::string& page) {
        const auto elements = dom_elements(page);
        std::uint64_t total = 0;
        for (const auto& e : elements) {
            total += divisor4.count(cleaned_element_repr(e, ContextPolicy::NoContext));
        }
        CHECK(total <= divisor4.count(page) + elements.size());
    };

    for (int i = 0; i < 200; ++i) {
        check_page(random_flat_document(rng));

        std::ostringstream nested;
        std::function<void(int)> emit = [&](int levels) {
            if (levels == 0) {
                nested << std::string(text_len(rng), 'y');
                return;
            }
            const int n = width(rng);
            for (int j = 0; j < n; ++j) {
                nested << "<d>";
                emit(levels - 1);
                nested << "</d>";
            }
        };
        nested << "<top>";
        emit(depth(rng));
        nested << "</top>";
        check_page(nested.str());
    }
}

TEST_CASE("zero-token page is rejected") {
    const TokenCounter divisor4 = TokenCounter::heuristic_chars(4.0);
    CHECK_THROWS_AS(dom_expansion_factor("", divisor4, ContextPolicy::NoContext),
                    ValidationError);
    // whitespace-only page has zero word tokens
    CHECK_THROWS_AS(
        dom_expansion_factor("   \n  ", TokenCounter::whitespace_words(), ContextPolicy::NoContext),
        ValidationError);
}

TEST_CASE("a page without elements accounts zero model tokens") {
    const TokenCounter divisor4 = TokenCounter::heuristic_chars(4.0);
    const ExpansionEstimate estimate =
        dom_expansion_factor("plain text, no markup at all", divisor4,
                             ContextPolicy::FullContext);
    CHECK(estimate.k_hat == 0.0);
    CHECK_FALSE(estimate.within_paper_bounds);
}

TEST_CASE("out-of-bounds k only clears the flag") {
    // heavy context on a tiny page pushes k above 3 without failing
    const std::string page = "<a><b>xyzw</b><c>pqrs</c><d>mnop</d><e>ijkl</e></a>";
    const TokenCounter words = TokenCounter::whitespace_words();
    const ExpansionEstimate estimate =
        dom_expansion_factor(page, words, ContextPolicy::FullContext);
    CHECK(estimate.k_hat > 3.0);
    CHECK_FALSE(estimate.within_paper_bounds);
}

TEST_CASE("multi-page k_hat is the token-weighted mean") {
    const TokenCounter chars = TokenCounter::heuristic_chars(1.0);
    const std::vector<std::string> pages{"<r>ttttttt<c></c><c></c><c></c><c></c></r>",
                                         "<root><item>wwww</item></root>"};
    const ExpansionEstimate estimate =
        dom_expansion_factor(pages, chars, ContextPolicy::NoContext);
    REQUIRE(estimate.per_page_k.size() == 2);
    CHECK(estimate.per_page_k[0] == 1.0);
    CHECK(estimate.per_page_k[1] == 1.0);
    CHECK(estimate.k_hat == 1.0);

    const ExpansionEstimate full = dom_expansion_factor(pages, chars, ContextPolicy::FullContext);
    // weighted by page tokens: (42*3 + 30*k2) / (42 + 30)
    const double k2 = full.per_page_k[1];
    CHECK(full.k_hat ==
          doctest::Approx((42.0 * 3.0 + 30.0 * k2) / 72.0).epsilon(1e-12));
}
