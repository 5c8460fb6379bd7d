#include "wattagent/expansion.hpp"

#include <cstdint>

#include "wattagent/errors.hpp"

namespace wattagent {

namespace {

struct PageAccount {
    std::int64_t context_inflated_tokens{0};
    std::uint64_t raw_tokens{0};
};

PageAccount account_page(std::string_view html, const TokenCounter& counter,
                         ContextPolicy policy, const ParseOptions& options) {
    PageAccount account;
    account.raw_tokens = counter.count(html);
    if (account.raw_tokens == 0) {
        throw ValidationError("page has zero tokens; expansion factor is undefined");
    }

    const std::vector<DomElement> elements = dom_elements(html, options);

    // one slice count per element, reused for the child subtraction
    std::vector<std::int64_t> slice_tokens(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const SourceSpan span = elements[i].source_span;
        slice_tokens[i] =
            static_cast<std::int64_t>(counter.count(html.substr(span.begin, span.size())));
    }

    for (std::size_t i = 0; i < elements.size(); ++i) {
        std::int64_t own = slice_tokens[i];
        for (int child : elements[i].children) {
            own -= slice_tokens[static_cast<std::size_t>(child)];
        }
        std::int64_t context = 0;
        if (policy == ContextPolicy::FullContext) {
            if (elements[i].parent_repr) {
                context += static_cast<std::int64_t>(counter.count(*elements[i].parent_repr));
            }
            for (const std::string& child_repr : elements[i].child_reprs) {
                context += static_cast<std::int64_t>(counter.count(child_repr));
            }
        }
        account.context_inflated_tokens += own + context;
    }
    return account;
}

ExpansionEstimate finalize(std::vector<PageAccount> accounts) {
    std::int64_t total_inflated = 0;
    std::uint64_t total_raw = 0;
    ExpansionEstimate estimate;
    estimate.per_page_k.reserve(accounts.size());
    for (const PageAccount& account : accounts) {
        total_inflated += account.context_inflated_tokens;
        total_raw += account.raw_tokens;
        estimate.per_page_k.push_back(static_cast<double>(account.context_inflated_tokens) /
                                      static_cast<double>(account.raw_tokens));
    }
    estimate.k_hat = static_cast<double>(total_inflated) / static_cast<double>(total_raw);
    estimate.within_paper_bounds = estimate.k_hat >= 1.0 && estimate.k_hat <= 3.0;
    return estimate;
}

} // namespace

ExpansionEstimate dom_expansion_factor(std::string_view html, const TokenCounter& counter,
                                       ContextPolicy policy, const ParseOptions& options) {
    std::vector<PageAccount> accounts;
    accounts.push_back(account_page(html, counter, policy, options));
    return finalize(std::move(accounts));
}

ExpansionEstimate dom_expansion_factor(std::span<const std::string> pages,
                                       const TokenCounter& counter, ContextPolicy policy,
                                       const ParseOptions& options) {
    if (pages.empty()) {
        throw ValidationError("expansion factor needs at least one page");
    }
    std::vector<PageAccount> accounts;
    accounts.reserve(pages.size());
    for (const std::string& page : pages) {
        accounts.push_back(account_page(page, counter, policy, options));
    }
    return finalize(std::move(accounts));
}

} // namespace wattagent
