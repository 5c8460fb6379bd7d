#pragma once

#include <span>
#include <string>
#include <vector>

#include "wattagent/html.hpp"
#include "wattagent/tokenizer.hpp"

namespace wattagent {

// Estimate of the DOM expansion multiplier: how many tokens a model processes
// per raw page token when it is fed one cleaned representation per element.
struct ExpansionEstimate {
    double k_hat{0.0};
    std::vector<double> per_page_k;
    bool within_paper_bounds{false}; // 1 <= k_hat <= 3

    friend bool operator==(const ExpansionEstimate&, const ExpansionEstimate&) = default;
};

// Per-page accounting:
//
//   own(e) = tokens(slice of e) - sum over direct children c of tokens(slice of c)
//   ctx(e) = tokens(parent snippet) + sum over listed child snippets, per policy
//   k      = sum over elements of (own(e) + ctx(e)) / tokens(raw page)
//
// The own() terms telescope to the token count of the root slices, so a flat
// document that is exactly one root element yields k = 1 under NoContext for
// every counter. Individual own() terms may undershoot by a token or two when
// a ceil-style counter rounds child slices up; those deficits cancel in the
// page sum.
//
// Pages with zero tokens are rejected with a ValidationError. k outside
// [1, 3] is never an error, it only clears within_paper_bounds.
ExpansionEstimate dom_expansion_factor(std::string_view html, const TokenCounter& counter,
                                       ContextPolicy policy, const ParseOptions& options = {});

// Multi-page variant; k_hat is the token-weighted mean of the per-page values
// (total context-inflated tokens over total raw tokens).
ExpansionEstimate dom_expansion_factor(std::span<const std::string> pages,
                                       const TokenCounter& counter, ContextPolicy policy,
                                       const ParseOptions& options = {});

} // namespace wattagent
