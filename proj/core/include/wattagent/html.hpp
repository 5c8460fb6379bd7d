#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wattagent {

// Byte range [begin, end) in the original document.
struct SourceSpan {
    std::size_t begin{0};
    std::size_t end{0};

    std::size_t size() const { return end - begin; }
    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct ParseOptions {
    // Attributes kept on DomElement records. The defaults are the attributes
    // that identify interactive elements on real pages.
    std::vector<std::string> salient_attributes{"id",    "class",       "title", "alt",  "value",
                                                "placeholder", "aria-label", "href",  "name", "type"};
    // Parent/child context snippets: per-node tag plus a bounded prefix of its
    // direct text, at most this many child entries per element.
    std::size_t max_child_reprs = 5;
    std::size_t repr_text_chars = 32;
};

// One element of the parsed DOM.
//
// own_source is the element's source slice with every descendant element's
// slice excised, so it carries the element's tag markup, attribute text and
// direct text verbatim. parent_repr/child_reprs are compact context snippets
// of the form "<tag>" + first N chars of the node's direct text + "</tag>".
struct DomElement {
    std::string tag; // lowercased
    std::string text; // direct text content (descendants excluded, markup stripped)
    std::vector<std::pair<std::string, std::string>> salient_attributes; // source order
    std::optional<std::string> parent_repr;
    std::vector<std::string> child_reprs; // first max_child_reprs children
    SourceSpan source_span;
    SourceSpan content_span; // between the open and close tags; empty for void elements

    std::string own_source; // source slice minus descendant slices
    int parent = -1; // index into the element list; -1 for roots
    std::vector<int> children; // direct child indices, document order
};

// Forgiving HTML parse: unclosed tags, stray close tags, unquoted attributes
// and comments are all tolerated the way browsers tolerate them. Elements are
// returned in document order and child spans nest inside parent spans.
//
// Only input that is not text at all (embedded NUL bytes) is rejected, with a
// ValidationError.
std::vector<DomElement> dom_elements(std::string_view html, const ParseOptions& options = {});

enum class ContextPolicy {
    NoContext,  // the element's own excised source slice, nothing else
    FullContext // parent snippet + own slice + child snippets
};

ContextPolicy context_policy_from_string(std::string_view name);
std::string_view to_string(ContextPolicy policy);

// Textual representation of one element under a context policy. Under
// NoContext this is exactly own_source, so it tokenizes to the element's own
// source-slice token count by construction.
std::string cleaned_element_repr(const DomElement& element, ContextPolicy policy);

// Copy of the document with the contents of <script> and <style> elements
// removed (tags stay). Used when corpus statistics should not count code.
std::string strip_script_style_content(std::string_view html);

} // namespace wattagent
