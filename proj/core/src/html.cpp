#include "wattagent/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "wattagent/errors.hpp"

namespace wattagent {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_tag_name_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_tag_name_char(char c) {
    return is_tag_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == ':';
}

char to_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string lowercased(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), to_lower);
    return out;
}

bool is_void_element(std::string_view tag) {
    static constexpr std::array<std::string_view, 14> kVoid = {
        "area", "base", "br",    "col",    "embed",  "hr",  "img",
        "input", "link", "meta", "param", "source", "track", "wbr"};
    return std::find(kVoid.begin(), kVoid.end(), tag) != kVoid.end();
}

bool is_raw_text_element(std::string_view tag) {
    return tag == "script" || tag == "style" || tag == "textarea" || tag == "title";
}

// Collapse whitespace runs to single spaces and trim the ends.
std::string normalize_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (is_space(c)) {
            pending_space = !out.empty();
        } else {
            if (pending_space) {
                out += ' ';
                pending_space = false;
            }
            out += c;
        }
    }
    return out;
}

struct OpenTag {
    std::string tag;
    std::vector<std::pair<std::string, std::string>> salient_attributes;
    std::size_t tag_begin{0}; // position of '<'
    std::size_t tag_end{0};   // one past '>'
    bool self_closing{false};
};

// Parses one "<tag ...>" starting at pos (html[pos] == '<', name start
// verified by the caller). Returns the parsed tag and leaves *end one past
// the closing '>'.
OpenTag parse_open_tag(std::string_view html, std::size_t pos, const ParseOptions& options,
                       std::size_t* end) {
    OpenTag tag;
    tag.tag_begin = pos;
    std::size_t i = pos + 1;
    std::size_t name_begin = i;
    while (i < html.size() && is_tag_name_char(html[i])) {
        ++i;
    }
    tag.tag = lowercased(html.substr(name_begin, i - name_begin));

    while (i < html.size() && html[i] != '>') {
        if (is_space(html[i])) {
            ++i;
            continue;
        }
        if (html[i] == '/') {
            ++i;
            continue;
        }
        // attribute name
        std::size_t attr_begin = i;
        while (i < html.size() && html[i] != '=' && html[i] != '>' && html[i] != '/' &&
               !is_space(html[i])) {
            ++i;
        }
        std::string name = lowercased(html.substr(attr_begin, i - attr_begin));
        std::string value;
        while (i < html.size() && is_space(html[i])) {
            ++i;
        }
        if (i < html.size() && html[i] == '=') {
            ++i;
            while (i < html.size() && is_space(html[i])) {
                ++i;
            }
            if (i < html.size() && (html[i] == '"' || html[i] == '\'')) {
                const char quote = html[i++];
                std::size_t value_begin = i;
                while (i < html.size() && html[i] != quote) {
                    ++i;
                }
                value = std::string(html.substr(value_begin, i - value_begin));
                if (i < html.size()) {
                    ++i; // closing quote
                }
            } else {
                std::size_t value_begin = i;
                while (i < html.size() && html[i] != '>' && !is_space(html[i])) {
                    ++i;
                }
                value = std::string(html.substr(value_begin, i - value_begin));
            }
        }
        if (!name.empty() &&
            std::find(options.salient_attributes.begin(), options.salient_attributes.end(),
                      name) != options.salient_attributes.end()) {
            tag.salient_attributes.emplace_back(std::move(name), std::move(value));
        }
    }
    tag.self_closing = i > pos && html[i - 1] == '/';
    if (i < html.size()) {
        ++i; // '>'
    }
    tag.tag_end = i;
    *end = i;
    return tag;
}

} // namespace

ContextPolicy context_policy_from_string(std::string_view name) {
    if (name == "no-context") return ContextPolicy::NoContext;
    if (name == "full-context") return ContextPolicy::FullContext;
    throw ValidationError("unknown context policy '" + std::string(name) +
                          "' (expected no-context or full-context)");
}

std::string_view to_string(ContextPolicy policy) {
    return policy == ContextPolicy::NoContext ? "no-context" : "full-context";
}

std::vector<DomElement> dom_elements(std::string_view html, const ParseOptions& options) {
    if (html.find('\0') != std::string_view::npos) {
        throw ValidationError("input is not text: embedded NUL byte");
    }

    std::vector<DomElement> elements;
    std::vector<int> open_stack;

    auto append_text = [&](std::string_view text) {
        if (!open_stack.empty() && !text.empty()) {
            elements[open_stack.back()].text.append(text);
        }
    };

    auto close_element = [&](int index, std::size_t span_end, std::size_t content_end) {
        elements[index].source_span.end = span_end;
        elements[index].content_span.end = content_end;
    };

    std::size_t pos = 0;
    std::size_t text_begin = 0;
    while (pos < html.size()) {
        if (html[pos] != '<') {
            ++pos;
            continue;
        }
        // '<' of something markup-like?
        if (pos + 1 >= html.size()) {
            break;
        }
        const char next = html[pos + 1];
        if (next == '!') {
            append_text(html.substr(text_begin, pos - text_begin));
            if (html.compare(pos, 4, "<!--") == 0) {
                const auto end = html.find("-->", pos + 4);
                pos = end == std::string_view::npos ? html.size() : end + 3;
            } else {
                const auto end = html.find('>', pos);
                pos = end == std::string_view::npos ? html.size() : end + 1;
            }
            text_begin = pos;
            continue;
        }
        if (next == '?') {
            append_text(html.substr(text_begin, pos - text_begin));
            const auto end = html.find('>', pos);
            pos = end == std::string_view::npos ? html.size() : end + 1;
            text_begin = pos;
            continue;
        }
        if (next == '/') {
            // close tag
            std::size_t i = pos + 2;
            std::size_t name_begin = i;
            while (i < html.size() && is_tag_name_char(html[i])) {
                ++i;
            }
            const std::string tag = lowercased(html.substr(name_begin, i - name_begin));
            const auto gt = html.find('>', i);
            const std::size_t tag_close_begin = pos;
            const std::size_t after = gt == std::string_view::npos ? html.size() : gt + 1;
            if (tag.empty()) {
                // "</>" or garbage; treat as text
                pos = after;
                continue;
            }
            append_text(html.substr(text_begin, pos - text_begin));
            // find a matching open element; ignore the close tag if none
            int match = -1;
            for (auto it = open_stack.rbegin(); it != open_stack.rend(); ++it) {
                if (elements[*it].tag == tag) {
                    match = *it;
                    break;
                }
            }
            if (match >= 0) {
                // implicitly close anything opened after the match
                while (!open_stack.empty() && open_stack.back() != match) {
                    close_element(open_stack.back(), tag_close_begin, tag_close_begin);
                    open_stack.pop_back();
                }
                close_element(match, after, tag_close_begin);
                open_stack.pop_back();
            }
            pos = after;
            text_begin = pos;
            continue;
        }
        if (!is_tag_name_start(next)) {
            // bare '<' in text
            ++pos;
            continue;
        }

        append_text(html.substr(text_begin, pos - text_begin));
        std::size_t after = 0;
        OpenTag open = parse_open_tag(html, pos, options, &after);

        DomElement element;
        element.tag = open.tag;
        element.salient_attributes = std::move(open.salient_attributes);
        element.source_span.begin = open.tag_begin;
        element.content_span.begin = after;
        element.parent = open_stack.empty() ? -1 : open_stack.back();
        const int index = static_cast<int>(elements.size());
        if (element.parent >= 0) {
            elements[element.parent].children.push_back(index);
        }
        elements.push_back(std::move(element));

        if (open.self_closing || is_void_element(open.tag)) {
            close_element(index, after, after);
            elements[index].content_span.begin = after;
            pos = after;
            text_begin = pos;
            continue;
        }

        if (is_raw_text_element(open.tag)) {
            // raw content runs to the matching case-insensitive close tag
            const std::string needle = "</" + open.tag;
            std::size_t content_end = html.size();
            std::size_t span_end = html.size();
            for (std::size_t candidate = after; candidate + needle.size() <= html.size();
                 ++candidate) {
                std::size_t k = 0;
                while (k < needle.size() && to_lower(html[candidate + k]) == needle[k]) {
                    ++k;
                }
                if (k != needle.size()) {
                    continue;
                }
                const std::size_t boundary = candidate + needle.size();
                if (boundary < html.size() && html[boundary] != '>' && html[boundary] != '/' &&
                    !is_space(html[boundary])) {
                    continue; // "</scripts>" does not close "script"
                }
                content_end = candidate;
                const auto gt = html.find('>', candidate);
                span_end = gt == std::string_view::npos ? html.size() : gt + 1;
                break;
            }
            elements[index].text.append(html.substr(after, content_end - after));
            close_element(index, span_end, content_end);
            pos = span_end;
            text_begin = pos;
            continue;
        }

        open_stack.push_back(index);
        pos = after;
        text_begin = pos;
    }
    append_text(html.substr(text_begin, html.size() - text_begin));

    // close anything still open at end of input
    while (!open_stack.empty()) {
        close_element(open_stack.back(), html.size(), html.size());
        open_stack.pop_back();
    }

    // own_source: the element's slice with child slices excised
    for (auto& element : elements) {
        std::size_t cursor = element.source_span.begin;
        for (int child : element.children) {
            const SourceSpan child_span = elements[child].source_span;
            element.own_source.append(html.substr(cursor, child_span.begin - cursor));
            cursor = child_span.end;
        }
        element.own_source.append(html.substr(cursor, element.source_span.end - cursor));
    }

    // context snippets
    auto snippet = [&](const DomElement& e) {
        std::string text = normalize_whitespace(e.text);
        if (text.size() > options.repr_text_chars) {
            text.resize(options.repr_text_chars);
        }
        return "<" + e.tag + ">" + text + "</" + e.tag + ">";
    };
    for (auto& element : elements) {
        if (element.parent >= 0) {
            element.parent_repr = snippet(elements[element.parent]);
        }
        const std::size_t n = std::min(options.max_child_reprs, element.children.size());
        for (std::size_t i = 0; i < n; ++i) {
            element.child_reprs.push_back(snippet(elements[element.children[i]]));
        }
    }
    return elements;
}

std::string cleaned_element_repr(const DomElement& element, ContextPolicy policy) {
    if (policy == ContextPolicy::NoContext) {
        return element.own_source;
    }
    std::string repr;
    if (element.parent_repr) {
        repr += *element.parent_repr;
    }
    repr += element.own_source;
    for (const std::string& child : element.child_reprs) {
        repr += child;
    }
    return repr;
}

std::string strip_script_style_content(std::string_view html) {
    const std::vector<DomElement> elements = dom_elements(html);
    std::vector<SourceSpan> cut;
    for (const DomElement& e : elements) {
        if ((e.tag == "script" || e.tag == "style") && e.content_span.size() > 0) {
            cut.push_back(e.content_span);
        }
    }
    std::sort(cut.begin(), cut.end(),
              [](const SourceSpan& a, const SourceSpan& b) { return a.begin < b.begin; });
    std::string out;
    out.reserve(html.size());
    std::size_t cursor = 0;
    for (const SourceSpan& span : cut) {
        if (span.begin < cursor) {
            continue;
        }
        out.append(html.substr(cursor, span.begin - cursor));
        cursor = span.end;
    }
    out.append(html.substr(cursor));
    return out;
}

} // namespace wattagent
