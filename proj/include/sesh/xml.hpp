#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace sesh::xml {

// Small non-validating XML DOM, sufficient for the TREC session-track logs:
// elements, attributes, character data, entity references, comments, CDATA
// and processing instructions. No namespaces, no DTD expansion.
struct Element {
    std::string name;
    std::map<std::string, std::string> attrs;
    std::vector<std::unique_ptr<Element>> children;
    // Concatenated character data directly inside this element.
    std::string text;
    // 1-based line of the opening tag, for error messages.
    int line = 0;

    const std::string* attr(const std::string& key) const;
    const Element* child(std::string_view name) const;
    std::vector<const Element*> children_named(std::string_view name) const;
};

// Parses a complete document and returns its root element. Throws
// sesh::ParseError with a line number on malformed input.
std::unique_ptr<Element> parse(std::string_view input);

std::string escape(std::string_view text);

}  // namespace sesh::xml
