#include "sesh/xml.hpp"

#include <cctype>

#include "sesh/common.hpp"

namespace sesh::xml {

const std::string* Element::attr(const std::string& key) const {
    auto it = attrs.find(key);
    return it == attrs.end() ? nullptr : &it->second;
}

const Element* Element::child(std::string_view name) const {
    for (const auto& c : children)
        if (c->name == name) return c.get();
    return nullptr;
}

std::vector<const Element*> Element::children_named(std::string_view name) const {
    std::vector<const Element*> out;
    for (const auto& c : children)
        if (c->name == name) out.push_back(c.get());
    return out;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view input) : in_(input) {}

    std::unique_ptr<Element> parse_document() {
        skip_misc();
        if (eof()) fail("document has no root element");
        auto root = parse_element();
        skip_misc();
        if (!eof()) fail("content after root element");
        return root;
    }

private:
    std::string_view in_;
    size_t pos_ = 0;
    int line_ = 1;

    bool eof() const { return pos_ >= in_.size(); }
    char peek() const { return in_[pos_]; }
    bool starts_with(std::string_view s) const { return in_.substr(pos_, s.size()) == s; }

    char advance() {
        char c = in_[pos_++];
        if (c == '\n') line_++;
        return c;
    }

    void skip(size_t n) {
        for (size_t i = 0; i < n && !eof(); i++) advance();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("malformed XML at line " + std::to_string(line_) + ": " + msg);
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    // Whitespace, comments, PIs, XML declaration and DOCTYPE between markup.
    void skip_misc() {
        for (;;) {
            skip_ws();
            if (starts_with("<!--")) {
                skip_comment();
            } else if (starts_with("<?")) {
                skip_until("?>");
            } else if (starts_with("<!DOCTYPE")) {
                skip_until(">");
            } else {
                return;
            }
        }
    }

    void skip_comment() {
        skip(4);
        while (!eof() && !starts_with("-->")) advance();
        if (eof()) fail("unterminated comment");
        skip(3);
    }

    void skip_until(std::string_view end) {
        while (!eof() && !starts_with(end)) advance();
        if (eof()) fail("unterminated markup");
        skip(end.size());
    }

    static bool name_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
    }
    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '-' ||
               c == '.';
    }

    std::string parse_name() {
        if (eof() || !name_start(peek())) fail("expected a name");
        std::string name;
        while (!eof() && name_char(peek())) name.push_back(advance());
        return name;
    }

    std::string parse_reference() {
        // '&' already consumed.
        std::string ent;
        while (!eof() && peek() != ';') {
            ent.push_back(advance());
            if (ent.size() > 10) fail("unterminated entity reference");
        }
        if (eof()) fail("unterminated entity reference");
        advance();  // ';'
        if (ent == "amp") return "&";
        if (ent == "lt") return "<";
        if (ent == "gt") return ">";
        if (ent == "quot") return "\"";
        if (ent == "apos") return "'";
        if (!ent.empty() && ent[0] == '#') {
            long code = 0;
            try {
                code = (ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X'))
                           ? std::stol(ent.substr(2), nullptr, 16)
                           : std::stol(ent.substr(1), nullptr, 10);
            } catch (const std::exception&) {
                fail("bad character reference &" + ent + ";");
            }
            return encode_utf8(code);
        }
        fail("unknown entity &" + ent + ";");
    }

    std::string encode_utf8(long code) const {
        if (code < 0 || code > 0x10ffff) fail("character reference out of range");
        std::string out;
        auto c = static_cast<unsigned long>(code);
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
        } else if (c < 0x800) {
            out.push_back(static_cast<char>(0xc0 | (c >> 6)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3f)));
        } else if (c < 0x10000) {
            out.push_back(static_cast<char>(0xe0 | (c >> 12)));
            out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3f)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3f)));
        } else {
            out.push_back(static_cast<char>(0xf0 | (c >> 18)));
            out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3f)));
            out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3f)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3f)));
        }
        return out;
    }

    std::string parse_attr_value() {
        if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
        char quote = advance();
        std::string value;
        while (!eof() && peek() != quote) {
            if (peek() == '<') fail("'<' in attribute value");
            if (peek() == '&') {
                advance();
                value += parse_reference();
            } else {
                value.push_back(advance());
            }
        }
        if (eof()) fail("unterminated attribute value");
        advance();  // closing quote
        return value;
    }

    std::unique_ptr<Element> parse_element() {
        if (eof() || peek() != '<') fail("expected element");
        int start_line = line_;
        advance();  // '<'
        auto elem = std::make_unique<Element>();
        elem->line = start_line;
        elem->name = parse_name();
        for (;;) {
            skip_ws();
            if (eof()) fail("unterminated start tag <" + elem->name + ">");
            if (peek() == '>') {
                advance();
                parse_content(*elem);
                return elem;
            }
            if (starts_with("/>")) {
                skip(2);
                return elem;
            }
            std::string key = parse_name();
            skip_ws();
            if (eof() || peek() != '=') fail("expected '=' after attribute " + key);
            advance();
            skip_ws();
            if (!elem->attrs.emplace(key, parse_attr_value()).second)
                fail("duplicate attribute " + key);
        }
    }

    void parse_content(Element& elem) {
        for (;;) {
            if (eof()) fail("unterminated element <" + elem.name + ">");
            if (starts_with("</")) {
                skip(2);
                std::string name = parse_name();
                if (name != elem.name)
                    fail("mismatched close tag </" + name + "> for <" + elem.name + ">");
                skip_ws();
                if (eof() || peek() != '>') fail("malformed close tag </" + name + ">");
                advance();
                return;
            }
            if (starts_with("<!--")) {
                skip_comment();
            } else if (starts_with("<![CDATA[")) {
                skip(9);
                while (!eof() && !starts_with("]]>")) elem.text.push_back(advance());
                if (eof()) fail("unterminated CDATA section");
                skip(3);
            } else if (starts_with("<?")) {
                skip_until("?>");
            } else if (peek() == '<') {
                elem.children.push_back(parse_element());
            } else if (peek() == '&') {
                advance();
                elem.text += parse_reference();
            } else {
                elem.text.push_back(advance());
            }
        }
    }
};

}  // namespace

std::unique_ptr<Element> parse(std::string_view input) { return Parser(input).parse_document(); }

std::string escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace sesh::xml
