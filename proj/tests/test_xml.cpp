#include <doctest.h>

#include "sesh/common.hpp"
#include "sesh/xml.hpp"

TEST_CASE("xml parses elements, attributes and text") {
    auto root = sesh::xml::parse("<a x=\"1\"><b>hello</b><b>world</b><c/></a>");
    CHECK(root->name == "a");
    REQUIRE(root->attr("x") != nullptr);
    CHECK(*root->attr("x") == "1");
    auto bs = root->children_named("b");
    REQUIRE(bs.size() == 2);
    CHECK(bs[0]->text == "hello");
    CHECK(bs[1]->text == "world");
    CHECK(root->child("c") != nullptr);
    CHECK(root->child("missing") == nullptr);
}

TEST_CASE("xml resolves entities and character references") {
    auto root = sesh::xml::parse("<q a='&lt;&amp;&gt;'>&quot;caf&#233;&#x21;&apos;</q>");
    CHECK(*root->attr("a") == "<&>");
    CHECK(root->text == "\"caf\xc3\xa9!'");
}

TEST_CASE("xml skips declaration, comments, PIs and CDATA keeps bytes") {
    auto root = sesh::xml::parse(
        "<?xml version=\"1.0\"?>\n"
        "<!-- top comment -->\n"
        "<root><!-- inner --><![CDATA[a < b & c]]></root>\n");
    CHECK(root->name == "root");
    CHECK(root->text == "a < b & c");
}

TEST_CASE("xml errors carry line numbers") {
    auto check_line = [](const char* input, const char* needle) {
        try {
            sesh::xml::parse(input);
            FAIL("expected ParseError");
        } catch (const sesh::ParseError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    check_line("<a>\n<b>\n</a>", "line 3");
    check_line("<a attr=1></a>", "quoted");
    check_line("<a>&bogus;</a>", "entity");
    check_line("<a><b></b>", "unterminated");
}

TEST_CASE("xml escape round-trips through the parser") {
    std::string nasty = "a<b&c>\"d'e";
    std::string doc = "<t>" + sesh::xml::escape(nasty) + "</t>";
    auto root = sesh::xml::parse(doc);
    CHECK(root->text == nasty);
}
