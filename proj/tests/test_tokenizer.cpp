#include <doctest.h>

#include "sesh/tokenizer.hpp"
#include "support/rng.hpp"

using sesh::TokenizerConfig;
using sesh::tokenize;

TEST_CASE("tokenize lowercases and splits on non-alphanumerics") {
    CHECK(tokenize("Apple pie!") == std::vector<std::string>{"apple", "pie"});
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("U.S. open 2014") == std::vector<std::string>{"u", "s", "open", "2014"});
}

TEST_CASE("tokenize drops empty tokens from runs of separators") {
    CHECK(tokenize("  a -- b  ") == std::vector<std::string>{"a", "b"});
    CHECK(tokenize("...") == std::vector<std::string>{});
}

TEST_CASE("tokenize is deterministic") {
    testsupport::Rng rng(7);
    const std::string alphabet = "abcXYZ019 .,!-_\t\n";
    for (int trial = 0; trial < 50; trial++) {
        std::string text;
        int len = rng.range(0, 60);
        for (int i = 0; i < len; i++) {
            text.push_back(alphabet[rng.below(alphabet.size())]);
        }
        CHECK(tokenize(text) == tokenize(text));
    }
}

TEST_CASE("stopword removal is off by default and config-gated") {
    CHECK(tokenize("the apple and the pie") ==
          std::vector<std::string>{"the", "apple", "and", "the", "pie"});

    TokenizerConfig cfg;
    cfg.remove_stopwords = true;
    CHECK(tokenize("the apple and the pie", cfg) == std::vector<std::string>{"apple", "pie"});

    cfg.stopwords = {"apple"};
    CHECK(tokenize("the apple and the pie", cfg) ==
          std::vector<std::string>{"the", "and", "the", "pie"});
}

TEST_CASE("porter stemming behind the config flag") {
    TokenizerConfig cfg;
    cfg.stem = true;
    CHECK(tokenize("running caresses ponies", cfg) ==
          std::vector<std::string>{"run", "caress", "poni"});
}

TEST_CASE("porter stemmer classic vectors") {
    using sesh::porter_stem;
    CHECK(porter_stem("caresses") == "caress");
    CHECK(porter_stem("ponies") == "poni");
    CHECK(porter_stem("ties") == "ti");
    CHECK(porter_stem("caress") == "caress");
    CHECK(porter_stem("cats") == "cat");
    CHECK(porter_stem("feed") == "feed");
    CHECK(porter_stem("agreed") == "agree");
    CHECK(porter_stem("plastered") == "plaster");
    CHECK(porter_stem("bled") == "bled");
    CHECK(porter_stem("motoring") == "motor");
    CHECK(porter_stem("sing") == "sing");
    CHECK(porter_stem("conflated") == "conflate");
    CHECK(porter_stem("troubled") == "trouble");
    CHECK(porter_stem("sized") == "size");
    CHECK(porter_stem("hopping") == "hop");
    CHECK(porter_stem("tanned") == "tan");
    CHECK(porter_stem("falling") == "fall");
    CHECK(porter_stem("hissing") == "hiss");
    CHECK(porter_stem("fizzed") == "fizz");
    CHECK(porter_stem("failing") == "fail");
    CHECK(porter_stem("filing") == "file");
    CHECK(porter_stem("happy") == "happi");
    CHECK(porter_stem("sky") == "sky");
    CHECK(porter_stem("relational") == "relat");
    CHECK(porter_stem("conditional") == "condit");
    CHECK(porter_stem("rational") == "ration");
    CHECK(porter_stem("digitizer") == "digit");
    CHECK(porter_stem("operator") == "oper");
    CHECK(porter_stem("triplicate") == "triplic");
    CHECK(porter_stem("formative") == "form");
    CHECK(porter_stem("formalize") == "formal");
    CHECK(porter_stem("hopefulness") == "hope");
    CHECK(porter_stem("goodness") == "good");
    CHECK(porter_stem("revival") == "reviv");
    CHECK(porter_stem("allowance") == "allow");
    CHECK(porter_stem("inference") == "infer");
    CHECK(porter_stem("airliner") == "airlin");
    CHECK(porter_stem("adjustment") == "adjust");
    CHECK(porter_stem("dependent") == "depend");
    CHECK(porter_stem("adoption") == "adopt");
    CHECK(porter_stem("irritant") == "irrit");
    CHECK(porter_stem("bowdlerize") == "bowdler");
    CHECK(porter_stem("probate") == "probat");
    CHECK(porter_stem("rate") == "rate");
    CHECK(porter_stem("cease") == "ceas");
    CHECK(porter_stem("controll") == "control");
    CHECK(porter_stem("roll") == "roll");
}

TEST_CASE("fingerprint distinguishes configurations") {
    TokenizerConfig plain;
    TokenizerConfig stemmed;
    stemmed.stem = true;
    TokenizerConfig stopped;
    stopped.remove_stopwords = true;
    TokenizerConfig custom;
    custom.remove_stopwords = true;
    custom.stopwords = {"x"};

    CHECK(plain.fingerprint() == TokenizerConfig{}.fingerprint());
    CHECK(plain.fingerprint() != stemmed.fingerprint());
    CHECK(plain.fingerprint() != stopped.fingerprint());
    CHECK(stopped.fingerprint() != custom.fingerprint());
}
