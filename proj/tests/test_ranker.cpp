#include <doctest.h>

#include <algorithm>

#include "sesh/querymodels.hpp"
#include "sesh/ranker.hpp"
#include "support/fixtures.hpp"
#include "support/rng.hpp"

using testsupport::make_index;
using testsupport::make_session;

namespace {

sesh::RankerConfig config(int n = 2000) {
    sesh::RankerConfig cfg;
    cfg.first_pass_n = n;
    return cfg;
}

}  // namespace

TEST_CASE("first_pass scores the whole collection and keeps the top N") {
    auto index = make_index({{"d1", "apple pie"}, {"d2", "apple apple"}, {"d3", "pear"}});
    sesh::Session session = make_session("S1", {}, "apple");

    sesh::CandidateSet all = sesh::first_pass(index, session, config());
    CHECK(all.docnos.size() == 3);
    CHECK(all.docnos[0] == "d2");  // highest tf

    sesh::CandidateSet top1 = sesh::first_pass(index, session, config(1));
    CHECK(top1.docnos == std::vector<std::string>{"d2"});
}

TEST_CASE("first_pass breaks score ties by ascending docno") {
    auto index = make_index({{"z-doc", "same text"}, {"a-doc", "same text"}});
    sesh::Session session = make_session("S1", {}, "same");
    sesh::CandidateSet c = sesh::first_pass(index, session, config());
    CHECK(c.docnos == std::vector<std::string>{"a-doc", "z-doc"});
}

TEST_CASE("first_pass rejects an empty current query") {
    auto index = make_index({{"d1", "a"}});
    sesh::Session session = make_session("S1", {}, "");
    CHECK_THROWS_AS((void)sesh::first_pass(index, session, config()), sesh::Error);
}

TEST_CASE("rerank with the current-query TF model reproduces first-pass order") {
    auto index = make_index({{"d1", "apple pie"},
                             {"d2", "apple apple zz"},
                             {"d3", "pear tart"},
                             {"d4", "apple pear"}});
    sesh::Session session = make_session("S1", {}, "apple pear");
    sesh::CandidateSet c = sesh::first_pass(index, session, config());
    sesh::Ranking r = sesh::rerank(index, c, sesh::tf_model(session.current_query), config());
    for (size_t i = 0; i < c.docnos.size(); i++) {
        CHECK(r.entries[i].docno == c.docnos[i]);
    }
}

TEST_CASE("rerank moves the matching document first") {
    auto index = make_index({{"d1", "x y"}, {"d2", "t y"}});
    sesh::CandidateSet c{"S1", {"d1", "d2"}};
    sesh::QueryModel qm;
    qm.set(sesh::unigram("t"), 1.0);
    sesh::Ranking r = sesh::rerank(index, c, qm, config());
    CHECK(r.entries[0].docno == "d2");
    CHECK(r.entries[1].docno == "d1");
    CHECK(r.entries[0].rank == 1);
    CHECK(r.entries[0].score > r.entries[1].score);
}

TEST_CASE("rerank keeps singletons and unknown docnos sort last") {
    auto index = make_index({{"d1", "a"}});
    sesh::QueryModel qm;
    qm.set(sesh::unigram("a"), 1.0);

    sesh::Ranking single = sesh::rerank(index, {"S1", {"d1"}}, qm, config());
    CHECK(single.entries.size() == 1);
    CHECK(single.entries[0].rank == 1);

    sesh::Ranking with_ghost = sesh::rerank(index, {"S1", {"ghost", "d1"}}, qm, config());
    CHECK(with_ghost.entries[0].docno == "d1");
    CHECK(with_ghost.entries[1].docno == "ghost");
    CHECK(with_ghost.entries[1].score == -std::numeric_limits<double>::infinity());
}

TEST_CASE("rerank is a permutation of the candidate set") {
    testsupport::Rng rng(15);
    auto index = make_index({{"d1", "a b"}, {"d2", "b c"}, {"d3", "c d"}, {"d4", "d e"}});
    std::vector<std::string> docnos = {"d1", "d2", "d3", "d4"};
    for (int trial = 0; trial < 20; trial++) {
        sesh::QueryModel qm;
        qm.set(sesh::unigram(std::string(1, static_cast<char>('a' + rng.range(0, 4)))),
               rng.unit() * 2 - 1 != 0 ? rng.unit() * 2 - 1 : 1.0);
        sesh::Ranking r = sesh::rerank(index, {"S1", docnos}, qm, config());
        std::vector<std::string> out;
        for (const auto& e : r.entries) out.push_back(e.docno);
        std::sort(out.begin(), out.end());
        CHECK(out == docnos);
    }
}

TEST_CASE("rerank is idempotent and scale-invariant in ordering") {
    auto index = make_index({{"d1", "a b"}, {"d2", "b b c"}, {"d3", "a c"}});
    sesh::CandidateSet c{"S1", {"d1", "d2", "d3"}};
    sesh::QueryModel qm;
    qm.set(sesh::unigram("b"), 1.0);
    qm.set(sesh::unigram("c"), -0.5);

    sesh::Ranking once = sesh::rerank(index, c, qm, config());
    sesh::CandidateSet reordered{"S1", {}};
    for (const auto& e : once.entries) reordered.docnos.push_back(e.docno);
    sesh::Ranking twice = sesh::rerank(index, reordered, qm, config());
    for (size_t i = 0; i < once.entries.size(); i++) {
        CHECK(once.entries[i].docno == twice.entries[i].docno);
    }

    sesh::QueryModel scaled;
    for (const auto& [entity, weight] : qm) scaled.set(entity, weight * 3.5);
    sesh::Ranking scaled_ranking = sesh::rerank(index, c, scaled, config());
    for (size_t i = 0; i < once.entries.size(); i++) {
        CHECK(once.entries[i].docno == scaled_ranking.entries[i].docno);
    }
}

TEST_CASE("write_run emits the TREC format") {
    sesh::Ranking r;
    r.session_id = "S1";
    r.entries = {{"d7", 1.5, 1}};
    CHECK(sesh::write_run({r}, "tf") == "S1 Q0 d7 1 1.500000 tf\n");

    CHECK(sesh::write_run({}, "tf").empty());

    sesh::Ranking r2;
    r2.session_id = "S2";
    r2.entries = {{"d1", 0.25, 1}, {"d2", -1.0, 2}};
    std::string text = sesh::write_run({r, r2}, "m");
    CHECK(text ==
          "S1 Q0 d7 1 1.500000 m\n"
          "S2 Q0 d1 1 0.250000 m\n"
          "S2 Q0 d2 2 -1.000000 m\n");
}

TEST_CASE("write_run refuses bad tags and invariant-violating rankings") {
    sesh::Ranking r;
    r.session_id = "S1";
    r.entries = {{"d1", 1.0, 1}, {"d2", 2.0, 2}};  // increasing scores
    CHECK_THROWS_AS((void)sesh::write_run({r}, "tag"), sesh::Error);

    sesh::Ranking gap;
    gap.session_id = "S1";
    gap.entries = {{"d1", 1.0, 1}, {"d2", 0.5, 3}};  // rank gap
    CHECK_THROWS_AS((void)sesh::write_run({gap}, "tag"), sesh::Error);

    sesh::Ranking dup;
    dup.session_id = "S1";
    dup.entries = {{"d1", 1.0, 1}, {"d1", 0.5, 2}};
    CHECK_THROWS_AS((void)sesh::write_run({dup}, "tag"), sesh::Error);

    sesh::Ranking ok;
    ok.session_id = "S1";
    ok.entries = {{"d1", 1.0, 1}};
    CHECK_THROWS_AS((void)sesh::write_run({ok}, "bad tag"), sesh::Error);
    CHECK_THROWS_AS((void)sesh::write_run({ok}, ""), sesh::Error);
}

TEST_CASE("read_run parses what write_run emits") {
    testsupport::Rng rng(99);
    std::vector<sesh::Ranking> rankings;
    for (int s = 0; s < 4; s++) {
        sesh::Ranking r;
        r.session_id = "S" + std::to_string(s);
        double score = 10.0;
        for (int d = 0; d < rng.range(1, 6); d++) {
            score -= rng.unit();
            r.entries.push_back({"doc" + std::to_string(d), score, d + 1});
        }
        rankings.push_back(std::move(r));
    }
    std::string text = sesh::write_run(rankings, "roundtrip");
    sesh::RunFile parsed = sesh::read_run(text);
    CHECK(parsed.tag == "roundtrip");
    REQUIRE(parsed.rankings.size() == rankings.size());
    for (size_t i = 0; i < rankings.size(); i++) {
        CHECK(parsed.rankings[i].session_id == rankings[i].session_id);
        REQUIRE(parsed.rankings[i].entries.size() == rankings[i].entries.size());
        for (size_t k = 0; k < rankings[i].entries.size(); k++) {
            CHECK(parsed.rankings[i].entries[k].docno == rankings[i].entries[k].docno);
            CHECK(parsed.rankings[i].entries[k].rank == rankings[i].entries[k].rank);
        }
    }
    CHECK_THROWS_AS(sesh::read_run("one two three\n"), sesh::ParseError);
}
