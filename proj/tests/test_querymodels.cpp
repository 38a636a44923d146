#include <doctest.h>

#include <cmath>

#include "sesh/querymodels.hpp"
#include "support/fixtures.hpp"
#include "support/rng.hpp"

using testsupport::make_index;
using testsupport::make_query;
using testsupport::make_result;
using testsupport::make_session;
using sesh::unigram;

TEST_CASE("tf_model weights terms by in-query frequency") {
    sesh::QueryModel m = sesh::tf_model(make_query("apple pie apple"));
    CHECK(m.size() == 2);
    CHECK(m.weight(unigram("apple")) == 2.0);
    CHECK(m.weight(unigram("pie")) == 1.0);

    CHECK(sesh::tf_model(make_query("a")).weight(unigram("a")) == 1.0);
    sesh::QueryModel abc = sesh::tf_model(make_query("a b c"));
    CHECK(abc.size() == 3);
    CHECK(abc.weight(unigram("b")) == 1.0);

    CHECK_THROWS_AS(sesh::tf_model(make_query("")), sesh::Error);
}

TEST_CASE("aggregate sums entity-wise and drops exact cancellations") {
    sesh::QueryModel m1;
    m1.set(unigram("a"), 1.0);
    m1.set(unigram("b"), 1.0);
    sesh::QueryModel m2;
    m2.set(unigram("b"), 1.0);
    m2.set(unigram("c"), 1.0);

    sesh::QueryModel sum = sesh::aggregate({m1, m2}, sesh::AggregationScheme::uniform);
    CHECK(sum.weight(unigram("a")) == 1.0);
    CHECK(sum.weight(unigram("b")) == 2.0);
    CHECK(sum.weight(unigram("c")) == 1.0);

    CHECK(sesh::aggregate({m1}, sesh::AggregationScheme::uniform) == m1);

    sesh::QueryModel pos;
    pos.set(unigram("a"), 1.0);
    sesh::QueryModel neg;
    neg.set(unigram("a"), -1.0);
    sesh::QueryModel cancelled = sesh::aggregate({pos, neg}, sesh::AggregationScheme::uniform);
    CHECK(cancelled.empty());

    CHECK_THROWS_AS(sesh::aggregate({}, sesh::AggregationScheme::uniform), sesh::Error);
}

TEST_CASE("tf_session_model scopes") {
    sesh::Interaction i1;
    i1.query = make_query("a b");
    sesh::Session session = make_session("S1", {i1}, "b c");

    sesh::QueryModel all = sesh::tf_session_model(session, sesh::TfScope::all_queries);
    CHECK(all.weight(unigram("a")) == 1.0);
    CHECK(all.weight(unigram("b")) == 2.0);
    CHECK(all.weight(unigram("c")) == 1.0);

    sesh::QueryModel last = sesh::tf_session_model(session, sesh::TfScope::last_query);
    CHECK(last.size() == 2);
    CHECK(last.weight(unigram("b")) == 1.0);
    CHECK(last.weight(unigram("c")) == 1.0);

    sesh::QueryModel first = sesh::tf_session_model(session, sesh::TfScope::first_query);
    CHECK(first.size() == 2);
    CHECK(first.weight(unigram("a")) == 1.0);
    CHECK(first.weight(unigram("b")) == 1.0);
}

TEST_CASE("qcm_decompose splits theme, added and removed terms") {
    auto d1 = sesh::qcm_decompose(make_query("a b"), make_query("b c"));
    CHECK(d1.theme == std::set<std::string>{"b"});
    CHECK(d1.added == std::set<std::string>{"c"});
    CHECK(d1.removed == std::set<std::string>{"a"});

    auto d2 = sesh::qcm_decompose(make_query("a"), make_query("a"));
    CHECK(d2.theme == std::set<std::string>{"a"});
    CHECK(d2.added.empty());
    CHECK(d2.removed.empty());

    auto d3 = sesh::qcm_decompose(make_query("a b"), make_query("c d"));
    CHECK(d3.theme.empty());
    CHECK(d3.added == std::set<std::string>{"c", "d"});
    CHECK(d3.removed == std::set<std::string>{"a", "b"});
}

TEST_CASE("qcm case weights at the published parameters") {
    sesh::QcmParams params;  // alpha=2.2 beta=1.8 epsilon=0.07 delta=0.4
    CHECK(sesh::qcm_case_weight(sesh::QcmBranch::theme, 0.0, 0.0, params) == 3.2);
    CHECK(sesh::qcm_case_weight(sesh::QcmBranch::removed, 0.2, 0.0, params) ==
          doctest::Approx(-0.08).epsilon(1e-15));
    CHECK(sesh::qcm_case_weight(sesh::QcmBranch::added_absent, 0.0, 3.0, params) == 1.21);
}

TEST_CASE("qcm branch weight signs") {
    sesh::QcmParams params;
    testsupport::Rng rng(5);
    for (int i = 0; i < 200; i++) {
        double p = rng.unit();
        double idf_value = rng.unit() * 10.0;
        CHECK(sesh::qcm_case_weight(sesh::QcmBranch::theme, p, 0, params) >= 1.0);
        CHECK(sesh::qcm_case_weight(sesh::QcmBranch::added_absent, 0, idf_value, params) > 1.0);
        CHECK(sesh::qcm_case_weight(sesh::QcmBranch::removed, p, 0, params) <= 0.0);
    }
}

namespace {

// Two-interaction session over a tiny corpus. The previous top document is
// "top": "a b"; SAT clicks are absent so P comes from it.
sesh::Session two_query_session(const std::string& q1, const std::string& q2,
                                const std::string& current) {
    sesh::Interaction i1;
    i1.query = make_query(q1);
    i1.serp = {make_result("top", 1, "a b"), make_result("other", 2, "c d")};
    sesh::Interaction i2;
    i2.query = make_query(q2);
    i2.serp = {make_result("other", 1, "c d")};
    return make_session("S1", {i1, i2}, current);
}

}  // namespace

TEST_CASE("qcm_interaction_model applies the case equation") {
    auto index = make_index({{"top", "a b"}, {"other", "c d"}, {"pad", "e f g h"}});
    sesh::QcmParams params;
    sesh::Session session = two_query_session("a b", "b c", "b c");

    // i=2: prev="a b", cur="b c". Theme {b}: P(b|top)=1/2 -> 1+2.2*0.5=2.1.
    // Added {c}: not in "top" -> 1+0.07*idf(c). Removed {a}: -0.4*0.5=-0.2.
    sesh::QueryModel m = sesh::qcm_interaction_model(index, session, 2, params);
    CHECK(m.weight(unigram("b")) == doctest::Approx(1.0 + 2.2 * 0.5).epsilon(1e-12));
    CHECK(m.weight(unigram("c")) ==
          doctest::Approx(1.0 + 0.07 * sesh::idf(index, "c")).epsilon(1e-12));
    CHECK(m.weight(unigram("a")) == doctest::Approx(-0.4 * 0.5).epsilon(1e-12));

    // i=1 degenerates to the TF model.
    CHECK(sesh::qcm_interaction_model(index, session, 1, params) ==
          sesh::tf_model(session.query_at(1)));
}

TEST_CASE("qcm added term present in the previous top document") {
    auto index = make_index({{"top", "a b x"}, {"pad", "c d"}});
    sesh::QcmParams params;
    sesh::Session session = two_query_session("a", "a x", "a x");
    sesh::QueryModel m = sesh::qcm_interaction_model(index, session, 2, params);
    // x occurs once in "top" (|top|=3): 1 - 1.8 * (1/3).
    CHECK(m.weight(unigram("x")) == doctest::Approx(1.0 - 1.8 / 3.0).epsilon(1e-12));
}

TEST_CASE("qcm branch totality: every query term gets exactly one branch") {
    auto index = make_index({{"top", "a b"}, {"other", "c d"}});
    sesh::QcmParams params;
    testsupport::Rng rng(9);
    std::vector<std::string> vocab = {"a", "b", "c", "d", "e"};
    for (int trial = 0; trial < 30; trial++) {
        auto random_query = [&]() {
            std::set<std::string> terms;
            int len = rng.range(1, 4);
            for (int i = 0; i < len; i++) terms.insert(rng.pick(vocab));
            std::string raw;
            for (const auto& t : terms) raw += t + " ";
            return raw;
        };
        std::string q1 = random_query();
        std::string q2 = random_query();
        sesh::Session session = two_query_session(q1, q2, q2);
        sesh::QueryModel m = sesh::qcm_interaction_model(index, session, 2, params);

        auto decomposition = sesh::qcm_decompose(make_query(q1), make_query(q2));
        for (const auto& t : decomposition.theme) {
            CHECK(m.weight(unigram(t)) >= 1.0);
        }
        for (const auto& t : decomposition.added) {
            CHECK(m.weight(unigram(t)) != 0.0);
        }
        // Entries only for terms of q1 or q2.
        for (const auto& [entity, _] : m) {
            bool in_q1 = decomposition.removed.count(entity[0]) > 0 ||
                         decomposition.theme.count(entity[0]) > 0;
            bool in_q2 = decomposition.theme.count(entity[0]) > 0 ||
                         decomposition.added.count(entity[0]) > 0;
            CHECK((in_q1 || in_q2));
        }
    }
}

TEST_CASE("qcm_session_model aggregates the interaction models") {
    auto index = make_index({{"top", "x y"}, {"other", "z w"}});
    sesh::QcmParams params;

    // Single-query session: identical to TF.
    sesh::Session single = make_session("S1", {}, "a b");
    CHECK(sesh::qcm_session_model(index, single, params) == sesh::tf_model(single.current_query));

    // Two-query session with q2 = q1 and P=0 everywhere (terms absent from
    // the top doc): every term gets 1 + (1 + alpha) = 4.2.
    sesh::Interaction i1;
    i1.query = make_query("q q2");
    i1.serp = {make_result("top", 1, "x y")};
    sesh::Session repeat = make_session("S1", {i1}, "q q2");
    sesh::QueryModel m = sesh::qcm_session_model(index, repeat, params);
    CHECK(m.weight(unigram("q")) == doctest::Approx(4.2).epsilon(1e-12));
    CHECK(m.weight(unigram("q2")) == doctest::Approx(4.2).epsilon(1e-12));

    // Multi-query session: uniform aggregate of the interaction models.
    sesh::Session session = two_query_session("a", "a b", "a b");
    sesh::QueryModel expected = sesh::aggregate(
        {sesh::tf_model(session.query_at(1)),
         sesh::qcm_interaction_model(index, session, 2, params),
         sesh::qcm_interaction_model(index, session, 3, params)},
        sesh::AggregationScheme::uniform);
    CHECK(sesh::qcm_session_model(index, session, params) == expected);
}

TEST_CASE("qcm needs a SERP in the previous interaction") {
    auto index = make_index({{"top", "a"}});
    sesh::Interaction no_serp;
    no_serp.query = make_query("a");
    sesh::Session session = make_session("S1", {no_serp}, "a b");
    sesh::QcmParams params;
    CHECK_THROWS_AS((void)sesh::qcm_interaction_model(index, session, 2, params), sesh::Error);
}

namespace {

sesh::Session nugget_session(int hits_out_of_10, bool click_first = false) {
    sesh::Interaction i1;
    i1.query = make_query("jaguar car");
    for (int r = 1; r <= 10; r++) {
        bool has_gram = r <= hits_out_of_10;
        std::string snippet = has_gram ? "the jaguar car review" : "jaguar is a cat";
        i1.serp.push_back(make_result("doc" + std::to_string(r), r, snippet,
                                      click_first && r == 1, false));
    }
    return make_session("S1", {i1}, "jaguar car");
}

}  // namespace

TEST_CASE("nugget accepts an n-gram present in enough snippets") {
    auto index = make_index({{"doc1", "jaguar car dealer"}});
    sesh::NuggetParams params;  // theta=0.97, beta=0.1

    sesh::QueryModel hit = sesh::nugget_model(index, nugget_session(10), params);
    CHECK(hit.weight(unigram("jaguar")) == 2.0);  // two TF interactions
    CHECK(hit.weight(unigram("car")) == 2.0);
    // Accepted in the second interaction only (the first has no history).
    CHECK(hit.weight({"jaguar", "car"}) == doctest::Approx(0.1).epsilon(1e-12));

    sesh::QueryModel miss = sesh::nugget_model(index, nugget_session(9), params);
    CHECK(miss.weight({"jaguar", "car"}) == 0.0);  // 0.9 < 0.97
}

TEST_CASE("nugget min-count threshold mode") {
    auto index = make_index({{"doc1", "jaguar car dealer"}});
    sesh::NuggetParams params;
    params.threshold = sesh::NuggetThreshold::min_count;
    params.theta = 9;  // at least nine snippets
    CHECK(sesh::nugget_model(index, nugget_session(9), params).weight({"jaguar", "car"}) ==
          doctest::Approx(0.1).epsilon(1e-12));
    CHECK(sesh::nugget_model(index, nugget_session(8), params).weight({"jaguar", "car"}) == 0.0);
}

TEST_CASE("nugget on a single-query session is the TF model") {
    auto index = make_index({{"doc1", "x"}});
    sesh::Session single = make_session("S1", {}, "jaguar car");
    sesh::NuggetParams params;
    CHECK(sesh::nugget_model(index, single, params) == sesh::tf_model(single.current_query));
}

TEST_CASE("nugget with beta=0 equals TF over all queries") {
    auto index = make_index({{"doc1", "jaguar car"}});
    sesh::NuggetParams params;
    params.beta = 0.0;
    sesh::Session session = nugget_session(10);
    CHECK(sesh::nugget_model(index, session, params) ==
          sesh::tf_session_model(session, sesh::TfScope::all_queries));
}

TEST_CASE("nugget RL4 restricts to clicked snippets, falling back when none") {
    auto index = make_index({{"doc1", "x"}});
    sesh::NuggetParams params;
    params.variant = sesh::NuggetVariant::RL4;

    // First result clicked and it contains the gram: 1/1 coverage.
    sesh::QueryModel clicked = sesh::nugget_model(index, nugget_session(1, true), params);
    CHECK(clicked.weight({"jaguar", "car"}) == doctest::Approx(0.1).epsilon(1e-12));

    // No clicks: falls back to all snippets, 1/10 < 0.97.
    sesh::QueryModel unclicked = sesh::nugget_model(index, nugget_session(1, false), params);
    CHECK(unclicked.weight({"jaguar", "car"}) == 0.0);
}

TEST_CASE("nugget RL3 mixes anchors into the expansion units") {
    auto index = make_index({{"doc1", "x"}});
    sesh::NuggetParams params;
    params.variant = sesh::NuggetVariant::RL3;
    params.theta = 0.5;

    // 10 snippets contain the gram; anchors for the top documents do not, so
    // coverage drops from 10/10 to 10/20 with anchors included.
    sesh::AnchorTexts anchors;
    for (int r = 1; r <= 10; r++) {
        anchors.add("doc" + std::to_string(r), "boring link text");
    }
    sesh::Session session = nugget_session(10);

    CHECK(sesh::nugget_model(index, session, params, &anchors).weight({"jaguar", "car"}) ==
          doctest::Approx(0.1).epsilon(1e-12));
    params.theta = 0.75;
    CHECK(sesh::nugget_model(index, session, params, &anchors).weight({"jaguar", "car"}) == 0.0);

    // Missing anchors degrade RL3 to RL2.
    params.theta = 0.97;
    CHECK(sesh::nugget_model(index, session, params, nullptr) ==
          [&] {
              sesh::NuggetParams rl2 = params;
              rl2.variant = sesh::NuggetVariant::RL2;
              return sesh::nugget_model(index, session, rl2, nullptr);
          }());
}

TEST_CASE("nugget caps the mined n-gram order") {
    auto index = make_index({{"doc1", "x"}});
    sesh::Interaction i1;
    i1.query = make_query("w x y z");
    for (int r = 1; r <= 10; r++) {
        i1.serp.push_back(make_result("doc" + std::to_string(r), r, "w x y z w x y z"));
    }
    sesh::Session session = make_session("S1", {i1}, "w x y z");

    sesh::NuggetParams params;
    sesh::QueryModel capped = sesh::nugget_model(index, session, params);
    CHECK(capped.weight({"w", "x", "y"}) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(capped.weight({"w", "x", "y", "z"}) == 0.0);  // beyond max_order=3

    params.max_order = 4;
    sesh::QueryModel raised = sesh::nugget_model(index, session, params);
    CHECK(raised.weight({"w", "x", "y", "z"}) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("query model builders are pure") {
    auto index = make_index({{"top", "a b"}, {"other", "c"}});
    sesh::Session session = two_query_session("a b", "b c", "b c d");
    sesh::QcmParams qcm;
    sesh::NuggetParams nugget;
    CHECK(sesh::qcm_session_model(index, session, qcm) ==
          sesh::qcm_session_model(index, session, qcm));
    CHECK(sesh::nugget_model(index, session, nugget) ==
          sesh::nugget_model(index, session, nugget));
    CHECK(sesh::tf_session_model(session, sesh::TfScope::all_queries) ==
          sesh::tf_session_model(session, sesh::TfScope::all_queries));
}
