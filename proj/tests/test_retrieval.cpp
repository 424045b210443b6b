#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "umstm/retrieval.hpp"

using namespace umstm;

namespace {

struct Ctx {
    UnderstandingMap map = fixtures::six_concept_map();
    DistanceMatrix matrix{map};

    ConceptDistribution dist(std::vector<std::pair<ConceptId, double>> props) const {
        return ConceptDistribution::from_proportions(map, props);
    }
};

}  // namespace

TEST_CASE("bilinear score oracles") {
    Ctx ctx;
    CHECK(score_distribution(ctx.dist({{"A", 1.0}}), ctx.dist({{"A", 1.0}}), ctx.matrix) ==
          0.0);
    // 0.5 * d(A,C) + 0.5 * d(B,C) = 0.5 * 1 + 0.5 * 2.
    CHECK(score_distribution(ctx.dist({{"A", 0.5}, {"B", 0.5}}), ctx.dist({{"C", 1.0}}),
                             ctx.matrix) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("topic score oracles") {
    Ctx ctx;
    Topic a = topic_from_labels(ctx.map, {"A"});
    // 0.5 * d(A,C) + 0.5 * d(A,F) = 0.5 * 1 + 0.5 * 3.
    CHECK(score_topic(a, ctx.dist({{"C", 0.5}, {"F", 0.5}}), ctx.matrix) ==
          doctest::Approx(2.0).epsilon(1e-12));
    Topic c = topic_from_labels(ctx.map, {"C"});
    CHECK(score_topic(c, ctx.dist({{"A", 1.0}}), ctx.matrix) == 1.0);
    // Topic covering the whole support scores zero.
    Topic cf = topic_from_labels(ctx.map, {"C", "F"});
    CHECK(score_topic(cf, ctx.dist({{"C", 0.5}, {"F", 0.5}}), ctx.matrix) == 0.0);
}

TEST_CASE("score symmetry and point-mass zero") {
    Ctx ctx;
    auto p = ctx.dist({{"A", 0.3}, {"D", 0.7}});
    auto q = ctx.dist({{"B", 0.5}, {"F", 0.5}});
    // Mathematically symmetric; summation order differs, so allow an ulp.
    CHECK(score_distribution(p, q, ctx.matrix) ==
          doctest::Approx(score_distribution(q, p, ctx.matrix)).epsilon(1e-12));
    // Self-score is zero iff the distribution is a point mass.
    CHECK(score_distribution(ctx.dist({{"D", 1.0}}), ctx.dist({{"D", 1.0}}), ctx.matrix) ==
          0.0);
    CHECK(score_distribution(p, p, ctx.matrix) > 0.0);
}

TEST_CASE("singleton topic equals a point-mass distribution") {
    Ctx ctx;
    auto q = ctx.dist({{"B", 0.25}, {"C", 0.25}, {"E", 0.5}});
    for (const auto& label : ctx.map.concepts()) {
        Topic t = topic_from_labels(ctx.map, {label});
        auto point = ctx.dist({{label, 1.0}});
        CHECK(score_topic(t, q, ctx.matrix) ==
              doctest::Approx(score_distribution(point, q, ctx.matrix)).epsilon(1e-12));
    }
}

TEST_CASE("three-document ranking") {
    Ctx ctx;
    auto needs = ctx.dist({{"A", 0.5}, {"B", 0.5}});
    std::vector<std::pair<std::string, ScomDistribution>> docs = {
        {"far", ctx.dist({{"F", 1.0}})},       // 0.5*3 + 0.5*4 = 3.5
        {"near", ctx.dist({{"A", 1.0}})},      // 0.5*0 + 0.5*1 = 0.5
        {"middle", ctx.dist({{"C", 1.0}})},    // 1.5
    };
    auto ranked = rank_documents(needs, docs, ctx.matrix);
    REQUIRE(ranked.size() == 3);
    CHECK(ranked[0].id == "near");
    CHECK(ranked[1].id == "middle");
    CHECK(ranked[2].id == "far");
    CHECK(ranked[0].score == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(rank_documents(needs, {}, ctx.matrix), DataError);
}

TEST_CASE("identical scores keep input order") {
    Ctx ctx;
    auto needs = ctx.dist({{"A", 1.0}});
    auto same = ctx.dist({{"C", 1.0}});
    auto ranked = rank_documents(needs, {{"x", same}, {"y", same}}, ctx.matrix);
    CHECK(ranked[0].id == "x");
    CHECK(ranked[1].id == "y");
}

TEST_CASE("distribution validation") {
    Ctx ctx;
    CHECK_THROWS_AS(ctx.dist({}), DataError);
    CHECK_THROWS_AS(ctx.dist({{"A", 0.5}, {"B", 0.2}}), DataError);       // sums to 0.7
    CHECK_THROWS_AS(ctx.dist({{"A", 1.5}, {"B", -0.5}}), DataError);      // negative mass
    CHECK_THROWS_AS(ctx.dist({{"Z", 1.0}}), UnknownConcept);
    // Near-unit sums are renormalized.
    auto d = ctx.dist({{"A", 0.5}, {"B", 0.5000001}});
    double total = 0.0;
    for (const auto& [idx, p] : d.entries()) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("needs parsing") {
    Ctx ctx;
    auto needs = parse_needs(ctx.map, "A:0.3, D:0.7");
    REQUIRE(needs.entries().size() == 2);
    CHECK(needs.entries()[0].first == 0);
    CHECK(needs.entries()[0].second == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_THROWS_AS(parse_needs(ctx.map, "A0.3"), DataError);
}
