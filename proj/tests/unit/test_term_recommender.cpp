#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "bibrec/error.hpp"
#include "bibrec/term_recommender.hpp"
#include "bibrec/text.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace bibrec;
using testing::corpus_from_jsonl;

namespace {

Corpus six_docs() {
    return corpus_from_jsonl(R"({"id":"d1","title":"data quality survey","descriptors":["Datenqualität","Survey"]}
{"id":"d2","title":"data collection","descriptors":["Methods"]}
{"id":"d3","title":"measurement validity","descriptors":["Datenqualität"]}
{"id":"d4","title":"data survey","descriptors":["Datenqualität","Survey"]}
{"id":"d5","title":"party system","descriptors":["Party System"]}
{"id":"d6","title":"panel nonresponse","descriptors":["Nonresponse","Survey"]}
)");
}

ContingencyTable table(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    return {a, b, c, d, a + b + c + d};
}

struct Expected {
    std::string value;
    double score;
};

// Exhaustive candidate scoring straight from the records.
std::vector<Expected> brute_force_terms(const Corpus& corpus, const Query& q, std::size_t k,
                                        const TermRecommenderOptions& opts) {
    const auto hits = testing::brute_force_search(corpus, q, opts.scope_limit);
    std::vector<std::string> scope_ids;
    for (const auto& [id, s] : hits) scope_ids.push_back(id);
    std::vector<std::string> all_ids;
    for (const auto& r : corpus.records()) all_ids.push_back(r.id);
    const auto& counting_ids = opts.counting_scope == CooccurrenceScope::corpus ? all_ids : scope_ids;

    std::map<std::string, std::size_t> df;
    std::map<std::string, std::string> display;
    for (const auto& r : corpus.records())
        for (const auto& d : r.descriptors) display.emplace(normalize_term(d), d);
    for (const auto& id : scope_ids)
        for (const auto& d : corpus.at(id).descriptors) ++df[normalize_term(d)];

    std::vector<Expected> out;
    for (const auto& [key, count] : df) {
        if (count < opts.min_df_scope) continue;
        if (std::find(q.free_terms.begin(), q.free_terms.end(), key) != q.free_terms.end()) continue;
        double best = -INFINITY;
        for (const auto& term : q.free_terms) {
            const auto t = testing::brute_force_contingency(corpus, counting_ids, term, key);
            const double s = opts.measure == AssociationMeasure::llr
                                 ? testing::g2_oracle(t)
                                 : 2.0 * t.n11 / static_cast<double>(2 * t.n11 + t.n10 + t.n01);
            best = std::max(best, s);
        }
        out.push_back({display.at(key), best});
    }
    std::sort(out.begin(), out.end(), [](const Expected& a, const Expected& b) {
        if (std::fabs(a.score - b.score) > 1e-9) return a.score > b.score;
        return a.value < b.value;
    });
    if (out.size() > k) out.resize(k);
    return out;
}

void check_against_oracle(const Corpus& c, const Index& idx, const std::string& text, std::size_t k,
                          const TermRecommenderOptions& opts) {
    const Query q = make_query(text);
    const auto got = recommend_terms(idx, q, k, opts);
    const auto want = brute_force_terms(c, q, k, opts);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(got[i].value == want[i].value);
        CHECK(std::fabs(got[i].score - want[i].score) <= 1e-9);
        CHECK(got[i].rank == static_cast<int>(i + 1));
        CHECK(got[i].kind == RecommendationKind::term);
    }
}

}  // namespace

TEST_CASE("contingency on the six-record fixture matches hand enumeration") {
    const Corpus c = six_docs();
    const Index idx = build_index(c);
    const auto all = DocScope::all(idx);
    CHECK(contingency(idx, all, "data", "Datenqualität") == table(2, 1, 1, 2));
    CHECK(contingency(idx, all, "survey", "Survey") == table(2, 0, 1, 3));
    CHECK(contingency(idx, all, "survey", "  survey ") == table(2, 0, 1, 3));

    const std::vector<std::string> ids{"d1", "d3", "d5"};
    CHECK(contingency(idx, DocScope::of_ids(idx, ids), "data", "Datenqualität") == table(1, 0, 1, 1));

    const std::vector<std::string> one{"d1"};
    CHECK(contingency(idx, DocScope::of_ids(idx, one), "data", "Datenqualität") == table(1, 0, 0, 0));

    const auto missing = contingency(idx, all, "data", "Soziologie");
    CHECK(missing.n11 == 0);
    CHECK(missing.n01 == 0);

    CHECK_THROWS_AS(contingency(idx, DocScope::of_ids(idx, std::vector<std::string>{}), "data", "Survey"),
                    ValidationError);

    for (const char* term : {"data", "survey", "party", "validity"})
        for (const char* desc : {"Datenqualität", "Survey", "Methods", "Nonresponse"}) {
            CHECK(contingency(idx, all, term, desc) ==
                  testing::brute_force_contingency(c, {"d1", "d2", "d3", "d4", "d5", "d6"}, term, desc));
            CHECK(contingency(idx, DocScope::of_ids(idx, ids), term, desc) ==
                  testing::brute_force_contingency(c, ids, term, desc));
        }
}

TEST_CASE("llr examples") {
    CHECK(llr(table(1, 1, 1, 1)) == 0.0);
    CHECK(llr(table(5, 0, 0, 5)) == doctest::Approx(4.0 * 5.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(llr(table(5, 0, 0, 5)) == doctest::Approx(13.863).epsilon(1e-4));
    CHECK(llr(table(0, 5, 5, 0)) < 0.0);
    CHECK(llr(table(0, 5, 5, 0)) == doctest::Approx(-llr(table(5, 0, 0, 5))));
    CHECK(llr(table(3, 0, 0, 0)) == 0.0);  // degenerate marginals
    CHECK(llr(table(0, 0, 2, 2)) == 0.0);
}

TEST_CASE("llr equals the direct G2 oracle on random tables") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 2000; ++i) {
        const auto cell = [&] { return rng() % 4 == 0 ? 0 : rng() % 200; };
        const auto t = table(cell(), cell(), cell(), cell());
        if (t.n == 0) continue;
        CHECK(std::fabs(llr(t) - testing::g2_oracle(t)) <= 1e-9 * std::max(1.0, std::fabs(testing::g2_oracle(t))));
    }
}

TEST_CASE("unsigned llr is invariant under transposition") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const auto t = table(rng() % 50, rng() % 50, rng() % 50, rng() % 50 + 1);
        const auto swapped = table(t.n11, t.n01, t.n10, t.n00);
        CHECK(std::fabs(std::fabs(llr(t)) - std::fabs(llr(swapped))) <= 1e-9);
    }
}

TEST_CASE("llr is exactly zero when the table factorizes") {
    // Tables of the form (a*c, a*d, b*c, b*d) have O = E in every cell.
    for (std::uint64_t a = 1; a < 7; ++a)
        for (std::uint64_t b = 1; b < 7; ++b)
            for (std::uint64_t c = 1; c < 7; ++c)
                for (std::uint64_t d = 1; d < 7; ++d) CHECK(llr(table(a * c, a * d, b * c, b * d)) == 0.0);
    // And only then.
    std::mt19937_64 rng(17);
    for (int i = 0; i < 500; ++i) {
        const auto t = table(rng() % 20 + 1, rng() % 20 + 1, rng() % 20 + 1, rng() % 20 + 1);
        const bool factorizes = t.n11 * t.n00 == t.n10 * t.n01;
        CHECK((llr(t) == 0.0) == factorizes);
    }
}

TEST_CASE("dice coefficient") {
    CHECK(dice(table(2, 1, 1, 2)) == doctest::Approx(4.0 / 6.0));
    CHECK(dice(table(0, 0, 0, 4)) == 0.0);
    CHECK(association(AssociationMeasure::dice, table(3, 0, 0, 1)) == 1.0);
    CHECK(parse_association_measure("dice") == AssociationMeasure::dice);
    CHECK_FALSE(parse_association_measure("pmi").has_value());
    CHECK(parse_cooccurrence_scope("result") == CooccurrenceScope::result);
}

TEST_CASE("a single co-occurring descriptor is recommended first") {
    const Corpus c = corpus_from_jsonl(R"({"id":"a","title":"housing segregation","descriptors":["Urban Sociology"]}
{"id":"b","title":"housing market","descriptors":["Urban Sociology"]}
{"id":"c","title":"party voters","descriptors":["Elections"]}
{"id":"d","title":"election turnout","descriptors":["Elections"]}
)");
    const Index idx = build_index(c);
    const auto recs = recommend_terms(idx, make_query("housing"), 5);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].value == "Urban Sociology");
    CHECK(recs[0].rank == 1);
    CHECK(recs[0].score > 0.0);
}

TEST_CASE("k larger than the candidate count returns every candidate") {
    const Corpus c = six_docs();
    const Index idx = build_index(c);
    TermRecommenderOptions opts;
    opts.min_df_scope = 1;
    const auto recs = recommend_terms(idx, make_query("data"), 50, opts);
    // Scoped docs d1, d2, d4 carry Datenqualität, Survey, Methods.
    REQUIRE(recs.size() == 3);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(recs[i].rank == static_cast<int>(i + 1));
        if (i > 0) CHECK(recs[i - 1].score >= recs[i].score);
    }
    // Datenqualität and Survey share the table (2,1,1,2); the tie breaks by value.
    const auto pos = [&](const std::string& v) {
        return std::find_if(recs.begin(), recs.end(), [&](const Recommendation& r) { return r.value == v; }) -
               recs.begin();
    };
    CHECK(pos("Datenqualität") + 1 == pos("Survey"));
    CHECK(pos("Methods") < 3);
}

TEST_CASE("empty scope yields an empty list") {
    const Index idx = build_index(six_docs());
    CHECK(recommend_terms(idx, make_query("zeppelin"), 5).empty());
    CHECK_THROWS_AS(recommend_terms(idx, Query{}, 5), InvalidQueryError);
}

TEST_CASE("no recommended descriptor equals a free term") {
    const Corpus c = corpus_from_jsonl(R"({"id":"a","title":"survey methods","descriptors":["Survey","Methods"]}
{"id":"b","title":"survey design","descriptors":["Survey","Methods"]}
{"id":"c","title":"other","descriptors":["Survey"]}
)");
    const Index idx = build_index(c);
    for (const auto& r : recommend_terms(idx, make_query("survey"), 5)) CHECK(normalize_term(r.value) != "survey");
}

TEST_CASE("recommend_terms equals exhaustive candidate scoring on a 200-record corpus") {
    const Corpus c = testing::synthetic_corpus(200, 42);
    const Index idx = build_index(c);
    TermRecommenderOptions opts;
    for (const char* text : {"data quality", "nonresponse", "party system", "luhmann theory", "urban housing"}) {
        check_against_oracle(c, idx, text, 5, opts);
        check_against_oracle(c, idx, text, 50, opts);
    }

    SUBCASE("result-set counting scope") {
        opts.counting_scope = CooccurrenceScope::result;
        for (const char* text : {"data quality", "survey nonresponse", "europe integration"})
            check_against_oracle(c, idx, text, 5, opts);
    }
    SUBCASE("dice") {
        opts.measure = AssociationMeasure::dice;
        for (const char* text : {"data quality", "lifestyle culture"}) check_against_oracle(c, idx, text, 5, opts);
    }
    SUBCASE("deterministic") {
        CHECK(recommend_terms(idx, make_query("data quality"), 5) == recommend_terms(idx, make_query("data quality"), 5));
    }
}
