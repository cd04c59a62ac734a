#include <doctest.h>

#include <json.hpp>

#include "bibrec/api.hpp"
#include "harness.hpp"
#include "synthetic.hpp"

using namespace bibrec;
using nlohmann::json;
using testing::run_command;
using testing::TempFile;

namespace {

const std::string kCli = BIBREC_CLI_PATH;

}  // namespace

TEST_CASE("validate") {
    TempFile good("corpus", testing::to_jsonl(testing::synthetic_records(20, 1)));
    const auto ok = run_command({kCli, "validate", good.path().string()});
    CHECK(ok.exit_code == 0);
    CHECK(ok.out == "ok: 20 records\n");

    TempFile dup("corpus", "{\"id\":\"d1\"}\n{\"id\":\"d2\"}\n{\"id\":\"d1\"}\n");
    const auto d = run_command({kCli, "validate", dup.path().string()});
    CHECK(d.exit_code == 1);
    CHECK(d.err.find("\"d1\"") != std::string::npos);
    CHECK(d.err.find("lines 1 and 3") != std::string::npos);

    TempFile empty("corpus", "");
    CHECK(run_command({kCli, "validate", empty.path().string()}).exit_code == 1);

    TempFile broken("corpus", "{\"id\":\"d1\"}\n{oops\n");
    const auto b = run_command({kCli, "validate", broken.path().string()});
    CHECK(b.exit_code == 1);
    CHECK(b.err.find("line 2") != std::string::npos);

    CHECK(run_command({kCli, "validate", "/nonexistent.jsonl"}).exit_code == 1);
}

TEST_CASE("query") {
    TempFile corpus("corpus", testing::to_jsonl(testing::synthetic_records(120, 2)));
    const auto path = corpus.path().string();

    const auto one = run_command({kCli, "query", path, "--q", "survey data", "--limit", "1", "--json"});
    REQUIRE(one.exit_code == 0);
    CHECK(one.out.back() == '\n');
    const auto body = json::parse(one.out);
    CHECK(body["results"].size() == 1);

    const Engine engine(testing::corpus_from_jsonl(testing::to_jsonl(testing::synthetic_records(120, 2))), {});
    SearchRequest req;
    req.q = "survey data";
    req.rerank = Strategy::bradford;
    req.expand = {"Survey Research", "Nonresponse"};
    CHECK(run_command({kCli, "query", path, "--q", "survey data", "--rerank", "bradford", "--expand",
                       "Survey Research,Nonresponse", "--json"})
              .out == render_body(search_json(engine, req)));

    const auto table = run_command({kCli, "query", path, "--q", "survey data", "--limit", "3"});
    CHECK(table.exit_code == 0);
    CHECK(table.out.find("strategy: tfidf") != std::string::npos);

    const auto bad = run_command({kCli, "query", path, "--q", "survey", "--rerank", "bm25"});
    CHECK(bad.exit_code == 1);
    CHECK(bad.err.find("tfidf") != std::string::npos);
    CHECK(bad.err.find("centrality") != std::string::npos);

    CHECK(run_command({kCli, "query", path, "--q", ""}).exit_code == 1);
    CHECK(run_command({kCli, "query", path, "--q", "survey", "--limit", "0"}).exit_code == 1);
    CHECK(run_command({kCli, "query", path}).exit_code == 1);
    CHECK(run_command({kCli, "frobnicate"}).exit_code == 1);
}

TEST_CASE("recommend") {
    TempFile corpus("corpus", testing::to_jsonl(testing::synthetic_records(120, 3)));
    const auto path = corpus.path().string();
    const auto terms = run_command({kCli, "recommend", path, "--q", "party system", "--kind", "terms", "--json"});
    REQUIRE(terms.exit_code == 0);
    const auto body = json::parse(terms.out);
    CHECK(body["kind"] == "terms");
    CHECK(body["recommendations"].size() <= 5);

    const auto k2 = run_command({kCli, "recommend", path, "--q", "party system", "--kind", "authors", "--k", "2", "--json"});
    CHECK(json::parse(k2.out)["recommendations"].size() == 2);

    const auto none = run_command({kCli, "recommend", path, "--q", "zeppelin", "--kind", "journals"});
    CHECK(none.exit_code == 0);
    CHECK(none.out.empty());

    CHECK(run_command({kCli, "recommend", path, "--q", "x", "--kind", "venues"}).exit_code == 1);
}

TEST_CASE("config file drives query settings") {
    TempFile corpus("corpus", testing::to_jsonl(testing::synthetic_records(80, 4)));
    TempFile cfg("cfg", "default_limit = 2\nrecommendation_k = 1\n");
    const auto q = run_command({kCli, "query", corpus.path().string(), "--q", "survey", "--config", cfg.path().string(), "--json"});
    REQUIRE(q.exit_code == 0);
    CHECK(json::parse(q.out)["results"].size() == 2);
    const auto r = run_command(
        {kCli, "recommend", corpus.path().string(), "--q", "survey", "--kind", "journals", "--config", cfg.path().string(), "--json"});
    CHECK(json::parse(r.out)["recommendations"].size() == 1);

    TempFile bad("cfg", "colour = \"blue\"\n");
    const auto e = run_command({kCli, "query", corpus.path().string(), "--q", "survey", "--config", bad.path().string()});
    CHECK(e.exit_code == 1);
    CHECK(e.err.find("line 1") != std::string::npos);
}

TEST_CASE("evaluate") {
    TempFile csv("assess", testing::study_shaped_assessments(9));
    const auto text = run_command({kCli, "evaluate", csv.path().string()});
    REQUIRE(text.exit_code == 0);
    CHECK(text.out.find("STR") != std::string::npos);
    CHECK(text.out.find("P(av)") != std::string::npos);
    CHECK(text.out.find("P@4") != std::string::npos);
    CHECK(text.out.find("Postdocs (N=3)") != std::string::npos);

    const auto as_json = run_command({kCli, "evaluate", csv.path().string(), "--json"});
    CHECK(as_json.out == handle_evaluate(testing::study_shaped_assessments(9)).body);

    TempFile bad("assess", "topic_id,researcher_id,researcher_type,service,rank,recommendation,relevant\n"
                           "T1,R1,phd,STR,2,a,1\nT2,R1,phd,STR,1,a,perhaps\n");
    const auto e = run_command({kCli, "evaluate", bad.path().string()});
    CHECK(e.exit_code == 1);
    CHECK(e.err.find("rank gap") != std::string::npos);
    CHECK(e.err.find("line 3") != std::string::npos);
}
