// bibrec: batch front end to the bibliometric retrieval engine.
//
//   bibrec validate <corpus.jsonl>
//   bibrec query <corpus> --q <text> [--rerank m] [--expand t1,t2] [--limit n] [--json]
//   bibrec recommend <corpus> --q <text> --kind terms|journals|authors [--k n] [--json]
//   bibrec evaluate <assessments.csv> [--json]
//   bibrec serve --config <file>
//
// Exit codes: 0 success, 1 validation or usage error, 2 internal error.

#include <csignal>
#include <cstdio>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "bibrec/api.hpp"
#include "bibrec/error.hpp"
#include "bibrec/evaluation.hpp"
#include "bibrec/server.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kInternal = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bibrec::ServiceConfig config_for(const std::string& config_path, const std::string& corpus_path) {
    bibrec::ServiceConfig cfg = config_path.empty() ? bibrec::ServiceConfig{} : bibrec::load_config(config_path);
    if (!corpus_path.empty()) cfg.corpus_path = corpus_path;
    return cfg;
}

void require_query(const std::string& q) {
    if (q.find_first_not_of(" \t\r\n") == std::string::npos) throw UsageError("--q must be nonempty");
}

int run_validate(const std::string& corpus_path) {
    const auto corpus = bibrec::load_corpus(corpus_path);
    std::cout << "ok: " << corpus.size() << " records\n";
    return 0;
}

int run_query(const std::string& corpus_path, const std::string& config_path, const std::string& q,
              const std::string& rerank, const std::string& expand, std::optional<std::size_t> limit, bool as_json) {
    require_query(q);
    const auto engine = bibrec::Engine::from_config(config_for(config_path, corpus_path));
    bibrec::SearchRequest request;
    request.q = q;
    request.rerank = *bibrec::parse_strategy(rerank);
    request.expand = bibrec::split_expansion(expand);
    request.limit = limit;
    const auto body = bibrec::search_json(engine, request);
    if (as_json) {
        std::cout << bibrec::render_body(body);
        return 0;
    }
    std::printf("strategy: %s, total: %zu\n", body["strategy"].get<std::string>().c_str(),
                body["total"].get<std::size_t>());
    std::size_t rank = 0;
    for (const auto& row : body["results"]) {
        std::string extra;
        if (row.contains("zone")) extra = "zone " + (row["zone"].is_null() ? std::string("-") : row["zone"].dump());
        if (row.contains("centrality_key")) extra = "centrality " + bibrec::eval::format_fixed(row["centrality_key"].get<double>(), 6);
        std::string title = row["title"].get<std::string>();
        if (const auto journal = row["journal"].get<std::string>(); !journal.empty()) title += " | " + journal;
        std::printf("%3zu  %9.4f  %-16s %-14s %s\n", ++rank, row["score"].get<double>(),
                    row["id"].get<std::string>().c_str(), extra.c_str(), title.c_str());
    }
    return 0;
}

int run_recommend(const std::string& corpus_path, const std::string& config_path, const std::string& q,
                  const std::string& kind, std::optional<std::size_t> k, bool as_json) {
    require_query(q);
    const auto engine = bibrec::Engine::from_config(config_for(config_path, corpus_path));
    bibrec::RecommendRequest request;
    request.kind = *bibrec::parse_recommendation_kind(kind);
    request.q = q;
    request.k = k;
    const auto body = bibrec::recommend_json(engine, request);
    if (as_json) {
        std::cout << bibrec::render_body(body);
        return 0;
    }
    for (const auto& r : body["recommendations"])
        std::printf("%2d  %-40s %.6f\n", r["rank"].get<int>(), r["value"].get<std::string>().c_str(),
                    r["score"].get<double>());
    return 0;
}

int run_evaluate(const std::string& csv_path, bool as_json) {
    const auto report = bibrec::eval::report(bibrec::eval::load_assessments(csv_path));
    if (as_json)
        std::cout << bibrec::render_body(bibrec::eval::to_json(report));
    else
        std::cout << bibrec::eval::render_text(report);
    return 0;
}

bibrec::HttpService* g_service = nullptr;

extern "C" void handle_signal(int) {
    if (g_service) g_service->stop();
}

int run_serve(const std::string& config_path) {
    auto cfg = bibrec::load_config(config_path);
    bibrec::apply_env_overrides(cfg);
    auto engine = std::make_shared<const bibrec::Engine>(bibrec::Engine::from_config(cfg));
    bibrec::HttpService service(engine);
    const int port = service.bind(cfg.host, cfg.port);
    if (port < 0) {
        std::cerr << "error: cannot bind " << cfg.host << ":" << cfg.port << "\n";
        return kInternal;
    }
    g_service = &service;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    std::cerr << "serving " << engine->corpus().size() << " records on http://" << cfg.host << ":" << port << "\n";
    service.listen();
    g_service = nullptr;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bibliometric-enhanced scholarly retrieval: search, recommend, re-rank, evaluate"};
    app.require_subcommand(1);

    std::string corpus_path, config_path, csv_path, q, rerank = "tfidf", expand, kind;
    std::optional<std::size_t> limit, k;
    bool as_json = false;

    auto* validate = app.add_subcommand("validate", "Check a JSON-Lines corpus file");
    validate->add_option("corpus", corpus_path, "Corpus file (.jsonl)")->required();

    auto* query = app.add_subcommand("query", "Run a ranked search");
    query->add_option("corpus", corpus_path, "Corpus file (.jsonl)")->required();
    query->add_option("--q", q, "Free-text query")->required();
    query->add_option("--rerank", rerank, "Ranking strategy")
        ->check(CLI::IsMember({"tfidf", "bradford", "centrality"}));
    query->add_option("--expand", expand, "Comma-separated controlled terms to add");
    query->add_option("--limit", limit, "Maximum rows")->check(CLI::PositiveNumber);
    query->add_option("--config", config_path, "Engine config file");
    query->add_flag("--json", as_json, "Emit the /search JSON body");

    auto* recommend = app.add_subcommand("recommend", "Recommend terms, journals or authors for a query");
    recommend->add_option("corpus", corpus_path, "Corpus file (.jsonl)")->required();
    recommend->add_option("--q", q, "Free-text query")->required();
    recommend->add_option("--kind", kind, "Recommendation kind")
        ->required()
        ->check(CLI::IsMember({"terms", "journals", "authors"}));
    recommend->add_option("--k", k, "Number of recommendations")->check(CLI::PositiveNumber);
    recommend->add_option("--config", config_path, "Engine config file");
    recommend->add_flag("--json", as_json, "Emit the /recommend JSON body");

    auto* evaluate = app.add_subcommand("evaluate", "Compute precision metrics from assessments");
    evaluate->add_option("assessments", csv_path, "Assessment CSV")->required();
    evaluate->add_flag("--json", as_json, "Emit the /evaluate JSON body");

    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    serve->add_option("--config", config_path, "Service config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*validate) return run_validate(corpus_path);
        if (*query) return run_query(corpus_path, config_path, q, rerank, expand, limit, as_json);
        if (*recommend) return run_recommend(corpus_path, config_path, q, kind, k, as_json);
        if (*evaluate) return run_evaluate(csv_path, as_json);
        if (*serve) return run_serve(config_path);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const bibrec::ValidationError& e) {
        for (const auto& m : e.messages()) std::cerr << "error: " << m << "\n";
        return kUsage;
    } catch (const bibrec::InvalidQueryError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const bibrec::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const bibrec::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
