#include "bibrec/api.hpp"

#include "bibrec/error.hpp"
#include "bibrec/evaluation.hpp"

namespace bibrec {

using nlohmann::json;

Engine::Engine(Corpus corpus, ServiceConfig config) : corpus_(std::move(corpus)), config_(std::move(config)) {
    config_.validate();
    IndexOptions options;
    if (config_.stopword_path) options.stopwords = load_stopwords(*config_.stopword_path);
    index_ = Index::build(corpus_, std::move(options));
}

Engine Engine::from_config(const ServiceConfig& config) {
    if (config.corpus_path.empty()) throw ValidationError("corpus_path is not set");
    return Engine(load_corpus(config.corpus_path), config);
}

Query Engine::make_query(std::string_view text, const std::vector<std::string>& expand) const {
    return expand_query(bibrec::make_query(text, index_.stopwords(), config_.expansion_boost), expand);
}

ResultSet Engine::ranked(const Query& query, Strategy strategy) const {
    ResultSet result = search(index_, query, config_.scope_limit);
    switch (strategy) {
        case Strategy::tfidf: return result;
        case Strategy::bradford:
            return rerank_bradford(corpus_, result, bradford_partition(journal_productivity(corpus_, result)));
        case Strategy::centrality:
            return rerank_centrality(corpus_, result, betweenness(build_coauthor_graph(corpus_, result)));
    }
    return result;
}

RecommendationList Engine::recommend(RecommendationKind kind, const Query& query, std::size_t k) const {
    switch (kind) {
        case RecommendationKind::term: return recommend_terms(index_, query, k, config_.term_options());
        case RecommendationKind::journal:
            return recommend_journals(corpus_, search(index_, query, config_.scope_limit), k);
        case RecommendationKind::author:
            return recommend_authors(corpus_, search(index_, query, config_.scope_limit), k);
    }
    return {};
}

std::string render_body(const json& j) { return j.dump() + "\n"; }

ApiResponse error_response(int status, const std::string& message, const std::vector<std::string>& details) {
    json body = {{"error", message}};
    if (!details.empty()) body["messages"] = details;
    return {status, render_body(body)};
}

namespace {

std::string trimmed(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return std::string(s);
}

Query checked_query(const Engine& engine, const std::string& q, const std::vector<std::string>& expand) {
    if (trimmed(q).empty()) throw InvalidQueryError("parameter q must be nonempty");
    Query query = engine.make_query(q, expand);
    if (!query.searchable()) throw InvalidQueryError("query \"" + q + "\" has no searchable terms");
    return query;
}

}  // namespace

std::vector<std::string> split_expansion(std::string_view list) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto comma = list.find(',', start);
        const auto end = comma == std::string_view::npos ? list.size() : comma;
        auto item = trimmed(list.substr(start, end - start));
        if (!item.empty()) out.push_back(std::move(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::optional<RecommendationKind> parse_recommendation_kind(std::string_view name) noexcept {
    if (name == "terms") return RecommendationKind::term;
    if (name == "journals") return RecommendationKind::journal;
    if (name == "authors") return RecommendationKind::author;
    return std::nullopt;
}

json search_json(const Engine& engine, const SearchRequest& request) {
    const Query query = checked_query(engine, request.q, request.expand);
    const std::size_t limit = request.limit.value_or(engine.config().default_limit);
    if (limit == 0) throw InvalidQueryError("limit must be positive");

    const ResultSet result = engine.ranked(query, request.rerank);
    json results = json::array();
    for (std::size_t i = 0; i < result.entries.size() && i < limit; ++i) {
        const auto& e = result.entries[i];
        const auto& rec = engine.corpus().at(e.id);
        json authors = json::array();
        for (const auto& a : rec.authors) authors.push_back(a.display);
        json row = {{"id", rec.id},           {"title", rec.title}, {"journal", rec.journal},
                    {"authors", authors},     {"year", rec.year},   {"score", e.score}};
        if (result.strategy == Strategy::bradford) row["zone"] = e.zone ? json(*e.zone) : json(nullptr);
        if (result.strategy == Strategy::centrality) row["centrality_key"] = e.centrality_key.value_or(0.0);
        results.push_back(std::move(row));
    }
    return {{"strategy", std::string(to_string(result.strategy))},
            {"total", result.entries.size()},
            {"results", std::move(results)}};
}

json recommend_json(const Engine& engine, const RecommendRequest& request) {
    const Query query = checked_query(engine, request.q, {});
    const std::size_t k = request.k.value_or(engine.config().recommendation_k);
    if (k == 0) throw InvalidQueryError("k must be positive");

    json list = json::array();
    for (const auto& r : engine.recommend(request.kind, query, k))
        list.push_back({{"value", r.value}, {"score", r.score}, {"rank", r.rank}});
    return {{"kind", std::string(to_string(request.kind))}, {"recommendations", std::move(list)}};
}

ApiResponse handle_search(const Engine& engine, const SearchRequest& request) {
    try {
        return {200, render_body(search_json(engine, request))};
    } catch (const InvalidQueryError& e) {
        return error_response(400, e.what());
    }
}

ApiResponse handle_recommend(const Engine& engine, const RecommendRequest& request) {
    try {
        return {200, render_body(recommend_json(engine, request))};
    } catch (const InvalidQueryError& e) {
        return error_response(400, e.what());
    }
}

ApiResponse handle_evaluate(std::string_view csv) {
    try {
        const auto assessments = eval::parse_assessments(csv);
        return {200, render_body(eval::to_json(eval::report(assessments)))};
    } catch (const ValidationError& e) {
        return error_response(422, "invalid assessment data", e.messages());
    }
}

}  // namespace bibrec
