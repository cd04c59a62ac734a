#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bibrec/bradford.hpp"
#include "bibrec/centrality.hpp"
#include "bibrec/config.hpp"
#include "bibrec/corpus.hpp"
#include "bibrec/index.hpp"
#include "bibrec/term_recommender.hpp"

namespace bibrec {

/// A loaded corpus with its index and settings. Immutable after
/// construction; every method is safe to call concurrently.
class Engine {
public:
    Engine(Corpus corpus, ServiceConfig config);

    /// Loads the corpus and optional stopword list named by `config`.
    static Engine from_config(const ServiceConfig& config);

    const Corpus& corpus() const noexcept { return corpus_; }
    const Index& index() const noexcept { return index_; }
    const ServiceConfig& config() const noexcept { return config_; }

    /// Tokenized, stopword-filtered query with the configured boost and
    /// the given expansion descriptors.
    Query make_query(std::string_view text, const std::vector<std::string>& expand = {}) const;

    /// The top `scope_limit` tf-idf results, re-ranked by `strategy`.
    ResultSet ranked(const Query& query, Strategy strategy) const;

    RecommendationList recommend(RecommendationKind kind, const Query& query, std::size_t k) const;

private:
    Corpus corpus_;
    ServiceConfig config_;
    Index index_;
};

struct SearchRequest {
    std::string q;
    Strategy rerank = Strategy::tfidf;
    std::vector<std::string> expand;
    std::optional<std::size_t> limit;
};

struct RecommendRequest {
    RecommendationKind kind = RecommendationKind::term;
    std::string q;
    std::optional<std::size_t> k;
};

/// Status code plus a newline-terminated JSON body. The CLI prints the same
/// body for --json output.
struct ApiResponse {
    int status = 200;
    std::string body;
};

ApiResponse error_response(int status, const std::string& message, const std::vector<std::string>& details = {});

/// {strategy, total, results:[{id,title,journal,authors,year,score,zone?,centrality_key?}]}
nlohmann::json search_json(const Engine& engine, const SearchRequest& request);
/// {kind, recommendations:[{value,score,rank}]}
nlohmann::json recommend_json(const Engine& engine, const RecommendRequest& request);

ApiResponse handle_search(const Engine& engine, const SearchRequest& request);
ApiResponse handle_recommend(const Engine& engine, const RecommendRequest& request);
/// Parses an assessment CSV body; 422 with row-level messages when invalid.
ApiResponse handle_evaluate(std::string_view csv);

/// Splits a comma-separated expansion list, dropping blank items.
std::vector<std::string> split_expansion(std::string_view list);

std::optional<RecommendationKind> parse_recommendation_kind(std::string_view name) noexcept;

/// Serializes JSON the same way for HTTP bodies and CLI output.
std::string render_body(const nlohmann::json& j);

}  // namespace bibrec
