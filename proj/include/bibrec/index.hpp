#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bibrec/corpus.hpp"

namespace bibrec {

enum class Strategy { tfidf, bradford, centrality };

std::string_view to_string(Strategy s) noexcept;
std::optional<Strategy> parse_strategy(std::string_view name) noexcept;

/// A free-text query, optionally expanded with controlled descriptors.
struct Query {
    std::vector<std::string> free_terms;
    std::vector<std::string> expansion_terms;
    double expansion_boost = 1.0;

    bool searchable() const noexcept { return !free_terms.empty(); }
    friend bool operator==(const Query&, const Query&) = default;
};

/// Tokenizes `text` into free terms, dropping any in `stopwords`.
Query make_query(std::string_view text, const std::unordered_set<std::string>& stopwords = {},
                 double expansion_boost = 1.0);

/// Adds `terms` to the expansion set. Duplicates (by normalized form) and
/// blank terms are dropped; first appearance wins. Free terms are untouched.
Query expand_query(Query query, std::span<const std::string> terms);

struct ResultEntry {
    std::string id;
    double score = 0.0;
    /// Bradford zone (1..3); set by the bradford re-ranker, nullopt for
    /// documents without a journal.
    std::optional<int> zone;
    /// Max author betweenness; set by the centrality re-ranker.
    std::optional<double> centrality_key;

    friend bool operator==(const ResultEntry&, const ResultEntry&) = default;
};

/// Ranked documents. For `tfidf` entries are ordered by score descending,
/// then id ascending, with no duplicate ids.
struct ResultSet {
    std::vector<ResultEntry> entries;
    Strategy strategy = Strategy::tfidf;
    Query query;
};

struct Posting {
    std::uint32_t doc;
    std::uint32_t tf;
};

struct IndexOptions {
    std::unordered_set<std::string> stopwords;
};

/// Inverted index over title+abstract tokens and over normalized descriptors.
/// Documents are addressed internally by their position in the corpus.
class Index {
public:
    static Index build(const Corpus& corpus, IndexOptions options = {});

    std::size_t doc_count() const noexcept { return doc_ids_.size(); }
    std::size_t df(const std::string& token) const;
    double idf(const std::string& token) const;

    /// Sorted by doc; empty for unknown tokens.
    std::span<const Posting> postings(const std::string& token) const;
    /// Sorted doc positions carrying the normalized descriptor `key`.
    std::span<const std::uint32_t> descriptor_postings(const std::string& key) const;

    std::uint32_t tf(const std::string& token, std::uint32_t doc) const;
    bool has_descriptor(std::uint32_t doc, const std::string& key) const;

    const std::string& doc_id(std::uint32_t doc) const { return doc_ids_.at(doc); }
    std::optional<std::uint32_t> doc_of(std::string_view id) const;
    /// Sorted, unique normalized descriptor keys of a document.
    const std::vector<std::string>& descriptor_keys(std::uint32_t doc) const { return doc_descriptors_.at(doc); }
    /// Display form of a normalized descriptor, from its first occurrence.
    const std::string& descriptor_display(const std::string& key) const;

    const std::unordered_map<std::string, std::vector<Posting>>& all_postings() const noexcept { return postings_; }
    const std::unordered_map<std::string, std::vector<std::uint32_t>>& all_descriptor_postings() const noexcept {
        return descriptor_postings_;
    }
    const std::unordered_set<std::string>& stopwords() const noexcept { return options_.stopwords; }

private:
    IndexOptions options_;
    std::vector<std::string> doc_ids_;
    std::unordered_map<std::string, std::uint32_t> doc_by_id_;
    std::unordered_map<std::string, std::vector<Posting>> postings_;
    std::unordered_map<std::string, std::vector<std::uint32_t>> descriptor_postings_;
    std::vector<std::vector<std::string>> doc_descriptors_;
    std::unordered_map<std::string, std::string> descriptor_display_;
};

inline Index build_index(const Corpus& corpus, IndexOptions options = {}) {
    return Index::build(corpus, std::move(options));
}

/// Sum over free terms of tf * ln(N/df), plus expansion_boost for each
/// expansion term found among the document's descriptors.
/// Throws NotFoundError for an unknown record id.
double score(const Index& index, const Query& query, std::string_view record_id);

/// All documents scoring > 0, best first, truncated to `limit`.
/// Throws InvalidQueryError for an unsearchable query or a zero limit.
ResultSet search(const Index& index, const Query& query, std::size_t limit);

}  // namespace bibrec
