#include "bibrec/index.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bibrec/error.hpp"
#include "bibrec/text.hpp"

namespace bibrec {

std::string_view to_string(Strategy s) noexcept {
    switch (s) {
        case Strategy::tfidf: return "tfidf";
        case Strategy::bradford: return "bradford";
        case Strategy::centrality: return "centrality";
    }
    return "tfidf";
}

std::optional<Strategy> parse_strategy(std::string_view name) noexcept {
    if (name == "tfidf") return Strategy::tfidf;
    if (name == "bradford") return Strategy::bradford;
    if (name == "centrality") return Strategy::centrality;
    return std::nullopt;
}

Query make_query(std::string_view text, const std::unordered_set<std::string>& stopwords, double expansion_boost) {
    Query q;
    q.expansion_boost = expansion_boost;
    for (auto& tok : tokenize(text))
        if (!stopwords.contains(tok)) q.free_terms.push_back(std::move(tok));
    return q;
}

Query expand_query(Query query, std::span<const std::string> terms) {
    std::unordered_set<std::string> seen;
    for (const auto& t : query.expansion_terms) seen.insert(normalize_term(t));
    for (const auto& t : terms) {
        auto display = collapse_whitespace(t);
        if (display.empty()) continue;
        if (seen.insert(casefold(display)).second) query.expansion_terms.push_back(std::move(display));
    }
    return query;
}

Index Index::build(const Corpus& corpus, IndexOptions options) {
    Index idx;
    idx.options_ = std::move(options);
    const auto& records = corpus.records();
    idx.doc_ids_.reserve(records.size());
    idx.doc_descriptors_.reserve(records.size());

    for (std::uint32_t doc = 0; doc < records.size(); ++doc) {
        const auto& rec = records[doc];
        idx.doc_ids_.push_back(rec.id);
        idx.doc_by_id_.emplace(rec.id, doc);

        // Ordered map keeps per-document term order independent of hashing.
        std::map<std::string, std::uint32_t> tf;
        std::string text = rec.title;
        text += ' ';
        text += rec.abstract_text;
        for (auto& tok : tokenize(text))
            if (!idx.options_.stopwords.contains(tok)) ++tf[std::move(tok)];
        for (auto& [tok, count] : tf) idx.postings_[tok].push_back({doc, count});

        std::vector<std::string> keys;
        keys.reserve(rec.descriptors.size());
        for (const auto& d : rec.descriptors) {
            keys.push_back(normalize_term(d));
            idx.descriptor_display_.try_emplace(keys.back(), d);
        }
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        for (const auto& k : keys) idx.descriptor_postings_[k].push_back(doc);
        idx.doc_descriptors_.push_back(std::move(keys));
    }
    return idx;
}

std::size_t Index::df(const std::string& token) const {
    const auto it = postings_.find(token);
    return it == postings_.end() ? 0 : it->second.size();
}

double Index::idf(const std::string& token) const {
    const std::size_t d = df(token);
    if (d == 0) return 0.0;
    return std::log(static_cast<double>(doc_count()) / static_cast<double>(d));
}

std::span<const Posting> Index::postings(const std::string& token) const {
    const auto it = postings_.find(token);
    if (it == postings_.end()) return {};
    return it->second;
}

std::span<const std::uint32_t> Index::descriptor_postings(const std::string& key) const {
    const auto it = descriptor_postings_.find(key);
    if (it == descriptor_postings_.end()) return {};
    return it->second;
}

std::uint32_t Index::tf(const std::string& token, std::uint32_t doc) const {
    const auto list = postings(token);
    const auto it =
        std::lower_bound(list.begin(), list.end(), doc, [](const Posting& p, std::uint32_t d) { return p.doc < d; });
    return (it != list.end() && it->doc == doc) ? it->tf : 0;
}

bool Index::has_descriptor(std::uint32_t doc, const std::string& key) const {
    const auto& keys = doc_descriptors_.at(doc);
    return std::binary_search(keys.begin(), keys.end(), key);
}

const std::string& Index::descriptor_display(const std::string& key) const {
    const auto it = descriptor_display_.find(key);
    return it == descriptor_display_.end() ? key : it->second;
}

std::optional<std::uint32_t> Index::doc_of(std::string_view id) const {
    const auto it = doc_by_id_.find(std::string(id));
    if (it == doc_by_id_.end()) return std::nullopt;
    return it->second;
}

namespace {

std::vector<std::string> normalized_expansion(const Query& query) {
    std::vector<std::string> keys;
    std::unordered_set<std::string> seen;
    for (const auto& t : query.expansion_terms) {
        auto k = normalize_term(t);
        if (!k.empty() && seen.insert(k).second) keys.push_back(std::move(k));
    }
    return keys;
}

}  // namespace

// search() accumulates in the same term order as score(), so both produce
// bit-identical values for a document.
double score(const Index& index, const Query& query, std::string_view record_id) {
    const auto doc = index.doc_of(record_id);
    if (!doc) throw NotFoundError("unknown record id \"" + std::string(record_id) + "\"");
    double s = 0.0;
    for (const auto& term : query.free_terms) {
        const std::uint32_t tf = index.tf(term, *doc);
        if (tf == 0) continue;
        s += static_cast<double>(tf) * index.idf(term);
    }
    for (const auto& key : normalized_expansion(query))
        if (index.has_descriptor(*doc, key)) s += query.expansion_boost;
    return s;
}

ResultSet search(const Index& index, const Query& query, std::size_t limit) {
    if (!query.searchable()) throw InvalidQueryError("query has no searchable terms");
    if (limit == 0) throw InvalidQueryError("limit must be positive");

    std::vector<double> acc(index.doc_count(), 0.0);
    for (const auto& term : query.free_terms) {
        const double w = index.idf(term);
        for (const auto& p : index.postings(term)) acc[p.doc] += static_cast<double>(p.tf) * w;
    }
    for (const auto& key : normalized_expansion(query))
        for (const auto doc : index.descriptor_postings(key)) acc[doc] += query.expansion_boost;

    ResultSet result;
    result.strategy = Strategy::tfidf;
    result.query = query;
    for (std::uint32_t doc = 0; doc < acc.size(); ++doc)
        if (acc[doc] > 0.0) result.entries.push_back({index.doc_id(doc), acc[doc], std::nullopt, std::nullopt});

    const auto better = [](const ResultEntry& a, const ResultEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    };
    auto& e = result.entries;
    if (limit < e.size()) {
        std::partial_sort(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(limit), e.end(), better);
        e.resize(limit);
    } else {
        std::sort(e.begin(), e.end(), better);
    }
    return result;
}

}  // namespace bibrec
