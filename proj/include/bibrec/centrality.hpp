#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bibrec/corpus.hpp"
#include "bibrec/index.hpp"
#include "bibrec/recommendation.hpp"

namespace bibrec {

/// Simple undirected graph in compressed adjacency form. No self-loops, no
/// parallel edges, neighbor lists sorted.
class AdjacencyGraph {
public:
    AdjacencyGraph() = default;

    /// Self-loops are dropped and repeated edges collapse to one.
    /// Throws std::out_of_range for an endpoint >= node_count.
    static AdjacencyGraph from_edges(std::size_t node_count,
                                     std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

    std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size() / 2; }
    std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }

private:
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> targets_;
};

/// Raw betweenness per node: the sum over unordered pairs {s,t} (s,t != v)
/// of the fraction of shortest s-t paths through v. Unweighted, exact.
///
/// Sources are split across a fixed set of logical workers whose partial
/// sums are merged in worker order, so the result is bit-identical for any
/// `threads` value. `threads` = 0 picks the hardware concurrency.
std::vector<double> betweenness_raw(const AdjacencyGraph& graph, unsigned threads = 0);

/// Raw betweenness divided by (n-1)(n-2)/2; all zeros when n < 3.
std::vector<double> betweenness_normalized(const AdjacencyGraph& graph, unsigned threads = 0);

/// Co-authorship network of a result set. Nodes are canonical author keys
/// in ascending key order.
class CoauthorGraph {
public:
    CoauthorGraph() = default;
    CoauthorGraph(std::vector<std::string> keys, std::vector<std::string> displays, AdjacencyGraph adjacency);

    std::size_t node_count() const noexcept { return keys_.size(); }
    std::size_t edge_count() const noexcept { return adjacency_.edge_count(); }
    const std::vector<std::string>& keys() const noexcept { return keys_; }
    const std::string& key(std::uint32_t v) const { return keys_.at(v); }
    const std::string& display(std::uint32_t v) const { return displays_.at(v); }
    std::optional<std::uint32_t> node_of(const std::string& key) const;
    std::span<const std::uint32_t> neighbors(std::uint32_t v) const { return adjacency_.neighbors(v); }
    const AdjacencyGraph& adjacency() const noexcept { return adjacency_; }

    /// Unordered edges as (key, key) pairs with first < second, sorted.
    std::vector<std::pair<std::string, std::string>> edges() const;

private:
    std::vector<std::string> keys_;
    std::vector<std::string> displays_;
    AdjacencyGraph adjacency_;
};

/// Every author of every result document becomes a node; each document links
/// all of its authors pairwise. Independent of result order.
CoauthorGraph build_coauthor_graph(const Corpus& corpus, const ResultSet& result);

/// Normalized betweenness keyed by author key.
struct CentralityScores {
    std::map<std::string, double> score;

    /// Throws InconsistencyError for an unknown author key.
    double at(const std::string& key) const;
};

CentralityScores betweenness(const CoauthorGraph& graph, unsigned threads = 0);

/// Authors by betweenness descending, then display name. When every score is
/// zero, falls back to the number of result documents authored, descending.
RecommendationList recommend_authors(const Corpus& corpus, const ResultSet& result, std::size_t k);

/// Orders documents by the maximum betweenness among their authors (0 when
/// authorless), then score descending, then id. Scores are carried over.
/// Throws InconsistencyError when an author is missing from `scores`.
ResultSet rerank_centrality(const Corpus& corpus, const ResultSet& result, const CentralityScores& scores);

}  // namespace bibrec
