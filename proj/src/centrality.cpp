#include "bibrec/centrality.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "bibrec/error.hpp"

namespace bibrec {

AdjacencyGraph AdjacencyGraph::from_edges(std::size_t node_count,
                                          std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
    arcs.reserve(edges.size() * 2);
    for (const auto& [a, b] : edges) {
        if (a >= node_count || b >= node_count) throw std::out_of_range("edge endpoint out of range");
        if (a == b) continue;
        arcs.emplace_back(a, b);
        arcs.emplace_back(b, a);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    AdjacencyGraph g;
    g.offsets_.assign(node_count + 1, 0);
    for (const auto& arc : arcs) ++g.offsets_[arc.first + 1];
    for (std::size_t v = 0; v < node_count; ++v) g.offsets_[v + 1] += g.offsets_[v];
    g.targets_.reserve(arcs.size());
    for (const auto& arc : arcs) g.targets_.push_back(arc.second);
    return g;
}

namespace {

// Logical worker count is fixed so the merge order never depends on the
// machine.
constexpr std::size_t kLogicalWorkers = 8;
constexpr std::size_t kParallelThreshold = 256;

struct BrandesScratch {
    std::vector<std::int32_t> dist;
    std::vector<double> sigma;
    std::vector<double> delta;
    std::vector<std::uint32_t> order;

    explicit BrandesScratch(std::size_t n) : dist(n, -1), sigma(n, 0.0), delta(n, 0.0) { order.reserve(n); }
};

// One single-source pass of Brandes' dependency accumulation. Predecessors
// are recovered from distances instead of being stored.
void accumulate_source(const AdjacencyGraph& g, std::uint32_t source, BrandesScratch& s, std::vector<double>& acc) {
    s.order.clear();
    s.dist[source] = 0;
    s.sigma[source] = 1.0;
    s.order.push_back(source);
    for (std::size_t head = 0; head < s.order.size(); ++head) {
        const std::uint32_t v = s.order[head];
        for (const auto w : g.neighbors(v)) {
            if (s.dist[w] < 0) {
                s.dist[w] = s.dist[v] + 1;
                s.order.push_back(w);
            }
            if (s.dist[w] == s.dist[v] + 1) s.sigma[w] += s.sigma[v];
        }
    }
    for (auto it = s.order.rbegin(); it != s.order.rend(); ++it) {
        const std::uint32_t w = *it;
        const double coeff = (1.0 + s.delta[w]) / s.sigma[w];
        for (const auto v : g.neighbors(w))
            if (s.dist[v] == s.dist[w] - 1) s.delta[v] += s.sigma[v] * coeff;
        if (w != source) acc[w] += s.delta[w];
    }
    for (const auto v : s.order) {
        s.dist[v] = -1;
        s.sigma[v] = 0.0;
        s.delta[v] = 0.0;
    }
}

}  // namespace

std::vector<double> betweenness_raw(const AdjacencyGraph& graph, unsigned threads) {
    const std::size_t n = graph.node_count();
    std::vector<double> result(n, 0.0);
    if (n < 3 || graph.edge_count() == 0) return result;

    std::vector<std::vector<double>> partial(kLogicalWorkers, std::vector<double>(n, 0.0));
    const auto run_worker = [&](std::size_t worker, BrandesScratch& scratch) {
        for (std::size_t s = worker; s < n; s += kLogicalWorkers)
            accumulate_source(graph, static_cast<std::uint32_t>(s), scratch, partial[worker]);
    };

    std::size_t thread_count = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    if (n < kParallelThreshold) thread_count = 1;
    thread_count = std::min(thread_count, kLogicalWorkers);

    if (thread_count == 1) {
        BrandesScratch scratch(n);
        for (std::size_t w = 0; w < kLogicalWorkers; ++w) run_worker(w, scratch);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(thread_count);
        for (std::size_t t = 0; t < thread_count; ++t) {
            pool.emplace_back([&, t] {
                BrandesScratch scratch(n);
                for (std::size_t w = t; w < kLogicalWorkers; w += thread_count) run_worker(w, scratch);
            });
        }
    }

    for (const auto& p : partial)
        for (std::size_t v = 0; v < n; ++v) result[v] += p[v];
    // Each unordered pair was counted once from either endpoint.
    for (auto& x : result) x /= 2.0;
    return result;
}

std::vector<double> betweenness_normalized(const AdjacencyGraph& graph, unsigned threads) {
    const std::size_t n = graph.node_count();
    if (n < 3) return std::vector<double>(n, 0.0);
    auto values = betweenness_raw(graph, threads);
    const double pairs = static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
    for (auto& x : values) x /= pairs;
    return values;
}

CoauthorGraph::CoauthorGraph(std::vector<std::string> keys, std::vector<std::string> displays,
                             AdjacencyGraph adjacency)
    : keys_(std::move(keys)), displays_(std::move(displays)), adjacency_(std::move(adjacency)) {
    if (keys_.size() != displays_.size() || keys_.size() != adjacency_.node_count())
        throw std::invalid_argument("coauthor graph node arrays disagree in size");
    if (!std::is_sorted(keys_.begin(), keys_.end()) || std::adjacent_find(keys_.begin(), keys_.end()) != keys_.end())
        throw std::invalid_argument("coauthor graph keys must be sorted and unique");
}

std::optional<std::uint32_t> CoauthorGraph::node_of(const std::string& key) const {
    const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) return std::nullopt;
    return static_cast<std::uint32_t>(it - keys_.begin());
}

std::vector<std::pair<std::string, std::string>> CoauthorGraph::edges() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::uint32_t v = 0; v < node_count(); ++v)
        for (const auto w : neighbors(v))
            if (v < w) out.emplace_back(keys_[v], keys_[w]);
    return out;
}

CoauthorGraph build_coauthor_graph(const Corpus& corpus, const ResultSet& result) {
    std::vector<const BibRecord*> docs;
    docs.reserve(result.entries.size());
    std::vector<std::string> keys;
    for (const auto& e : result.entries) {
        const auto& rec = corpus.at(e.id);
        docs.push_back(&rec);
        for (const auto& a : rec.authors) keys.push_back(a.key);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    const auto index_of = [&](const std::string& key) {
        return static_cast<std::uint32_t>(std::lower_bound(keys.begin(), keys.end(), key) - keys.begin());
    };
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (const auto* rec : docs) {
        const auto& authors = rec->authors;
        for (std::size_t i = 0; i < authors.size(); ++i)
            for (std::size_t j = i + 1; j < authors.size(); ++j)
                edges.emplace_back(index_of(authors[i].key), index_of(authors[j].key));
    }

    std::vector<std::string> displays;
    displays.reserve(keys.size());
    for (const auto& k : keys) displays.push_back(corpus.author_display(k));
    auto adjacency = AdjacencyGraph::from_edges(keys.size(), edges);
    return CoauthorGraph(std::move(keys), std::move(displays), std::move(adjacency));
}

double CentralityScores::at(const std::string& key) const {
    const auto it = score.find(key);
    if (it == score.end()) throw InconsistencyError("author \"" + key + "\" has no centrality score");
    return it->second;
}

CentralityScores betweenness(const CoauthorGraph& graph, unsigned threads) {
    const auto values = betweenness_normalized(graph.adjacency(), threads);
    CentralityScores out;
    for (std::uint32_t v = 0; v < graph.node_count(); ++v) out.score.emplace(graph.key(v), values[v]);
    return out;
}

RecommendationList recommend_authors(const Corpus& corpus, const ResultSet& result, std::size_t k) {
    const CoauthorGraph graph = build_coauthor_graph(corpus, result);
    const auto values = betweenness_normalized(graph.adjacency());

    std::vector<std::size_t> doc_counts(graph.node_count(), 0);
    for (const auto& e : result.entries)
        for (const auto& a : corpus.at(e.id).authors) ++doc_counts[*graph.node_of(a.key)];

    const bool all_zero = std::all_of(values.begin(), values.end(), [](double x) { return x == 0.0; });

    std::vector<std::uint32_t> order(graph.node_count());
    for (std::uint32_t v = 0; v < order.size(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (all_zero) {
            if (doc_counts[a] != doc_counts[b]) return doc_counts[a] > doc_counts[b];
        } else if (values[a] != values[b]) {
            return values[a] > values[b];
        }
        if (graph.display(a) != graph.display(b)) return graph.display(a) < graph.display(b);
        return graph.key(a) < graph.key(b);
    });

    RecommendationList out;
    for (std::size_t i = 0; i < order.size() && i < k; ++i)
        out.push_back({RecommendationKind::author, graph.display(order[i]), values[order[i]], static_cast<int>(i + 1)});
    return out;
}

ResultSet rerank_centrality(const Corpus& corpus, const ResultSet& result, const CentralityScores& scores) {
    ResultSet out;
    out.strategy = Strategy::centrality;
    out.query = result.query;
    out.entries.reserve(result.entries.size());
    for (const auto& e : result.entries) {
        double key = 0.0;
        for (const auto& a : corpus.at(e.id).authors) key = std::max(key, scores.at(a.key));
        ResultEntry entry = e;
        entry.zone.reset();
        entry.centrality_key = key;
        out.entries.push_back(std::move(entry));
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const ResultEntry& a, const ResultEntry& b) {
        if (*a.centrality_key != *b.centrality_key) return *a.centrality_key > *b.centrality_key;
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    });
    return out;
}

}  // namespace bibrec
