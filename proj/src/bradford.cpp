#include "bibrec/bradford.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "bibrec/error.hpp"

namespace bibrec {
namespace {

// Sort position of documents without a journal.
constexpr int kUnzoned = 4;

void sort_productivity(Productivity& p) {
    std::sort(p.begin(), p.end(), [](const JournalCount& a, const JournalCount& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.journal < b.journal;
    });
}

}  // namespace

std::optional<int> BradfordPartition::zone_of(const std::string& journal) const {
    for (std::size_t i = 0; i < journals.size(); ++i)
        if (journals[i].journal == journal) return zones[i];
    return std::nullopt;
}

Productivity journal_productivity(const Corpus& corpus, const ResultSet& result) {
    std::map<std::string, std::size_t> counts;
    for (const auto& e : result.entries) {
        const auto& rec = corpus.at(e.id);
        if (!rec.journal.empty()) ++counts[rec.journal];
    }
    Productivity out;
    out.reserve(counts.size());
    for (auto& [journal, count] : counts) out.push_back({journal, count});
    sort_productivity(out);
    return out;
}

BradfordPartition bradford_partition(Productivity productivity) {
    std::erase_if(productivity, [](const JournalCount& j) { return j.count == 0; });
    sort_productivity(productivity);
    std::unordered_set<std::string> seen;
    for (const auto& j : productivity)
        if (!seen.insert(j.journal).second) throw ValidationError("journal \"" + j.journal + "\" listed twice");

    std::size_t total = 0;
    for (const auto& j : productivity) total += j.count;

    BradfordPartition part;
    part.zones.reserve(productivity.size());
    std::size_t before = 0;
    for (const auto& j : productivity) {
        // before < M/3  <=>  3*before < M
        const int zone = 3 * before < total ? 1 : (3 * before < 2 * total ? 2 : 3);
        part.zones.push_back(zone);
        part.zone_doc_counts[static_cast<std::size_t>(zone - 1)] += j.count;
        before += j.count;
    }
    part.journals = std::move(productivity);
    return part;
}

ResultSet rerank_bradford(const Corpus& corpus, const ResultSet& result, const BradfordPartition& partition) {
    std::map<std::string, int> zone_by_journal;
    for (std::size_t i = 0; i < partition.journals.size(); ++i)
        zone_by_journal.emplace(partition.journals[i].journal, partition.zones[i]);

    ResultSet out;
    out.strategy = Strategy::bradford;
    out.query = result.query;
    out.entries.reserve(result.entries.size());
    for (const auto& e : result.entries) {
        const auto& rec = corpus.at(e.id);
        ResultEntry entry = e;
        entry.centrality_key.reset();
        entry.zone.reset();
        if (!rec.journal.empty()) {
            const auto it = zone_by_journal.find(rec.journal);
            if (it == zone_by_journal.end())
                throw InconsistencyError("journal \"" + rec.journal + "\" of record \"" + e.id +
                                         "\" is not in the Bradford partition");
            entry.zone = it->second;
        }
        out.entries.push_back(std::move(entry));
    }

    std::sort(out.entries.begin(), out.entries.end(), [](const ResultEntry& a, const ResultEntry& b) {
        const int za = a.zone.value_or(kUnzoned);
        const int zb = b.zone.value_or(kUnzoned);
        if (za != zb) return za < zb;
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    });
    return out;
}

RecommendationList recommend_journals(const Corpus& corpus, const ResultSet& result, std::size_t k) {
    const Productivity prod = journal_productivity(corpus, result);
    RecommendationList out;
    for (std::size_t i = 0; i < prod.size() && i < k; ++i)
        out.push_back({RecommendationKind::journal, prod[i].journal, static_cast<double>(prod[i].count),
                       static_cast<int>(i + 1)});
    return out;
}

}  // namespace bibrec
