#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bibrec/corpus.hpp"
#include "bibrec/index.hpp"
#include "bibrec/recommendation.hpp"

namespace bibrec {

struct JournalCount {
    std::string journal;
    std::size_t count = 0;

    friend bool operator==(const JournalCount&, const JournalCount&) = default;
};

/// Journals ordered by count descending, then name ascending.
using Productivity = std::vector<JournalCount>;

/// Bradford zones over a productivity list. Whole journals are assigned to
/// zones 1..3 and zone numbers never decrease along `journals`.
struct BradfordPartition {
    Productivity journals;
    std::vector<int> zones;  // parallel to `journals`
    std::array<std::size_t, 3> zone_doc_counts{};

    /// Zone of a journal, nullopt when it is not part of the partition.
    std::optional<int> zone_of(const std::string& journal) const;
    std::size_t total_docs() const noexcept { return zone_doc_counts[0] + zone_doc_counts[1] + zone_doc_counts[2]; }
};

/// Documents per journal within `result`; records without a journal are
/// not counted. Throws NotFoundError for ids missing from the corpus.
Productivity journal_productivity(const Corpus& corpus, const ResultSet& result);

/// With M counted documents, a journal falls in zone 1 when the documents
/// of all more productive journals number fewer than M/3, zone 2 when fewer
/// than 2M/3, else zone 3. Input is re-sorted into productivity order;
/// zero counts are dropped. Throws ValidationError on a repeated journal.
BradfordPartition bradford_partition(Productivity productivity);

/// Orders documents by (zone, score descending, id); documents without a
/// journal follow zone 3. Scores are carried over unchanged.
/// Throws InconsistencyError when a result journal is missing from
/// `partition`.
ResultSet rerank_bradford(const Corpus& corpus, const ResultSet& result, const BradfordPartition& partition);

/// The `k` most productive journals of `result`, scored by document count.
RecommendationList recommend_journals(const Corpus& corpus, const ResultSet& result, std::size_t k);

}  // namespace bibrec
