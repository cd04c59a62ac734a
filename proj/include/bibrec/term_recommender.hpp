#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bibrec/index.hpp"
#include "bibrec/recommendation.hpp"

namespace bibrec {

/// 2x2 document co-occurrence counts of a free term and a descriptor.
struct ContingencyTable {
    std::uint64_t n11 = 0;  // both
    std::uint64_t n10 = 0;  // free term only
    std::uint64_t n01 = 0;  // descriptor only
    std::uint64_t n00 = 0;  // neither
    std::uint64_t n = 0;

    friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

/// Membership mask over index document positions.
class DocScope {
public:
    static DocScope all(const Index& index);
    static DocScope of_docs(const Index& index, std::span<const std::uint32_t> docs);
    /// Throws NotFoundError for an id missing from the index.
    static DocScope of_ids(const Index& index, std::span<const std::string> ids);
    static DocScope of_result(const Index& index, const ResultSet& result);

    bool contains(std::uint32_t doc) const { return doc < member_.size() && member_[doc]; }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    const std::vector<std::uint32_t>& docs() const noexcept { return docs_; }

private:
    std::vector<char> member_;
    std::vector<std::uint32_t> docs_;
    std::size_t size_ = 0;
};

/// Counts over `scope` only. A document contains the free term when the
/// token occurs in its title+abstract, and the descriptor when its
/// normalized form is among the document's descriptors.
/// Throws ValidationError on an empty scope.
ContingencyTable contingency(const Index& index, const DocScope& scope, const std::string& free_term,
                             std::string_view descriptor);

/// Signed log-likelihood ratio G^2. Negative when n11 falls below its
/// expectation under independence; 0 for tables with an empty marginal.
double llr(const ContingencyTable& t);

/// Dice coefficient 2*n11 / (2*n11 + n10 + n01); 0 when undefined.
double dice(const ContingencyTable& t);

enum class AssociationMeasure { llr, dice };
std::optional<AssociationMeasure> parse_association_measure(std::string_view name) noexcept;
std::string_view to_string(AssociationMeasure m) noexcept;

/// Which documents the co-occurrence counts range over.
enum class CooccurrenceScope { corpus, result };
std::optional<CooccurrenceScope> parse_cooccurrence_scope(std::string_view name) noexcept;
std::string_view to_string(CooccurrenceScope s) noexcept;

struct TermRecommenderOptions {
    std::size_t scope_limit = 500;
    std::size_t min_df_scope = 2;
    AssociationMeasure measure = AssociationMeasure::llr;
    CooccurrenceScope counting_scope = CooccurrenceScope::corpus;
};

double association(AssociationMeasure m, const ContingencyTable& t);

/// Controlled descriptors ranked by co-word association with the query's
/// free terms.
///
/// Candidates are descriptors carried by at least `min_df_scope` documents
/// of the query's top `scope_limit` results, excluding any equal to a free
/// term. A candidate scores the maximum association over the free terms.
/// Ordered by score descending, then value ascending; at most `k`.
RecommendationList recommend_terms(const Index& index, const Query& query, std::size_t k,
                                   const TermRecommenderOptions& options = {});

}  // namespace bibrec
