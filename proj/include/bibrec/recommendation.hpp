#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bibrec {

enum class RecommendationKind { term, journal, author };

std::string_view to_string(RecommendationKind kind) noexcept;

/// One suggested item. Within a list, ranks run 1..k and scores never
/// increase with rank.
struct Recommendation {
    RecommendationKind kind;
    std::string value;
    double score = 0.0;
    int rank = 0;

    friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

using RecommendationList = std::vector<Recommendation>;

}  // namespace bibrec
