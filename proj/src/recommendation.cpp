#include "bibrec/recommendation.hpp"

namespace bibrec {

std::string_view to_string(RecommendationKind kind) noexcept {
    switch (kind) {
        case RecommendationKind::term: return "terms";
        case RecommendationKind::journal: return "journals";
        case RecommendationKind::author: return "authors";
    }
    return "terms";
}

}  // namespace bibrec
