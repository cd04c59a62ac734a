#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace bibrec::eval {

enum class Service { STR, JNR, ANR };
enum class ResearcherType { practitioner, phd, postdoc };

inline constexpr std::array<Service, 3> kServices{Service::STR, Service::JNR, Service::ANR};
inline constexpr std::array<ResearcherType, 3> kResearcherTypes{ResearcherType::practitioner, ResearcherType::phd,
                                                                ResearcherType::postdoc};

std::string_view to_string(Service s) noexcept;
std::string_view to_string(ResearcherType t) noexcept;
/// Case-insensitive.
std::optional<Service> parse_service(std::string_view s) noexcept;
std::optional<ResearcherType> parse_researcher_type(std::string_view s) noexcept;
/// Accepts true/false (any case) and 1/0.
std::optional<bool> parse_relevance(std::string_view s) noexcept;

/// One binary relevance judgment of a ranked recommendation.
struct Assessment {
    std::string topic_id;
    std::string researcher_id;
    ResearcherType researcher_type = ResearcherType::practitioner;
    Service service = Service::STR;
    int rank = 0;
    std::string recommendation;
    bool relevant = false;
    std::size_t source_line = 0;
};

/// Judgments whose ranks run 1..m without gaps or repeats within every
/// (topic, service).
struct AssessmentSet {
    std::vector<Assessment> rows;
};

/// Parses the CSV layout
/// `topic_id,researcher_id,researcher_type,service,rank,recommendation,relevant`
/// (columns by header name, quoted fields allowed). Every row problem is
/// collected into one ValidationError.
AssessmentSet parse_assessments(std::istream& in);
AssessmentSet parse_assessments(std::string_view csv);
/// Throws IoError when the file cannot be read.
AssessmentSet load_assessments(const std::filesystem::path& path);

/// Relevant / assessed. Throws ValidationError on empty input.
double topic_precision(std::span<const Assessment> rows);

/// Precision over ranks 1..min(k, highest available rank).
/// Throws ValidationError on empty input or k < 1.
double p_at_k(std::span<const Assessment> rows, int k);

struct ServiceMetrics {
    std::size_t topics = 0;
    double p_av = 0.0;
    double p_at_1 = 0.0;
    double p_at_2 = 0.0;
    double p_at_4 = 0.0;
};

struct ResearcherGroupMetrics {
    std::size_t researchers = 0;
    std::array<std::optional<double>, 3> p_av;  // by Service
};

struct DescriptiveStats {
    std::size_t researchers = 0;
    std::size_t topics = 0;
    std::array<std::size_t, 3> assessments{};           // by Service
    std::array<double, 3> mean_per_topic{};             // by Service, unrounded
};

/// Unrounded metrics. Services without any topic are nullopt.
struct MetricsReport {
    std::array<std::optional<ServiceMetrics>, 3> services;        // by Service
    std::array<ResearcherGroupMetrics, 3> researcher_groups;     // by ResearcherType
    DescriptiveStats descriptive;
};

/// Macro-averages per-topic precision and P@1/2/4 for each service.
/// Throws ValidationError on an empty set.
MetricsReport report(const AssessmentSet& assessments);

nlohmann::json to_json(const MetricsReport& r);

/// Round half up to `decimals` places and print with exactly that many.
std::string format_fixed(double value, int decimals);

/// Plain-text tables: descriptive statistics, per-service precision, and
/// average precision per researcher type.
std::string render_descriptive_table(const MetricsReport& r);
std::string render_precision_table(const MetricsReport& r);
std::string render_group_table(const MetricsReport& r);
std::string render_text(const MetricsReport& r);

}  // namespace bibrec::eval
