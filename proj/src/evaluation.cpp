#include "bibrec/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "bibrec/error.hpp"

namespace bibrec::eval {

std::string_view to_string(Service s) noexcept {
    switch (s) {
        case Service::STR: return "STR";
        case Service::JNR: return "JNR";
        case Service::ANR: return "ANR";
    }
    return "STR";
}

std::string_view to_string(ResearcherType t) noexcept {
    switch (t) {
        case ResearcherType::practitioner: return "practitioner";
        case ResearcherType::phd: return "phd";
        case ResearcherType::postdoc: return "postdoc";
    }
    return "practitioner";
}

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::size_t index_of(Service s) { return static_cast<std::size_t>(s); }
std::size_t index_of(ResearcherType t) { return static_cast<std::size_t>(t); }

struct CsvRow {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

// RFC 4180 reader: quoted fields may hold commas, doubled quotes and line
// breaks. Blank lines are skipped.
std::vector<CsvRow> read_csv(std::istream& in, std::vector<std::string>& errors) {
    std::vector<CsvRow> rows;
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        CsvRow row;
        row.line = line;
        std::string field;
        bool in_quotes = false;
        bool row_done = false;
        while (i < text.size() && !row_done) {
            const char c = text[i];
            if (in_quotes) {
                if (c == '"') {
                    if (i + 1 < text.size() && text[i + 1] == '"') {
                        field += '"';
                        i += 2;
                        continue;
                    }
                    in_quotes = false;
                } else {
                    if (c == '\n') ++line;
                    field += c;
                }
                ++i;
                continue;
            }
            if (c == '"' && trim(field).empty()) {
                field.clear();
                in_quotes = true;
            } else if (c == ',') {
                row.fields.push_back(std::move(field));
                field.clear();
            } else if (c == '\n') {
                ++line;
                row_done = true;
            } else if (c != '\r') {
                field += c;
            }
            ++i;
        }
        if (in_quotes) errors.push_back("line " + std::to_string(row.line) + ": unterminated quoted field");
        row.fields.push_back(std::move(field));
        const bool blank = row.fields.size() == 1 && trim(row.fields[0]).empty();
        if (!blank) rows.push_back(std::move(row));
    }
    return rows;
}

constexpr std::array<std::string_view, 7> kColumns{"topic_id", "researcher_id", "researcher_type", "service",
                                                   "rank",     "recommendation", "relevant"};

}  // namespace

std::optional<Service> parse_service(std::string_view s) noexcept {
    const auto v = lower(trim(s));
    if (v == "str") return Service::STR;
    if (v == "jnr") return Service::JNR;
    if (v == "anr") return Service::ANR;
    return std::nullopt;
}

std::optional<ResearcherType> parse_researcher_type(std::string_view s) noexcept {
    const auto v = lower(trim(s));
    if (v == "practitioner") return ResearcherType::practitioner;
    if (v == "phd") return ResearcherType::phd;
    if (v == "postdoc") return ResearcherType::postdoc;
    return std::nullopt;
}

std::optional<bool> parse_relevance(std::string_view s) noexcept {
    const auto v = lower(trim(s));
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    return std::nullopt;
}

AssessmentSet parse_assessments(std::istream& in) {
    std::vector<std::string> errors;
    auto rows = read_csv(in, errors);
    if (rows.empty()) throw ValidationError("assessment file has no header");

    std::array<std::size_t, kColumns.size()> col{};
    {
        const auto& header = rows.front().fields;
        for (std::size_t c = 0; c < kColumns.size(); ++c) {
            const auto it = std::find_if(header.begin(), header.end(),
                                         [&](const std::string& h) { return lower(trim(h)) == kColumns[c]; });
            if (it == header.end()) {
                errors.push_back("header is missing column \"" + std::string(kColumns[c]) + "\"");
                continue;
            }
            col[c] = static_cast<std::size_t>(it - header.begin());
        }
        if (!errors.empty()) throw ValidationError(errors);
    }
    const std::size_t width = rows.front().fields.size();

    AssessmentSet out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::string where = "line " + std::to_string(row.line) + ": ";
        if (row.fields.size() != width) {
            errors.push_back(where + "expected " + std::to_string(width) + " fields, found " +
                             std::to_string(row.fields.size()));
            continue;
        }
        const auto field = [&](std::size_t c) { return std::string(trim(row.fields[col[c]])); };

        Assessment a;
        a.source_line = row.line;
        a.topic_id = field(0);
        a.researcher_id = field(1);
        a.recommendation = field(5);
        bool ok = true;
        if (a.topic_id.empty()) {
            errors.push_back(where + "empty topic_id");
            ok = false;
        }
        if (const auto t = parse_researcher_type(field(2))) {
            a.researcher_type = *t;
        } else {
            errors.push_back(where + "unknown researcher_type \"" + field(2) + "\"");
            ok = false;
        }
        if (const auto s = parse_service(field(3))) {
            a.service = *s;
        } else {
            errors.push_back(where + "unknown service \"" + field(3) + "\"");
            ok = false;
        }
        const std::string rank = field(4);
        try {
            std::size_t used = 0;
            const long v = std::stol(rank, &used);
            if (used != rank.size() || v < 1 || v > 1'000'000) throw std::invalid_argument(rank);
            a.rank = static_cast<int>(v);
        } catch (const std::exception&) {
            errors.push_back(where + "rank must be a positive integer, got \"" + rank + "\"");
            ok = false;
        }
        if (const auto rel = parse_relevance(field(6))) {
            a.relevant = *rel;
        } else {
            errors.push_back(where + "relevant must be true/false or 1/0, got \"" + field(6) + "\"");
            ok = false;
        }
        if (ok) out.rows.push_back(std::move(a));
    }

    std::map<std::pair<std::string, Service>, std::vector<const Assessment*>> groups;
    for (const auto& a : out.rows) groups[{a.topic_id, a.service}].push_back(&a);
    for (const auto& [key, members] : groups) {
        const std::string label = "(topic \"" + key.first + "\", service " + std::string(to_string(key.second)) + ")";
        std::vector<int> ranks;
        for (const auto* a : members) ranks.push_back(a->rank);
        std::sort(ranks.begin(), ranks.end());
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            if (i > 0 && ranks[i] == ranks[i - 1]) {
                errors.push_back(label + ": duplicate rank " + std::to_string(ranks[i]));
                break;
            }
            if (ranks[i] != static_cast<int>(i + 1)) {
                errors.push_back(label + ": rank gap, expected rank " + std::to_string(i + 1) + " but found " +
                                 std::to_string(ranks[i]));
                break;
            }
        }
        for (const auto* a : members) {
            if (a->researcher_id != members.front()->researcher_id ||
                a->researcher_type != members.front()->researcher_type) {
                errors.push_back(label + ": rows disagree on researcher");
                break;
            }
        }
    }
    if (!errors.empty()) throw ValidationError(errors);
    return out;
}

AssessmentSet parse_assessments(std::string_view csv) {
    std::istringstream in{std::string(csv)};
    return parse_assessments(in);
}

AssessmentSet load_assessments(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open assessment file " + path.string());
    return parse_assessments(in);
}

double topic_precision(std::span<const Assessment> rows) {
    if (rows.empty()) throw ValidationError("precision is undefined for an empty assessment list");
    const auto relevant = std::count_if(rows.begin(), rows.end(), [](const Assessment& a) { return a.relevant; });
    return static_cast<double>(relevant) / static_cast<double>(rows.size());
}

double p_at_k(std::span<const Assessment> rows, int k) {
    if (rows.empty()) throw ValidationError("precision is undefined for an empty assessment list");
    if (k < 1) throw ValidationError("k must be at least 1");
    std::size_t assessed = 0;
    std::size_t relevant = 0;
    for (const auto& a : rows) {
        if (a.rank > k) continue;
        ++assessed;
        if (a.relevant) ++relevant;
    }
    if (assessed == 0) throw ValidationError("no assessment within the top " + std::to_string(k));
    return static_cast<double>(relevant) / static_cast<double>(assessed);
}

namespace {

double mean(const std::vector<double>& xs) {
    double sum = 0.0;
    for (const double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

}  // namespace

MetricsReport report(const AssessmentSet& assessments) {
    if (assessments.rows.empty()) throw ValidationError("assessment set is empty");

    // Ordered containers make the result independent of row order.
    std::map<std::tuple<Service, std::string>, std::vector<Assessment>> by_topic;
    std::set<std::string> researchers;
    std::set<std::string> topics;
    std::array<std::set<std::string>, 3> researchers_by_type;
    MetricsReport r;
    for (const auto& a : assessments.rows) {
        by_topic[{a.service, a.topic_id}].push_back(a);
        researchers.insert(a.researcher_id);
        topics.insert(a.topic_id);
        researchers_by_type[index_of(a.researcher_type)].insert(a.researcher_id);
        ++r.descriptive.assessments[index_of(a.service)];
    }
    r.descriptive.researchers = researchers.size();
    r.descriptive.topics = topics.size();

    std::array<std::vector<double>, 3> p, p1, p2, p4;
    std::array<std::array<std::vector<double>, 3>, 3> by_type;  // [type][service]
    for (auto& [key, rows] : by_topic) {
        std::sort(rows.begin(), rows.end(), [](const Assessment& a, const Assessment& b) { return a.rank < b.rank; });
        const auto s = index_of(std::get<0>(key));
        const double precision = topic_precision(rows);
        p[s].push_back(precision);
        p1[s].push_back(p_at_k(rows, 1));
        p2[s].push_back(p_at_k(rows, 2));
        p4[s].push_back(p_at_k(rows, 4));
        by_type[index_of(rows.front().researcher_type)][s].push_back(precision);
    }

    for (std::size_t s = 0; s < 3; ++s) {
        if (p[s].empty()) continue;
        r.services[s] = ServiceMetrics{p[s].size(), mean(p[s]), mean(p1[s]), mean(p2[s]), mean(p4[s])};
        r.descriptive.mean_per_topic[s] =
            static_cast<double>(r.descriptive.assessments[s]) / static_cast<double>(p[s].size());
    }
    for (std::size_t t = 0; t < 3; ++t) {
        r.researcher_groups[t].researchers = researchers_by_type[t].size();
        for (std::size_t s = 0; s < 3; ++s)
            if (!by_type[t][s].empty()) r.researcher_groups[t].p_av[s] = mean(by_type[t][s]);
    }
    return r;
}

nlohmann::json to_json(const MetricsReport& r) {
    using nlohmann::json;
    json out;
    json assessments = json::object();
    json means = json::object();
    json services = json::object();
    for (const auto s : kServices) {
        const auto i = index_of(s);
        const std::string name(to_string(s));
        assessments[name] = r.descriptive.assessments[i];
        if (r.services[i]) {
            means[name] = r.descriptive.mean_per_topic[i];
            const auto& m = *r.services[i];
            services[name] = {{"topics", m.topics},
                              {"p_av", m.p_av},
                              {"p_at_1", m.p_at_1},
                              {"p_at_2", m.p_at_2},
                              {"p_at_4", m.p_at_4}};
        } else {
            means[name] = nullptr;
            services[name] = nullptr;
        }
    }
    out["descriptive"] = {{"researchers", r.descriptive.researchers},
                          {"topics", r.descriptive.topics},
                          {"assessments", assessments},
                          {"mean_assessments_per_topic", means}};
    out["services"] = services;

    json groups = json::object();
    for (const auto t : kResearcherTypes) {
        const auto& g = r.researcher_groups[index_of(t)];
        json pav = json::object();
        for (const auto s : kServices) {
            const auto& v = g.p_av[index_of(s)];
            pav[std::string(to_string(s))] = v ? json(*v) : json(nullptr);
        }
        groups[std::string(to_string(t))] = {{"researchers", g.researchers}, {"p_av", pav}};
    }
    out["researcher_types"] = groups;
    return out;
}

std::string format_fixed(double value, int decimals) {
    if (!std::isfinite(value)) return "-";
    const bool negative = value < 0;
    const double scale = std::pow(10.0, decimals);
    // The nudge absorbs binary representation error on exact decimal ties.
    const auto scaled = static_cast<long long>(std::floor(std::fabs(value) * scale + 0.5 + 1e-9));
    const long long ip = scaled / static_cast<long long>(scale);
    const long long fp = scaled % static_cast<long long>(scale);
    std::string out = (negative && scaled != 0 ? "-" : "") + std::to_string(ip);
    if (decimals > 0) {
        std::string frac = std::to_string(fp);
        out += '.';
        out += std::string(static_cast<std::size_t>(decimals) - frac.size(), '0') + frac;
    }
    return out;
}

namespace {

using Row = std::vector<std::string>;

std::string layout(const std::string& title, const std::vector<Row>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (widths.size() <= c) widths.push_back(0);
            widths[c] = std::max(widths[c], row[c].size());
        }
    std::string out = title + "\n";
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += row[c];
            if (c + 1 < row.size()) line += std::string(widths[c] - row[c].size() + 2, ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
    }
    return out;
}

std::string cell(const std::optional<double>& v, int decimals) { return v ? format_fixed(*v, decimals) : "-"; }

}  // namespace

std::string render_descriptive_table(const MetricsReport& r) {
    const auto& d = r.descriptive;
    std::vector<Row> rows;
    rows.push_back({"Researchers", "Topics", "STR A.", "JNR A.", "ANR A."});
    rows.push_back({std::to_string(d.researchers), std::to_string(d.topics), std::to_string(d.assessments[0]),
                    std::to_string(d.assessments[1]), std::to_string(d.assessments[2])});
    Row means{"Per topic", ""};
    for (std::size_t s = 0; s < 3; ++s)
        means.push_back(r.services[s] ? format_fixed(d.mean_per_topic[s], 1) : "-");
    rows.push_back(means);
    return layout("Statistics of the assessment study", rows);
}

std::string render_precision_table(const MetricsReport& r) {
    std::vector<Row> rows;
    rows.push_back({"", "STR", "JNR", "ANR"});
    const auto metric_row = [&](const char* label, double ServiceMetrics::*field) {
        Row row{label};
        for (std::size_t s = 0; s < 3; ++s)
            row.push_back(r.services[s] ? format_fixed((*r.services[s]).*field, 3) : "-");
        rows.push_back(row);
    };
    metric_row("P(av)", &ServiceMetrics::p_av);
    metric_row("P@1", &ServiceMetrics::p_at_1);
    metric_row("P@2", &ServiceMetrics::p_at_2);
    metric_row("P@4", &ServiceMetrics::p_at_4);
    return layout("Evaluation of the assessments by service", rows);
}

std::string render_group_table(const MetricsReport& r) {
    static constexpr std::array<const char*, 3> labels{"Practitioners", "PhD students", "Postdocs"};
    std::vector<Row> rows;
    rows.push_back({"", "STR", "JNR", "ANR"});
    for (std::size_t t = 0; t < 3; ++t) {
        const auto& g = r.researcher_groups[t];
        Row row{"P(av) " + std::string(labels[t]) + " (N=" + std::to_string(g.researchers) + ")"};
        for (std::size_t s = 0; s < 3; ++s) row.push_back(cell(g.p_av[s], 3));
        rows.push_back(row);
    }
    return layout("Average precision by researcher type", rows);
}

std::string render_text(const MetricsReport& r) {
    return render_descriptive_table(r) + "\n" + render_precision_table(r) + "\n" + render_group_table(r);
}

}  // namespace bibrec::eval
