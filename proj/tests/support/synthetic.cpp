#include "synthetic.hpp"

#include <array>
#include <atomic>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace bibrec::testing {
namespace {

struct Topic {
    std::vector<std::string> words;
    std::vector<std::string> descriptors;
};

const std::vector<Topic>& topics() {
    static const std::vector<Topic> t = {
        {{"data", "quality", "survey", "measurement", "error", "validity"},
         {"Datenqualität", "Measurement Error", "Survey Research", "Validity"}},
        {{"nonresponse", "interviewer", "survey", "panel", "attrition", "respondents"},
         {"Nonresponse", "Interviewer Effect", "Panel Study", "Survey Research"}},
        {{"party", "system", "democracy", "election", "voters", "parliament"},
         {"Party System", "Party Democracy", "Electoral Behavior", "Political Sociology"}},
        {{"urban", "city", "neighbourhood", "segregation", "housing", "migration"},
         {"Urban Sociology", "Segregation", "Housing Market", "Migration"}},
        {{"employment", "atypical", "labour", "market", "contract", "precarious"},
         {"Atypical Employment", "Labour Market", "Industrial Sociology", "Precarity"}},
        {{"europe", "europeanization", "integration", "eastern", "transformation", "union"},
         {"Europeanization", "East Europe", "European Integration", "Social Change"}},
        {{"theory", "action", "system", "luhmann", "communication", "society"},
         {"Systems Theory", "Theory of Action", "Social System", "Communication"}},
        {{"lifestyle", "culture", "consumption", "taste", "milieu", "leisure"},
         {"Lifestyle", "Sociology of Culture", "Consumer Behavior", "Social Milieu"}},
    };
    return t;
}

const std::vector<std::string>& filler_words() {
    static const std::vector<std::string> w = {"analysis", "study",   "germany", "effects", "evidence", "approach",
                                               "results",  "case",    "social",  "research", "comparison", "model",
                                               "change",   "new",     "role",    "between",  "trends",  "impact"};
    return w;
}

const std::vector<std::string>& journals() {
    static const std::vector<std::string> j = {
        "Zeitschrift für Soziologie", "Kölner Zeitschrift für Soziologie", "Soziale Welt",
        "Politische Vierteljahresschrift", "Methoden, Daten, Analysen", "Berliner Journal für Soziologie",
        "European Sociological Review", "Survey Research Methods", "Journal of Official Statistics",
        "Leviathan", "Soziologische Revue", "Sociologia Internationalis", "WSI-Mitteilungen",
        "Osteuropa", "Stadtforschung und Statistik", "Zeitschrift für Parlamentsfragen",
        "Public Opinion Quarterly", "International Journal of Public Opinion Research",
        "Sozialer Fortschritt", "Mitteilungen aus der Arbeitsmarkt- und Berufsforschung"};
    return j;
}

const std::vector<std::string>& surnames() {
    static const std::vector<std::string> s = {
        "Schimank", "Luhmann", "Kneer", "Müller", "Schmidt", "Schneider", "Fischer", "Weber", "Meyer", "Wagner",
        "Becker", "Schulz", "Hoffmann", "Koch", "Richter", "Klein", "Wolf", "Schröder", "Neumann", "Schwarz",
        "Zimmermann", "Braun", "Krüger", "Hofmann", "Hartmann", "Lange", "Schmitt", "Werner", "Krause", "Meier"};
    return s;
}

const std::vector<std::string>& given_names() {
    static const std::vector<std::string> g = {"Uwe",  "Niklas", "Georg", "Anna",  "Petra",  "Jürgen", "Katrin",
                                               "Hans", "Maria",  "Klaus", "Sabine", "Stefan", "Ute",    "Michael"};
    return g;
}

std::string author_name(std::size_t i) {
    const auto& s = surnames();
    const auto& g = given_names();
    return s[i % s.size()] + ", " + g[(i / s.size() + i) % g.size()];
}

}  // namespace

std::vector<nlohmann::json> synthetic_records(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto& topic_list = topics();
    const std::size_t authors_per_topic = 12;

    // Skewed journal productivity: weight 1/(rank+1) within a topic's
    // preferred journal list.
    std::vector<double> journal_weights;
    for (std::size_t r = 0; r < 8; ++r) journal_weights.push_back(1.0 / static_cast<double>(r + 1));

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick_topic(0, topic_list.size() - 1);
    std::discrete_distribution<std::size_t> pick_journal_rank(journal_weights.begin(), journal_weights.end());

    std::vector<nlohmann::json> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t ti = pick_topic(rng);
        const Topic& topic = topic_list[ti];
        const auto word = [&](const std::vector<std::string>& pool) {
            return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        };

        std::string title;
        const std::size_t title_len = 3 + rng() % 4;
        for (std::size_t w = 0; w < title_len; ++w) {
            if (!title.empty()) title += ' ';
            title += unit(rng) < 0.65 ? word(topic.words) : word(filler_words());
        }
        std::string abstract_text;
        const std::size_t abstract_len = rng() % 12;
        for (std::size_t w = 0; w < abstract_len; ++w) {
            if (!abstract_text.empty()) abstract_text += ' ';
            abstract_text += unit(rng) < 0.5 ? word(topic.words) : word(filler_words());
        }

        nlohmann::json descriptors = nlohmann::json::array();
        for (const auto& d : topic.descriptors)
            if (unit(rng) < 0.45) descriptors.push_back(d);
        if (unit(rng) < 0.25) descriptors.push_back(word(topic_list[pick_topic(rng)].descriptors));

        nlohmann::json authors = nlohmann::json::array();
        const std::size_t team = 1 + rng() % 3;
        for (std::size_t a = 0; a < team; ++a) {
            std::size_t idx = ti * authors_per_topic + rng() % authors_per_topic;
            if (unit(rng) < 0.1) idx = pick_topic(rng) * authors_per_topic + rng() % authors_per_topic;
            authors.push_back(author_name(idx));
        }

        std::string journal;
        if (unit(rng) >= 0.1) {
            const std::size_t offset = (ti * 3 + pick_journal_rank(rng)) % journals().size();
            journal = journals()[offset];
        }

        char id[32];
        std::snprintf(id, sizeof id, "d%04zu", i + 1);
        out.push_back({{"id", id},
                       {"title", title},
                       {"abstract", abstract_text},
                       {"descriptors", descriptors},
                       {"authors", authors},
                       {"journal", journal},
                       {"year", 1990 + static_cast<int>(rng() % 25)}});
    }
    return out;
}

std::string to_jsonl(const std::vector<nlohmann::json>& records) {
    std::string out;
    for (const auto& r : records) out += r.dump() + "\n";
    return out;
}

Corpus corpus_from_jsonl(const std::string& jsonl) {
    std::istringstream in(jsonl);
    return read_corpus(in);
}

Corpus synthetic_corpus(std::size_t count, std::uint64_t seed) {
    return corpus_from_jsonl(to_jsonl(synthetic_records(count, seed)));
}

RandomGraph random_graph(std::mt19937_64& rng, std::size_t nodes, double edge_probability, double isolated_share) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<bool> isolated(nodes, false);
    for (std::size_t v = 0; v < nodes; ++v) isolated[v] = unit(rng) < isolated_share;
    RandomGraph g;
    g.nodes = nodes;
    for (std::uint32_t a = 0; a < nodes; ++a)
        for (std::uint32_t b = a + 1; b < nodes; ++b)
            if (!isolated[a] && !isolated[b] && unit(rng) < edge_probability) g.edges.emplace_back(a, b);
    return g;
}

std::string study_shaped_assessments(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution relevant(0.75);
    // Researchers 0-7 practitioners, 8-15 PhD students, 16-18 postdocs; the
    // first four researchers of the list below name a second topic.
    const std::array<const char*, 3> types{"practitioner", "phd", "postdoc"};
    const auto type_of = [&](std::size_t r) { return types[r < 8 ? 0 : (r < 16 ? 1 : 2)]; };
    std::vector<std::size_t> topic_owner;
    for (std::size_t r = 0; r < 19; ++r) topic_owner.push_back(r);
    for (const std::size_t r : {0u, 9u, 16u, 5u}) topic_owner.push_back(r);

    // 23 topics with 4 rows each, plus 3 / 19 / 15 topics that get a fifth row.
    const std::array<const char*, 3> services{"STR", "JNR", "ANR"};
    const std::array<std::size_t, 3> extra{3, 19, 15};

    std::string csv = "topic_id,researcher_id,researcher_type,service,rank,recommendation,relevant\n";
    for (std::size_t t = 0; t < topic_owner.size(); ++t) {
        const std::size_t owner = topic_owner[t];
        for (std::size_t s = 0; s < 3; ++s) {
            const std::size_t rows = 4 + ((t * 7 + s * 5) % 23 < extra[s] ? 1 : 0);
            for (std::size_t rank = 1; rank <= rows; ++rank) {
                csv += "T" + std::to_string(t + 1) + ",R" + std::to_string(owner + 1) + "," + type_of(owner) + "," +
                       services[s] + "," + std::to_string(rank) + ",\"item " + std::to_string(rank) + ", " +
                       services[s] + "\"," + (relevant(rng) ? "1" : "0") + "\n";
            }
        }
    }
    return csv;
}

TempFile::TempFile(const std::string& stem, const std::string& contents) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            (stem + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::ofstream out(path_, std::ios::binary);
    out << contents;
}

TempFile::~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
}

}  // namespace bibrec::testing
