#include "bibrec/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>

#include "bibrec/error.hpp"
#include "bibrec/text.hpp"

namespace bibrec {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string parse_string(std::string_view v, std::size_t line) {
    if (v.size() < 2 || v.front() != '"' || v.back() != '"') throw ParseError("expected a quoted string", line);
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] == '\\' && i + 2 < v.size()) {
            const char e = v[++i];
            out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
        } else {
            out += v[i];
        }
    }
    return out;
}

long long parse_int(std::string_view v, std::size_t line) {
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) throw ParseError("expected an integer", line);
    return out;
}

std::size_t parse_count(std::string_view v, std::size_t line) {
    const auto n = parse_int(v, line);
    if (n < 0) throw ParseError("expected a non-negative integer", line);
    return static_cast<std::size_t>(n);
}

double parse_double(std::string_view v, std::size_t line) {
    const std::string s(v);
    char* end = nullptr;
    const double out = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ParseError("expected a number", line);
    return out;
}

// Strips a trailing comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    if (path.is_relative() && !base.empty()) return base / path;
    return path;
}

}  // namespace

void ServiceConfig::validate() const {
    if (recommendation_k < 1) throw ValidationError("recommendation_k must be at least 1");
    if (scope_limit < 1) throw ValidationError("scope_limit must be at least 1");
    if (default_limit < 1) throw ValidationError("default_limit must be at least 1");
    if (!(expansion_boost > 0.0)) throw ValidationError("expansion_boost must be positive");
    if (port < 0 || port > 65535) throw ValidationError("port must be within 0..65535");
}

ServiceConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    ServiceConfig cfg;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        const auto content = trim(strip_comment(text));
        if (content.empty()) continue;
        if (content.front() == '[') throw ParseError("tables are not supported; use flat keys", line);
        const auto eq = content.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key = value", line);
        const auto key = trim(content.substr(0, eq));
        const auto value = trim(content.substr(eq + 1));

        if (key == "corpus_path") {
            cfg.corpus_path = resolve(base_dir, parse_string(value, line));
        } else if (key == "host") {
            cfg.host = parse_string(value, line);
        } else if (key == "port") {
            cfg.port = static_cast<int>(parse_int(value, line));
        } else if (key == "scope_limit") {
            cfg.scope_limit = parse_count(value, line);
        } else if (key == "recommendation_k") {
            cfg.recommendation_k = parse_count(value, line);
        } else if (key == "default_limit") {
            cfg.default_limit = parse_count(value, line);
        } else if (key == "expansion_boost") {
            cfg.expansion_boost = parse_double(value, line);
        } else if (key == "association_measure") {
            const auto m = parse_association_measure(parse_string(value, line));
            if (!m) throw ParseError("association_measure must be \"llr\" or \"dice\"", line);
            cfg.association_measure = *m;
        } else if (key == "cooccurrence_scope") {
            const auto s = parse_cooccurrence_scope(parse_string(value, line));
            if (!s) throw ParseError("cooccurrence_scope must be \"corpus\" or \"result\"", line);
            cfg.cooccurrence_scope = *s;
        } else if (key == "min_df_scope") {
            cfg.min_df_scope = parse_count(value, line);
        } else if (key == "stopword_path") {
            const auto p = parse_string(value, line);
            if (p.empty())
                cfg.stopword_path.reset();
            else
                cfg.stopword_path = resolve(base_dir, p);
        } else if (key == "cors_origin") {
            cfg.cors_origin = parse_string(value, line);
        } else {
            throw ParseError("unknown key \"" + std::string(key) + "\"", line);
        }
    }
    return cfg;
}

ServiceConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    return parse_config(in, path.parent_path());
}

void apply_env_overrides(ServiceConfig& config) {
    if (const char* host = std::getenv("BIBREC_HOST"); host && *host) config.host = host;
    if (const char* port = std::getenv("BIBREC_PORT"); port && *port) {
        const std::string_view v(port);
        int out = 0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || ptr != v.data() + v.size())
            throw ValidationError("BIBREC_PORT is not an integer: " + std::string(v));
        config.port = out;
    }
}

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stopword file " + path.string());
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        for (auto& tok : tokenize(line)) words.insert(std::move(tok));
    }
    return words;
}

}  // namespace bibrec
