#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <unordered_set>

#include "bibrec/term_recommender.hpp"

namespace bibrec {

/// Settings of the engine and its HTTP service.
///
/// The config file is flat `key = value` text (a TOML subset): strings in
/// double quotes, bare integers and decimals, `#` comments. Keys are the
/// member names below; unknown keys are rejected. Relative paths resolve
/// against the config file's directory.
struct ServiceConfig {
    std::filesystem::path corpus_path;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t scope_limit = 500;
    std::size_t recommendation_k = 5;
    std::size_t default_limit = 10;
    double expansion_boost = 1.0;
    AssociationMeasure association_measure = AssociationMeasure::llr;
    CooccurrenceScope cooccurrence_scope = CooccurrenceScope::corpus;
    std::size_t min_df_scope = 2;
    std::optional<std::filesystem::path> stopword_path;
    /// Value of Access-Control-Allow-Origin; empty disables CORS headers.
    std::string cors_origin = "*";

    /// Throws ValidationError when a bound is violated.
    void validate() const;

    TermRecommenderOptions term_options() const {
        return {scope_limit, min_df_scope, association_measure, cooccurrence_scope};
    }
};

/// Throws ParseError (with line number) on malformed input.
ServiceConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
/// Throws IoError when the file cannot be opened.
ServiceConfig load_config(const std::filesystem::path& path);

/// Applies BIBREC_HOST and BIBREC_PORT when set.
void apply_env_overrides(ServiceConfig& config);

/// One word per line; `#` starts a comment. Words are tokenized, so
/// "Die" and "die" are the same stopword.
std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path);

}  // namespace bibrec
