#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bibrec/text.hpp"

namespace bibrec {

/// One bibliographic document.
///
/// Descriptors are stored whitespace-collapsed and deduplicated by their
/// normalized key; authors likewise by `normalize_author` key. `journal` is
/// whitespace-collapsed and empty for non-journal items. `year` 0 = unknown.
struct BibRecord {
    std::string id;
    std::string title;
    std::string abstract_text;
    std::vector<std::string> descriptors;
    std::vector<AuthorName> authors;
    std::string journal;
    int year = 0;
    std::size_t source_line = 0;
};

/// Immutable collection of records loaded from a JSON-Lines file.
class Corpus {
public:
    /// Validates and indexes `records`; throws ValidationError on an empty
    /// list or a duplicate id.
    explicit Corpus(std::vector<BibRecord> records);

    const std::vector<BibRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }

    const BibRecord* find(std::string_view id) const;
    /// Throws NotFoundError for an unknown id.
    const BibRecord& at(std::string_view id) const;
    std::optional<std::size_t> position(std::string_view id) const;

    /// Display form of an author key, taken from its first occurrence in
    /// record order. Falls back to the key itself when unknown.
    const std::string& author_display(const std::string& key) const;

private:
    std::vector<BibRecord> records_;
    std::unordered_map<std::string, std::size_t> by_id_;
    std::unordered_map<std::string, std::string> author_display_;
};

/// Parses one JSON object line into a normalized record. Unknown fields are
/// ignored. Throws ParseError carrying `line`.
BibRecord parse_record(std::string_view json_line, std::size_t line);

/// Reads JSON-Lines from a stream. Blank lines are skipped; record order is
/// preserved.
Corpus read_corpus(std::istream& in);

/// Throws IoError when the file cannot be opened.
Corpus load_corpus(const std::filesystem::path& path);

}  // namespace bibrec
