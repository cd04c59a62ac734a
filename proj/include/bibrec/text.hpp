#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bibrec {

/// Lowercased alphanumeric runs of `text`, in order, duplicates kept.
/// Any non-alphanumeric code point (by Unicode classification) separates
/// tokens; invalid UTF-8 bytes are treated as separators.
std::vector<std::string> tokenize(std::string_view text);

/// Trims and collapses internal whitespace runs to a single space.
std::string collapse_whitespace(std::string_view text);

/// Unicode-aware lowercase of a UTF-8 string.
std::string casefold(std::string_view text);

/// Comparison key for controlled descriptors and other atomic terms:
/// casefold(collapse_whitespace(text)).
std::string normalize_term(std::string_view text);

/// An author name resolved to its comparison key. `display` keeps the
/// casing of the source it was built from, with whitespace collapsed.
struct AuthorName {
    std::string key;
    std::string display;

    friend bool operator==(const AuthorName&, const AuthorName&) = default;
};

AuthorName normalize_author(std::string_view name);

}  // namespace bibrec
