#include "bibrec/corpus.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "bibrec/error.hpp"

namespace bibrec {
namespace {

using nlohmann::json;

std::string string_field(const json& obj, const char* name, std::size_t line) {
    const auto it = obj.find(name);
    if (it == obj.end() || it->is_null()) return {};
    if (!it->is_string()) throw ParseError(std::string("field \"") + name + "\" must be a string", line);
    return it->get<std::string>();
}

std::vector<std::string> string_list_field(const json& obj, const char* name, std::size_t line) {
    std::vector<std::string> out;
    const auto it = obj.find(name);
    if (it == obj.end() || it->is_null()) return out;
    if (!it->is_array()) throw ParseError(std::string("field \"") + name + "\" must be an array of strings", line);
    for (const auto& v : *it) {
        if (!v.is_string())
            throw ParseError(std::string("field \"") + name + "\" must be an array of strings", line);
        out.push_back(v.get<std::string>());
    }
    return out;
}

}  // namespace

Corpus::Corpus(std::vector<BibRecord> records) : records_(std::move(records)) {
    if (records_.empty()) throw ValidationError("corpus is empty");
    by_id_.reserve(records_.size());
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& rec = records_[i];
        if (rec.id.empty()) throw ValidationError("record at line " + std::to_string(rec.source_line) + " has an empty id");
        const auto [it, inserted] = by_id_.emplace(rec.id, i);
        if (!inserted) {
            throw ValidationError("duplicate id \"" + rec.id + "\" at lines " +
                                  std::to_string(records_[it->second].source_line) + " and " +
                                  std::to_string(rec.source_line));
        }
        for (const auto& a : rec.authors) author_display_.try_emplace(a.key, a.display);
    }
}

const BibRecord* Corpus::find(std::string_view id) const {
    const auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? nullptr : &records_[it->second];
}

const BibRecord& Corpus::at(std::string_view id) const {
    if (const auto* rec = find(id)) return *rec;
    throw NotFoundError("unknown record id \"" + std::string(id) + "\"");
}

std::optional<std::size_t> Corpus::position(std::string_view id) const {
    const auto it = by_id_.find(std::string(id));
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

const std::string& Corpus::author_display(const std::string& key) const {
    const auto it = author_display_.find(key);
    return it == author_display_.end() ? key : it->second;
}

BibRecord parse_record(std::string_view json_line, std::size_t line) {
    json obj;
    try {
        obj = json::parse(json_line);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), line);
    }
    if (!obj.is_object()) throw ParseError("record must be a JSON object", line);

    BibRecord rec;
    rec.source_line = line;

    const auto id = obj.find("id");
    if (id == obj.end() || !id->is_string()) throw ParseError("field \"id\" is required and must be a string", line);
    rec.id = id->get<std::string>();
    if (rec.id.empty()) throw ParseError("field \"id\" must be nonempty", line);

    rec.title = string_field(obj, "title", line);
    rec.abstract_text = string_field(obj, "abstract", line);
    rec.journal = collapse_whitespace(string_field(obj, "journal", line));

    std::unordered_set<std::string> seen;
    for (const auto& d : string_list_field(obj, "descriptors", line)) {
        auto display = collapse_whitespace(d);
        if (display.empty()) continue;
        if (seen.insert(casefold(display)).second) rec.descriptors.push_back(std::move(display));
    }
    seen.clear();
    for (const auto& a : string_list_field(obj, "authors", line)) {
        auto name = normalize_author(a);
        if (name.key.empty()) continue;
        if (seen.insert(name.key).second) rec.authors.push_back(std::move(name));
    }

    if (const auto year = obj.find("year"); year != obj.end() && !year->is_null()) {
        if (!year->is_number_integer()) throw ParseError("field \"year\" must be an integer", line);
        const auto value = year->get<long long>();
        if (value < 0 || value > 1'000'000) throw ParseError("field \"year\" out of range", line);
        rec.year = static_cast<int>(value);
    }
    return rec;
}

Corpus read_corpus(std::istream& in) {
    std::vector<BibRecord> records;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.find_first_not_of(" \t") == std::string::npos) continue;
        records.push_back(parse_record(text, line));
    }
    return Corpus(std::move(records));
}

Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file " + path.string());
    return read_corpus(in);
}

}  // namespace bibrec
