#include "bibrec/term_recommender.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "bibrec/error.hpp"
#include "bibrec/text.hpp"

namespace bibrec {

DocScope DocScope::all(const Index& index) {
    DocScope s;
    s.member_.assign(index.doc_count(), 1);
    s.docs_.resize(index.doc_count());
    for (std::uint32_t d = 0; d < s.docs_.size(); ++d) s.docs_[d] = d;
    s.size_ = s.docs_.size();
    return s;
}

DocScope DocScope::of_docs(const Index& index, std::span<const std::uint32_t> docs) {
    DocScope s;
    s.member_.assign(index.doc_count(), 0);
    for (const auto d : docs) {
        if (d >= index.doc_count()) throw NotFoundError("document position out of range");
        if (!s.member_[d]) {
            s.member_[d] = 1;
            s.docs_.push_back(d);
        }
    }
    std::sort(s.docs_.begin(), s.docs_.end());
    s.size_ = s.docs_.size();
    return s;
}

DocScope DocScope::of_ids(const Index& index, std::span<const std::string> ids) {
    std::vector<std::uint32_t> docs;
    docs.reserve(ids.size());
    for (const auto& id : ids) {
        const auto d = index.doc_of(id);
        if (!d) throw NotFoundError("unknown record id \"" + id + "\"");
        docs.push_back(*d);
    }
    return of_docs(index, docs);
}

DocScope DocScope::of_result(const Index& index, const ResultSet& result) {
    std::vector<std::string> ids;
    ids.reserve(result.entries.size());
    for (const auto& e : result.entries) ids.push_back(e.id);
    return of_ids(index, ids);
}

ContingencyTable contingency(const Index& index, const DocScope& scope, const std::string& free_term,
                             std::string_view descriptor) {
    if (scope.empty()) throw ValidationError("co-occurrence scope is empty");
    const auto term_docs = index.postings(free_term);
    const auto desc_docs = index.descriptor_postings(normalize_term(descriptor));

    ContingencyTable t;
    t.n = scope.size();
    std::uint64_t with_term = 0;
    std::uint64_t with_desc = 0;
    for (const auto& p : term_docs)
        if (scope.contains(p.doc)) ++with_term;
    for (const auto d : desc_docs)
        if (scope.contains(d)) ++with_desc;

    // Both lists are sorted by document position.
    auto a = term_docs.begin();
    auto b = desc_docs.begin();
    while (a != term_docs.end() && b != desc_docs.end()) {
        if (a->doc < *b) {
            ++a;
        } else if (*b < a->doc) {
            ++b;
        } else {
            if (scope.contains(*b)) ++t.n11;
            ++a;
            ++b;
        }
    }
    t.n10 = with_term - t.n11;
    t.n01 = with_desc - t.n11;
    t.n00 = t.n - t.n11 - t.n10 - t.n01;
    return t;
}

namespace {

double xlogx(std::uint64_t x) {
    if (x == 0) return 0.0;
    const auto d = static_cast<double>(x);
    return d * std::log(d);
}

}  // namespace

// G^2 = 2 * (sum O ln O - sum R ln R - sum C ln C + n ln n), the entropy
// form of 2 * sum O ln(O/E).
double llr(const ContingencyTable& t) {
    const std::uint64_t r1 = t.n11 + t.n10;
    const std::uint64_t r0 = t.n01 + t.n00;
    const std::uint64_t c1 = t.n11 + t.n01;
    const std::uint64_t c0 = t.n10 + t.n00;
    const std::uint64_t n = r1 + r0;
    if (r1 == 0 || r0 == 0 || c1 == 0 || c0 == 0) return 0.0;

    __extension__ typedef unsigned __int128 wide;
    if (wide{t.n11} * t.n00 == wide{t.n10} * t.n01) return 0.0;

    const double g2 = 2.0 * (xlogx(t.n11) + xlogx(t.n10) + xlogx(t.n01) + xlogx(t.n00) - xlogx(r1) - xlogx(r0) -
                             xlogx(c1) - xlogx(c0) + xlogx(n));
    const double unsigned_g2 = std::max(g2, 0.0);
    const bool below_expectation = wide{t.n11} * n < wide{r1} * c1;
    return below_expectation ? -unsigned_g2 : unsigned_g2;
}

double dice(const ContingencyTable& t) {
    const std::uint64_t denom = 2 * t.n11 + t.n10 + t.n01;
    if (denom == 0) return 0.0;
    return 2.0 * static_cast<double>(t.n11) / static_cast<double>(denom);
}

std::optional<AssociationMeasure> parse_association_measure(std::string_view name) noexcept {
    if (name == "llr") return AssociationMeasure::llr;
    if (name == "dice") return AssociationMeasure::dice;
    return std::nullopt;
}

std::string_view to_string(AssociationMeasure m) noexcept {
    return m == AssociationMeasure::dice ? "dice" : "llr";
}

std::optional<CooccurrenceScope> parse_cooccurrence_scope(std::string_view name) noexcept {
    if (name == "corpus") return CooccurrenceScope::corpus;
    if (name == "result") return CooccurrenceScope::result;
    return std::nullopt;
}

std::string_view to_string(CooccurrenceScope s) noexcept {
    return s == CooccurrenceScope::result ? "result" : "corpus";
}

double association(AssociationMeasure m, const ContingencyTable& t) {
    return m == AssociationMeasure::dice ? dice(t) : llr(t);
}

RecommendationList recommend_terms(const Index& index, const Query& query, std::size_t k,
                                   const TermRecommenderOptions& options) {
    RecommendationList out;
    if (k == 0) return out;
    const ResultSet result = search(index, query, std::max<std::size_t>(options.scope_limit, 1));
    if (result.entries.empty()) return out;

    const DocScope topic = DocScope::of_result(index, result);
    const DocScope counting =
        options.counting_scope == CooccurrenceScope::result ? DocScope::of_result(index, result) : DocScope::all(index);

    const std::unordered_set<std::string> free_terms(query.free_terms.begin(), query.free_terms.end());

    // Ordered by key so the candidate sweep is deterministic.
    std::map<std::string, std::size_t> topic_df;
    for (const auto doc : topic.docs())
        for (const auto& key : index.descriptor_keys(doc)) ++topic_df[key];

    std::vector<std::string> distinct_terms;
    for (const auto& t : query.free_terms)
        if (std::find(distinct_terms.begin(), distinct_terms.end(), t) == distinct_terms.end())
            distinct_terms.push_back(t);

    for (const auto& [key, count] : topic_df) {
        if (count < options.min_df_scope) continue;
        if (free_terms.contains(key)) continue;
        double best = 0.0;
        bool first = true;
        for (const auto& term : distinct_terms) {
            const double s = association(options.measure, contingency(index, counting, term, key));
            if (first || s > best) best = s;
            first = false;
        }
        out.push_back({RecommendationKind::term, index.descriptor_display(key), best, 0});
    }

    std::sort(out.begin(), out.end(), [](const Recommendation& a, const Recommendation& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.value < b.value;
    });
    if (out.size() > k) out.resize(k);
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i + 1);
    return out;
}

}  // namespace bibrec
