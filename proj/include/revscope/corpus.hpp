// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace revscope {

enum class Label { Review, NonReview, Unlabeled };

std::string_view to_string(Label label);

/// Citation tallies for one reference cited by an article.
///
/// `supporting`, `contrasting` and `mentioning` count classified citation
/// statements; `in_text` counts all in-text citation statements, so the three
/// classes must not exceed it. `citations` (citing publications) is unrelated
/// to `in_text` and may exceed it.
struct ReferenceMetrics {
    std::int64_t supporting = 0;
    std::int64_t contrasting = 0;
    std::int64_t mentioning = 0;
    std::int64_t in_text = 0;
    std::int64_t citations = 0;

    bool operator==(const ReferenceMetrics&) const = default;
};

struct ArticleRecord {
    std::string id;
    std::string title;
    std::optional<std::string> abstract;
    Label label = Label::Unlabeled;
    std::vector<ReferenceMetrics> references;

    bool operator==(const ArticleRecord&) const = default;
};

/// Thrown for malformed corpus input. `line()` is 1-based, 0 when unknown.
class CorpusError : public std::runtime_error {
public:
    CorpusError(const std::string& what, std::size_t line = 0);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Ordered collection of records with pairwise distinct ids.
class Corpus {
public:
    Corpus() = default;

    /// Throws CorpusError naming the id on duplicates.
    static Corpus from_records(std::vector<ArticleRecord> records);

    void add(ArticleRecord record);

    const std::vector<ArticleRecord>& records() const noexcept { return records_; }
    const std::map<Label, std::size_t>& counts() const noexcept { return counts_; }
    std::size_t count(Label label) const;
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }
    bool contains(const std::string& id) const { return ids_.contains(id); }

    bool operator==(const Corpus& other) const { return records_ == other.records_; }

private:
    std::vector<ArticleRecord> records_;
    std::map<Label, std::size_t> counts_;
    std::unordered_set<std::string> ids_;
};

ArticleRecord parse_record(std::string_view json_line);
std::string serialize_record(const ArticleRecord& record);

/// Reads one JSON object per line. Blank lines are skipped but still counted
/// for error line numbers.
Corpus parse_corpus(std::istream& in);
Corpus load_corpus(const std::string& path);

void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::string& path, const Corpus& corpus);

/// Returns one description per broken invariant; empty when the record is valid.
std::vector<std::string> validate_record(const ArticleRecord& record);

/// Non-fatal observations, e.g. an empty title.
std::vector<std::string> record_warnings(const ArticleRecord& record);

struct SplitResult {
    Corpus train;
    Corpus test;
    std::vector<std::string> notes;
};

/// Per-label test quotas: floor(count * fraction), with the remaining
/// round(total * fraction) - sum(floors) slots handed to the labels with the
/// largest fractional parts (ties go to Review first).
std::map<Label, std::size_t> stratified_quotas(const std::map<Label, std::size_t>& counts,
                                               double test_fraction);

/// Class-preserving train/test partition. Membership within each label is
/// drawn by a seeded Fisher-Yates shuffle; both outputs keep input order.
SplitResult stratified_split(const Corpus& corpus, double test_fraction, std::uint64_t seed);

}  // namespace revscope
