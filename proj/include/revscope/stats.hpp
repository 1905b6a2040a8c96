// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#pragma once

#include <map>
#include <optional>
#include <span>

#include <json.hpp>

#include "revscope/corpus.hpp"

namespace revscope {

/// Throws std::invalid_argument on an empty input.
double median(std::span<const double> values);

/// Ratio of summed totals to summed reference counts, over articles that
/// cite anything.
struct PooledRatios {
    double supporting = 0;
    double contrasting = 0;
    double mentioning = 0;
};

struct ClassSummary {
    Label label = Label::Review;
    std::size_t n_articles = 0;
    double median_ref_count = 0;
    double median_total_in_text = 0;
    double median_total_citations = 0;
    // Means of per-article per-reference averages; zero-reference articles are
    // left out and tallied in n_zero_reference instead.
    double mean_avg_supporting = 0;
    double mean_avg_contrasting = 0;
    double mean_avg_mentioning = 0;
    std::size_t n_zero_reference = 0;
    std::optional<PooledRatios> pooled;
};

struct StatsOptions {
    bool include_pooled = false;
};

/// Per-label descriptive statistics over labeled records. Throws
/// std::invalid_argument when the corpus has no labeled record.
std::map<Label, ClassSummary> summarize_by_class(const Corpus& corpus, const StatsOptions& options = {});

nlohmann::ordered_json to_json(const ClassSummary& summary);
std::string format_summary_table(const std::map<Label, ClassSummary>& summaries);

}  // namespace revscope
