// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "revscope/corpus.hpp"
#include "revscope/features.hpp"
#include "revscope/linear.hpp"

namespace revscope {

enum class EngagementSource { AvgInText, TotalInText };
enum class DisagreementSource { AvgContrasting, TotalContrasting };

std::string_view to_string(EngagementSource s);
std::string_view to_string(DisagreementSource s);
EngagementSource parse_engagement_source(std::string_view s);
DisagreementSource parse_disagreement_source(std::string_view s);

/// Restricts ranking to articles a classifier calls Review. Without an
/// explicit threshold the model's own threshold applies.
struct ReviewFilter {
    std::shared_ptr<const LinearModel> model;
    std::optional<double> threshold;
};

/// Substantive-disagreement metric: engagement^alpha * disagreement^beta.
struct RankConfig {
    double alpha = 1.0;
    double beta = 1.0;
    EngagementSource engagement = EngagementSource::AvgInText;
    DisagreementSource disagreement = DisagreementSource::AvgContrasting;
    std::optional<ReviewFilter> filter;
};

struct ScoreParts {
    double score = 0;
    double engagement = 0;
    double disagreement = 0;
};

struct ScoredArticle {
    std::string id;
    double score = 0;
    double engagement = 0;
    double disagreement = 0;
    std::optional<Label> predicted_label;

    nlohmann::ordered_json to_json() const;
};

/// Throws std::invalid_argument when alpha or beta is negative or both are 0.
void validate_rank_config(const RankConfig& config);

/// 0^0 counts as 1. Articles without references score 0.
ScoreParts score_article(const BiblioFeatures& features, const RankConfig& config);

/// Scores every article (after the optional Review filter) and orders them by
/// descending score, ties by ascending id. With `top_k` only the first k are
/// returned.
std::vector<ScoredArticle> rank_corpus(const Corpus& corpus, const RankConfig& config,
                                       std::optional<std::size_t> top_k = {});

std::string format_rank_table(const std::vector<ScoredArticle>& ranked, std::size_t k);

}  // namespace revscope
