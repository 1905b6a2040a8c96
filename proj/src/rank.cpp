// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#include "revscope/rank.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace revscope {

std::string_view to_string(EngagementSource s) {
    return s == EngagementSource::TotalInText ? "total_in_text" : "avg_in_text";
}

std::string_view to_string(DisagreementSource s) {
    return s == DisagreementSource::TotalContrasting ? "total_contrasting" : "avg_contrasting";
}

EngagementSource parse_engagement_source(std::string_view s) {
    if (s == "avg_in_text") return EngagementSource::AvgInText;
    if (s == "total_in_text") return EngagementSource::TotalInText;
    throw std::invalid_argument("unknown engagement source \"" + std::string(s) + "\"");
}

DisagreementSource parse_disagreement_source(std::string_view s) {
    if (s == "avg_contrasting") return DisagreementSource::AvgContrasting;
    if (s == "total_contrasting") return DisagreementSource::TotalContrasting;
    throw std::invalid_argument("unknown disagreement source \"" + std::string(s) + "\"");
}

void validate_rank_config(const RankConfig& config) {
    if (!(config.alpha >= 0.0) || !(config.beta >= 0.0))
        throw std::invalid_argument("rank: alpha and beta must be non-negative");
    if (!(config.alpha + config.beta > 0.0)) throw std::invalid_argument("rank: alpha + beta must be positive");
    if (config.filter && !config.filter->model)
        throw std::invalid_argument("rank: review_only filter requires a trained model");
}

ScoreParts score_article(const BiblioFeatures& f, const RankConfig& config) {
    ScoreParts p;
    p.engagement = config.engagement == EngagementSource::TotalInText ? f.total_in_text : f.avg_in_text;
    p.disagreement = config.disagreement == DisagreementSource::TotalContrasting ? f.total_contrasting
                                                                                  : f.avg_contrasting;
    if (f.ref_count == 0) return p;
    // std::pow(0, 0) is 1.
    p.score = std::pow(p.engagement, config.alpha) * std::pow(p.disagreement, config.beta);
    return p;
}

std::vector<ScoredArticle> rank_corpus(const Corpus& corpus, const RankConfig& config,
                                       std::optional<std::size_t> top_k) {
    validate_rank_config(config);

    std::vector<ScoredArticle> scored;
    scored.reserve(corpus.size());
    for (const auto& record : corpus.records()) {
        std::optional<Label> predicted;
        if (config.filter) {
            const auto& model = *config.filter->model;
            const double threshold = config.filter->threshold.value_or(model.train_config.threshold);
            predicted = predict_proba(model, record) >= threshold ? Label::Review : Label::NonReview;
            if (*predicted != Label::Review) continue;
        }
        const auto parts = score_article(extract_biblio_features(record), config);
        scored.push_back({record.id, parts.score, parts.engagement, parts.disagreement, predicted});
    }

    auto before = [](const ScoredArticle& a, const ScoredArticle& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    };
    if (top_k && *top_k < scored.size()) {
        std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(*top_k), scored.end(), before);
        scored.resize(*top_k);
    } else {
        std::sort(scored.begin(), scored.end(), before);
    }
    return scored;
}

nlohmann::ordered_json ScoredArticle::to_json() const {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["score"] = score;
    j["engagement"] = engagement;
    j["disagreement"] = disagreement;
    j["predicted_label"] =
        predicted_label ? nlohmann::ordered_json(to_string(*predicted_label)) : nlohmann::ordered_json(nullptr);
    return j;
}

std::string format_rank_table(const std::vector<ScoredArticle>& ranked, std::size_t k) {
    const std::size_t n = std::min(k, ranked.size());
    std::size_t id_width = 2;
    for (std::size_t i = 0; i < n; ++i) id_width = std::max(id_width, ranked[i].id.size());

    std::ostringstream os;
    os << std::right << std::setw(4) << "rank" << "  " << std::left << std::setw(static_cast<int>(id_width)) << "id"
       << "  " << std::right << std::setw(12) << "score" << "  " << std::setw(12) << "engagement" << "  "
       << std::setw(12) << "disagreement" << '\n';
    os << std::fixed << std::setprecision(4);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = ranked[i];
        os << std::right << std::setw(4) << i + 1 << "  " << std::left << std::setw(static_cast<int>(id_width)) << a.id
           << "  " << std::right << std::setw(12) << a.score << "  " << std::setw(12) << a.engagement << "  "
           << std::setw(12) << a.disagreement << '\n';
    }
    return os.str();
}

}  // namespace revscope
