// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "revscope/corpus.hpp"

namespace revscope {

/// Bibliometric summary of an article's reference list. Field order is the
/// column order of every model that consumes it.
struct BiblioFeatures {
    static constexpr std::size_t kSize = 11;

    double ref_count = 0;
    double total_in_text = 0;
    double total_citations = 0;
    double total_supporting = 0;
    double total_contrasting = 0;
    double total_mentioning = 0;
    double avg_in_text = 0;
    double avg_citations = 0;
    double avg_supporting = 0;
    double avg_contrasting = 0;
    double avg_mentioning = 0;

    std::array<double, kSize> to_array() const;
    static const std::array<std::string_view, kSize>& names();

    bool operator==(const BiblioFeatures&) const = default;
};

BiblioFeatures extract_biblio_features(const ArticleRecord& record);

enum class KeywordMatch { Substring, Token };

/// 1 when "review" occurs in the case-folded title + abstract. Token mode
/// requires a whole alphanumeric token equal to "review".
int keyword_flag(std::string_view title, const std::optional<std::string>& abstract,
                 KeywordMatch mode = KeywordMatch::Substring);

struct TfidfConfig {
    bool lowercase = true;
    std::size_t min_df = 1;

    bool operator==(const TfidfConfig&) const = default;
};

/// Maximal runs of ASCII alphanumerics; bytes >= 0x80 also count as word
/// characters so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text, bool lowercase);

/// Title and abstract joined with a space.
std::string document_text(const ArticleRecord& record);

struct TfidfModel {
    std::map<std::string, std::size_t> vocabulary;
    std::vector<double> idf;
    TfidfConfig config;

    std::size_t size() const noexcept { return idf.size(); }
    nlohmann::ordered_json to_json() const;
    static TfidfModel from_json(const nlohmann::json& j);

    bool operator==(const TfidfModel&) const = default;
};

using SparseVector = std::map<std::size_t, double>;

/// Smoothed idf: ln((1 + N) / (1 + df)) + 1. Vocabulary columns follow
/// lexicographic token order. Throws std::invalid_argument on empty input or
/// an empty vocabulary.
TfidfModel fit_tfidf(std::span<const std::string> documents, const TfidfConfig& config);

/// Raw term count times idf, then L2-normalized. Unknown tokens are dropped.
SparseVector tfidf_transform(const TfidfModel& model, std::string_view document);

struct Standardization {
    std::vector<double> mean;
    std::vector<double> std;

    bool operator==(const Standardization&) const = default;
};

/// Dense row-major matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
    std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

/// Population mean and standard deviation per column. Needs at least 2 rows.
Standardization fit_standardization(const Matrix& m);

/// (x - mean) / std, with zero-variance columns mapped to 0.
void standardize_row(std::span<double> row, const Standardization& params);

/// Fits parameters when none are given, then standardizes every row.
std::pair<Matrix, Standardization> standardize(Matrix m, const std::optional<Standardization>& params = {});

/// Inverse of standardize on non-constant columns.
Matrix unstandardize(Matrix m, const Standardization& params);

// ---------------------------------------------------------------------------
// Feature presets: the column layouts models are trained on.

enum class FeaturePreset { TitleAbstract, References, TaRef, Tfidf, TfidfRef };

std::string_view to_string(FeaturePreset preset);
FeaturePreset parse_preset(std::string_view name);

/// Everything needed to turn an ArticleRecord into a model input row.
struct FeatureSpec {
    FeaturePreset preset = FeaturePreset::References;
    KeywordMatch keyword_match = KeywordMatch::Substring;
    std::optional<TfidfModel> tfidf;

    std::vector<std::string> feature_names() const;
    std::vector<double> featurize(const ArticleRecord& record) const;
    Matrix featurize(std::span<const ArticleRecord> records) const;

    bool operator==(const FeatureSpec&) const = default;
};

/// Fits the text side (TFIDF vocabulary) of a preset on training records.
FeatureSpec make_feature_spec(FeaturePreset preset, std::span<const ArticleRecord> training,
                              const TfidfConfig& tfidf_config = {},
                              KeywordMatch keyword_match = KeywordMatch::Substring);

}  // namespace revscope
