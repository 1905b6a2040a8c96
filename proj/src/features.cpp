// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#include "revscope/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace revscope {

std::array<double, BiblioFeatures::kSize> BiblioFeatures::to_array() const {
    return {ref_count,         total_in_text,     total_citations, total_supporting,
            total_contrasting, total_mentioning,  avg_in_text,     avg_citations,
            avg_supporting,    avg_contrasting,   avg_mentioning};
}

const std::array<std::string_view, BiblioFeatures::kSize>& BiblioFeatures::names() {
    static constexpr std::array<std::string_view, kSize> kNames = {
        "ref_count",         "total_in_text",    "total_citations", "total_supporting",
        "total_contrasting", "total_mentioning", "avg_in_text",     "avg_citations",
        "avg_supporting",    "avg_contrasting",  "avg_mentioning"};
    return kNames;
}

BiblioFeatures extract_biblio_features(const ArticleRecord& record) {
    BiblioFeatures f;
    if (record.references.empty()) return f;

    std::int64_t in_text = 0, citations = 0, supporting = 0, contrasting = 0, mentioning = 0;
    for (const auto& m : record.references) {
        in_text += m.in_text;
        citations += m.citations;
        supporting += m.supporting;
        contrasting += m.contrasting;
        mentioning += m.mentioning;
    }
    const auto n = static_cast<double>(record.references.size());
    f.ref_count = n;
    f.total_in_text = static_cast<double>(in_text);
    f.total_citations = static_cast<double>(citations);
    f.total_supporting = static_cast<double>(supporting);
    f.total_contrasting = static_cast<double>(contrasting);
    f.total_mentioning = static_cast<double>(mentioning);
    f.avg_in_text = f.total_in_text / n;
    f.avg_citations = f.total_citations / n;
    f.avg_supporting = f.total_supporting / n;
    f.avg_contrasting = f.total_contrasting / n;
    f.avg_mentioning = f.total_mentioning / n;
    return f;
}

namespace {

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

std::string fold(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

int keyword_flag(std::string_view title, const std::optional<std::string>& abstract, KeywordMatch mode) {
    std::string text = fold(title);
    if (abstract) {
        text += ' ';
        text += fold(*abstract);
    }
    if (mode == KeywordMatch::Substring) return text.find("review") != std::string::npos ? 1 : 0;
    const auto tokens = tokenize(text, false);
    return std::find(tokens.begin(), tokens.end(), "review") != tokens.end() ? 1 : 0;
}

std::vector<std::string> tokenize(std::string_view text, bool lowercase) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && !is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
        const std::size_t start = i;
        while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) tokens.push_back(lowercase ? fold(text.substr(start, i - start))
                                                  : std::string(text.substr(start, i - start)));
    }
    return tokens;
}

std::string document_text(const ArticleRecord& record) {
    if (!record.abstract) return record.title;
    return record.title + " " + *record.abstract;
}

nlohmann::ordered_json TfidfModel::to_json() const {
    nlohmann::ordered_json j;
    j["vocabulary"] = nlohmann::ordered_json::object();
    for (const auto& [token, index] : vocabulary) j["vocabulary"][token] = index;
    j["idf"] = idf;
    j["config"] = {{"lowercase", config.lowercase}, {"min_df", config.min_df}};
    return j;
}

TfidfModel TfidfModel::from_json(const nlohmann::json& j) {
    TfidfModel m;
    for (const auto& [token, index] : j.at("vocabulary").items()) m.vocabulary[token] = index.get<std::size_t>();
    m.idf = j.at("idf").get<std::vector<double>>();
    m.config.lowercase = j.at("config").at("lowercase").get<bool>();
    m.config.min_df = j.at("config").at("min_df").get<std::size_t>();
    if (m.idf.size() != m.vocabulary.size())
        throw std::invalid_argument("tfidf model: idf length does not match vocabulary size");
    for (const auto& [token, index] : m.vocabulary)
        if (index >= m.idf.size()) throw std::invalid_argument("tfidf model: column index out of range");
    return m;
}

TfidfModel fit_tfidf(std::span<const std::string> documents, const TfidfConfig& config) {
    if (documents.empty()) throw std::invalid_argument("fit_tfidf: no documents");

    std::map<std::string, std::size_t> df;
    for (const auto& doc : documents) {
        auto tokens = tokenize(doc, config.lowercase);
        std::sort(tokens.begin(), tokens.end());
        tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
        for (auto& t : tokens) ++df[std::move(t)];
    }

    TfidfModel model;
    model.config = config;
    const auto n = static_cast<double>(documents.size());
    for (const auto& [token, count] : df) {
        if (count < config.min_df) continue;
        model.vocabulary.emplace(token, model.idf.size());
        model.idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
    }
    if (model.vocabulary.empty())
        throw std::invalid_argument("fit_tfidf: empty vocabulary after min_df filtering");
    return model;
}

SparseVector tfidf_transform(const TfidfModel& model, std::string_view document) {
    SparseVector v;
    for (const auto& token : tokenize(document, model.config.lowercase)) {
        if (auto it = model.vocabulary.find(token); it != model.vocabulary.end()) v[it->second] += 1.0;
    }
    double norm2 = 0.0;
    for (auto& [col, w] : v) {
        w *= model.idf[col];
        norm2 += w * w;
    }
    if (norm2 > 0.0) {
        const double norm = std::sqrt(norm2);
        for (auto& [col, w] : v) w /= norm;
    }
    return v;
}

Standardization fit_standardization(const Matrix& m) {
    if (m.rows < 2) throw std::invalid_argument("standardization needs at least 2 rows");
    Standardization s{std::vector<double>(m.cols, 0.0), std::vector<double>(m.cols, 0.0)};
    const auto n = static_cast<double>(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) s.mean[c] += m(r, c);
    for (auto& mu : s.mean) mu /= n;
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) {
            const double d = m(r, c) - s.mean[c];
            s.std[c] += d * d;
        }
    for (auto& sd : s.std) sd = std::sqrt(sd / n);
    return s;
}

void standardize_row(std::span<double> row, const Standardization& params) {
    if (row.size() != params.mean.size() || row.size() != params.std.size())
        throw std::invalid_argument("standardize: row has " + std::to_string(row.size()) + " columns, expected " +
                                    std::to_string(params.mean.size()));
    for (std::size_t c = 0; c < row.size(); ++c)
        row[c] = params.std[c] > 0.0 ? (row[c] - params.mean[c]) / params.std[c] : 0.0;
}

std::pair<Matrix, Standardization> standardize(Matrix m, const std::optional<Standardization>& params) {
    Standardization s = params ? *params : fit_standardization(m);
    for (std::size_t r = 0; r < m.rows; ++r) standardize_row(m.row(r), s);
    return {std::move(m), std::move(s)};
}

Matrix unstandardize(Matrix m, const Standardization& params) {
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) m(r, c) = m(r, c) * params.std[c] + params.mean[c];
    return m;
}

std::string_view to_string(FeaturePreset preset) {
    switch (preset) {
        case FeaturePreset::TitleAbstract: return "title_abstract";
        case FeaturePreset::References: return "references";
        case FeaturePreset::TaRef: return "ta_ref";
        case FeaturePreset::Tfidf: return "tfidf";
        case FeaturePreset::TfidfRef: return "tfidf_ref";
    }
    return "unknown";
}

FeaturePreset parse_preset(std::string_view name) {
    for (auto p : {FeaturePreset::TitleAbstract, FeaturePreset::References, FeaturePreset::TaRef,
                   FeaturePreset::Tfidf, FeaturePreset::TfidfRef})
        if (to_string(p) == name) return p;
    throw std::invalid_argument("unknown preset \"" + std::string(name) + "\"");
}

namespace {

bool uses_keyword(FeaturePreset p) { return p == FeaturePreset::TitleAbstract || p == FeaturePreset::TaRef; }
bool uses_tfidf(FeaturePreset p) { return p == FeaturePreset::Tfidf || p == FeaturePreset::TfidfRef; }
bool uses_biblio(FeaturePreset p) {
    return p == FeaturePreset::References || p == FeaturePreset::TaRef || p == FeaturePreset::TfidfRef;
}

}  // namespace

std::vector<std::string> FeatureSpec::feature_names() const {
    std::vector<std::string> names;
    if (uses_keyword(preset)) names.emplace_back("review_keyword");
    if (uses_tfidf(preset)) {
        if (!tfidf) throw std::logic_error("feature spec: tfidf preset without a fitted tfidf model");
        std::vector<std::string> columns(tfidf->size());
        for (const auto& [token, index] : tfidf->vocabulary) columns[index] = "tfidf:" + token;
        names.insert(names.end(), columns.begin(), columns.end());
    }
    if (uses_biblio(preset))
        for (auto n : BiblioFeatures::names()) names.emplace_back(n);
    return names;
}

std::vector<double> FeatureSpec::featurize(const ArticleRecord& record) const {
    std::vector<double> row;
    if (uses_keyword(preset)) row.push_back(keyword_flag(record.title, record.abstract, keyword_match));
    if (uses_tfidf(preset)) {
        if (!tfidf) throw std::logic_error("feature spec: tfidf preset without a fitted tfidf model");
        const std::size_t offset = row.size();
        row.resize(offset + tfidf->size(), 0.0);
        for (const auto& [col, w] : tfidf_transform(*tfidf, document_text(record))) row[offset + col] = w;
    }
    if (uses_biblio(preset)) {
        const auto b = extract_biblio_features(record).to_array();
        row.insert(row.end(), b.begin(), b.end());
    }
    return row;
}

Matrix FeatureSpec::featurize(std::span<const ArticleRecord> records) const {
    Matrix m(records.size(), feature_names().size());
    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto row = featurize(records[r]);
        std::copy(row.begin(), row.end(), m.row(r).begin());
    }
    return m;
}

FeatureSpec make_feature_spec(FeaturePreset preset, std::span<const ArticleRecord> training,
                              const TfidfConfig& tfidf_config, KeywordMatch keyword_match) {
    FeatureSpec spec;
    spec.preset = preset;
    spec.keyword_match = keyword_match;
    if (uses_tfidf(preset)) {
        std::vector<std::string> docs;
        docs.reserve(training.size());
        for (const auto& r : training) docs.push_back(document_text(r));
        spec.tfidf = fit_tfidf(docs, tfidf_config);
    }
    return spec;
}

}  // namespace revscope
