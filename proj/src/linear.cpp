// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#include "revscope/linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace revscope {

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_labels(std::span<const int> labels, std::size_t rows) {
    if (labels.size() != rows)
        throw std::invalid_argument("label count " + std::to_string(labels.size()) + " does not match row count " +
                                    std::to_string(rows));
    std::size_t pos = 0;
    for (int y : labels) {
        if (y != 0 && y != 1) throw std::invalid_argument("labels must be 0 or 1");
        pos += static_cast<std::size_t>(y);
    }
    if (pos == 0 || pos == labels.size())
        throw std::invalid_argument("training needs at least one example of each class");
}

}  // namespace

Objective logistic_objective(const Matrix& rows, std::span<const int> labels, std::span<const double> sample_weights,
                             std::span<const double> w, double b, double l2_lambda) {
    Objective obj;
    obj.grad_w.assign(rows.cols, 0.0);
    double total_weight = 0.0;
    for (std::size_t r = 0; r < rows.rows; ++r) {
        const double c = sample_weights.empty() ? 1.0 : sample_weights[r];
        const auto x = rows.row(r);
        const double z = dot(w, x) + b;
        obj.loss += c * (softplus(z) - labels[r] * z);
        const double g = c * (sigmoid(z) - labels[r]);
        for (std::size_t j = 0; j < rows.cols; ++j) obj.grad_w[j] += g * x[j];
        obj.grad_b += g;
        total_weight += c;
    }
    obj.loss /= total_weight;
    obj.grad_b /= total_weight;
    for (std::size_t j = 0; j < rows.cols; ++j) {
        obj.grad_w[j] = obj.grad_w[j] / total_weight + 2.0 * l2_lambda * w[j];
        obj.loss += l2_lambda * w[j] * w[j];
    }
    return obj;
}

LinearModel train_logistic(const Matrix& rows, std::span<const int> labels, const TrainConfig& config,
                           std::vector<std::string> feature_names, const EpochObserver& observer) {
    if (config.epochs < 1) throw std::invalid_argument("train_logistic: epochs must be at least 1");
    if (!(config.learning_rate > 0.0)) throw std::invalid_argument("train_logistic: learning rate must be positive");
    check_labels(labels, rows.rows);
    for (std::size_t r = 0; r < rows.rows; ++r)
        for (std::size_t c = 0; c < rows.cols; ++c)
            if (!std::isfinite(rows(r, c)))
                throw std::invalid_argument("non-finite feature at row " + std::to_string(r) + ", column " +
                                            std::to_string(c));
    if (feature_names.empty()) {
        for (std::size_t c = 0; c < rows.cols; ++c) feature_names.push_back("x" + std::to_string(c));
    } else if (feature_names.size() != rows.cols) {
        throw std::invalid_argument("feature name count does not match column count");
    }

    auto [x, params] = standardize(rows);

    std::vector<double> sample_weights;
    if (config.class_weighting) {
        const auto pos = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
        const double neg = static_cast<double>(labels.size()) - pos;
        sample_weights.reserve(labels.size());
        for (int y : labels) sample_weights.push_back(y == 1 ? neg / pos : 1.0);
    }

    LinearModel model;
    model.feature_names = std::move(feature_names);
    model.weights.assign(rows.cols, 0.0);
    model.standardization = std::move(params);
    model.train_config = config;

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        const auto obj = logistic_objective(x, labels, sample_weights, model.weights, model.bias, config.l2_lambda);
        if (observer) observer(epoch, obj.loss);
        for (std::size_t j = 0; j < model.weights.size(); ++j) model.weights[j] -= config.learning_rate * obj.grad_w[j];
        model.bias -= config.learning_rate * obj.grad_b;
    }
    for (double v : model.weights)
        if (!std::isfinite(v)) throw std::runtime_error("train_logistic diverged; lower the learning rate");
    return model;
}

LinearModel train_model(std::span<const ArticleRecord> records, FeatureSpec spec, const TrainConfig& config) {
    std::vector<ArticleRecord> labeled;
    std::vector<int> labels;
    for (const auto& r : records) {
        if (r.label == Label::Unlabeled) continue;
        labeled.push_back(r);
        labels.push_back(r.label == Label::Review ? 1 : 0);
    }
    const Matrix x = spec.featurize(labeled);
    LinearModel model = train_logistic(x, labels, config, spec.feature_names());
    model.features = std::move(spec);
    return model;
}

double predict_proba(const LinearModel& model, std::span<const double> row) {
    if (row.size() != model.weights.size())
        throw std::invalid_argument("row has " + std::to_string(row.size()) + " features, model expects " +
                                    std::to_string(model.weights.size()));
    std::vector<double> x(row.begin(), row.end());
    standardize_row(x, model.standardization);
    return sigmoid(dot(model.weights, x) + model.bias);
}

double predict_proba(const LinearModel& model, const ArticleRecord& record) {
    return predict_proba(model, model.features.featurize(record));
}

Label classify(const LinearModel& model, std::span<const double> row) {
    return predict_proba(model, row) >= model.train_config.threshold ? Label::Review : Label::NonReview;
}

Label classify(const LinearModel& model, const ArticleRecord& record) {
    return classify(model, model.features.featurize(record));
}

double f1_score(double precision, double recall) {
    return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

Metrics evaluate(std::span<const Label> predicted, std::span<const Label> actual) {
    if (predicted.size() != actual.size())
        throw std::invalid_argument("evaluate: " + std::to_string(predicted.size()) + " predictions for " +
                                    std::to_string(actual.size()) + " labels");
    if (actual.empty()) throw std::invalid_argument("evaluate: nothing to evaluate");

    Metrics m;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] == Label::Unlabeled) throw std::invalid_argument("evaluate: unlabeled ground truth");
        const bool pred = predicted[i] == Label::Review;
        const bool truth = actual[i] == Label::Review;
        if (pred && truth) ++m.tp;
        else if (pred) ++m.fp;
        else if (truth) ++m.fn;
        else ++m.tn;
    }
    m.precision = m.tp + m.fp ? 100.0 * m.tp / static_cast<double>(m.tp + m.fp) : 0.0;
    m.recall = m.tp + m.fn ? 100.0 * m.tp / static_cast<double>(m.tp + m.fn) : 0.0;
    m.f1 = f1_score(m.precision, m.recall);
    return m;
}

nlohmann::ordered_json Metrics::to_json() const {
    nlohmann::ordered_json j;
    j["precision"] = precision;
    j["recall"] = recall;
    j["f1"] = f1;
    j["confusion"] = {{"tp", tp}, {"fp", fp}, {"fn", fn}, {"tn", tn}};
    return j;
}

std::vector<std::pair<std::string, double>> coefficient_report(const LinearModel& model) {
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t i = 0; i < model.weights.size(); ++i) out.emplace_back(model.feature_names[i], model.weights[i]);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

namespace {

std::string_view to_string(KeywordMatch m) { return m == KeywordMatch::Token ? "token" : "substring"; }

KeywordMatch parse_keyword_match(const std::string& s) {
    if (s == "substring") return KeywordMatch::Substring;
    if (s == "token") return KeywordMatch::Token;
    throw std::invalid_argument("unknown keyword_match \"" + s + "\"");
}

}  // namespace

nlohmann::ordered_json LinearModel::to_json() const {
    nlohmann::ordered_json j;
    j["feature_names"] = feature_names;
    j["weights"] = weights;
    j["bias"] = bias;
    j["standardization"] = {{"mean", standardization.mean}, {"std", standardization.std}};
    j["train_config"] = {{"learning_rate", train_config.learning_rate},
                         {"epochs", train_config.epochs},
                         {"l2_lambda", train_config.l2_lambda},
                         {"seed", train_config.seed},
                         {"threshold", train_config.threshold},
                         {"class_weighting", train_config.class_weighting}};
    j["preset"] = revscope::to_string(features.preset);
    j["keyword_match"] = to_string(features.keyword_match);
    if (features.tfidf) j["tfidf"] = features.tfidf->to_json();
    return j;
}

LinearModel LinearModel::from_json(const nlohmann::json& j) {
    LinearModel m;
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.standardization.mean = j.at("standardization").at("mean").get<std::vector<double>>();
    m.standardization.std = j.at("standardization").at("std").get<std::vector<double>>();

    const auto& tc = j.at("train_config");
    m.train_config.learning_rate = tc.at("learning_rate").get<double>();
    m.train_config.epochs = tc.at("epochs").get<std::size_t>();
    m.train_config.l2_lambda = tc.at("l2_lambda").get<double>();
    m.train_config.seed = tc.at("seed").get<std::uint64_t>();
    m.train_config.threshold = tc.value("threshold", 0.5);
    m.train_config.class_weighting = tc.value("class_weighting", false);

    m.features.preset = parse_preset(j.at("preset").get<std::string>());
    m.features.keyword_match = parse_keyword_match(j.value("keyword_match", std::string("substring")));
    if (auto t = j.find("tfidf"); t != j.end()) m.features.tfidf = TfidfModel::from_json(*t);

    const auto n = m.feature_names.size();
    if (m.weights.size() != n || m.standardization.mean.size() != n || m.standardization.std.size() != n)
        throw std::invalid_argument("model file: weights/standardization length does not match feature_names");
    if (m.features.feature_names() != m.feature_names)
        throw std::invalid_argument("model file: feature_names do not match preset \"" +
                                    std::string(revscope::to_string(m.features.preset)) + "\"");
    for (double v : m.weights)
        if (!std::isfinite(v)) throw std::invalid_argument("model file: non-finite weight");
    return m;
}

}  // namespace revscope
