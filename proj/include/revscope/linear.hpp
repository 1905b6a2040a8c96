// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "revscope/corpus.hpp"
#include "revscope/features.hpp"

namespace revscope {

struct TrainConfig {
    double learning_rate = 0.1;
    std::size_t epochs = 500;
    double l2_lambda = 1e-3;
    std::uint64_t seed = 42;
    double threshold = 0.5;
    // Weights positives by n_negative / n_positive when set.
    bool class_weighting = false;

    bool operator==(const TrainConfig&) const = default;
};

struct LinearModel {
    std::vector<std::string> feature_names;
    std::vector<double> weights;
    double bias = 0.0;
    Standardization standardization;
    TrainConfig train_config;
    FeatureSpec features;

    nlohmann::ordered_json to_json() const;
    static LinearModel from_json(const nlohmann::json& j);

    bool operator==(const LinearModel&) const = default;
};

double sigmoid(double z);

struct Objective {
    double loss = 0.0;
    std::vector<double> grad_w;
    double grad_b = 0.0;
};

/// Weighted mean logistic loss plus l2_lambda * |w|^2 (bias unpenalized) and
/// its analytic gradient. `rows` are already standardized; `sample_weights`
/// may be empty for uniform weights.
Objective logistic_objective(const Matrix& rows, std::span<const int> labels, std::span<const double> sample_weights,
                             std::span<const double> w, double b, double l2_lambda);

using EpochObserver = std::function<void(std::size_t epoch, double loss)>;

/// Standardizes the columns, then runs full-batch gradient descent from zero
/// weights. The observer sees the objective before each update.
LinearModel train_logistic(const Matrix& rows, std::span<const int> labels, const TrainConfig& config,
                           std::vector<std::string> feature_names = {}, const EpochObserver& observer = {});

/// Trains on the labeled records, featurized through `spec`.
LinearModel train_model(std::span<const ArticleRecord> records, FeatureSpec spec, const TrainConfig& config);

double predict_proba(const LinearModel& model, std::span<const double> row);
double predict_proba(const LinearModel& model, const ArticleRecord& record);

Label classify(const LinearModel& model, std::span<const double> row);
Label classify(const LinearModel& model, const ArticleRecord& record);

struct Metrics {
    double precision = 0;  // percent
    double recall = 0;
    double f1 = 0;
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;

    nlohmann::ordered_json to_json() const;
};

/// Harmonic mean of two percentages, 0 when both are 0.
double f1_score(double precision, double recall);

/// Review is the positive class. Throws on length mismatch, empty input, or
/// an Unlabeled entry in `actual`.
Metrics evaluate(std::span<const Label> predicted, std::span<const Label> actual);

/// All (feature, weight) pairs, descending by weight; equal weights ordered by name.
std::vector<std::pair<std::string, double>> coefficient_report(const LinearModel& model);

}  // namespace revscope
