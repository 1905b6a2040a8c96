// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "revscope/corpus.hpp"
#include "revscope/features.hpp"

namespace revscope {

/// Precomputed document embeddings keyed by article id.
struct EmbeddingTable {
    std::size_t dimension = 0;
    std::map<std::string, std::vector<double>> vectors;
};

/// Reads {"id": ..., "vector": [...]} lines; the first line fixes the
/// dimension. Throws CorpusError with the line number on bad input.
EmbeddingTable load_embeddings(std::istream& in);
EmbeddingTable load_embeddings_file(const std::string& path);

enum class JointAblation {
    None,
    TextOnly,    // bibliometric projection held at zero
    BiblioOnly,  // text projection held at zero
};

struct JointConfig {
    std::size_t dim = 32;
    double learning_rate = 0.05;
    std::size_t epochs = 500;
    std::uint64_t seed = 42;
    double l2_lambda = 1e-3;
    JointAblation ablation = JointAblation::None;
};

/// Two linear encoders projecting a text embedding (E) and the bibliometric
/// vector (B = 11) into d dimensions each, concatenated, then a logistic head
/// of width 2d.
struct JointModel {
    std::size_t dim = 0;
    std::size_t text_dim = 0;
    Matrix w_text;    // dim x text_dim
    Matrix w_biblio;  // dim x BiblioFeatures::kSize
    std::vector<double> head;  // first dim entries read the text projection
    double bias = 0.0;
    Standardization biblio_standardization;
    JointConfig config;

    /// Flat view in the order w_text, w_biblio, head, bias.
    std::vector<double> parameters() const;
    void set_parameters(std::span<const double> flat);

    nlohmann::ordered_json to_json() const;
    static JointModel from_json(const nlohmann::json& j);
};

/// Zero-parameter model with the given shapes and identity standardization.
JointModel make_joint_model(std::size_t dim, std::size_t text_dim);

double joint_logit(const JointModel& model, std::span<const double> text_vec, std::span<const double> biblio_std);

/// Probability of Review. `biblio_vec` is raw and gets standardized here.
double joint_forward(const JointModel& model, std::span<const double> text_vec, std::span<const double> biblio_vec);

struct JointObjective {
    double loss = 0.0;
    std::vector<double> gradient;  // same layout as JointModel::parameters()
};

/// Mean logistic loss plus l2_lambda * |theta|^2 over every parameter.
/// `biblio_rows` are already standardized.
JointObjective joint_objective(const JointModel& model, const Matrix& text_rows, const Matrix& biblio_rows,
                               std::span<const int> labels, double l2_lambda);

using JointEpochObserver = std::function<void(std::size_t epoch, double loss)>;

/// Full-batch gradient descent over the labeled records. Throws when a
/// labeled record has no embedding.
JointModel train_joint(std::span<const ArticleRecord> records, const EmbeddingTable& embeddings,
                       const JointConfig& config, const JointEpochObserver& observer = {});

double joint_predict(const JointModel& model, const ArticleRecord& record, const EmbeddingTable& embeddings);

}  // namespace revscope
