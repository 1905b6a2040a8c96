// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#include "revscope/fusion.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <stdexcept>

#include "revscope/linear.hpp"
#include "revscope/random.hpp"

namespace revscope {

EmbeddingTable load_embeddings(std::istream& in) {
    EmbeddingTable table;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw CorpusError("malformed JSON", line_no);
        auto id = j.find("id");
        auto vec = j.find("vector");
        if (id == j.end() || !id->is_string()) throw CorpusError("\"id\" must be a string", line_no);
        if (vec == j.end() || !vec->is_array()) throw CorpusError("\"vector\" must be an array", line_no);

        std::vector<double> v;
        v.reserve(vec->size());
        for (const auto& x : *vec) {
            if (!x.is_number()) throw CorpusError("vector entries must be numbers", line_no);
            v.push_back(x.get<double>());
            if (!std::isfinite(v.back())) throw CorpusError("non-finite vector entry", line_no);
        }
        if (first) {
            if (v.empty()) throw CorpusError("empty vector", line_no);
            table.dimension = v.size();
            first = false;
        } else if (v.size() != table.dimension) {
            throw CorpusError("dimension mismatch: expected " + std::to_string(table.dimension) + ", got " +
                                  std::to_string(v.size()),
                              line_no);
        }
        auto key = id->get<std::string>();
        if (!table.vectors.emplace(key, std::move(v)).second)
            throw CorpusError("duplicate id \"" + key + "\"", line_no);
    }
    if (first) throw CorpusError("embedding stream is empty; cannot infer dimension");
    return table;
}

EmbeddingTable load_embeddings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open embeddings file " + path);
    return load_embeddings(in);
}

std::vector<double> JointModel::parameters() const {
    std::vector<double> flat;
    flat.reserve(w_text.data.size() + w_biblio.data.size() + head.size() + 1);
    flat.insert(flat.end(), w_text.data.begin(), w_text.data.end());
    flat.insert(flat.end(), w_biblio.data.begin(), w_biblio.data.end());
    flat.insert(flat.end(), head.begin(), head.end());
    flat.push_back(bias);
    return flat;
}

void JointModel::set_parameters(std::span<const double> flat) {
    const std::size_t expected = w_text.data.size() + w_biblio.data.size() + head.size() + 1;
    if (flat.size() != expected) throw std::invalid_argument("joint model: wrong parameter count");
    auto it = flat.begin();
    std::copy_n(it, w_text.data.size(), w_text.data.begin());
    it += static_cast<std::ptrdiff_t>(w_text.data.size());
    std::copy_n(it, w_biblio.data.size(), w_biblio.data.begin());
    it += static_cast<std::ptrdiff_t>(w_biblio.data.size());
    std::copy_n(it, head.size(), head.begin());
    bias = flat.back();
}

JointModel make_joint_model(std::size_t dim, std::size_t text_dim) {
    if (dim == 0 || text_dim == 0) throw std::invalid_argument("joint model: dimensions must be positive");
    JointModel m;
    m.dim = dim;
    m.text_dim = text_dim;
    m.w_text = Matrix(dim, text_dim);
    m.w_biblio = Matrix(dim, BiblioFeatures::kSize);
    m.head.assign(2 * dim, 0.0);
    m.biblio_standardization.mean.assign(BiblioFeatures::kSize, 0.0);
    m.biblio_standardization.std.assign(BiblioFeatures::kSize, 1.0);
    m.config.dim = dim;
    return m;
}

namespace {

void check_shapes(const JointModel& m, std::size_t text_len, std::size_t biblio_len) {
    if (text_len != m.text_dim)
        throw std::invalid_argument("text vector has " + std::to_string(text_len) + " entries, model expects " +
                                    std::to_string(m.text_dim));
    if (biblio_len != BiblioFeatures::kSize)
        throw std::invalid_argument("bibliometric vector has " + std::to_string(biblio_len) + " entries, expected " +
                                    std::to_string(BiblioFeatures::kSize));
}

// out = W x
void project(const Matrix& w, std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < w.rows; ++i) {
        double s = 0.0;
        const auto row = w.row(i);
        for (std::size_t k = 0; k < w.cols; ++k) s += row[k] * x[k];
        out[i] = s;
    }
}

}  // namespace

double joint_logit(const JointModel& model, std::span<const double> text_vec, std::span<const double> biblio_std) {
    check_shapes(model, text_vec.size(), biblio_std.size());
    std::vector<double> hidden(2 * model.dim);
    project(model.w_text, text_vec, std::span(hidden).first(model.dim));
    project(model.w_biblio, biblio_std, std::span(hidden).subspan(model.dim));
    double z = model.bias;
    for (std::size_t i = 0; i < hidden.size(); ++i) z += model.head[i] * hidden[i];
    return z;
}

double joint_forward(const JointModel& model, std::span<const double> text_vec, std::span<const double> biblio_vec) {
    check_shapes(model, text_vec.size(), biblio_vec.size());
    std::vector<double> b(biblio_vec.begin(), biblio_vec.end());
    standardize_row(b, model.biblio_standardization);
    return sigmoid(joint_logit(model, text_vec, b));
}

JointObjective joint_objective(const JointModel& model, const Matrix& text_rows, const Matrix& biblio_rows,
                               std::span<const int> labels, double l2_lambda) {
    const std::size_t d = model.dim;
    const std::size_t e = model.text_dim;
    const std::size_t nb = BiblioFeatures::kSize;
    const std::size_t off_wb = d * e;
    const std::size_t off_head = off_wb + d * nb;
    const std::size_t off_bias = off_head + 2 * d;

    JointObjective obj;
    obj.gradient.assign(off_bias + 1, 0.0);
    auto& g = obj.gradient;

    std::vector<double> hidden(2 * d);
    for (std::size_t r = 0; r < text_rows.rows; ++r) {
        const auto x = text_rows.row(r);
        const auto s = biblio_rows.row(r);
        project(model.w_text, x, std::span(hidden).first(d));
        project(model.w_biblio, s, std::span(hidden).subspan(d));
        double z = model.bias;
        for (std::size_t i = 0; i < 2 * d; ++i) z += model.head[i] * hidden[i];

        obj.loss += std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))) - labels[r] * z;
        const double dz = sigmoid(z) - labels[r];
        for (std::size_t i = 0; i < 2 * d; ++i) g[off_head + i] += dz * hidden[i];
        g[off_bias] += dz;
        for (std::size_t i = 0; i < d; ++i) {
            const double ht = dz * model.head[i];
            for (std::size_t k = 0; k < e; ++k) g[i * e + k] += ht * x[k];
            const double hb = dz * model.head[d + i];
            for (std::size_t k = 0; k < nb; ++k) g[off_wb + i * nb + k] += hb * s[k];
        }
    }

    const auto n = static_cast<double>(text_rows.rows);
    obj.loss /= n;
    const auto theta = model.parameters();
    for (std::size_t p = 0; p < g.size(); ++p) {
        g[p] = g[p] / n + 2.0 * l2_lambda * theta[p];
        obj.loss += l2_lambda * theta[p] * theta[p];
    }
    return obj;
}

JointModel train_joint(std::span<const ArticleRecord> records, const EmbeddingTable& embeddings,
                       const JointConfig& config, const JointEpochObserver& observer) {
    if (config.epochs < 1) throw std::invalid_argument("train_joint: epochs must be at least 1");
    if (config.dim < 1) throw std::invalid_argument("train_joint: projection dimension must be at least 1");

    std::vector<const ArticleRecord*> labeled;
    std::vector<std::string> missing;
    for (const auto& r : records) {
        if (r.label == Label::Unlabeled) continue;
        if (!embeddings.vectors.contains(r.id)) missing.push_back(r.id);
        labeled.push_back(&r);
    }
    if (!missing.empty()) {
        std::string msg = "missing embeddings for labeled ids:";
        for (const auto& id : missing) msg += " " + id;
        throw std::invalid_argument(msg);
    }

    std::vector<int> labels;
    Matrix text(labeled.size(), embeddings.dimension);
    Matrix biblio(labeled.size(), BiblioFeatures::kSize);
    for (std::size_t r = 0; r < labeled.size(); ++r) {
        labels.push_back(labeled[r]->label == Label::Review ? 1 : 0);
        const auto& v = embeddings.vectors.at(labeled[r]->id);
        std::copy(v.begin(), v.end(), text.row(r).begin());
        const auto b = extract_biblio_features(*labeled[r]).to_array();
        std::copy(b.begin(), b.end(), biblio.row(r).begin());
    }
    const auto pos = std::count(labels.begin(), labels.end(), 1);
    if (pos == 0 || pos == static_cast<std::ptrdiff_t>(labels.size()))
        throw std::invalid_argument("train_joint: needs at least one labeled record of each class");

    auto [biblio_std, params] = standardize(std::move(biblio));

    JointModel model = make_joint_model(config.dim, embeddings.dimension);
    model.config = config;
    model.biblio_standardization = std::move(params);

    Rng rng(config.seed);
    auto init = [&rng](std::span<double> values, std::size_t fan_in) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        for (auto& v : values) v = rng.uniform(-bound, bound);
    };
    init(model.w_text.data, model.text_dim);
    init(model.w_biblio.data, BiblioFeatures::kSize);
    init(model.head, 2 * model.dim);

    const std::size_t n_text = model.w_text.data.size();
    const std::size_t n_biblio = model.w_biblio.data.size();
    auto apply_ablation = [&](std::vector<double>& flat) {
        if (config.ablation == JointAblation::TextOnly)
            std::fill_n(flat.begin() + static_cast<std::ptrdiff_t>(n_text), n_biblio, 0.0);
        else if (config.ablation == JointAblation::BiblioOnly)
            std::fill_n(flat.begin(), n_text, 0.0);
    };
    auto theta = model.parameters();
    apply_ablation(theta);
    model.set_parameters(theta);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        auto obj = joint_objective(model, text, biblio_std, labels, config.l2_lambda);
        if (observer) observer(epoch, obj.loss);
        apply_ablation(obj.gradient);
        for (std::size_t p = 0; p < theta.size(); ++p) theta[p] -= config.learning_rate * obj.gradient[p];
        model.set_parameters(theta);
    }
    for (double v : theta)
        if (!std::isfinite(v)) throw std::runtime_error("train_joint diverged; lower the learning rate");
    return model;
}

double joint_predict(const JointModel& model, const ArticleRecord& record, const EmbeddingTable& embeddings) {
    auto it = embeddings.vectors.find(record.id);
    if (it == embeddings.vectors.end()) throw std::invalid_argument("no embedding for id \"" + record.id + "\"");
    return joint_forward(model, it->second, extract_biblio_features(record).to_array());
}

namespace {

std::string_view to_string(JointAblation a) {
    switch (a) {
        case JointAblation::TextOnly: return "text_only";
        case JointAblation::BiblioOnly: return "biblio_only";
        case JointAblation::None: break;
    }
    return "none";
}

JointAblation parse_ablation(const std::string& s) {
    if (s == "none") return JointAblation::None;
    if (s == "text_only") return JointAblation::TextOnly;
    if (s == "biblio_only") return JointAblation::BiblioOnly;
    throw std::invalid_argument("unknown ablation \"" + s + "\"");
}

nlohmann::ordered_json matrix_json(const Matrix& m) {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < m.rows; ++r) {
        const auto row = m.row(r);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols, const char* name) {
    if (!j.is_array() || j.size() != rows) throw std::invalid_argument(std::string("joint model: bad shape for ") + name);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto row = j[r].get<std::vector<double>>();
        if (row.size() != cols) throw std::invalid_argument(std::string("joint model: bad shape for ") + name);
        std::copy(row.begin(), row.end(), m.row(r).begin());
    }
    return m;
}

}  // namespace

nlohmann::ordered_json JointModel::to_json() const {
    nlohmann::ordered_json j;
    j["dim"] = dim;
    j["text_dim"] = text_dim;
    j["biblio_features"] = BiblioFeatures::names();
    j["w_text"] = matrix_json(w_text);
    j["w_biblio"] = matrix_json(w_biblio);
    j["head"] = head;
    j["bias"] = bias;
    j["standardization"] = {{"mean", biblio_standardization.mean}, {"std", biblio_standardization.std}};
    j["config"] = {{"dim", config.dim},
                   {"learning_rate", config.learning_rate},
                   {"epochs", config.epochs},
                   {"seed", config.seed},
                   {"l2_lambda", config.l2_lambda},
                   {"ablation", to_string(config.ablation)}};
    return j;
}

JointModel JointModel::from_json(const nlohmann::json& j) {
    JointModel m = make_joint_model(j.at("dim").get<std::size_t>(), j.at("text_dim").get<std::size_t>());
    m.w_text = matrix_from_json(j.at("w_text"), m.dim, m.text_dim, "w_text");
    m.w_biblio = matrix_from_json(j.at("w_biblio"), m.dim, BiblioFeatures::kSize, "w_biblio");
    m.head = j.at("head").get<std::vector<double>>();
    if (m.head.size() != 2 * m.dim) throw std::invalid_argument("joint model: head must have 2*dim entries");
    m.bias = j.at("bias").get<double>();
    m.biblio_standardization.mean = j.at("standardization").at("mean").get<std::vector<double>>();
    m.biblio_standardization.std = j.at("standardization").at("std").get<std::vector<double>>();
    if (m.biblio_standardization.mean.size() != BiblioFeatures::kSize ||
        m.biblio_standardization.std.size() != BiblioFeatures::kSize)
        throw std::invalid_argument("joint model: standardization must have 11 entries");
    const auto& c = j.at("config");
    m.config.dim = m.dim;
    m.config.learning_rate = c.at("learning_rate").get<double>();
    m.config.epochs = c.at("epochs").get<std::size_t>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.l2_lambda = c.at("l2_lambda").get<double>();
    m.config.ablation = parse_ablation(c.value("ablation", std::string("none")));
    for (double v : m.parameters())
        if (!std::isfinite(v)) throw std::invalid_argument("joint model: non-finite parameter");
    return m;
}

}  // namespace revscope
