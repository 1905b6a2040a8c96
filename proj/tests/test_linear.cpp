// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "revscope/linear.hpp"
#include "revscope/random.hpp"
#include "support/finite_diff.hpp"
#include "support/synthetic.hpp"

using namespace revscope;

namespace {

// Independent fit: Newton / iteratively reweighted least squares on the same
// regularized objective, solved with Eigen.
Eigen::VectorXd irls_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda) {
    const auto n = x.rows();
    const auto d = x.cols();
    Eigen::MatrixXd xa(n, d + 1);
    xa << x, Eigen::VectorXd::Ones(n);
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(d + 1);
    Eigen::MatrixXd penalty = Eigen::MatrixXd::Identity(d + 1, d + 1) * (2 * lambda);
    penalty(d, d) = 0;
    for (int iter = 0; iter < 100; ++iter) {
        const Eigen::VectorXd p = ((-(xa * theta)).array().exp() + 1.0).inverse();
        const Eigen::VectorXd s = p.array() * (1.0 - p.array());
        Eigen::VectorXd grad = xa.transpose() * (p - y) / static_cast<double>(n) + penalty * theta;
        Eigen::MatrixXd hess = xa.transpose() * s.asDiagonal() * xa / static_cast<double>(n) + penalty;
        const Eigen::VectorXd step = hess.ldlt().solve(grad);
        theta -= step;
        if (step.norm() < 1e-12) break;
    }
    return theta;
}

struct Planted {
    Matrix rows;
    std::vector<int> labels;
};

Planted planted(Rng& rng, std::size_t n) {
    // raw columns on very different scales
    const double scale[3] = {1.0, 50.0, 0.01};
    const double truth[3] = {1.5, -2.0, 1.0};
    Planted p{Matrix(n, 3), {}};
    for (std::size_t r = 0; r < n; ++r) {
        double z = 0.3;
        for (std::size_t c = 0; c < 3; ++c) {
            const double v = testing::normal(rng);
            p.rows(r, c) = v * scale[c] + 10.0;
            z += truth[c] * v;
        }
        p.labels.push_back(z + 0.5 * testing::normal(rng) > 0 ? 1 : 0);
    }
    return p;
}

}  // namespace

TEST_CASE("separable two-point problem") {
    Matrix x(2, 1);
    x.data = {-1, 1};
    const std::vector<int> y{0, 1};
    const auto m = train_logistic(x, y, {.learning_rate = 0.5, .epochs = 200, .l2_lambda = 0.0});
    CHECK(m.weights[0] > 0);
    CHECK(classify(m, std::vector<double>{-1}) == Label::NonReview);
    CHECK(classify(m, std::vector<double>{1}) == Label::Review);
}

TEST_CASE("training preconditions") {
    Matrix x(2, 1);
    x.data = {-1, 1};
    CHECK_THROWS_AS(train_logistic(x, std::vector<int>{0, 1}, {.epochs = 0}), std::invalid_argument);
    CHECK_THROWS_AS(train_logistic(x, std::vector<int>{1, 1}, {}), std::invalid_argument);
    CHECK_THROWS_AS(train_logistic(x, std::vector<int>{1}, {}), std::invalid_argument);
    x.data[1] = std::nan("");
    try {
        train_logistic(x, std::vector<int>{0, 1}, {});
        FAIL("expected non-finite error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("row 1") != std::string::npos);
    }
}

TEST_CASE("gradient descent agrees with an IRLS oracle") {
    Rng rng(31);
    const auto train = planted(rng, 500);
    const TrainConfig config{.learning_rate = 0.5, .epochs = 3000, .l2_lambda = 1e-3};
    const auto model = train_logistic(train.rows, train.labels, config);

    auto [xs, params] = standardize(train.rows, model.standardization);
    Eigen::MatrixXd x(xs.rows, xs.cols);
    Eigen::VectorXd y(xs.rows);
    for (std::size_t r = 0; r < xs.rows; ++r) {
        for (std::size_t c = 0; c < xs.cols; ++c) x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = xs(r, c);
        y(static_cast<Eigen::Index>(r)) = train.labels[r];
    }
    const auto theta = irls_fit(x, y, config.l2_lambda);

    const auto fresh = planted(rng, 2000);
    std::size_t agree = 0;
    for (std::size_t r = 0; r < fresh.rows.rows; ++r) {
        std::vector<double> row(fresh.rows.row(r).begin(), fresh.rows.row(r).end());
        const bool ours = classify(model, row) == Label::Review;
        standardize_row(row, model.standardization);
        double z = theta(3);
        for (std::size_t c = 0; c < 3; ++c) z += theta(static_cast<Eigen::Index>(c)) * row[c];
        agree += ours == (z >= 0);
    }
    CHECK(static_cast<double>(agree) / 2000.0 >= 0.98);
}

TEST_CASE("analytic gradient matches central differences") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + rng.below(12), d = 1 + rng.below(5);
        Matrix x(n, d);
        for (auto& v : x.data) v = rng.uniform(-2, 2);
        std::vector<int> y(n);
        std::vector<double> weights(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = static_cast<int>(rng.below(2));
            weights[i] = trial % 2 ? rng.uniform(0.5, 3) : 1.0;
        }
        std::vector<double> theta(d + 1);
        for (auto& t : theta) t = rng.uniform(-1.5, 1.5);
        const double lambda = rng.uniform(0, 0.1);

        auto loss = [&](const std::vector<double>& t) {
            return logistic_objective(x, y, weights, std::span(t).first(d), t[d], lambda).loss;
        };
        const auto obj = logistic_objective(x, y, weights, std::span(theta).first(d), theta[d], lambda);
        auto analytic = obj.grad_w;
        analytic.push_back(obj.grad_b);
        CHECK(testing::max_relative_error(analytic, testing::central_differences(loss, theta)) < 1e-4);
    }
}

TEST_CASE("training loss is non-increasing at a small learning rate") {
    testing::SyntheticSpec spec;
    spec.n_records = 600;
    const auto corpus = testing::synthetic_corpus(spec);
    const auto feature_spec = make_feature_spec(FeaturePreset::TaRef, corpus.records());
    const Matrix x = feature_spec.featurize(corpus.records());
    std::vector<int> y;
    for (const auto& r : corpus.records()) y.push_back(r.label == Label::Review);

    std::vector<double> losses;
    train_logistic(x, y, {.learning_rate = 1e-2, .epochs = 300}, {},
                   [&](std::size_t, double loss) { losses.push_back(loss); });
    REQUIRE(losses.size() == 300);
    for (std::size_t i = 1; i < losses.size(); ++i) CHECK(losses[i] <= losses[i - 1]);
}

TEST_CASE("column scale does not change decisions") {
    Rng rng(4);
    const auto train = planted(rng, 400);
    const auto test = planted(rng, 300);
    const TrainConfig config{.learning_rate = 0.3, .epochs = 400};
    const auto a = train_logistic(train.rows, train.labels, config);

    auto scaled_train = train.rows;
    auto scaled_test = test.rows;
    for (std::size_t r = 0; r < scaled_train.rows; ++r) scaled_train(r, 0) *= 1000;
    for (std::size_t r = 0; r < scaled_test.rows; ++r) scaled_test(r, 0) *= 1000;
    const auto b = train_logistic(scaled_train, train.labels, config);

    for (std::size_t r = 0; r < test.rows.rows; ++r)
        CHECK(classify(a, test.rows.row(r)) == classify(b, scaled_test.row(r)));
}

TEST_CASE("predict_proba and classify") {
    LinearModel m;
    m.feature_names = {"a", "b"};
    m.weights = {0, 0};
    m.standardization = {{1, 2}, {1, 1}};
    CHECK(predict_proba(m, std::vector<double>{5, -3}) == 0.5);

    m.weights = {0.7, -1.1};
    m.bias = 0.4;
    CHECK(predict_proba(m, std::vector<double>{1, 2}) == doctest::Approx(sigmoid(0.4)));

    LinearModel h;
    h.feature_names = {"x"};
    h.weights = {1};
    h.standardization = {{0}, {1}};
    CHECK(predict_proba(h, std::vector<double>{2}) == doctest::Approx(0.8808).epsilon(1e-4));
    CHECK_THROWS_AS(predict_proba(h, std::vector<double>{1, 2}), std::invalid_argument);

    // threshold boundary: probability exactly 0.5 is Review
    h.weights = {0};
    CHECK(classify(h, std::vector<double>{3}) == Label::Review);
    // probability 0.49
    h.bias = std::log(0.49 / 0.51);
    CHECK(classify(h, std::vector<double>{3}) == Label::NonReview);
    // probability 0.6 under threshold 0.9
    h.bias = std::log(0.6 / 0.4);
    h.train_config.threshold = 0.9;
    CHECK(classify(h, std::vector<double>{3}) == Label::NonReview);
}

TEST_CASE("evaluate") {
    using L = Label;
    const std::vector<L> pred{L::Review, L::Review, L::Review, L::Review, L::NonReview, L::NonReview, L::NonReview};
    const std::vector<L> act{L::Review, L::Review, L::Review, L::NonReview, L::Review, L::Review, L::NonReview};
    const auto m = evaluate(pred, act);
    CHECK(m.tp == 3);
    CHECK(m.fp == 1);
    CHECK(m.fn == 2);
    CHECK(m.tn == 1);
    CHECK(m.precision == doctest::Approx(75.0));
    CHECK(m.recall == doctest::Approx(60.0));
    CHECK(m.f1 == doctest::Approx(66.6667).epsilon(1e-5));

    CHECK(std::abs(f1_score(75.6, 9.9) - 17.5) <= 0.05);
    CHECK(std::abs(f1_score(72.2, 18.1) - 28.9) <= 0.05);
    CHECK(f1_score(0, 0) == 0);

    const auto none = evaluate(std::vector<L>{L::NonReview}, std::vector<L>{L::Review});
    CHECK(none.precision == 0);
    CHECK(none.f1 == 0);

    CHECK_THROWS(evaluate(std::vector<L>{L::Review}, std::vector<L>{}));
    CHECK_THROWS(evaluate(std::vector<L>{}, std::vector<L>{}));
    CHECK_THROWS(evaluate(std::vector<L>{L::Review}, std::vector<L>{L::Unlabeled}));
}

TEST_CASE("evaluate matches a brute-force confusion count") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(60);
        std::vector<Label> pred, act;
        std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
        for (std::size_t i = 0; i < n; ++i) {
            pred.push_back(rng.below(2) ? Label::Review : Label::NonReview);
            act.push_back(rng.below(3) ? Label::NonReview : Label::Review);
            const bool p = pred.back() == Label::Review, a = act.back() == Label::Review;
            tp += p && a;
            fp += p && !a;
            fn += !p && a;
            tn += !p && !a;
        }
        const auto m = evaluate(pred, act);
        CHECK(m.tp == tp);
        CHECK(m.fp == fp);
        CHECK(m.fn == fn);
        CHECK(m.tn == tn);
    }
}

TEST_CASE("coefficient_report ordering") {
    LinearModel m;
    m.feature_names = {"c", "a", "b"};
    m.weights = {0.85, 1.81, 1.23};
    auto rep = coefficient_report(m);
    CHECK(rep == std::vector<std::pair<std::string, double>>{{"a", 1.81}, {"b", 1.23}, {"c", 0.85}});

    m.feature_names = {"y", "x"};
    m.weights = {0, 0};
    CHECK(coefficient_report(m) == std::vector<std::pair<std::string, double>>{{"x", 0}, {"y", 0}});

    m.feature_names = {"s", "m", "n"};
    m.weights = {-1.45, -1.76, -1.02};
    rep = coefficient_report(m);
    CHECK(rep.back().first == "m");
    CHECK(rep[1].first == "s");
    CHECK(rep.front().first == "n");
}

TEST_CASE("model JSON round-trip and validation") {
    testing::SyntheticSpec spec;
    spec.n_records = 120;
    const auto corpus = testing::synthetic_corpus(spec);
    for (auto preset : {FeaturePreset::TaRef, FeaturePreset::Tfidf}) {
        const auto model = train_model(corpus.records(), make_feature_spec(preset, corpus.records()), {.epochs = 20});
        const auto text = model.to_json().dump();
        const auto back = LinearModel::from_json(nlohmann::json::parse(text));
        CHECK(back == model);
        CHECK(back.to_json().dump() == text);
        for (const auto& r : corpus.records()) CHECK(predict_proba(back, r) == predict_proba(model, r));
    }

    auto j = nlohmann::json::parse(
        train_model(corpus.records(), make_feature_spec(FeaturePreset::References, corpus.records()), {.epochs = 5})
            .to_json()
            .dump());
    j["weights"].erase(0);
    CHECK_THROWS(LinearModel::from_json(j));
}

TEST_CASE("class weighting raises recall on imbalanced data") {
    testing::SyntheticSpec spec;
    spec.n_records = 1500;
    const auto corpus = testing::synthetic_corpus(spec);
    const auto fs = make_feature_spec(FeaturePreset::References, corpus.records());
    const auto plain = train_model(corpus.records(), fs, {});
    const auto weighted = train_model(corpus.records(), fs, {.class_weighting = true});
    std::vector<Label> a, b, truth;
    for (const auto& r : corpus.records()) {
        a.push_back(classify(plain, r));
        b.push_back(classify(weighted, r));
        truth.push_back(r.label);
    }
    CHECK(evaluate(b, truth).recall > evaluate(a, truth).recall);
}
