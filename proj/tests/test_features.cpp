// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "revscope/features.hpp"
#include "revscope/random.hpp"
#include "support/synthetic.hpp"

using namespace revscope;

namespace {

ArticleRecord record_with(std::vector<ReferenceMetrics> refs) {
    ArticleRecord r;
    r.id = "a";
    r.title = "t";
    r.references = std::move(refs);
    return r;
}

double l2(const SparseVector& v) {
    double s = 0;
    for (const auto& [k, w] : v) s += w * w;
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("extract_biblio_features arithmetic") {
    // {supporting, contrasting, mentioning, in_text, citations}
    const auto f = extract_biblio_features(record_with({{2, 1, 3, 6, 10}, {0, 1, 1, 2, 4}}));
    CHECK(f.ref_count == 2);
    CHECK(f.total_in_text == 8);
    CHECK(f.total_citations == 14);
    CHECK(f.total_mentioning == 4);
    CHECK(f.avg_in_text == 4.0);
    CHECK(f.avg_citations == 7.0);
    CHECK(f.avg_supporting == 1.0);
    CHECK(f.avg_contrasting == 1.0);
    CHECK(f.avg_mentioning == 2.0);
}

TEST_CASE("zero references give the zero vector") {
    CHECK(extract_biblio_features(record_with({})) == BiblioFeatures{});
}

TEST_CASE("73 references") {
    const auto f = extract_biblio_features(record_with(std::vector<ReferenceMetrics>(73, {0, 1, 0, 3, 0})));
    CHECK(f.ref_count == 73);
    CHECK(f.avg_contrasting == 1.0);
    CHECK(f.total_in_text == 219);
}

TEST_CASE("feature vector order is fixed") {
    const auto& names = BiblioFeatures::names();
    CHECK(names.front() == "ref_count");
    CHECK(names[9] == "avg_contrasting");
    CHECK(names.back() == "avg_mentioning");
    BiblioFeatures f;
    f.total_citations = 5;
    CHECK(f.to_array()[2] == 5);
}

TEST_CASE("biblio features are permutation invariant and consistent") {
    testing::SyntheticSpec spec;
    spec.n_records = 50;
    spec.seed = 3;
    Rng rng(11);
    const auto corpus = testing::synthetic_corpus(spec);
    for (auto record : corpus.records()) {
        const auto f = extract_biblio_features(record);
        auto& refs = record.references;
        for (std::size_t i = refs.size(); i > 1; --i) std::swap(refs[i - 1], refs[rng.below(i)]);
        CHECK(extract_biblio_features(record) == f);
        if (f.ref_count > 0) {
            const auto a = f.to_array();
            for (std::size_t k = 0; k < 5; ++k) {
                const double total = a[1 + k], avg = a[6 + k];
                CHECK(std::abs(avg * f.ref_count - total) <= 1e-12 * std::max(1.0, std::abs(total)));
            }
        }
    }
}

TEST_CASE("keyword_flag") {
    CHECK(keyword_flag("A systematic review of trials", std::nullopt) == 1);
    CHECK(keyword_flag("Cardiac surgery outcomes", std::string("Cohort of 200 patients")) == 0);
    CHECK(keyword_flag("Peer-Reviewed registry data", std::nullopt) == 1);
    CHECK(keyword_flag("Outcomes", std::string("We REVIEW prior work")) == 1);
    // token mode rejects the hyphenated compound
    CHECK(keyword_flag("Peer-Reviewed registry data", std::nullopt, KeywordMatch::Token) == 0);
    CHECK(keyword_flag("A review", std::nullopt, KeywordMatch::Token) == 1);
    // title and abstract do not fuse across the boundary
    CHECK(keyword_flag("pre", std::string("view")) == 0);
}

TEST_CASE("tokenize") {
    CHECK(tokenize("Systematic-review, of 2 TRIALS!", true) ==
          std::vector<std::string>{"systematic", "review", "of", "2", "trials"});
    CHECK(tokenize("ABC def", false) == std::vector<std::string>{"ABC", "def"});
    CHECK(tokenize("  ...  ", true).empty());
}

TEST_CASE("fit_tfidf smoothed idf") {
    const std::vector<std::string> docs{"systematic review of trials", "randomized trials of drug"};
    const auto m = fit_tfidf(docs, {});
    REQUIRE(m.size() == 6);
    // lexicographic columns
    CHECK(m.vocabulary.at("drug") == 0);
    CHECK(m.vocabulary.at("trials") == 5);
    CHECK(m.idf[m.vocabulary.at("of")] == doctest::Approx(1.0));
    CHECK(m.idf[m.vocabulary.at("trials")] == doctest::Approx(1.0));
    CHECK(m.idf[m.vocabulary.at("review")] == doctest::Approx(std::log(3.0 / 2.0) + 1.0));
    CHECK(m.idf[m.vocabulary.at("review")] == doctest::Approx(1.4055).epsilon(1e-4));
    for (double v : m.idf) CHECK(v >= 1.0);

    const std::vector<std::string> single{"a a b"};
    const auto s = fit_tfidf(single, {});
    CHECK(s.idf == std::vector<double>{1.0, 1.0});

    CHECK_THROWS_AS(fit_tfidf(docs, {.lowercase = true, .min_df = 3}), std::invalid_argument);
    CHECK_THROWS_AS(fit_tfidf(std::vector<std::string>{}, {}), std::invalid_argument);

    const auto min2 = fit_tfidf(docs, {.lowercase = true, .min_df = 2});
    CHECK(min2.size() == 2);
}

TEST_CASE("tfidf_transform weights and normalization") {
    const std::vector<std::string> docs{"systematic review of trials", "randomized trials of drug"};
    const auto m = fit_tfidf(docs, {});
    const auto v = tfidf_transform(m, "systematic review of trials");

    // Oracle: hand-evaluated tf*idf then L2 norm.
    const double idf_rare = std::log(1.5) + 1.0;
    const double norm = std::sqrt(2 * idf_rare * idf_rare + 1.0 + 1.0);
    CHECK(norm == doctest::Approx(2.4394).epsilon(1e-4));
    REQUIRE(v.size() == 4);
    CHECK(v.at(m.vocabulary.at("review")) == doctest::Approx(idf_rare / norm));
    CHECK(v.at(m.vocabulary.at("review")) == doctest::Approx(0.5762).epsilon(1e-4));
    CHECK(v.at(m.vocabulary.at("systematic")) == doctest::Approx(idf_rare / norm));
    CHECK(v.at(m.vocabulary.at("of")) == doctest::Approx(1.0 / norm));
    CHECK(l2(v) == doctest::Approx(1.0));

    CHECK(tfidf_transform(m, "zebra zebra").empty());
    CHECK(tfidf_transform(m, "systematic review of trials") == v);

    // repeated terms scale by raw count before normalization
    const auto rep = tfidf_transform(m, "drug drug trials");
    const double d = 2 * (std::log(1.5) + 1.0), t = 1.0;
    CHECK(rep.at(m.vocabulary.at("drug")) == doctest::Approx(d / std::sqrt(d * d + t * t)));
}

TEST_CASE("tfidf output is unit norm or zero") {
    testing::SyntheticSpec spec;
    spec.n_records = 200;
    const auto corpus = testing::synthetic_corpus(spec);
    std::vector<std::string> docs;
    for (const auto& r : corpus.records()) docs.push_back(document_text(r));
    const auto m = fit_tfidf(docs, {.lowercase = true, .min_df = 2});
    for (const auto& doc : docs) {
        const double n = l2(tfidf_transform(m, doc));
        CHECK((n == doctest::Approx(1.0) || n == 0.0));
    }
}

TEST_CASE("tfidf model JSON round-trip") {
    const std::vector<std::string> docs{"systematic review of trials", "randomized trials of drug"};
    const auto m = fit_tfidf(docs, {.lowercase = false, .min_df = 1});
    const auto back = TfidfModel::from_json(nlohmann::json::parse(m.to_json().dump()));
    CHECK(back == m);
}

TEST_CASE("standardize") {
    Matrix two(2, 1);
    two.data = {1, 3};
    auto [s, params] = standardize(two);
    CHECK(params.mean[0] == 2);
    CHECK(params.std[0] == 1);
    CHECK(s.data == std::vector<double>{-1, 1});

    Matrix constant(3, 1);
    constant.data = {5, 5, 5};
    CHECK(standardize(constant).first.data == std::vector<double>{0, 0, 0});

    Matrix held(1, 1);
    held.data = {2};
    CHECK(standardize(held, params).first.data == std::vector<double>{0});

    Matrix one(1, 2);
    CHECK_THROWS(standardize(one));
}

TEST_CASE("standardize inverts on non-constant columns") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix m(2 + rng.below(30), 1 + rng.below(6));
        for (auto& v : m.data) v = rng.uniform(-1e3, 1e3);
        auto [s, params] = standardize(m);
        const auto back = unstandardize(s, params);
        for (std::size_t i = 0; i < m.data.size(); ++i)
            CHECK(std::abs(back.data[i] - m.data[i]) <= 1e-9 * std::max(1.0, std::abs(m.data[i])));
    }
}

TEST_CASE("feature presets") {
    testing::SyntheticSpec spec;
    spec.n_records = 40;
    const auto corpus = testing::synthetic_corpus(spec);
    const auto& records = corpus.records();

    CHECK(make_feature_spec(FeaturePreset::TitleAbstract, records).feature_names() ==
          std::vector<std::string>{"review_keyword"});
    CHECK(make_feature_spec(FeaturePreset::References, records).feature_names().size() == 11);
    const auto ta_ref = make_feature_spec(FeaturePreset::TaRef, records);
    CHECK(ta_ref.feature_names().size() == 12);
    CHECK(ta_ref.feature_names()[1] == "ref_count");

    const auto tfidf = make_feature_spec(FeaturePreset::TfidfRef, records);
    REQUIRE(tfidf.tfidf.has_value());
    const auto names = tfidf.feature_names();
    CHECK(names.size() == tfidf.tfidf->size() + 11);
    CHECK(names.front().rfind("tfidf:", 0) == 0);
    const auto m = tfidf.featurize(records);
    CHECK(m.rows == records.size());
    CHECK(m.cols == names.size());

    for (auto p : {"title_abstract", "references", "ta_ref", "tfidf", "tfidf_ref"})
        CHECK(to_string(parse_preset(p)) == p);
    CHECK_THROWS(parse_preset("specter"));
}
