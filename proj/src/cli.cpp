// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#include "revscope/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "revscope/corpus.hpp"
#include "revscope/features.hpp"
#include "revscope/fusion.hpp"
#include "revscope/linear.hpp"
#include "revscope/metadata.hpp"
#include "revscope/rank.hpp"
#include "revscope/stats.hpp"

namespace revscope::cli {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ties a CLI flag to a key in the --config file. A flag given on the command
// line wins; otherwise the config value (if any) replaces the default.
struct Binding {
    CLI::App* command;
    CLI::Option* option;
    std::string pointer;
    std::function<void(const nlohmann::json&)> assign;
};

class Options {
public:
    template <typename T>
    CLI::Option* add(CLI::App* cmd, const std::string& flag, T& target, const std::string& config_key,
                     const std::string& help) {
        auto* opt = cmd->add_option(flag, target, help)->capture_default_str();
        bindings_.push_back({cmd, opt, "/" + slashes(config_key), [&target](const nlohmann::json& v) {
                                 target = v.get<T>();
                             }});
        return opt;
    }

    CLI::Option* flag(CLI::App* cmd, const std::string& name, bool& target, const std::string& config_key,
                      const std::string& help) {
        auto* opt = cmd->add_flag(name, target, help);
        bindings_.push_back(
            {cmd, opt, "/" + slashes(config_key), [&target](const nlohmann::json& v) { target = v.get<bool>(); }});
        return opt;
    }

    void apply_config(const std::string& path, CLI::App* active) const {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open config file " + path);
        const auto j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw UsageError("config file " + path + " is not a JSON object");
        for (const auto& b : bindings_) {
            if (b.command != active || b.option->count() > 0) continue;
            const nlohmann::json::json_pointer ptr(b.pointer);
            if (!j.contains(ptr)) continue;
            try {
                b.assign(j.at(ptr));
            } catch (const nlohmann::json::exception&) {
                throw UsageError("config key " + b.pointer + " has the wrong type");
            }
        }
    }

private:
    static std::string slashes(std::string key) {
        for (auto& c : key)
            if (c == '.') c = '/';
        return key;
    }

    std::vector<Binding> bindings_;
};

void require(const std::string& value, const std::string& flag) {
    if (value.empty()) throw UsageError(flag + " is required");
}

void require_input(const std::string& path, const std::string& flag) {
    require(path, flag);
    if (!fs::exists(path)) throw IoError("input file not found: " + path + " (" + flag + ")");
}

Corpus read_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file " + path);
    return parse_corpus(in);
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument(path + " is not valid JSON");
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    if (auto parent = fs::path(path).parent_path(); !parent.empty()) {
        std::error_code ec;
        fs::create_directories(parent, ec);
        if (ec) throw IoError("cannot create directory " + parent.string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

ojson counts_json(const Corpus& corpus) {
    ojson j = ojson::object();
    for (Label l : {Label::Review, Label::NonReview, Label::Unlabeled}) j[std::string(to_string(l))] = corpus.count(l);
    return j;
}

std::vector<Label> labels_of(const std::vector<ArticleRecord>& records) {
    std::vector<Label> out;
    for (const auto& r : records) out.push_back(r.label);
    return out;
}

std::vector<ArticleRecord> labeled_records(const Corpus& corpus) {
    std::vector<ArticleRecord> out;
    for (const auto& r : corpus.records())
        if (r.label != Label::Unlabeled) out.push_back(r);
    return out;
}

std::string fmt_metrics(const Metrics& m) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(1) << "F1 " << m.f1 << "  precision " << m.precision << "  recall "
       << m.recall << "  (tp " << m.tp << ", fp " << m.fp << ", fn " << m.fn << ", tn " << m.tn << ")";
    return os.str();
}

KeywordMatch parse_keyword_match(const std::string& s) {
    if (s == "substring") return KeywordMatch::Substring;
    if (s == "token") return KeywordMatch::Token;
    throw UsageError("--keyword-match must be substring or token");
}

JointAblation parse_ablation(const std::string& s) {
    if (s == "none") return JointAblation::None;
    if (s == "text_only") return JointAblation::TextOnly;
    if (s == "biblio_only") return JointAblation::BiblioOnly;
    throw UsageError("--ablation must be none, text_only or biblio_only");
}

struct Settings {
    std::string config;
    bool json = false;

    std::string corpus;
    std::string embeddings;
    std::string model;
    std::string model_out;
    std::string report_out;
    std::string train_out;
    std::string test_out;
    std::string out;
    std::string ids;

    bool pooled = false;

    double test_fraction = 0.2;
    std::uint64_t split_seed = 42;

    std::string preset = "references";
    TrainConfig trainer;
    std::size_t min_df = 1;
    bool no_lowercase = false;
    std::string keyword_match = "substring";

    std::size_t top = 0;

    JointConfig joint;
    std::string ablation = "none";

    double alpha = 1.0;
    double beta = 1.0;
    std::string engagement = "avg_in_text";
    std::string disagreement = "avg_contrasting";
    bool review_only = false;
    double filter_threshold = -1.0;
    std::size_t top_k = 20;

    std::string base_url = EndpointConfig{}.base_url;
    std::int64_t delay_ms = 1000;
    int max_retries = 3;
    std::int64_t timeout_ms = 30000;
    std::string user_agent = EndpointConfig{}.user_agent;
    std::string mailto;
};

int cmd_validate(const Settings& s, std::ostream& out) {
    require_input(s.corpus, "--corpus");
    const Corpus corpus = read_corpus(s.corpus);

    ojson violations = ojson::array();
    ojson warnings = ojson::array();
    for (const auto& r : corpus.records()) {
        for (const auto& v : validate_record(r)) violations.push_back({{"id", r.id}, {"violation", v}});
        for (const auto& w : record_warnings(r)) warnings.push_back({{"id", r.id}, {"warning", w}});
    }
    const bool ok = violations.empty();

    if (s.json) {
        ojson j;
        j["valid"] = ok;
        j["records"] = corpus.size();
        j["counts"] = counts_json(corpus);
        j["violations"] = violations;
        j["warnings"] = warnings;
        out << j.dump(2) << '\n';
    } else {
        for (const auto& v : violations)
            out << "violation  " << v["id"].get<std::string>() << ": " << v["violation"].get<std::string>() << '\n';
        for (const auto& w : warnings)
            out << "warning    " << w["id"].get<std::string>() << ": " << w["warning"].get<std::string>() << '\n';
        out << (ok ? "ok" : "invalid") << ": " << corpus.size() << " records (" << corpus.count(Label::Review)
            << " review, " << corpus.count(Label::NonReview) << " non_review, " << corpus.count(Label::Unlabeled)
            << " unlabeled), " << violations.size() << " violations, " << warnings.size() << " warnings\n";
    }
    return ok ? kSuccess : kDataError;
}

int cmd_stats(const Settings& s, std::ostream& out) {
    require_input(s.corpus, "--corpus");
    const auto summaries = summarize_by_class(read_corpus(s.corpus), {.include_pooled = s.pooled});
    if (s.json) {
        ojson j = ojson::object();
        for (const auto& [label, summary] : summaries) j[std::string(to_string(label))] = to_json(summary);
        out << j.dump(2) << '\n';
    } else {
        out << format_summary_table(summaries);
    }
    return kSuccess;
}

int cmd_split(const Settings& s, std::ostream& out) {
    require_input(s.corpus, "--corpus");
    require(s.train_out, "--train-out");
    require(s.test_out, "--test-out");
    const auto split = stratified_split(read_corpus(s.corpus), s.test_fraction, s.split_seed);

    std::ostringstream train, test;
    write_corpus(train, split.train);
    write_corpus(test, split.test);
    write_text(s.train_out, train.str());
    write_text(s.test_out, test.str());

    if (s.json) {
        ojson j;
        j["train"] = counts_json(split.train);
        j["test"] = counts_json(split.test);
        j["notes"] = split.notes;
        out << j.dump(2) << '\n';
    } else {
        out << "train: " << split.train.size() << " records (" << split.train.count(Label::Review) << " review)\n"
            << "test:  " << split.test.size() << " records (" << split.test.count(Label::Review) << " review)\n";
        for (const auto& n : split.notes) out << "note: " << n << '\n';
    }
    return kSuccess;
}

int cmd_train(const Settings& s, std::ostream& out) {
    require_input(s.corpus, "--corpus");
    require(s.model_out, "--model-out");
    FeaturePreset preset;
    try {
        preset = parse_preset(s.preset);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const Corpus corpus = read_corpus(s.corpus);
    const auto records = labeled_records(corpus);
    auto spec = make_feature_spec(preset, records, {.lowercase = !s.no_lowercase, .min_df = s.min_df},
                                  parse_keyword_match(s.keyword_match));
    const auto model = train_model(records, std::move(spec), s.trainer);

    std::vector<Label> predicted;
    for (const auto& r : records) predicted.push_back(classify(model, r));
    const auto metrics = evaluate(predicted, labels_of(records));

    write_text(s.model_out, model.to_json().dump(2) + "\n");
    if (s.json) {
        ojson j;
        j["model_out"] = s.model_out;
        j["preset"] = s.preset;
        j["features"] = model.feature_names.size();
        j["train_metrics"] = metrics.to_json();
        out << j.dump(2) << '\n';
    } else {
        out << "trained " << s.preset << " on " << records.size() << " records, " << model.feature_names.size()
            << " features -> " << s.model_out << '\n'
            << "training set: " << fmt_metrics(metrics) << '\n';
    }
    return kSuccess;
}

LinearModel read_model(const std::string& path) {
    try {
        return LinearModel::from_json(read_json(path));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("model file " + path + ": " + e.what());
    }
}

int cmd_eval(const Settings& s, std::ostream& out) {
    require_input(s.model, "--model");
    require_input(s.corpus, "--corpus");
    const auto model = read_model(s.model);
    const auto records = labeled_records(read_corpus(s.corpus));
    std::vector<Label> predicted;
    for (const auto& r : records) predicted.push_back(classify(model, r));
    const auto metrics = evaluate(predicted, labels_of(records));

    if (!s.report_out.empty()) write_text(s.report_out, metrics.to_json().dump(2) + "\n");
    if (s.json)
        out << metrics.to_json().dump(2) << '\n';
    else
        out << to_string(model.features.preset) << ' ' << fmt_metrics(metrics) << '\n';
    return kSuccess;
}

int cmd_report_coefs(const Settings& s, std::ostream& out) {
    require_input(s.model, "--model");
    auto coefs = coefficient_report(read_model(s.model));
    if (s.json) {
        ojson j = ojson::array();
        for (const auto& [name, w] : coefs) j.push_back({{"feature", name}, {"coefficient", w}});
        out << j.dump(2) << '\n';
        return kSuccess;
    }
    std::size_t width = 7;
    for (const auto& [name, w] : coefs) width = std::max(width, name.size());
    auto print = [&](const std::pair<std::string, double>& c) {
        out << std::left << std::setw(static_cast<int>(width)) << c.first << "  " << std::right << std::showpos
            << std::fixed << std::setprecision(4) << c.second << std::noshowpos << '\n';
    };
    if (s.top > 0 && 2 * s.top < coefs.size()) {
        for (std::size_t i = 0; i < s.top; ++i) print(coefs[i]);
        out << "...\n";
        for (std::size_t i = coefs.size() - s.top; i < coefs.size(); ++i) print(coefs[i]);
    } else {
        for (const auto& c : coefs) print(c);
    }
    return kSuccess;
}

int cmd_train_joint(const Settings& s, std::ostream& out) {
    require_input(s.corpus, "--corpus");
    require_input(s.embeddings, "--embeddings");
    require(s.model_out, "--model-out");
    JointConfig config = s.joint;
    config.ablation = parse_ablation(s.ablation);

    const Corpus corpus = read_corpus(s.corpus);
    std::ifstream in(s.embeddings);
    if (!in) throw IoError("cannot open embeddings file " + s.embeddings);
    const auto table = load_embeddings(in);
    const auto records = labeled_records(corpus);
    const auto model = train_joint(records, table, config);

    std::vector<Label> predicted;
    for (const auto& r : records)
        predicted.push_back(joint_predict(model, r, table) >= 0.5 ? Label::Review : Label::NonReview);
    const auto metrics = evaluate(predicted, labels_of(records));

    write_text(s.model_out, model.to_json().dump(2) + "\n");
    if (s.json) {
        ojson j;
        j["model_out"] = s.model_out;
        j["dim"] = model.dim;
        j["text_dim"] = model.text_dim;
        j["train_metrics"] = metrics.to_json();
        out << j.dump(2) << '\n';
    } else {
        out << "trained joint model (d=" << model.dim << ", E=" << model.text_dim << ") on " << records.size()
            << " records -> " << s.model_out << '\n'
            << "training set: " << fmt_metrics(metrics) << '\n';
    }
    return kSuccess;
}

int cmd_rank(const Settings& s, std::ostream& out) {
    require_input(s.corpus, "--corpus");
    RankConfig config;
    config.alpha = s.alpha;
    config.beta = s.beta;
    try {
        config.engagement = parse_engagement_source(s.engagement);
        config.disagreement = parse_disagreement_source(s.disagreement);
        validate_rank_config(config);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (s.review_only) {
        if (s.model.empty()) throw UsageError("--review-only requires --model");
        require_input(s.model, "--model");
        ReviewFilter filter{std::make_shared<LinearModel>(read_model(s.model)), std::nullopt};
        if (s.filter_threshold >= 0.0) filter.threshold = s.filter_threshold;
        config.filter = std::move(filter);
    }
    const auto ranked = rank_corpus(read_corpus(s.corpus), config);

    std::string jsonl;
    for (const auto& a : ranked) jsonl += a.to_json().dump() + "\n";
    if (!s.out.empty()) write_text(s.out, jsonl);
    if (s.json)
        out << jsonl;
    else
        out << format_rank_table(ranked, s.top_k) << ranked.size() << " articles ranked\n";
    return kSuccess;
}

int cmd_fetch_metadata(const Settings& s, std::ostream& out) {
    std::vector<std::string> ids;
    if (!s.ids.empty()) {
        require_input(s.ids, "--ids");
        std::ifstream in(s.ids);
        if (!in) throw IoError("cannot open " + s.ids);
        for (std::string line; std::getline(in, line);) {
            while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
            if (!line.empty()) ids.push_back(line);
        }
    } else if (!s.corpus.empty()) {
        require_input(s.corpus, "--corpus");
        for (const auto& r : read_corpus(s.corpus).records()) ids.push_back(r.id);
    } else {
        throw UsageError("one of --ids or --corpus is required");
    }

    EndpointConfig endpoint;
    endpoint.base_url = s.base_url;
    endpoint.min_delay = std::chrono::milliseconds(s.delay_ms);
    endpoint.max_retries = s.max_retries;
    endpoint.timeout = std::chrono::milliseconds(s.timeout_ms);
    endpoint.user_agent = s.user_agent;
    endpoint.mailto = s.mailto;

    const auto result = fetch_metadata(ids, endpoint);
    ojson j = ojson::object();
    for (const auto& [id, work] : result)
        j[id] = {{"title", work.title},
                 {"abstract", work.abstract ? ojson(*work.abstract) : ojson(nullptr)}};
    if (!s.out.empty()) write_text(s.out, j.dump(2) + "\n");
    if (s.json)
        out << j.dump(2) << '\n';
    else
        out << "resolved " << result.size() << " of " << ids.size() << " ids\n";
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Review-article classification and disagreement ranking over citation metrics", "revscope"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    Settings s;
    Options opts;
    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--config", s.config, "JSON config file; command-line flags take precedence");
        cmd->add_flag("--json", s.json, "Machine-readable JSON on stdout");
    };

    auto* validate = app.add_subcommand("validate", "Parse a corpus and check every record");
    common(validate);
    opts.add(validate, "--corpus", s.corpus, "corpus", "Corpus JSONL");

    auto* stats = app.add_subcommand("stats", "Per-class descriptive statistics");
    common(stats);
    opts.add(stats, "--corpus", s.corpus, "corpus", "Corpus JSONL");
    opts.flag(stats, "--pooled", s.pooled, "stats.pooled", "Also report pooled per-reference ratios");

    auto* split = app.add_subcommand("split", "Stratified train/test split");
    common(split);
    opts.add(split, "--corpus", s.corpus, "corpus", "Corpus JSONL");
    opts.add(split, "--test-fraction", s.test_fraction, "split.test_fraction", "Share of each class held out");
    opts.add(split, "--seed", s.split_seed, "split.seed", "Shuffle seed");
    opts.add(split, "--train-out", s.train_out, "split.train_out", "Output path for the training corpus");
    opts.add(split, "--test-out", s.test_out, "split.test_out", "Output path for the test corpus");

    auto* train = app.add_subcommand("train", "Train a logistic model on a feature preset");
    common(train);
    opts.add(train, "--corpus", s.corpus, "corpus", "Training corpus JSONL");
    opts.add(train, "--preset", s.preset, "train.preset",
             "title_abstract | references | ta_ref | tfidf | tfidf_ref");
    opts.add(train, "--model-out", s.model_out, "train.model_out", "Output model JSON");
    opts.add(train, "--lr", s.trainer.learning_rate, "trainer.learning_rate", "Learning rate");
    opts.add(train, "--epochs", s.trainer.epochs, "trainer.epochs", "Full-batch gradient steps");
    opts.add(train, "--l2", s.trainer.l2_lambda, "trainer.l2_lambda", "L2 penalty on weights");
    opts.add(train, "--seed", s.trainer.seed, "trainer.seed", "Seed recorded in the model");
    opts.add(train, "--threshold", s.trainer.threshold, "trainer.threshold", "Review decision threshold");
    opts.flag(train, "--class-weighting", s.trainer.class_weighting, "trainer.class_weighting",
              "Reweight positives by the class ratio");
    opts.add(train, "--min-df", s.min_df, "tfidf.min_df", "Minimum document frequency for TFIDF tokens");
    opts.flag(train, "--no-lowercase", s.no_lowercase, "tfidf.no_lowercase", "Keep token case for TFIDF");
    opts.add(train, "--keyword-match", s.keyword_match, "train.keyword_match", "substring | token");

    auto* eval = app.add_subcommand("eval", "Precision, recall and F1 of a model on a labeled corpus");
    common(eval);
    opts.add(eval, "--model", s.model, "model", "Model JSON");
    opts.add(eval, "--corpus", s.corpus, "corpus", "Labeled corpus JSONL");
    opts.add(eval, "--report-out", s.report_out, "eval.report_out", "Write the evaluation report JSON here");

    auto* coefs = app.add_subcommand("report-coefs", "List model coefficients, largest first");
    common(coefs);
    opts.add(coefs, "--model", s.model, "model", "Model JSON");
    opts.add(coefs, "--top", s.top, "report.top", "Show only the top and bottom N (0 = all)");

    auto* joint = app.add_subcommand("train-joint", "Jointly train text and bibliometric projections");
    common(joint);
    opts.add(joint, "--corpus", s.corpus, "corpus", "Training corpus JSONL");
    opts.add(joint, "--embeddings", s.embeddings, "embeddings", "Embedding JSONL");
    opts.add(joint, "--model-out", s.model_out, "joint.model_out", "Output joint model JSON");
    opts.add(joint, "--dim", s.joint.dim, "joint.dim", "Projection dimension per side");
    opts.add(joint, "--lr", s.joint.learning_rate, "joint.learning_rate", "Learning rate");
    opts.add(joint, "--epochs", s.joint.epochs, "joint.epochs", "Full-batch gradient steps");
    opts.add(joint, "--seed", s.joint.seed, "joint.seed", "Initialization seed");
    opts.add(joint, "--l2", s.joint.l2_lambda, "joint.l2_lambda", "L2 penalty on all parameters");
    opts.add(joint, "--ablation", s.ablation, "joint.ablation", "none | text_only | biblio_only");

    auto* rank = app.add_subcommand("rank", "Rank articles by substantive disagreement");
    common(rank);
    opts.add(rank, "--corpus", s.corpus, "corpus", "Corpus JSONL");
    opts.add(rank, "--alpha", s.alpha, "rank.alpha", "Engagement exponent");
    opts.add(rank, "--beta", s.beta, "rank.beta", "Disagreement exponent");
    opts.add(rank, "--engagement", s.engagement, "rank.engagement", "avg_in_text | total_in_text");
    opts.add(rank, "--disagreement", s.disagreement, "rank.disagreement", "avg_contrasting | total_contrasting");
    opts.flag(rank, "--review-only", s.review_only, "rank.review_only", "Keep only articles classified as Review");
    opts.add(rank, "--model", s.model, "model", "Model JSON used by --review-only");
    opts.add(rank, "--filter-threshold", s.filter_threshold, "rank.filter_threshold",
             "Probability threshold for --review-only (default: the model's)");
    opts.add(rank, "--top-k", s.top_k, "rank.top_k", "Rows in the printed table");
    opts.add(rank, "--out", s.out, "rank.out", "Write the full ranking as JSONL here");

    auto* fetch = app.add_subcommand("fetch-metadata", "Look up titles and abstracts from a works endpoint");
    common(fetch);
    opts.add(fetch, "--ids", s.ids, "metadata.ids", "File with one id per line");
    opts.add(fetch, "--corpus", s.corpus, "corpus", "Take ids from this corpus instead");
    opts.add(fetch, "--out", s.out, "metadata.out", "Write the result map JSON here");
    opts.add(fetch, "--base-url", s.base_url, "metadata.base_url", "Endpoint base URL");
    opts.add(fetch, "--delay-ms", s.delay_ms, "metadata.delay_ms", "Minimum delay between requests");
    opts.add(fetch, "--max-retries", s.max_retries, "metadata.max_retries", "Retries per id on transient failure");
    opts.add(fetch, "--timeout-ms", s.timeout_ms, "metadata.timeout_ms", "Connect/read timeout");
    opts.add(fetch, "--user-agent", s.user_agent, "metadata.user_agent", "User-Agent header");
    opts.add(fetch, "--mailto", s.mailto, "metadata.mailto", "Contact address appended to the User-Agent");

    CLI::App* active = nullptr;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        active = app.get_subcommands().front();
        if (!s.config.empty()) {
            if (!fs::exists(s.config)) throw IoError("config file not found: " + s.config);
            opts.apply_config(s.config, active);
        }

        const std::string name = active->get_name();
        if (name == "validate") return cmd_validate(s, out);
        if (name == "stats") return cmd_stats(s, out);
        if (name == "split") return cmd_split(s, out);
        if (name == "train") return cmd_train(s, out);
        if (name == "eval") return cmd_eval(s, out);
        if (name == "report-coefs") return cmd_report_coefs(s, out);
        if (name == "train-joint") return cmd_train_joint(s, out);
        if (name == "rank") return cmd_rank(s, out);
        if (name == "fetch-metadata") return cmd_fetch_metadata(s, out);
        throw UsageError("unknown subcommand " + name);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << (active ? active->help() : app.help());
        return kUsageError;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const FetchError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
}

}  // namespace revscope::cli
