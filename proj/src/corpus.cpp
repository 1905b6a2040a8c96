// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#include "revscope/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "revscope/random.hpp"

namespace revscope {

using nlohmann::json;

std::string_view to_string(Label label) {
    switch (label) {
        case Label::Review: return "review";
        case Label::NonReview: return "non_review";
        case Label::Unlabeled: break;
    }
    return "unlabeled";
}

CorpusError::CorpusError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

Corpus Corpus::from_records(std::vector<ArticleRecord> records) {
    Corpus corpus;
    corpus.records_.reserve(records.size());
    for (auto& r : records) corpus.add(std::move(r));
    return corpus;
}

void Corpus::add(ArticleRecord record) {
    if (!ids_.insert(record.id).second) throw CorpusError("duplicate id \"" + record.id + "\"");
    ++counts_[record.label];
    records_.push_back(std::move(record));
}

std::size_t Corpus::count(Label label) const {
    auto it = counts_.find(label);
    return it == counts_.end() ? 0 : it->second;
}

namespace {

std::int64_t count_field(const json& ref, const char* key) {
    auto it = ref.find(key);
    if (it == ref.end()) throw std::runtime_error(std::string("reference missing \"") + key + "\"");
    if (!it->is_number_integer())
        throw std::runtime_error(std::string("reference field \"") + key + "\" must be an integer");
    return it->get<std::int64_t>();
}

Label parse_label(const json& value) {
    if (value.is_null()) return Label::Unlabeled;
    if (!value.is_string()) throw std::runtime_error("\"label\" must be a string or null");
    const auto& s = value.get_ref<const std::string&>();
    if (s == "review") return Label::Review;
    if (s == "non_review") return Label::NonReview;
    throw std::runtime_error("unknown label \"" + s + "\"");
}

ArticleRecord record_from_json(const json& j) {
    if (!j.is_object()) throw std::runtime_error("record must be a JSON object");

    ArticleRecord r;
    auto id = j.find("id");
    if (id == j.end() || !id->is_string()) throw std::runtime_error("\"id\" must be a string");
    r.id = id->get<std::string>();

    auto title = j.find("title");
    if (title == j.end() || !title->is_string()) throw std::runtime_error("\"title\" must be a string");
    r.title = title->get<std::string>();

    if (auto a = j.find("abstract"); a != j.end() && !a->is_null()) {
        if (!a->is_string()) throw std::runtime_error("\"abstract\" must be a string or null");
        r.abstract = a->get<std::string>();
    }
    if (auto l = j.find("label"); l != j.end()) r.label = parse_label(*l);

    auto refs = j.find("references");
    if (refs == j.end() || !refs->is_array()) throw std::runtime_error("\"references\" must be an array");
    r.references.reserve(refs->size());
    for (const auto& ref : *refs) {
        if (!ref.is_object()) throw std::runtime_error("reference must be a JSON object");
        r.references.push_back({count_field(ref, "supporting"), count_field(ref, "contrasting"),
                                count_field(ref, "mentioning"), count_field(ref, "in_text"),
                                count_field(ref, "citations")});
    }
    return r;
}

}  // namespace

ArticleRecord parse_record(std::string_view json_line) {
    json j;
    try {
        j = json::parse(json_line);
    } catch (const json::parse_error& e) {
        throw CorpusError(std::string("malformed JSON: ") + e.what());
    }
    try {
        return record_from_json(j);
    } catch (const std::runtime_error& e) {
        throw CorpusError(e.what());
    }
}

std::string serialize_record(const ArticleRecord& record) {
    nlohmann::ordered_json j;
    j["id"] = record.id;
    j["title"] = record.title;
    j["abstract"] = record.abstract ? nlohmann::ordered_json(*record.abstract) : nullptr;
    j["label"] = record.label == Label::Unlabeled ? nlohmann::ordered_json(nullptr)
                                                  : nlohmann::ordered_json(to_string(record.label));
    auto refs = nlohmann::ordered_json::array();
    for (const auto& m : record.references) {
        refs.push_back({{"supporting", m.supporting},
                        {"contrasting", m.contrasting},
                        {"mentioning", m.mentioning},
                        {"in_text", m.in_text},
                        {"citations", m.citations}});
    }
    j["references"] = std::move(refs);
    return j.dump();
}

Corpus parse_corpus(std::istream& in) {
    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }))
            continue;
        ArticleRecord record;
        try {
            record = parse_record(line);
        } catch (const CorpusError& e) {
            throw CorpusError(e.what(), line_no);
        }
        if (corpus.contains(record.id))
            throw CorpusError("duplicate id \"" + record.id + "\"", line_no);
        corpus.add(std::move(record));
    }
    return corpus;
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open corpus file " + path);
    return parse_corpus(in);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
    for (const auto& r : corpus.records()) out << serialize_record(r) << '\n';
}

void save_corpus(const std::string& path, const Corpus& corpus) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write corpus file " + path);
    write_corpus(out, corpus);
    if (!out) throw std::ios_base::failure("write failed for " + path);
}

std::vector<std::string> validate_record(const ArticleRecord& record) {
    std::vector<std::string> violations;
    if (record.id.empty()) violations.emplace_back("id: id empty");
    for (std::size_t i = 0; i < record.references.size(); ++i) {
        const auto& m = record.references[i];
        const std::string where = "references[" + std::to_string(i) + "]";
        const std::pair<const char*, std::int64_t> fields[] = {{"supporting", m.supporting},
                                                               {"contrasting", m.contrasting},
                                                               {"mentioning", m.mentioning},
                                                               {"in_text", m.in_text},
                                                               {"citations", m.citations}};
        bool negative = false;
        for (const auto& [name, value] : fields) {
            if (value < 0) {
                violations.push_back(where + "." + name + ": negative count " + std::to_string(value));
                negative = true;
            }
        }
        if (!negative && m.supporting + m.contrasting + m.mentioning > m.in_text) {
            violations.push_back(where + ": classified statements exceed in_text (" +
                                 std::to_string(m.supporting + m.contrasting + m.mentioning) + " > " +
                                 std::to_string(m.in_text) + ")");
        }
    }
    return violations;
}

std::vector<std::string> record_warnings(const ArticleRecord& record) {
    std::vector<std::string> warnings;
    if (record.title.empty()) warnings.emplace_back("title: empty title");
    return warnings;
}

std::map<Label, std::size_t> stratified_quotas(const std::map<Label, std::size_t>& counts,
                                               double test_fraction) {
    std::size_t total = 0;
    for (const auto& [label, n] : counts) total += n;
    const auto target = static_cast<std::size_t>(std::llround(static_cast<double>(total) * test_fraction));

    struct Share {
        Label label;
        std::size_t floor;
        double remainder;
    };
    std::vector<Share> shares;
    std::size_t assigned = 0;
    for (const auto& [label, n] : counts) {
        const double exact = static_cast<double>(n) * test_fraction;
        // Tolerate representation error such as 10 * 0.2 = 1.9999999999999998.
        double fl = std::floor(exact + 1e-9);
        if (fl > exact) fl = std::round(exact);
        const auto f = static_cast<std::size_t>(fl);
        shares.push_back({label, f, std::max(0.0, exact - fl)});
        assigned += f;
    }
    std::stable_sort(shares.begin(), shares.end(),
                     [](const Share& a, const Share& b) { return a.remainder > b.remainder; });

    std::map<Label, std::size_t> quotas;
    for (const auto& s : shares) quotas[s.label] = s.floor;
    for (std::size_t i = 0; assigned < target && i < shares.size(); ++i, ++assigned)
        ++quotas[shares[i].label];
    return quotas;
}

SplitResult stratified_split(const Corpus& corpus, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("test fraction must lie in (0, 1)");
    if (corpus.empty()) throw std::invalid_argument("cannot split an empty corpus");
    if (corpus.count(Label::Unlabeled) > 0)
        throw CorpusError("stratified split requires labels; corpus has " +
                          std::to_string(corpus.count(Label::Unlabeled)) + " unlabeled record(s)");

    const auto quotas = stratified_quotas(corpus.counts(), test_fraction);
    const auto& records = corpus.records();

    std::vector<bool> in_test(records.size(), false);
    Rng rng(seed);
    SplitResult result;
    for (const auto& [label, quota] : quotas) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < records.size(); ++i)
            if (records[i].label == label) members.push_back(i);
        for (std::size_t i = members.size(); i > 1; --i) std::swap(members[i - 1], members[rng.below(i)]);
        for (std::size_t k = 0; k < quota; ++k) in_test[members[k]] = true;

        if (quota == 0)
            result.notes.push_back("label " + std::string(to_string(label)) + ": no records selected for test");
        else if (quota == members.size())
            result.notes.push_back("label " + std::string(to_string(label)) + ": no records remain for train");
    }
    for (std::size_t i = 0; i < records.size(); ++i) (in_test[i] ? result.test : result.train).add(records[i]);
    return result;
}

}  // namespace revscope
