// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#include "revscope/stats.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "revscope/features.hpp"

namespace revscope {

double median(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty list");
    std::vector<double> v(values.begin(), values.end());
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + mid);
    return (lower + upper) / 2.0;
}

namespace {

struct Accumulator {
    std::vector<double> ref_count, total_in_text, total_citations;
    double sum_supporting = 0, sum_contrasting = 0, sum_mentioning = 0;
    double pooled_refs = 0, pooled_supporting = 0, pooled_contrasting = 0, pooled_mentioning = 0;
    std::size_t n_with_refs = 0, n_zero = 0;
};

}  // namespace

std::map<Label, ClassSummary> summarize_by_class(const Corpus& corpus, const StatsOptions& options) {
    std::map<Label, Accumulator> acc;
    for (const auto& record : corpus.records()) {
        if (record.label == Label::Unlabeled) continue;
        auto& a = acc[record.label];
        const auto f = extract_biblio_features(record);
        a.ref_count.push_back(f.ref_count);
        a.total_in_text.push_back(f.total_in_text);
        a.total_citations.push_back(f.total_citations);
        if (f.ref_count == 0) {
            ++a.n_zero;
            continue;
        }
        ++a.n_with_refs;
        a.sum_supporting += f.avg_supporting;
        a.sum_contrasting += f.avg_contrasting;
        a.sum_mentioning += f.avg_mentioning;
        a.pooled_refs += f.ref_count;
        a.pooled_supporting += f.total_supporting;
        a.pooled_contrasting += f.total_contrasting;
        a.pooled_mentioning += f.total_mentioning;
    }
    if (acc.empty()) throw std::invalid_argument("summarize_by_class: corpus has no labeled records");

    std::map<Label, ClassSummary> out;
    for (const auto& [label, a] : acc) {
        ClassSummary s;
        s.label = label;
        s.n_articles = a.ref_count.size();
        s.median_ref_count = median(a.ref_count);
        s.median_total_in_text = median(a.total_in_text);
        s.median_total_citations = median(a.total_citations);
        s.n_zero_reference = a.n_zero;
        if (a.n_with_refs > 0) {
            const auto n = static_cast<double>(a.n_with_refs);
            s.mean_avg_supporting = a.sum_supporting / n;
            s.mean_avg_contrasting = a.sum_contrasting / n;
            s.mean_avg_mentioning = a.sum_mentioning / n;
        }
        if (options.include_pooled) {
            PooledRatios p;
            if (a.pooled_refs > 0) {
                p.supporting = a.pooled_supporting / a.pooled_refs;
                p.contrasting = a.pooled_contrasting / a.pooled_refs;
                p.mentioning = a.pooled_mentioning / a.pooled_refs;
            }
            s.pooled = p;
        }
        out.emplace(label, s);
    }
    return out;
}

nlohmann::ordered_json to_json(const ClassSummary& s) {
    nlohmann::ordered_json j;
    j["label"] = to_string(s.label);
    j["n_articles"] = s.n_articles;
    j["median_ref_count"] = s.median_ref_count;
    j["median_total_in_text"] = s.median_total_in_text;
    j["median_total_citations"] = s.median_total_citations;
    j["mean_avg_supporting"] = s.mean_avg_supporting;
    j["mean_avg_contrasting"] = s.mean_avg_contrasting;
    j["mean_avg_mentioning"] = s.mean_avg_mentioning;
    j["n_zero_reference"] = s.n_zero_reference;
    if (s.pooled) {
        j["pooled"] = {{"supporting", s.pooled->supporting},
                       {"contrasting", s.pooled->contrasting},
                       {"mentioning", s.pooled->mentioning}};
    }
    return j;
}

std::string format_summary_table(const std::map<Label, ClassSummary>& summaries) {
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    auto num = [](double v) {
        std::ostringstream os;
        os << std::fixed << std::setprecision(2) << v;
        return os.str();
    };
    const bool pooled = std::any_of(summaries.begin(), summaries.end(),
                                    [](const auto& kv) { return kv.second.pooled.has_value(); });

    std::vector<std::string> header{"metric"};
    for (const auto& [label, s] : summaries) header.emplace_back(to_string(label));

    auto add = [&](std::string name, auto get) {
        std::vector<std::string> cells;
        for (const auto& [label, s] : summaries) cells.push_back(get(s));
        rows.emplace_back(std::move(name), std::move(cells));
    };
    add("articles", [](const ClassSummary& s) { return std::to_string(s.n_articles); });
    add("zero-reference articles", [](const ClassSummary& s) { return std::to_string(s.n_zero_reference); });
    add("median references", [&](const ClassSummary& s) { return num(s.median_ref_count); });
    add("median in-text citations", [&](const ClassSummary& s) { return num(s.median_total_in_text); });
    add("median citations", [&](const ClassSummary& s) { return num(s.median_total_citations); });
    add("mean supporting / ref", [&](const ClassSummary& s) { return num(s.mean_avg_supporting); });
    add("mean contrasting / ref", [&](const ClassSummary& s) { return num(s.mean_avg_contrasting); });
    add("mean mentioning / ref", [&](const ClassSummary& s) { return num(s.mean_avg_mentioning); });
    if (pooled) {
        add("pooled supporting / ref",
            [&](const ClassSummary& s) { return s.pooled ? num(s.pooled->supporting) : std::string("-"); });
        add("pooled contrasting / ref",
            [&](const ClassSummary& s) { return s.pooled ? num(s.pooled->contrasting) : std::string("-"); });
        add("pooled mentioning / ref",
            [&](const ClassSummary& s) { return s.pooled ? num(s.pooled->mentioning) : std::string("-"); });
    }

    std::size_t name_width = header[0].size();
    std::vector<std::size_t> widths;
    for (std::size_t i = 1; i < header.size(); ++i) widths.push_back(header[i].size());
    for (const auto& [name, cells] : rows) {
        name_width = std::max(name_width, name.size());
        for (std::size_t i = 0; i < cells.size(); ++i) widths[i] = std::max(widths[i], cells[i].size());
    }

    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(name_width)) << header[0];
    for (std::size_t i = 1; i < header.size(); ++i)
        os << "  " << std::right << std::setw(static_cast<int>(widths[i - 1])) << header[i];
    os << '\n';
    for (const auto& [name, cells] : rows) {
        os << std::left << std::setw(static_cast<int>(name_width)) << name;
        for (std::size_t i = 0; i < cells.size(); ++i)
            os << "  " << std::right << std::setw(static_cast<int>(widths[i])) << cells[i];
        os << '\n';
    }
    return os.str();
}

}  // namespace revscope
