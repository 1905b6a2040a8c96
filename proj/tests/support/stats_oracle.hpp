// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

// Straightforward recomputation of per-class summaries straight from the
// reference tallies: full sort for medians, plain loops for means.

#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "revscope/corpus.hpp"

namespace revscope::testing {

struct OracleSummary {
    std::size_t n_articles = 0;
    double median_ref_count = 0, median_total_in_text = 0, median_total_citations = 0;
    double mean_avg_supporting = 0, mean_avg_contrasting = 0, mean_avg_mentioning = 0;
    std::size_t n_zero_reference = 0;
};

inline double sorted_median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

inline std::map<Label, OracleSummary> oracle_summaries(const Corpus& corpus) {
    std::map<Label, OracleSummary> out;
    for (Label label : {Label::Review, Label::NonReview}) {
        std::vector<double> refs, in_text, cites, sup, con, men;
        std::size_t zero = 0;
        for (const auto& r : corpus.records()) {
            if (r.label != label) continue;
            double it = 0, ci = 0, s = 0, c = 0, m = 0;
            for (const auto& ref : r.references) {
                it += static_cast<double>(ref.in_text);
                ci += static_cast<double>(ref.citations);
                s += static_cast<double>(ref.supporting);
                c += static_cast<double>(ref.contrasting);
                m += static_cast<double>(ref.mentioning);
            }
            refs.push_back(static_cast<double>(r.references.size()));
            in_text.push_back(it);
            cites.push_back(ci);
            if (r.references.empty()) {
                ++zero;
            } else {
                const auto n = static_cast<double>(r.references.size());
                sup.push_back(s / n);
                con.push_back(c / n);
                men.push_back(m / n);
            }
        }
        if (refs.empty()) continue;
        auto mean = [](const std::vector<double>& v) {
            if (v.empty()) return 0.0;
            double t = 0;
            for (double x : v) t += x;
            return t / static_cast<double>(v.size());
        };
        OracleSummary o;
        o.n_articles = refs.size();
        o.median_ref_count = sorted_median(refs);
        o.median_total_in_text = sorted_median(in_text);
        o.median_total_citations = sorted_median(cites);
        o.mean_avg_supporting = mean(sup);
        o.mean_avg_contrasting = mean(con);
        o.mean_avg_mentioning = mean(men);
        o.n_zero_reference = zero;
        out[label] = o;
    }
    return out;
}

/// Random corpus with some zero-reference and unlabeled records mixed in.
template <typename RngT>
Corpus random_stats_corpus(RngT& rng, std::size_t max_records) {
    Corpus c;
    const std::size_t n = 1 + rng.below(max_records);
    for (std::size_t i = 0; i < n; ++i) {
        ArticleRecord r;
        r.id = "c" + std::to_string(i);
        const auto u = rng.below(10);
        r.label = u < 3 ? Label::Review : (u < 9 ? Label::NonReview : Label::Unlabeled);
        const std::size_t refs = rng.below(5) == 0 ? 0 : rng.below(120);
        for (std::size_t k = 0; k < refs; ++k) {
            ReferenceMetrics m;
            m.in_text = static_cast<std::int64_t>(rng.below(12));
            m.supporting = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m.in_text) + 1));
            m.contrasting = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m.in_text - m.supporting) + 1));
            m.mentioning = m.in_text - m.supporting - m.contrasting;
            m.citations = static_cast<std::int64_t>(rng.below(40));
            r.references.push_back(m);
        }
        c.add(r);
    }
    return c;
}

}  // namespace revscope::testing
