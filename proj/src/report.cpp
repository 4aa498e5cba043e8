#include "ettkit/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "ettkit/csv.hpp"

namespace ettkit {

std::vector<SummaryRow> summary_table(const std::vector<PeriodReport>& reports) {
    std::vector<SummaryRow> rows;
    rows.reserve(reports.size());
    for (const PeriodReport& r : reports) {
        SummaryRow row;
        row.period_label = r.period_label;
        row.users = r.detect.n_users;
        row.ett_pct_of_users =
            row.users == 0 ? 0.0
                           : 100.0 * static_cast<double>(r.detect.n_ett) /
                                 static_cast<double>(row.users);
        if (r.detect.n_ett > 0)
            row.au_pct_of_ett = 100.0 * static_cast<double>(r.detect.n_anomalous) /
                                static_cast<double>(r.detect.n_ett);
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "period,users,ett_pct_of_users,au_pct_of_ett\n";
    for (const SummaryRow& r : rows)
        out << csv::join_row({r.period_label, csv::number(static_cast<std::int64_t>(r.users)),
                              csv::fixed(r.ett_pct_of_users, 2),
                              r.au_pct_of_ett ? csv::fixed(*r.au_pct_of_ett, 2) : "n/a"});
}

NullTextRow null_text_row(const PeriodReport& report,
                          const std::vector<TokenizedPost>& posts,
                          double narrowness_cut, double null_fraction_cut) {
    NullTextRow row;
    row.period_label = report.period_label;

    std::unordered_set<std::string> candidates;
    for (const UserReportRow& r : report.detect.rows)
        if (r.narrowness && *r.narrowness > narrowness_cut) candidates.insert(r.user_id);
    if (candidates.empty()) return row;

    struct Tally {
        std::int64_t tweets = 0;
        std::int64_t null_text = 0;
        std::vector<const TokenizedPost*> posts;
    };
    std::unordered_map<std::string, Tally> tallies;
    for (const TokenizedPost& p : posts) {
        if (!candidates.contains(p.user_id)) continue;
        Tally& t = tallies[p.user_id];
        ++t.tweets;
        if (p.is_null_text) ++t.null_text;
        t.posts.push_back(&p);
    }

    std::unordered_set<std::string> mentioned;
    for (const auto& [id, t] : tallies) {
        if (t.tweets == 0) continue;
        const double null_fraction =
            static_cast<double>(t.null_text) / static_cast<double>(t.tweets);
        if (null_fraction <= null_fraction_cut) continue;
        ++row.users;
        row.tweets += t.tweets;
        for (const TokenizedPost* p : t.posts)
            mentioned.insert(p->mentions.begin(), p->mentions.end());
    }
    row.mentioned_users = mentioned.size();
    return row;
}

void write_null_text_csv(std::ostream& out, const std::vector<NullTextRow>& rows) {
    out << "period,users,tweets,mentioned_users\n";
    for (const NullTextRow& r : rows)
        out << csv::join_row({r.period_label, csv::number(static_cast<std::int64_t>(r.users)),
                              csv::number(r.tweets),
                              csv::number(static_cast<std::int64_t>(r.mentioned_users))});
}

double HashtagDistribution::percentage(const std::string& tag) const {
    if (total == 0) return 0.0;
    auto it = counts.find(tag);
    return it == counts.end()
               ? 0.0
               : static_cast<double>(it->second) / static_cast<double>(total);
}

std::array<HashtagDistribution, 3> hashtag_distributions(
    const AnomalousGroup& group, const std::vector<TokenizedPost>& posts,
    const std::unordered_map<std::string, UserCategory>& labels) {
    std::array<HashtagDistribution, 3> dists;
    dists[0].audience = HashtagAudience::group;
    dists[1].audience = HashtagAudience::ett;
    dists[2].audience = HashtagAudience::regular;

    std::unordered_set<std::string> members(group.members.begin(), group.members.end());

    for (const TokenizedPost& p : posts) {
        if (!members.contains(p.user_id)) continue;
        if (p.mentions.empty() || p.hashtags.empty()) continue;

        bool to_group = false, to_ett = false, to_regular = false;
        for (const std::string& mentioned : p.mentions) {
            if (members.contains(mentioned)) {
                to_group = true;
                continue;
            }
            auto it = labels.find(mentioned);
            const UserCategory cat = it == labels.end() ? UserCategory::regular : it->second;
            // Anomalous users outside the group count as extreme tweeters.
            if (cat == UserCategory::regular)
                to_regular = true;
            else
                to_ett = true;
        }

        for (const std::string& tag : p.hashtags) {
            if (to_group) {
                ++dists[0].counts[tag];
                ++dists[0].total;
            }
            if (to_ett) {
                ++dists[1].counts[tag];
                ++dists[1].total;
            }
            if (to_regular) {
                ++dists[2].counts[tag];
                ++dists[2].total;
            }
        }
    }
    return dists;
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("pearson: vectors must be same non-zero length");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

HashtagStats hashtag_stats(const std::array<HashtagDistribution, 3>& dists) {
    std::set<std::string> tags;
    for (const auto& d : dists)
        for (const auto& [tag, count] : d.counts) tags.insert(tag);

    std::array<std::vector<double>, 3> counts;
    std::array<std::vector<double>, 3> percentages;
    for (std::size_t i = 0; i < 3; ++i) {
        counts[i].reserve(tags.size());
        percentages[i].reserve(tags.size());
        for (const std::string& tag : tags) {
            auto it = dists[i].counts.find(tag);
            counts[i].push_back(
                it == dists[i].counts.end() ? 0.0 : static_cast<double>(it->second));
            percentages[i].push_back(dists[i].percentage(tag));
        }
    }

    auto pop_stdev = [](const std::vector<double>& xs) {
        if (xs.empty()) return 0.0;
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        return std::sqrt(var / static_cast<double>(xs.size()));
    };

    HashtagStats stats;
    if (!tags.empty()) {
        stats.coef1 = pearson(counts[0], counts[1]);
        stats.coef2 = pearson(counts[0], counts[2]);
        stats.stdev1 = pop_stdev(percentages[0]);
        stats.stdev2 = pop_stdev(percentages[1]);
        stats.stdev3 = pop_stdev(percentages[2]);
    }
    return stats;
}

void write_hashtag_stats_csv(std::ostream& out,
                             const std::vector<std::pair<std::string, HashtagStats>>& rows) {
    out << "period,coef1,coef2,stdev1,stdev2,stdev3\n";
    for (const auto& [label, s] : rows)
        out << csv::join_row({label, s.coef1 ? csv::number(*s.coef1) : "n/a",
                              s.coef2 ? csv::number(*s.coef2) : "n/a",
                              csv::number(s.stdev1), csv::number(s.stdev2),
                              csv::number(s.stdev3)});
}

std::vector<HistogramBin> histogram(const std::vector<double>& values, double bin_width) {
    if (bin_width <= 0.0) throw std::invalid_argument("histogram: bin width must be positive");
    std::vector<HistogramBin> bins;
    if (values.empty()) return bins;

    std::int64_t lo = 0, hi = 0;
    bool first = true;
    std::unordered_map<std::int64_t, std::size_t> counts;
    for (double v : values) {
        const std::int64_t b = static_cast<std::int64_t>(std::floor(v / bin_width));
        ++counts[b];
        if (first) {
            lo = hi = b;
            first = false;
        } else {
            lo = std::min(lo, b);
            hi = std::max(hi, b);
        }
    }
    for (std::int64_t b = lo; b <= hi; ++b) {
        auto it = counts.find(b);
        bins.push_back({static_cast<double>(b) * bin_width,
                        it == counts.end() ? 0 : it->second});
    }
    return bins;
}

void write_histogram_csv(std::ostream& out, const std::vector<HistogramBin>& bins) {
    out << "bin,count\n";
    for (const HistogramBin& b : bins)
        out << csv::join_row(
            {csv::number(b.lower), csv::number(static_cast<std::int64_t>(b.count))});
}

}  // namespace ettkit
