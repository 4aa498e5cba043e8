#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ettkit/detect.hpp"
#include "ettkit/groups.hpp"
#include "ettkit/mention_graph.hpp"
#include "ettkit/post.hpp"

namespace ettkit {

struct PeriodReport {
    std::string period_label;
    AnomalousReport detect;
};

struct SummaryRow {
    std::string period_label;
    std::size_t users = 0;
    double ett_pct_of_users = 0.0;            // full precision; export rounds
    std::optional<double> au_pct_of_ett;      // absent when no extreme tweeters
};

// Per-period population shares of extreme tweeters and anomalous users.
std::vector<SummaryRow> summary_table(const std::vector<PeriodReport>& reports);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

struct NullTextRow {
    std::string period_label;
    std::size_t users = 0;              // size of the selected cohort
    std::int64_t tweets = 0;            // total tweets by the cohort
    std::size_t mentioned_users = 0;    // distinct users mentioned by the cohort
};

// Cohort = scored users with narrowness > narrowness_cut whose null-text share
// exceeds null_fraction_cut. Posts must be the same period's tokenized posts.
NullTextRow null_text_row(const PeriodReport& report,
                          const std::vector<TokenizedPost>& posts,
                          double narrowness_cut = 0.8, double null_fraction_cut = 0.8);
void write_null_text_csv(std::ostream& out, const std::vector<NullTextRow>& rows);

enum class HashtagAudience { group, ett, regular };

struct HashtagDistribution {
    HashtagAudience audience = HashtagAudience::group;
    std::map<std::string, std::int64_t> counts;
    std::int64_t total = 0;

    double percentage(const std::string& tag) const;
};

// Hashtags of group members' posts, split by who the post mentions: fellow
// members (group), extreme tweeters (ett) or regular users. A post mentioning
// several categories contributes its hashtags to each of them.
std::array<HashtagDistribution, 3> hashtag_distributions(
    const AnomalousGroup& group, const std::vector<TokenizedPost>& posts,
    const std::unordered_map<std::string, UserCategory>& labels);

struct HashtagStats {
    std::optional<double> coef1;  // correlation(group counts, ett counts)
    std::optional<double> coef2;  // correlation(group counts, regular counts)
    double stdev1 = 0.0;          // stdev of group percentage vector
    double stdev2 = 0.0;          // ett
    double stdev3 = 0.0;          // regular
};

// Pearson correlations on raw counts and population stdevs on percentage
// vectors, aligned over the union of hashtags (missing = 0). Correlation of a
// zero-variance vector is absent.
HashtagStats hashtag_stats(const std::array<HashtagDistribution, 3>& dists);
void write_hashtag_stats_csv(std::ostream& out,
                             const std::vector<std::pair<std::string, HashtagStats>>& rows);

struct HistogramBin {
    double lower = 0.0;  // left-closed bin [lower, lower + width)
    std::size_t count = 0;
};

std::vector<HistogramBin> histogram(const std::vector<double>& values, double bin_width);
void write_histogram_csv(std::ostream& out, const std::vector<HistogramBin>& bins);

// Pearson correlation; absent when either vector has zero variance.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ettkit
