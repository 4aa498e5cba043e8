#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ettkit/narrowness.hpp"
#include "ettkit/post.hpp"

namespace ettkit {

struct DetectConfig {
    std::int64_t period_start = 0;  // I = [period_start, period_end)
    std::int64_t period_end = 0;
    double delta = 1.5;
    double lambda = 1.0;
    double energy_threshold = 0.8;                  // d, exact method
    std::int64_t matrix_budget = 10'000'000;        // M = 2,000 x 5,000 cells
    RandomizedParams rm;
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = library default; 1 = serial reference path
};

struct UserReportRow {
    std::string user_id;
    std::int64_t tweet_count = 0;
    std::int64_t distinct_words = 0;
    std::optional<double> narrowness;  // scored for extreme tweeters only
    bool is_ett = false;
    bool is_anomalous = false;
};

struct AnomalousReport {
    std::vector<UserReportRow> rows;  // sorted by user_id
    NarrownessMethod method = NarrownessMethod::exact;
    std::optional<double> ett_threshold;         // absent when no posts in I
    std::optional<double> narrowness_threshold;  // absent when no extreme tweeters
    std::size_t n_users = 0;
    std::size_t n_ett = 0;
    std::size_t n_anomalous = 0;
    std::int64_t max_tweet_count = 0;     // N
    std::int64_t max_distinct_words = 0;  // D
    std::string notice;  // set when the run is degenerate (no posts, no ETT)

    std::vector<std::string> ett_users() const;
    std::vector<std::string> anomalous_users() const;
};

// Three-step anomalous-user detection: volume thresholding over the period,
// narrowness scoring with the exact measure when N*D fits the matrix budget
// (randomized otherwise), then narrowness thresholding over the extreme
// tweeters' scores. Deterministic for fixed inputs, config and seed.
AnomalousReport detect_anomalous(const std::vector<TokenizedPost>& posts,
                                 const DetectConfig& config);

// CSV with one row per posting user, header included; columns
// user_id,tweets,distinct_words,narrowness,is_ett,is_anomalous.
void write_report_csv(std::ostream& out, const AnomalousReport& report);

// Human-readable run summary (thresholds, method, population sizes).
void write_report_summary(std::ostream& out, const AnomalousReport& report);

}  // namespace ettkit
