#include "ettkit/detect.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ettkit/csv.hpp"

namespace ettkit {

namespace {

struct UserCorpus {
    std::vector<TokenizedPost> posts;
    std::int64_t count = 0;
    std::int64_t distinct_words = 0;
};

double mean_of(const std::vector<double>& xs) {
    double m = 0.0;
    for (double x : xs) m += x;
    return m / static_cast<double>(xs.size());
}

double pop_std(const std::vector<double>& xs, double mean) {
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    return std::sqrt(var / static_cast<double>(xs.size()));
}

}  // namespace

std::vector<std::string> AnomalousReport::ett_users() const {
    std::vector<std::string> out;
    for (const auto& r : rows)
        if (r.is_ett) out.push_back(r.user_id);
    return out;
}

std::vector<std::string> AnomalousReport::anomalous_users() const {
    std::vector<std::string> out;
    for (const auto& r : rows)
        if (r.is_anomalous) out.push_back(r.user_id);
    return out;
}

AnomalousReport detect_anomalous(const std::vector<TokenizedPost>& posts,
                                 const DetectConfig& config) {
    if (config.period_start >= config.period_end)
        throw std::invalid_argument("detect_anomalous: empty period");
    if (config.delta < 0 || config.lambda < 0)
        throw std::invalid_argument("detect_anomalous: delta and lambda must be >= 0");
    if (config.matrix_budget <= 0)
        throw std::invalid_argument("detect_anomalous: matrix budget must be positive");

    AnomalousReport report;

    // Step 1: restrict to the period and group by user. std::map keeps rows
    // sorted by user_id, which pins the output order.
    std::map<std::string, UserCorpus> by_user;
    for (const TokenizedPost& p : posts) {
        if (p.timestamp < config.period_start || p.timestamp >= config.period_end) continue;
        UserCorpus& uc = by_user[p.user_id];
        uc.posts.push_back(p);
        ++uc.count;
    }
    if (by_user.empty()) {
        report.notice = "no posts in period";
        return report;
    }

    std::vector<double> counts;
    counts.reserve(by_user.size());
    for (auto& [id, uc] : by_user) {
        std::unordered_set<std::string> words;
        for (const TokenizedPost& p : uc.posts)
            words.insert(p.tokens.begin(), p.tokens.end());
        uc.distinct_words = static_cast<std::int64_t>(words.size());
        counts.push_back(static_cast<double>(uc.count));
        report.max_tweet_count = std::max(report.max_tweet_count, uc.count);
        report.max_distinct_words = std::max(report.max_distinct_words, uc.distinct_words);
    }

    const double count_mean = mean_of(counts);
    const double ett_threshold = count_mean + config.delta * pop_std(counts, count_mean);
    report.ett_threshold = ett_threshold;

    report.rows.reserve(by_user.size());
    std::vector<const UserCorpus*> ett_corpora;
    std::vector<std::size_t> ett_row_index;
    for (auto& [id, uc] : by_user) {
        UserReportRow row;
        row.user_id = id;
        row.tweet_count = uc.count;
        row.distinct_words = uc.distinct_words;
        row.is_ett = static_cast<double>(uc.count) >= ett_threshold;
        if (row.is_ett) {
            ett_corpora.push_back(&uc);
            ett_row_index.push_back(report.rows.size());
        }
        report.rows.push_back(std::move(row));
    }
    report.n_users = report.rows.size();
    report.n_ett = ett_corpora.size();

    if (ett_corpora.empty()) {
        report.notice = "no extreme tweeters in period";
        return report;
    }

    // Step 2: one measure for the whole run, chosen by the worst-case matrix
    // size N*D against the cell budget.
    const bool use_exact = report.max_tweet_count * report.max_distinct_words <=
                           config.matrix_budget;
    report.method = use_exact ? NarrownessMethod::exact : NarrownessMethod::randomized;

    std::vector<double> scores(ett_corpora.size(), 0.0);
    std::exception_ptr scoring_error;  // exceptions may not cross the omp region
#ifdef _OPENMP
    const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ett_corpora.size()); ++i) {
        try {
            const UserCorpus& uc = *ett_corpora[static_cast<std::size_t>(i)];
            double score = 1.0;  // q = 0: no self-written content, maximal narrowness
            if (uc.distinct_words > 0) {
                const TextMatrix tm = TextMatrix::build(uc.posts);
                score = use_exact
                            ? exact_narrowness(tm, config.energy_threshold)
                            : rm_narrowness(tm, config.rm,
                                            user_seed(tm.user_id(), config.seed));
            }
            scores[static_cast<std::size_t>(i)] = score;
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!scoring_error) scoring_error = std::current_exception();
        }
    }
    if (scoring_error) std::rethrow_exception(scoring_error);

    // Step 3: threshold the extreme tweeters' scores.
    const double score_mean = mean_of(scores);
    const double score_threshold = score_mean + config.lambda * pop_std(scores, score_mean);
    report.narrowness_threshold = score_threshold;

    for (std::size_t i = 0; i < ett_row_index.size(); ++i) {
        UserReportRow& row = report.rows[ett_row_index[i]];
        row.narrowness = scores[i];
        row.is_anomalous = scores[i] >= score_threshold;
        if (row.is_anomalous) ++report.n_anomalous;
    }
    if (report.n_anomalous == 0) report.notice = "no anomalous users in period";
    return report;
}

void write_report_csv(std::ostream& out, const AnomalousReport& report) {
    out << "user_id,tweets,distinct_words,narrowness,is_ett,is_anomalous\n";
    for (const UserReportRow& r : report.rows) {
        out << csv::join_row({r.user_id, csv::number(r.tweet_count),
                              csv::number(r.distinct_words),
                              r.narrowness ? csv::number(*r.narrowness) : "",
                              r.is_ett ? "1" : "0", r.is_anomalous ? "1" : "0"});
    }
}

void write_report_summary(std::ostream& out, const AnomalousReport& report) {
    out << "users=" << report.n_users << "\n";
    out << "ett_users=" << report.n_ett << "\n";
    out << "anomalous_users=" << report.n_anomalous << "\n";
    out << "method=" << (report.method == NarrownessMethod::exact ? "EM" : "RM") << "\n";
    out << "ett_threshold="
        << (report.ett_threshold ? csv::number(*report.ett_threshold) : "n/a") << "\n";
    out << "narrowness_threshold="
        << (report.narrowness_threshold ? csv::number(*report.narrowness_threshold) : "n/a")
        << "\n";
    out << "max_tweet_count=" << report.max_tweet_count << "\n";
    out << "max_distinct_words=" << report.max_distinct_words << "\n";
    if (!report.notice.empty()) out << "notice=" << report.notice << "\n";
}

}  // namespace ettkit
