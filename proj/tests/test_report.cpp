#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ettkit/report.hpp"

using namespace ettkit;

namespace {

PeriodReport make_report(const std::string& label, std::size_t users, std::size_t ett,
                         std::size_t anomalous) {
    PeriodReport r;
    r.period_label = label;
    r.detect.n_users = users;
    r.detect.n_ett = ett;
    r.detect.n_anomalous = anomalous;
    return r;
}

TokenizedPost post_of(const std::string& user, std::vector<std::string> tokens,
                      std::vector<std::string> mentions = {},
                      std::vector<std::string> hashtags = {}) {
    TokenizedPost p;
    p.user_id = user;
    p.tokens = std::move(tokens);
    p.mentions = std::move(mentions);
    p.hashtags = std::move(hashtags);
    p.is_null_text = p.tokens.empty();
    return p;
}

}  // namespace

TEST_CASE("summary table reproduces the printed percentages") {
    const auto rows = summary_table({make_report("p0", 52262, 3941, 321)});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].users == 52262);
    CHECK(rows[0].ett_pct_of_users == doctest::Approx(7.54).epsilon(1e-3));
    CHECK(rows[0].au_pct_of_ett.has_value());
    CHECK(*rows[0].au_pct_of_ett == doctest::Approx(8.15).epsilon(1e-3));

    std::ostringstream out;
    write_summary_csv(out, rows);
    CHECK(out.str() == "period,users,ett_pct_of_users,au_pct_of_ett\np0,52262,7.54,8.15\n");
}

TEST_CASE("summary with no extreme tweeters prints n/a") {
    const auto rows = summary_table({make_report("p0", 10, 0, 0)});
    CHECK_FALSE(rows[0].au_pct_of_ett.has_value());
    std::ostringstream out;
    write_summary_csv(out, rows);
    CHECK(out.str().find("p0,10,0.00,n/a") != std::string::npos);
}

TEST_CASE("summary round numbers") {
    const auto rows = summary_table({make_report("p0", 100, 10, 1)});
    CHECK(rows[0].ett_pct_of_users == doctest::Approx(10.0));
    CHECK(*rows[0].au_pct_of_ett == doctest::Approx(10.0));
}

TEST_CASE("null-text cohort selection") {
    PeriodReport report;
    report.period_label = "p0";
    auto add_row = [&](const std::string& id, double narrowness) {
        UserReportRow row;
        row.user_id = id;
        row.narrowness = narrowness;
        row.is_ett = true;
        report.detect.rows.push_back(row);
    };
    add_row("in", 0.9);
    add_row("border", 0.79);  // below the cut regardless of null share
    add_row("wordy", 0.95);   // above the cut but writes real text

    std::vector<TokenizedPost> posts;
    for (int i = 0; i < 9; ++i) posts.push_back(post_of("in", {}, {"m" + std::to_string(i)}));
    posts.push_back(post_of("in", {"hello"}));
    for (int i = 0; i < 10; ++i) posts.push_back(post_of("border", {}, {"x"}));
    for (int i = 0; i < 10; ++i) posts.push_back(post_of("wordy", {"some", "words"}));

    const NullTextRow row = null_text_row(report, posts);
    CHECK(row.users == 1);      // only "in": narrowness 0.9, null share 0.9
    CHECK(row.tweets == 10);
    CHECK(row.mentioned_users == 9);
}

TEST_CASE("null-text row at production magnitudes") {
    PeriodReport report;
    report.period_label = "nov";
    std::vector<TokenizedPost> posts;
    // Four users, 650 tweets each, >80% null text; 2600 tweets spread over
    // 3222 distinct mentioned ids (some tweets mention two users).
    int mention_serial = 0;
    for (int u = 0; u < 4; ++u) {
        UserReportRow row;
        row.user_id = "n" + std::to_string(u);
        row.narrowness = 0.97;
        row.is_ett = true;
        report.detect.rows.push_back(row);
        for (int t = 0; t < 650; ++t) {
            std::vector<std::string> mentions;
            mentions.push_back("m" + std::to_string(mention_serial++));
            if (mention_serial < 3222 && mention_serial % 4 == 1)
                mentions.push_back("m" + std::to_string(3221 - mention_serial / 4));
            const bool null_text = t < 585;  // 90% null
            posts.push_back(null_text ? post_of(row.user_id, {}, std::move(mentions))
                                      : post_of(row.user_id, {"w"}, std::move(mentions)));
        }
    }
    const NullTextRow row = null_text_row(report, posts);
    CHECK(row.users == 4);
    CHECK(row.tweets == 2600);
    CHECK(row.mentioned_users == 3222);
}

TEST_CASE("null-text empty cohort") {
    PeriodReport report;
    const NullTextRow row = null_text_row(report, {});
    CHECK(row.users == 0);
    CHECK(row.tweets == 0);
    CHECK(row.mentioned_users == 0);
}

TEST_CASE("hashtag distributions split by mentioned category") {
    AnomalousGroup group{{"g1", "g2"}, 1};
    const std::unordered_map<std::string, UserCategory> labels = {
        {"g1", UserCategory::anomalous},
        {"g2", UserCategory::anomalous},
        {"e1", UserCategory::ett},
        {"r1", UserCategory::regular}};

    SUBCASE("member mentioning a fellow member") {
        const auto dists = hashtag_distributions(
            group, {post_of("g1", {"x"}, {"g2"}, {"x"})}, labels);
        CHECK(dists[0].counts.at("x") == 1);
        CHECK(dists[0].total == 1);
        CHECK(dists[1].total == 0);
        CHECK(dists[2].total == 0);
    }
    SUBCASE("multi-category mention feeds every audience") {
        const auto dists = hashtag_distributions(
            group, {post_of("g1", {"x", "y"}, {"e1", "r1"}, {"x", "y"})}, labels);
        CHECK(dists[0].total == 0);
        CHECK(dists[1].counts.at("x") == 1);
        CHECK(dists[1].counts.at("y") == 1);
        CHECK(dists[2].counts.at("x") == 1);
        CHECK(dists[2].counts.at("y") == 1);
    }
    SUBCASE("no mentions, no contribution") {
        const auto dists =
            hashtag_distributions(group, {post_of("g1", {"x"}, {}, {"x"})}, labels);
        for (const auto& d : dists) CHECK(d.total == 0);
    }
    SUBCASE("non-members contribute nothing") {
        const auto dists =
            hashtag_distributions(group, {post_of("e1", {"x"}, {"g1"}, {"x"})}, labels);
        for (const auto& d : dists) CHECK(d.total == 0);
    }
    SUBCASE("unlabeled mention target counts as regular") {
        const auto dists =
            hashtag_distributions(group, {post_of("g1", {"x"}, {"ghost"}, {"x"})}, labels);
        CHECK(dists[2].counts.at("x") == 1);
    }
}

TEST_CASE("hashtag distribution totals are conserved") {
    AnomalousGroup group{{"g1"}, 0};
    const std::unordered_map<std::string, UserCategory> labels = {
        {"g1", UserCategory::anomalous}, {"e1", UserCategory::ett}};
    std::vector<TokenizedPost> posts = {
        post_of("g1", {"a", "b"}, {"g1"}, {"a", "b"}),
        post_of("g1", {"a"}, {"e1"}, {"a"}),
        post_of("g1", {"c"}, {"e1", "g1"}, {"c"}),
    };
    const auto dists = hashtag_distributions(group, posts, labels);
    // Post 1: 2 tags to group; post 2: 1 tag to ett; post 3: 1 tag to both.
    CHECK(dists[0].total == 3);
    CHECK(dists[1].total == 2);
    CHECK(dists[2].total == 0);

    for (const auto& d : dists) {
        double sum = 0.0;
        std::int64_t count_sum = 0;
        for (const auto& [tag, count] : d.counts) {
            sum += d.percentage(tag);
            count_sum += count;
        }
        CHECK(count_sum == d.total);
        if (d.total > 0) CHECK(sum == doctest::Approx(1.0));
    }
}

TEST_CASE("pearson correlation") {
    CHECK(*pearson({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0));
    CHECK(*pearson({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
    CHECK(*pearson({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
    CHECK_FALSE(pearson({1, 1, 1}, {1, 2, 3}).has_value());
    CHECK(*pearson({1, 2, 3}, {6, 4, 2}) == doctest::Approx(*pearson({6, 4, 2}, {1, 2, 3})));
    // Scale invariance on an imperfectly correlated pair.
    CHECK(*pearson({1, 4, 2, 8}, {2, 3, 9, 7}) ==
          doctest::Approx(*pearson({1, 4, 2, 8}, {10, 15, 45, 35})).epsilon(1e-12));
}

TEST_CASE("hashtag stats") {
    std::array<HashtagDistribution, 3> dists;
    dists[0].counts = {{"a", 1}, {"b", 2}, {"c", 3}};
    dists[0].total = 6;
    dists[1].counts = {{"a", 2}, {"b", 4}, {"c", 6}};
    dists[1].total = 12;
    dists[2].counts = {{"a", 2}, {"b", 2}, {"c", 2}};
    dists[2].total = 6;

    const HashtagStats stats = hashtag_stats(dists);
    REQUIRE(stats.coef1.has_value());
    CHECK(*stats.coef1 == doctest::Approx(1.0));
    CHECK_FALSE(stats.coef2.has_value());  // zero variance on the regular side
    CHECK(stats.stdev3 == doctest::Approx(0.0));  // uniform percentages
    CHECK(stats.stdev1 > 0.0);
    CHECK(stats.stdev1 == doctest::Approx(stats.stdev2).epsilon(1e-12));  // same shape
}

TEST_CASE("histogram bins") {
    const auto bins = histogram({0.1, 0.15, 0.9}, 0.5);
    REQUIRE(bins.size() == 2);
    CHECK(bins[0].lower == doctest::Approx(0.0));
    CHECK(bins[0].count == 2);
    CHECK(bins[1].lower == doctest::Approx(0.5));
    CHECK(bins[1].count == 1);

    CHECK(histogram({}, 0.5).empty());

    const auto single = histogram({3.3, 3.3, 3.3}, 1.0);
    REQUIRE(single.size() == 1);
    CHECK(single[0].count == 3);

    CHECK_THROWS_AS(histogram({1.0}, 0.0), std::invalid_argument);

    std::size_t total = 0;
    for (const auto& b : histogram({0.0, 0.2, 0.41, 0.99, 1.0}, 0.2)) total += b.count;
    CHECK(total == 5);
}

TEST_CASE("exported percentages recompute from raw counts") {
    const auto rows = summary_table({make_report("p0", 52262, 3941, 321)});
    std::ostringstream out;
    write_summary_csv(out, rows);
    // Parse the two printed percentages back.
    const std::string text = out.str();
    const auto line = text.substr(text.find('\n') + 1);
    std::istringstream fields(line);
    std::string period, users, ett_pct, au_pct;
    std::getline(fields, period, ',');
    std::getline(fields, users, ',');
    std::getline(fields, ett_pct, ',');
    std::getline(fields, au_pct, ',');
    CHECK(std::abs(std::stod(ett_pct) - 100.0 * 3941 / 52262) <= 0.005);
    CHECK(std::abs(std::stod(au_pct) - 100.0 * 321 / 3941) <= 0.005);
}
