#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "ettkit/ett.hpp"

using namespace ettkit;

namespace {

// Activity fixture straight from per-user count rows.
ActivityMatrix activity_from(std::vector<std::vector<std::int64_t>> rows) {
    ActivityMatrix m;
    const std::size_t n = rows.empty() ? 0 : rows[0].size();
    m.partition = TimePartition{0, static_cast<std::int64_t>(n), 1};
    for (std::size_t u = 0; u < rows.size(); ++u) {
        char name[8];
        std::snprintf(name, sizeof(name), "u%03zu", u);
        m.users.push_back(name);
        m.counts.push_back(std::move(rows[u]));
    }
    return m;
}

}  // namespace

TEST_CASE("mai_threshold arithmetic") {
    CHECK(mai_threshold({1, 1, 1, 1, 16}, 1.5) == doctest::Approx(13.0).epsilon(1e-12));
    CHECK(mai_threshold({3, 9, 4, 41}, 0.0) == doctest::Approx(14.25));
    CHECK(mai_threshold({5}, 2.0) == doctest::Approx(5.0));
    CHECK_THROWS_AS(mai_threshold({}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(mai_threshold({1, 2}, -0.5), std::invalid_argument);
}

TEST_CASE("classify_ett flags the heavy user") {
    const auto activity = activity_from({{1}, {1}, {1}, {1}, {16}});
    const EttClassification cls = classify_ett(activity, 1.5);
    REQUIRE(cls.thresholds.size() == 1);
    CHECK(*cls.thresholds[0] == doctest::Approx(13.0));
    for (std::size_t u = 0; u < 5; ++u) CHECK(cls.flags[u][0] == (u == 4));
}

TEST_CASE("classify_ett degenerate variance flags everyone") {
    const auto activity = activity_from({{7}, {7}, {7}});
    const EttClassification cls = classify_ett(activity, 2.5);
    for (std::size_t u = 0; u < 3; ++u) CHECK(cls.flags[u][0]);
}

TEST_CASE("classify_ett huge delta flags nobody") {
    const auto activity = activity_from({{1}, {2}, {9}, {30}});
    const EttClassification cls = classify_ett(activity, 1e6);
    for (std::size_t u = 0; u < 4; ++u) CHECK_FALSE(cls.flags[u][0]);
}

TEST_CASE("classify_ett rejects negative delta") {
    const auto activity = activity_from({{1}, {2}});
    CHECK_THROWS_AS(classify_ett(activity, -0.1), std::invalid_argument);
}

TEST_CASE("classify_ett ignores non-posters per MAI") {
    // Second MAI population is {u1}; u0 posted nothing there.
    const auto activity = activity_from({{4, 0}, {1, 2}});
    const EttClassification cls = classify_ett(activity, 0.0);
    CHECK(cls.flags[0][0]);
    CHECK_FALSE(cls.flags[0][1]);
    CHECK(cls.flags[1][1]);
}

TEST_CASE("classify_ett leaves silent MAIs unthresholded") {
    const auto activity = activity_from({{3, 0}, {5, 0}});
    const EttClassification cls = classify_ett(activity, 1.0);
    CHECK(cls.thresholds[0].has_value());
    CHECK_FALSE(cls.thresholds[1].has_value());
    CHECK_FALSE(cls.flags[0][1]);
    CHECK_FALSE(cls.flags[1][1]);
}

TEST_CASE("ett_intervals runs") {
    const EttIntervalSummary s = ett_intervals({true, true, false, true});
    REQUIRE(s.runs.size() == 2);
    CHECK(s.runs[0].first == 0);
    CHECK(s.runs[0].length == 2);
    CHECK(s.runs[1].first == 3);
    CHECK(s.runs[1].length == 1);
    CHECK(s.letti == 2);
    CHECK(s.tetti == 3);
    CHECK(s.is_ett());
}

TEST_CASE("ett_intervals all false") {
    const EttIntervalSummary s = ett_intervals({false, false, false});
    CHECK(s.runs.empty());
    CHECK(s.letti == 0);
    CHECK(s.tetti == 0);
    CHECK_FALSE(s.is_ett());
}

TEST_CASE("ett_intervals long run inside a longer window") {
    std::vector<bool> flags(54, false);
    for (std::size_t i = 0; i < 20; ++i) flags[i] = true;
    const EttIntervalSummary s = ett_intervals(flags);
    CHECK(s.letti == 20);
    CHECK(s.tetti == 20);
}

TEST_CASE("flagged sets shrink as delta grows") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> count(0, 30);
    std::vector<std::vector<std::int64_t>> rows(40, std::vector<std::int64_t>(6));
    for (auto& row : rows)
        for (auto& c : row) c = count(rng);
    const auto activity = activity_from(std::move(rows));

    const double deltas[] = {0.0, 0.5, 1.0, 1.5, 3.0};
    EttClassification prev = classify_ett(activity, deltas[0]);
    for (std::size_t d = 1; d < std::size(deltas); ++d) {
        const EttClassification next = classify_ett(activity, deltas[d]);
        for (std::size_t u = 0; u < activity.users.size(); ++u)
            for (std::size_t i = 0; i < 6; ++i)
                if (next.flags[u][i]) CHECK(prev.flags[u][i]);  // subset
        prev = next;
    }
}

TEST_CASE("letti <= tetti <= n") {
    std::mt19937_64 rng(3);
    std::bernoulli_distribution flip(0.4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<bool> flags(17);
        for (std::size_t i = 0; i < flags.size(); ++i) flags[i] = flip(rng);
        const EttIntervalSummary s = ett_intervals(flags);
        CHECK(s.letti <= s.tetti);
        CHECK(s.tetti <= flags.size());
        std::size_t total = 0;
        for (const EttRun& run : s.runs) total += run.length;
        CHECK(total == s.tetti);
    }
}

TEST_CASE("adding a quiet user reshapes thresholds consistently") {
    auto base_rows = std::vector<std::vector<std::int64_t>>{{2}, {2}, {2}, {14}};
    const auto base = classify_ett(activity_from(base_rows), 1.0);

    base_rows.push_back({1});
    const auto grown = classify_ett(activity_from(base_rows), 1.0);

    // Thresholds recomputed from the new population, flags re-derived.
    std::vector<std::int64_t> population = {2, 2, 2, 14, 1};
    CHECK(*grown.thresholds[0] == doctest::Approx(mai_threshold(population, 1.0)));
    for (std::size_t u = 0; u < grown.users.size(); ++u)
        CHECK(grown.flags[u][0] ==
              (static_cast<double>(base_rows[u][0]) >= *grown.thresholds[0]));
    CHECK(base.flags[3][0]);
    CHECK(grown.flags[4][0] == false);
}

TEST_CASE("ett csv export") {
    const auto activity = activity_from({{9, 0}, {1, 3}});
    const EttClassification cls = classify_ett(activity, 0.5);
    std::ostringstream out;
    write_ett_csv(out, cls);
    const std::string text = out.str();
    CHECK(text.find("user_id,tetti,letti,flags") == 0);
    CHECK(text.find("u000,1,1,10") != std::string::npos);
}
