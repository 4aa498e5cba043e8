#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ettkit/corpus.hpp"
#include "ettkit/post.hpp"

namespace ettkit {

// Per-user, per-MAI post tallies. A user appears iff it posted at least once
// inside the observation window.
struct ActivityMatrix {
    TimePartition partition;
    std::vector<std::string> users;              // sorted
    std::vector<std::vector<std::int64_t>> counts;  // users x intervals
};

template <typename P>
ActivityMatrix activity_matrix(const Partitioned<P>& parts);

// u is an extreme tweeter in MAI i when its count reaches
// mean + delta * sqrt(population variance) of that MAI's posters. thresholds[i]
// is absent when no user posted in MAI i.
struct EttClassification {
    double delta = 0.0;
    std::vector<std::optional<double>> thresholds;
    std::vector<std::string> users;
    std::vector<std::vector<bool>> flags;
};

// mean + delta * sqrt(population variance) over users with >= 1 post in the
// MAI. Throws std::invalid_argument on an empty population.
double mai_threshold(const std::vector<std::int64_t>& counts_in_mai, double delta);

EttClassification classify_ett(const ActivityMatrix& activity, double delta);

struct EttRun {
    std::size_t first = 0;  // 0-based MAI index
    std::size_t length = 0;
};

struct EttIntervalSummary {
    std::vector<EttRun> runs;   // maximal runs of consecutive flagged MAIs
    std::size_t letti = 0;      // longest run
    std::size_t tetti = 0;      // total flagged MAIs
    bool is_ett() const { return tetti > 0; }
};

EttIntervalSummary ett_intervals(const std::vector<bool>& flags);

// CSV: user_id,tetti,letti,flags (one '0'/'1' per MAI), header included.
void write_ett_csv(std::ostream& out, const EttClassification& cls);

template <typename P>
ActivityMatrix activity_matrix(const Partitioned<P>& parts) {
    ActivityMatrix m;
    m.partition = parts.partition;
    const std::size_t n = parts.buckets.size();

    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) {
        for (const P& p : parts.buckets[i]) {
            auto [it, inserted] = index.try_emplace(p.user_id, m.users.size());
            if (inserted) {
                m.users.push_back(p.user_id);
                m.counts.emplace_back(n, 0);
            }
            ++m.counts[it->second][i];
        }
    }

    std::vector<std::size_t> order(m.users.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return m.users[a] < m.users[b]; });
    ActivityMatrix sorted;
    sorted.partition = m.partition;
    sorted.users.reserve(order.size());
    sorted.counts.reserve(order.size());
    for (std::size_t i : order) {
        sorted.users.push_back(std::move(m.users[i]));
        sorted.counts.push_back(std::move(m.counts[i]));
    }
    return sorted;
}

}  // namespace ettkit
