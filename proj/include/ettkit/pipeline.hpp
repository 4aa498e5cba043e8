#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ettkit/detect.hpp"
#include "ettkit/groups.hpp"
#include "ettkit/kcore.hpp"
#include "ettkit/mention_graph.hpp"
#include "ettkit/post.hpp"
#include "ettkit/report.hpp"

namespace ettkit {

// Detection plus the network analyses of one period, as the CLI subcommands
// consume them.
struct PeriodAnalysis {
    std::string period_label;
    std::int64_t period_start = 0;
    std::int64_t period_end = 0;
    AnomalousReport detect;
    std::vector<TokenizedPost> posts;  // the period's posts
    MentionGraph graph;
    std::optional<GroupMetrics> metrics;
};

std::string period_label(std::int64_t start, std::int64_t end);

// Category labels for graph construction, from a detection report.
std::unordered_map<std::string, UserCategory> labels_from_report(const AnomalousReport& r);

// Splits [start, end) into n consecutive near-equal periods (the last absorbs
// the remainder) and runs detection and group analysis on each.
std::vector<PeriodAnalysis> analyze_periods(const std::vector<TokenizedPost>& posts,
                                            const DetectConfig& base_config,
                                            std::int64_t window_start,
                                            std::int64_t window_end, int n_periods);

}  // namespace ettkit
