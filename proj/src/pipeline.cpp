#include "ettkit/pipeline.hpp"

#include <stdexcept>

namespace ettkit {

std::string period_label(std::int64_t start, std::int64_t end) {
    return std::to_string(start) + "-" + std::to_string(end);
}

std::unordered_map<std::string, UserCategory> labels_from_report(const AnomalousReport& r) {
    std::unordered_map<std::string, UserCategory> labels;
    labels.reserve(r.rows.size());
    for (const UserReportRow& row : r.rows) {
        UserCategory cat = UserCategory::regular;
        if (row.is_anomalous)
            cat = UserCategory::anomalous;
        else if (row.is_ett)
            cat = UserCategory::ett;
        labels.emplace(row.user_id, cat);
    }
    return labels;
}

std::vector<PeriodAnalysis> analyze_periods(const std::vector<TokenizedPost>& posts,
                                            const DetectConfig& base_config,
                                            std::int64_t window_start,
                                            std::int64_t window_end, int n_periods) {
    if (n_periods < 1) throw std::invalid_argument("analyze_periods: need >= 1 period");
    if (window_start >= window_end)
        throw std::invalid_argument("analyze_periods: empty window");

    const std::int64_t span = window_end - window_start;
    const std::int64_t step = span / n_periods;
    if (step < 1) throw std::invalid_argument("analyze_periods: more periods than seconds");

    std::vector<PeriodAnalysis> out;
    out.reserve(static_cast<std::size_t>(n_periods));
    for (int i = 0; i < n_periods; ++i) {
        PeriodAnalysis pa;
        pa.period_start = window_start + static_cast<std::int64_t>(i) * step;
        pa.period_end = i == n_periods - 1 ? window_end : pa.period_start + step;
        pa.period_label = period_label(pa.period_start, pa.period_end);

        DetectConfig cfg = base_config;
        cfg.period_start = pa.period_start;
        cfg.period_end = pa.period_end;
        pa.detect = detect_anomalous(posts, cfg);

        for (const TokenizedPost& p : posts)
            if (p.timestamp >= pa.period_start && p.timestamp < pa.period_end)
                pa.posts.push_back(p);

        pa.graph = build_mention_graph(pa.posts, labels_from_report(pa.detect),
                                       pa.period_start, pa.period_end);
        pa.metrics = group_metrics(pa.graph);
        out.push_back(std::move(pa));
    }
    return out;
}

}  // namespace ettkit
