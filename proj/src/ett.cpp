#include "ettkit/ett.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ettkit/csv.hpp"

namespace ettkit {

double mai_threshold(const std::vector<std::int64_t>& counts_in_mai, double delta) {
    if (counts_in_mai.empty())
        throw std::invalid_argument("mai_threshold: empty population");
    if (delta < 0) throw std::invalid_argument("mai_threshold: delta must be >= 0");

    double mean = 0.0;
    for (std::int64_t c : counts_in_mai) mean += static_cast<double>(c);
    mean /= static_cast<double>(counts_in_mai.size());

    double var = 0.0;
    for (std::int64_t c : counts_in_mai) {
        const double d = static_cast<double>(c) - mean;
        var += d * d;
    }
    var /= static_cast<double>(counts_in_mai.size());

    return mean + delta * std::sqrt(var);
}

EttClassification classify_ett(const ActivityMatrix& activity, double delta) {
    if (delta < 0) throw std::invalid_argument("classify_ett: delta must be >= 0");
    const std::size_t n_users = activity.users.size();
    const std::size_t n_mais = activity.partition.intervals();

    EttClassification cls;
    cls.delta = delta;
    cls.users = activity.users;
    cls.thresholds.resize(n_mais);
    cls.flags.assign(n_users, std::vector<bool>(n_mais, false));

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n_mais); ++i) {
        std::vector<std::int64_t> posters;
        for (std::size_t u = 0; u < n_users; ++u)
            if (activity.counts[u][i] >= 1) posters.push_back(activity.counts[u][i]);
        if (posters.empty()) continue;  // silent MAI: threshold stays absent
        cls.thresholds[i] = mai_threshold(posters, delta);
    }

    // Rows are flagged per user so no two threads touch the same bit vector.
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t u = 0; u < static_cast<std::ptrdiff_t>(n_users); ++u) {
        for (std::size_t i = 0; i < n_mais; ++i) {
            if (!cls.thresholds[i]) continue;
            const std::int64_t c = activity.counts[u][i];
            if (c >= 1 && static_cast<double>(c) >= *cls.thresholds[i])
                cls.flags[u][i] = true;
        }
    }
    return cls;
}

EttIntervalSummary ett_intervals(const std::vector<bool>& flags) {
    EttIntervalSummary s;
    std::size_t i = 0;
    while (i < flags.size()) {
        if (!flags[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < flags.size() && flags[j]) ++j;
        s.runs.push_back(EttRun{i, j - i});
        s.tetti += j - i;
        s.letti = std::max(s.letti, j - i);
        i = j;
    }
    return s;
}

void write_ett_csv(std::ostream& out, const EttClassification& cls) {
    out << "user_id,tetti,letti,flags\n";
    for (std::size_t u = 0; u < cls.users.size(); ++u) {
        const EttIntervalSummary s = ett_intervals(cls.flags[u]);
        std::string bits(cls.flags[u].size(), '0');
        for (std::size_t i = 0; i < cls.flags[u].size(); ++i)
            if (cls.flags[u][i]) bits[i] = '1';
        out << csv::join_row({cls.users[u], csv::number(static_cast<std::int64_t>(s.tetti)),
                              csv::number(static_cast<std::int64_t>(s.letti)), bits});
    }
}

}  // namespace ettkit
