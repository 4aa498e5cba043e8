#include "ettkit/kcore.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>

#include "ettkit/csv.hpp"

namespace ettkit {

CorenessMap core_decomposition_serial(const MentionGraph& g) {
    const int n = static_cast<int>(g.size());
    CorenessMap out;
    out.coreness.assign(static_cast<std::size_t>(n), 0);
    if (n == 0) return out;

    // Bucket peeling: vertices sorted by current degree, min first. Ties fall
    // to the lower node index, i.e. ascending user id.
    std::vector<int> degree(static_cast<std::size_t>(n));
    int max_degree = 0;
    for (int v = 0; v < n; ++v) {
        degree[static_cast<std::size_t>(v)] = g.degree(v);
        max_degree = std::max(max_degree, g.degree(v));
    }

    std::vector<int> bucket_start(static_cast<std::size_t>(max_degree) + 2, 0);
    for (int v = 0; v < n; ++v) ++bucket_start[static_cast<std::size_t>(degree[v]) + 1];
    for (std::size_t d = 1; d < bucket_start.size(); ++d) bucket_start[d] += bucket_start[d - 1];

    std::vector<int> order(static_cast<std::size_t>(n));
    std::vector<int> position(static_cast<std::size_t>(n));
    {
        std::vector<int> cursor(bucket_start.begin(), bucket_start.end() - 1);
        for (int v = 0; v < n; ++v) {
            const int d = degree[static_cast<std::size_t>(v)];
            position[static_cast<std::size_t>(v)] = cursor[static_cast<std::size_t>(d)];
            order[static_cast<std::size_t>(position[v])] = v;
            ++cursor[static_cast<std::size_t>(d)];
        }
    }

    int level = 0;
    for (int i = 0; i < n; ++i) {
        const int v = order[static_cast<std::size_t>(i)];
        level = std::max(level, degree[static_cast<std::size_t>(v)]);
        out.coreness[static_cast<std::size_t>(v)] = level;
        for (int nbr : g.neighbors(v)) {
            const int dn = degree[static_cast<std::size_t>(nbr)];
            if (dn <= degree[static_cast<std::size_t>(v)]) continue;
            // Swap nbr with the first vertex of its bucket, then shrink it.
            const int pos = position[static_cast<std::size_t>(nbr)];
            const int first = bucket_start[static_cast<std::size_t>(dn)];
            const int other = order[static_cast<std::size_t>(first)];
            if (other != nbr) {
                std::swap(order[static_cast<std::size_t>(pos)],
                          order[static_cast<std::size_t>(first)]);
                position[static_cast<std::size_t>(nbr)] = first;
                position[static_cast<std::size_t>(other)] = pos;
            }
            ++bucket_start[static_cast<std::size_t>(dn)];
            --degree[static_cast<std::size_t>(nbr)];
        }
    }
    out.degeneracy = level;
    return out;
}

CorenessMap core_decomposition_parallel(const MentionGraph& g) {
    const int n = static_cast<int>(g.size());
    CorenessMap out;
    out.coreness.assign(static_cast<std::size_t>(n), 0);
    if (n == 0) return out;

    std::vector<std::atomic<int>> degree(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        degree[static_cast<std::size_t>(v)].store(g.degree(v), std::memory_order_relaxed);
    std::vector<char> removed(static_cast<std::size_t>(n), 0);

    int remaining = n;
    int level = 0;
    while (remaining > 0) {
        std::vector<int> frontier;
        for (int v = 0; v < n; ++v)
            if (!removed[static_cast<std::size_t>(v)] &&
                degree[static_cast<std::size_t>(v)].load(std::memory_order_relaxed) <= level)
                frontier.push_back(v);

        if (frontier.empty()) {
            ++level;
            continue;
        }

        while (!frontier.empty()) {
            for (int v : frontier) {
                removed[static_cast<std::size_t>(v)] = 1;
                out.coreness[static_cast<std::size_t>(v)] = level;
            }
            remaining -= static_cast<int>(frontier.size());

            std::vector<int> next;
#pragma omp parallel
            {
                std::vector<int> local;
#pragma omp for schedule(dynamic, 64) nowait
                for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(frontier.size());
                     ++i) {
                    for (int nbr : g.neighbors(frontier[static_cast<std::size_t>(i)])) {
                        if (removed[static_cast<std::size_t>(nbr)]) continue;
                        const int before = degree[static_cast<std::size_t>(nbr)].fetch_sub(
                            1, std::memory_order_relaxed);
                        // Exactly one decrement crosses the level boundary.
                        if (before == level + 1) local.push_back(nbr);
                    }
                }
#pragma omp critical
                next.insert(next.end(), local.begin(), local.end());
            }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            frontier = std::move(next);
        }
        ++level;
    }

    for (int c : out.coreness) out.degeneracy = std::max(out.degeneracy, c);
    return out;
}

CorenessMap core_decomposition(const MentionGraph& g) {
#ifdef _OPENMP
    return core_decomposition_parallel(g);
#else
    return core_decomposition_serial(g);
#endif
}

CoreSubgraph max_kcore(const MentionGraph& g, const CorenessMap& cores, int k) {
    if (k < 0) throw std::invalid_argument("max_kcore: k must be >= 0");
    std::vector<int> nodes;
    for (int v = 0; v < static_cast<int>(g.size()); ++v)
        if (cores.coreness[static_cast<std::size_t>(v)] >= k) nodes.push_back(v);
    CoreSubgraph core;
    core.graph = g.induced(nodes, &core.parent_index);
    return core;
}

std::vector<CcdfPoint> coreness_ccdf(const CorenessMap& cores,
                                     const std::vector<int>& subset) {
    std::vector<CcdfPoint> series;
    if (subset.empty()) return series;

    std::vector<std::size_t> at_least(static_cast<std::size_t>(cores.degeneracy) + 2, 0);
    for (int v : subset) {
        const int c = cores.coreness[static_cast<std::size_t>(v)];
        ++at_least[static_cast<std::size_t>(c)];
    }
    for (int k = cores.degeneracy - 1; k >= 0; --k)
        at_least[static_cast<std::size_t>(k)] += at_least[static_cast<std::size_t>(k) + 1];

    series.reserve(static_cast<std::size_t>(cores.degeneracy) + 1);
    for (int k = 0; k <= cores.degeneracy; ++k)
        series.push_back({k, static_cast<double>(at_least[static_cast<std::size_t>(k)]) /
                                 static_cast<double>(subset.size())});
    return series;
}

void write_coreness_csv(std::ostream& out, const MentionGraph& g, const CorenessMap& cores) {
    out << "user_id,coreness\n";
    for (int v = 0; v < static_cast<int>(g.size()); ++v)
        out << csv::join_row(
            {g.id(v), csv::number(static_cast<std::int64_t>(cores.coreness[v]))});
}

void write_ccdf_csv(std::ostream& out, const std::vector<CcdfPoint>& series) {
    out << "k,fraction\n";
    for (const CcdfPoint& p : series)
        out << csv::join_row({csv::number(static_cast<std::int64_t>(p.k)),
                              csv::number(p.fraction)});
}

}  // namespace ettkit
