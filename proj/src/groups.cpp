#include "ettkit/groups.hpp"

#include <algorithm>
#include <stdexcept>

namespace ettkit {

std::optional<AnomalousGroup> anomalous_group(const PatternSubgraph& g1) {
    if (g1.type != PatternType::type1)
        throw std::invalid_argument("anomalous_group: expects a Type-I subgraph");
    const CorenessMap cores = core_decomposition(g1.graph);
    if (cores.degeneracy == 0) return std::nullopt;

    AnomalousGroup group;
    group.k1 = cores.degeneracy;
    for (int v = 0; v < static_cast<int>(g1.graph.size()); ++v)
        if (cores.coreness[static_cast<std::size_t>(v)] >= cores.degeneracy)
            group.members.push_back(g1.graph.id(v));
    std::sort(group.members.begin(), group.members.end());
    return group;
}

int group_coreness(const AnomalousGroup& group, const MentionGraph& gx,
                   const CorenessMap& cores) {
    if (group.members.empty())
        throw std::invalid_argument("group_coreness: empty group");
    int k = -1;
    for (const std::string& member : group.members) {
        const int v = gx.index_of(member);
        if (v < 0)
            throw std::runtime_error("group_coreness: member " + member +
                                     " missing from pattern subgraph");
        const int c = cores.coreness[static_cast<std::size_t>(v)];
        k = k < 0 ? c : std::min(k, c);
    }
    return k;
}

namespace {

// Per-non-member counts of adjacent group members within the core.
std::vector<int> member_adjacency(const MentionGraph& core,
                                  const std::vector<std::string>& members,
                                  std::vector<int>* non_members) {
    std::vector<bool> is_member(core.size(), false);
    for (const std::string& m : members) {
        const int v = core.index_of(m);
        if (v < 0) throw std::runtime_error("cnr/dr: member " + m + " missing from core");
        is_member[static_cast<std::size_t>(v)] = true;
    }
    std::vector<int> counts;
    for (int v = 0; v < static_cast<int>(core.size()); ++v) {
        if (is_member[static_cast<std::size_t>(v)]) continue;
        int n_adjacent = 0;
        for (int nbr : core.neighbors(v))
            if (is_member[static_cast<std::size_t>(nbr)]) ++n_adjacent;
        counts.push_back(n_adjacent);
        if (non_members) non_members->push_back(v);
    }
    return counts;
}

}  // namespace

std::optional<double> cnr(const MentionGraph& core, const std::vector<std::string>& members) {
    if (members.empty()) throw std::invalid_argument("cnr: empty group");
    const std::vector<int> counts = member_adjacency(core, members, nullptr);
    if (counts.empty()) return std::nullopt;  // no other nodes in the core
    double total = 0.0;
    for (int c : counts) total += c;
    return total / (static_cast<double>(members.size()) * static_cast<double>(counts.size()));
}

std::optional<double> dr(const MentionGraph& core, const std::vector<std::string>& members,
                         double r) {
    if (members.empty()) throw std::invalid_argument("dr: empty group");
    const std::vector<int> counts = member_adjacency(core, members, nullptr);
    if (counts.empty()) return std::nullopt;
    const double bar = r * static_cast<double>(members.size());
    std::size_t reached = 0;
    for (int c : counts)
        if (static_cast<double>(c) >= bar) ++reached;
    return static_cast<double>(reached) / static_cast<double>(members.size());
}

std::optional<GroupMetrics> group_metrics(const MentionGraph& g) {
    const PatternSubgraph g1 = extract_pattern(g, PatternType::type1);
    auto group = anomalous_group(g1);
    if (!group) return std::nullopt;

    const PatternSubgraph g2 = extract_pattern(g, PatternType::type2);
    const PatternSubgraph g3 = extract_pattern(g, PatternType::type3);
    const CorenessMap cores2 = core_decomposition(g2.graph);
    const CorenessMap cores3 = core_decomposition(g3.graph);

    GroupMetrics metrics;
    metrics.group = *group;
    metrics.k2 = group_coreness(*group, g2.graph, cores2);
    metrics.k3 = group_coreness(*group, g3.graph, cores3);

    const CoreSubgraph core2 = max_kcore(g2.graph, cores2, metrics.k2);
    metrics.cnr = cnr(core2.graph, group->members);
    if (metrics.cnr) metrics.dr = dr(core2.graph, group->members, *metrics.cnr);
    return metrics;
}

}  // namespace ettkit
