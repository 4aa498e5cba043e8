#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ettkit/kcore.hpp"
#include "ettkit/mention_graph.hpp"

namespace ettkit {

// Node set of the maximal k1-core of the Type-I subgraph, k1 = degeneracy.
struct AnomalousGroup {
    std::vector<std::string> members;  // sorted user ids
    int k1 = 0;
};

// Absent when the Type-I subgraph is empty or edgeless (degeneracy 0): no
// group forms without anomalous-to-anomalous interaction.
std::optional<AnomalousGroup> anomalous_group(const PatternSubgraph& g1);

// min over members of their coreness in gx; throws when a member is missing
// from gx (Type-II/III node sets always contain every anomalous node).
int group_coreness(const AnomalousGroup& group, const MentionGraph& gx,
                   const CorenessMap& cores);

// Common neighbor ratio over a core subgraph: mean fraction of group members
// adjacent to a non-member. Absent when there are no non-members (0/0).
std::optional<double> cnr(const MentionGraph& core, const std::vector<std::string>& members);

// Diversity ratio: non-members meeting the mean connection level r*|A|,
// normalized by group size.
std::optional<double> dr(const MentionGraph& core, const std::vector<std::string>& members,
                         double r);

struct GroupMetrics {
    AnomalousGroup group;
    int k2 = 0;
    int k3 = 0;
    std::optional<double> cnr;  // computed in the Type-II core
    std::optional<double> dr;
};

// Full Def.-3/Def.-4 evaluation over the three pattern subgraphs of g.
// CNR/DR are taken in the maximal k2-core of the Type-II subgraph. Returns
// nullopt when no group forms.
std::optional<GroupMetrics> group_metrics(const MentionGraph& g);

}  // namespace ettkit
