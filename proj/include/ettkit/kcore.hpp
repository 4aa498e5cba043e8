#pragma once

#include <iosfwd>
#include <vector>

#include "ettkit/mention_graph.hpp"

namespace ettkit {

// coreness[v] = largest k such that v survives in the k-core.
struct CorenessMap {
    std::vector<int> coreness;
    int degeneracy = 0;
};

// Serial reference: bucket-queue minimum-degree peeling (linear time).
CorenessMap core_decomposition_serial(const MentionGraph& g);

// OpenMP kernel: round-synchronous peeling; strips all vertices below the
// current level simultaneously until the level saturates. Identical output to
// the serial reference (coreness is order-independent).
CorenessMap core_decomposition_parallel(const MentionGraph& g);

// Default entry point; picks the parallel kernel when built with OpenMP.
CorenessMap core_decomposition(const MentionGraph& g);

struct CoreSubgraph {
    MentionGraph graph;
    std::vector<int> parent_index;  // core node -> node in the decomposed graph
};

// The unique maximal subgraph of minimum degree >= k (possibly empty or
// disconnected); k = 0 returns the whole graph.
CoreSubgraph max_kcore(const MentionGraph& g, const CorenessMap& cores, int k);

struct CcdfPoint {
    int k = 0;
    double fraction = 0.0;  // share of the subset with coreness >= k
};

// Points for k = 0..degeneracy over the given subset of node indices; empty
// subset yields an empty series.
std::vector<CcdfPoint> coreness_ccdf(const CorenessMap& cores,
                                     const std::vector<int>& subset);

void write_coreness_csv(std::ostream& out, const MentionGraph& g, const CorenessMap& cores);
void write_ccdf_csv(std::ostream& out, const std::vector<CcdfPoint>& series);

}  // namespace ettkit
