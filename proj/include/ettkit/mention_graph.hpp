#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "ettkit/post.hpp"

namespace ettkit {

enum class UserCategory { regular, ett, anomalous };

const char* category_name(UserCategory c);

// Undirected simple graph over user ids: an edge (u,v) exists iff u mentioned
// v or v mentioned u within the period. No self-loops, no parallel edges.
// Nodes are kept sorted by id so exports and decompositions are deterministic.
class MentionGraph {
public:
    std::int64_t period_start = 0;
    std::int64_t period_end = 0;

    std::size_t size() const { return ids_.size(); }
    std::size_t edge_count() const;
    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(int v) const { return ids_[static_cast<std::size_t>(v)]; }
    UserCategory category(int v) const { return categories_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    int index_of(const std::string& id) const;  // -1 when absent
    bool has_edge(int u, int v) const;

    // Builder: nodes registered first, then edges; finish() sorts adjacency.
    int add_node(const std::string& id, UserCategory category);
    void add_edge(int u, int v);
    void finish();

    // Induced subgraph on the given node indices (labels carried over);
    // mapping from new index to old is returned through parent_index.
    MentionGraph induced(const std::vector<int>& nodes, std::vector<int>* parent_index) const;

private:
    std::vector<std::string> ids_;
    std::vector<UserCategory> categories_;
    std::vector<std::vector<int>> adj_;
    std::unordered_map<std::string, int> index_;
};

// Labels say which posting users are anomalous / extreme tweeters; mentioned
// users missing from labels enter as regular nodes. Isolated labeled users are
// kept as degree-0 nodes.
MentionGraph build_mention_graph(const std::vector<TokenizedPost>& posts,
                                 const std::unordered_map<std::string, UserCategory>& labels,
                                 std::int64_t period_start, std::int64_t period_end);

enum class PatternType { type1 = 1, type2 = 2, type3 = 3 };

struct PatternSubgraph {
    PatternType type = PatternType::type1;
    MentionGraph graph;              // induced on the pattern's node set
    std::vector<int> parent_index;   // subgraph node -> parent node
};

// Largest subgraph of g satisfying the pattern: Type-I = anomalous nodes only;
// Type-II adds extreme tweeters adjacent to an anomalous node; Type-III adds
// all first neighbors of anomalous nodes. Edges are induced.
PatternSubgraph extract_pattern(const MentionGraph& g, PatternType type);

// Predicate behind the patterns' subgraph-closure property: every node of the
// candidate (given as parent indices) is admissible for the pattern relative
// to the parent graph. Any subgraph of a pattern subgraph passes.
bool pattern_admits(const MentionGraph& parent, const std::vector<int>& nodes,
                    PatternType type);

// Edge list (u,v per line) and node-label CSV exports.
void write_edge_list(std::ostream& out, const MentionGraph& g);
void write_node_labels_csv(std::ostream& out, const MentionGraph& g);

// Reads an edge list (two whitespace- or comma-separated ids per line) plus a
// label CSV (user_id,label with label in {anomalous, ett, regular}).
MentionGraph read_graph_files(std::istream& edges, std::istream& labels);

}  // namespace ettkit
