#include "ettkit/mention_graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ettkit/csv.hpp"

namespace ettkit {

const char* category_name(UserCategory c) {
    switch (c) {
        case UserCategory::anomalous: return "anomalous";
        case UserCategory::ett: return "ett";
        case UserCategory::regular: return "regular";
    }
    return "regular";
}

std::size_t MentionGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& nbrs : adj_) twice += nbrs.size();
    return twice / 2;
}

int MentionGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

bool MentionGraph::has_edge(int u, int v) const {
    const auto& nbrs = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

int MentionGraph::add_node(const std::string& id, UserCategory category) {
    auto [it, inserted] = index_.try_emplace(id, static_cast<int>(ids_.size()));
    if (inserted) {
        ids_.push_back(id);
        categories_.push_back(category);
        adj_.emplace_back();
    }
    return it->second;
}

void MentionGraph::add_edge(int u, int v) {
    if (u == v) return;  // self-mentions carry no edge
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
}

void MentionGraph::finish() {
    // Re-index nodes in id order, then sort and dedup adjacency.
    std::vector<int> order(ids_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return ids_[static_cast<std::size_t>(a)] < ids_[static_cast<std::size_t>(b)]; });
    std::vector<int> rank(ids_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

    std::vector<std::string> ids(ids_.size());
    std::vector<UserCategory> cats(ids_.size());
    std::vector<std::vector<int>> adj(ids_.size());
    for (std::size_t old = 0; old < ids_.size(); ++old) {
        const std::size_t now = static_cast<std::size_t>(rank[old]);
        ids[now] = std::move(ids_[old]);
        cats[now] = categories_[old];
        adj[now].reserve(adj_[old].size());
        for (int nbr : adj_[old]) adj[now].push_back(rank[static_cast<std::size_t>(nbr)]);
    }
    for (auto& nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }

    ids_ = std::move(ids);
    categories_ = std::move(cats);
    adj_ = std::move(adj);
    index_.clear();
    for (std::size_t i = 0; i < ids_.size(); ++i) index_[ids_[i]] = static_cast<int>(i);
}

MentionGraph MentionGraph::induced(const std::vector<int>& nodes,
                                   std::vector<int>* parent_index) const {
    MentionGraph sub;
    sub.period_start = period_start;
    sub.period_end = period_end;
    std::vector<int> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<int> to_sub(ids_.size(), -1);
    for (int v : sorted) {
        const int s = sub.add_node(ids_[static_cast<std::size_t>(v)],
                                   categories_[static_cast<std::size_t>(v)]);
        to_sub[static_cast<std::size_t>(v)] = s;
    }
    for (int v : sorted)
        for (int nbr : adj_[static_cast<std::size_t>(v)])
            if (nbr > v && to_sub[static_cast<std::size_t>(nbr)] >= 0)
                sub.add_edge(to_sub[static_cast<std::size_t>(v)],
                             to_sub[static_cast<std::size_t>(nbr)]);
    sub.finish();  // reindexes, so map back through the ids
    if (parent_index) {
        parent_index->assign(sub.size(), -1);
        for (int v : sorted)
            (*parent_index)[static_cast<std::size_t>(sub.index_of(
                ids_[static_cast<std::size_t>(v)]))] = v;
    }
    return sub;
}

MentionGraph build_mention_graph(const std::vector<TokenizedPost>& posts,
                                 const std::unordered_map<std::string, UserCategory>& labels,
                                 std::int64_t period_start, std::int64_t period_end) {
    MentionGraph g;
    g.period_start = period_start;
    g.period_end = period_end;
    for (const auto& [id, cat] : labels) g.add_node(id, cat);

    auto category_of = [&](const std::string& id) {
        auto it = labels.find(id);
        return it == labels.end() ? UserCategory::regular : it->second;
    };

    for (const TokenizedPost& p : posts) {
        if (p.timestamp < period_start || p.timestamp >= period_end) continue;
        const int u = g.add_node(p.user_id, category_of(p.user_id));
        for (const std::string& mentioned : p.mentions) {
            const int v = g.add_node(mentioned, category_of(mentioned));
            g.add_edge(u, v);
        }
    }
    g.finish();
    return g;
}

PatternSubgraph extract_pattern(const MentionGraph& g, PatternType type) {
    std::vector<int> nodes;
    for (int v = 0; v < static_cast<int>(g.size()); ++v)
        if (g.category(v) == UserCategory::anomalous) nodes.push_back(v);

    if (type != PatternType::type1) {
        // One-level expansion: first neighbors of anomalous nodes only.
        const std::vector<int> anomalous = nodes;
        std::vector<bool> keep(g.size(), false);
        for (int v : anomalous) keep[static_cast<std::size_t>(v)] = true;
        for (int v : anomalous) {
            for (int nbr : g.neighbors(v)) {
                if (keep[static_cast<std::size_t>(nbr)]) continue;
                if (type == PatternType::type3 || g.category(nbr) == UserCategory::ett) {
                    keep[static_cast<std::size_t>(nbr)] = true;
                    nodes.push_back(nbr);
                }
            }
        }
    }

    PatternSubgraph sub;
    sub.type = type;
    sub.graph = g.induced(nodes, &sub.parent_index);
    return sub;
}

bool pattern_admits(const MentionGraph& parent, const std::vector<int>& nodes,
                    PatternType type) {
    for (int v : nodes) {
        if (parent.category(v) == UserCategory::anomalous) continue;
        if (type == PatternType::type1) return false;
        if (type == PatternType::type2 && parent.category(v) != UserCategory::ett)
            return false;
        bool touches_anomalous = false;
        for (int nbr : parent.neighbors(v)) {
            if (parent.category(nbr) == UserCategory::anomalous) {
                touches_anomalous = true;
                break;
            }
        }
        if (!touches_anomalous) return false;
    }
    return true;
}

void write_edge_list(std::ostream& out, const MentionGraph& g) {
    for (int v = 0; v < static_cast<int>(g.size()); ++v)
        for (int nbr : g.neighbors(v))
            if (nbr > v) out << g.id(v) << ' ' << g.id(nbr) << '\n';
}

void write_node_labels_csv(std::ostream& out, const MentionGraph& g) {
    out << "user_id,label\n";
    for (int v = 0; v < static_cast<int>(g.size()); ++v)
        out << csv::join_row({g.id(v), category_name(g.category(v))});
}

MentionGraph read_graph_files(std::istream& edges, std::istream& labels) {
    MentionGraph g;
    std::string line;
    bool first = true;
    while (std::getline(labels, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first && line == "user_id,label") {
            first = false;
            continue;
        }
        first = false;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("label row must be user_id,label: " + line);
        const std::string id = line.substr(0, comma);
        const std::string label = line.substr(comma + 1);
        UserCategory cat;
        if (label == "anomalous")
            cat = UserCategory::anomalous;
        else if (label == "ett")
            cat = UserCategory::ett;
        else if (label == "regular")
            cat = UserCategory::regular;
        else
            throw std::invalid_argument("unknown label: " + label);
        g.add_node(id, cat);
    }

    while (std::getline(edges, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string spaced = line;
        std::replace(spaced.begin(), spaced.end(), ',', ' ');
        std::istringstream row(spaced);
        std::string a, b;
        if (!(row >> a)) continue;
        if (!(row >> b)) throw std::invalid_argument("edge row needs two ids: " + line);
        g.add_edge(g.add_node(a, UserCategory::regular), g.add_node(b, UserCategory::regular));
    }
    g.finish();
    return g;
}

}  // namespace ettkit
