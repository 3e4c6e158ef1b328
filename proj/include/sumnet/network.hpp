#ifndef SUMNET_NETWORK_HPP
#define SUMNET_NETWORK_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumnet {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// A directed acyclic multigraph with designated sources and terminals.
// Edge ids are dense and 1-based, assigned in declaration order.
struct Network {
    std::vector<std::string> nodes;               // declaration order
    std::map<std::string, int> node_index;
    std::vector<std::pair<int, int>> edges;       // edge id e (1-based) -> (tail, head), node indices
    std::vector<int> sources;                     // node indices, k entries
    std::vector<int> terminals;                   // node indices, n entries

    int k() const { return static_cast<int>(sources.size()); }
    int n() const { return static_cast<int>(terminals.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    const std::string& node_name(int idx) const { return nodes[idx]; }
};

enum class EdgeKind { SourceLink, Internal, TerminalLink };

// The network with one imaginary incoming link per source and one imaginary
// outgoing link per terminal. Augmented edge ids are 1-based:
//   1..k            source links (link i belongs to source i)
//   k+1..k+|E|      the real edges, in declaration order
//   k+|E|+1..k+|E|+n terminal links (link k+|E|+j belongs to terminal j)
struct AugmentedNetwork {
    Network base;
    int total_edges = 0;

    int k() const { return base.k(); }
    int n() const { return base.n(); }

    EdgeKind kind(int edge_id) const;
    int source_index(int edge_id) const;    // 1-based, SourceLink only
    int terminal_index(int edge_id) const;  // 1-based, TerminalLink only

    // tail/head node of an augmented edge; nullopt for the imaginary ends.
    std::optional<int> tail(int edge_id) const;
    std::optional<int> head(int edge_id) const;

    // incoming links of an augmented edge (edges e' with head(e') == tail(e))
    const std::vector<int>& in_links(int edge_id) const;

    std::vector<std::vector<int>> in_links_by_edge;  // filled by normalize()
};

struct ValidationReport {
    bool acyclic = true;
    std::vector<int> cycle_witness;                    // node indices on a cycle
    std::vector<std::pair<int, int>> disconnected;     // (source i, terminal j), 1-based
    std::vector<int> dangling_nodes;                   // non-source nodes with no in-edges but out-edges
    bool trivially_unsolvable = false;

    bool hard_error() const { return !acyclic || !dangling_nodes.empty(); }
    bool ok() const { return acyclic && dangling_nodes.empty() && disconnected.empty(); }
};

Network parse_network(const std::string& text);
Network parse_network_json(const std::string& text);
std::string print_network(const Network& net);

AugmentedNetwork normalize(const Network& net);
// Drops the imaginary links again; inverse of normalize on the base network.
Network strip_imaginary(const AugmentedNetwork& aug);

ValidationReport validate(const AugmentedNetwork& aug);

// Deterministic random instance generator. Always emits 3 sources; every
// non-source node receives at least one in-edge; resamples until every
// source reaches every terminal.
struct GenBudget {
    uint64_t seed = 1;
    int nodes = 8;
    int edges = 14;
    int terminals = 2;
    int max_attempts = 200;
};

Network generate_random_network(const GenBudget& budget);

}  // namespace sumnet

#endif
