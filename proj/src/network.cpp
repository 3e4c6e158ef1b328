#include "sumnet/network.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "json.hpp"

namespace sumnet {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream iss(s);
    std::vector<std::string> out;
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

int declare_node(Network& net, const std::string& name) {
    auto it = net.node_index.find(name);
    if (it != net.node_index.end()) return it->second;
    int idx = static_cast<int>(net.nodes.size());
    net.nodes.push_back(name);
    net.node_index.emplace(name, idx);
    return idx;
}

int lookup_node(const Network& net, const std::string& name, int line) {
    auto it = net.node_index.find(name);
    if (it == net.node_index.end()) throw ParseError(line, "unknown node '" + name + "'");
    return it->second;
}

}  // namespace

Network parse_network(const std::string& text) {
    Network net;
    std::set<int> source_set, terminal_set;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        const std::string& key = toks[0];
        if (key == "sources:") {
            if (toks.size() < 2) throw ParseError(lineno, "expected node ids after 'sources:'");
            for (size_t i = 1; i < toks.size(); ++i) {
                int idx = declare_node(net, toks[i]);
                if (!source_set.insert(idx).second)
                    throw ParseError(lineno, "duplicate source '" + toks[i] + "'");
                net.sources.push_back(idx);
            }
        } else if (key == "terminals:") {
            if (toks.size() < 2) throw ParseError(lineno, "expected node ids after 'terminals:'");
            for (size_t i = 1; i < toks.size(); ++i) {
                int idx = declare_node(net, toks[i]);
                if (!terminal_set.insert(idx).second)
                    throw ParseError(lineno, "duplicate terminal '" + toks[i] + "'");
                net.terminals.push_back(idx);
            }
        } else if (key == "node:") {
            if (toks.size() != 2) throw ParseError(lineno, "expected one node id after 'node:'");
            declare_node(net, toks[1]);
        } else if (key == "edge:") {
            if (toks.size() != 3) throw ParseError(lineno, "expected 'edge: <tail> <head>'");
            int t = lookup_node(net, toks[1], lineno);
            int h = lookup_node(net, toks[2], lineno);
            net.edges.emplace_back(t, h);
        } else {
            throw ParseError(lineno, "unrecognized directive '" + key + "'");
        }
    }
    if (net.sources.empty()) throw ParseError(lineno, "no sources declared");
    if (net.terminals.empty()) throw ParseError(lineno, "no terminals declared");
    for (int s : net.sources)
        if (terminal_set.count(s))
            throw ParseError(lineno, "node '" + net.nodes[s] + "' is both source and terminal");
    return net;
}

Network parse_network_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(1, std::string("invalid JSON: ") + e.what());
    }
    Network net;
    std::set<int> source_set, terminal_set;
    if (!j.contains("sources") || !j.contains("terminals") || !j.contains("edges"))
        throw ParseError(1, "JSON instance needs 'sources', 'terminals' and 'edges'");
    for (const auto& s : j["sources"]) {
        int idx = declare_node(net, s.get<std::string>());
        if (!source_set.insert(idx).second) throw ParseError(1, "duplicate source");
        net.sources.push_back(idx);
    }
    for (const auto& t : j["terminals"]) {
        int idx = declare_node(net, t.get<std::string>());
        if (!terminal_set.insert(idx).second) throw ParseError(1, "duplicate terminal");
        net.terminals.push_back(idx);
    }
    if (j.contains("nodes"))
        for (const auto& v : j["nodes"]) declare_node(net, v.get<std::string>());
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2) throw ParseError(1, "edge must be [tail, head]");
        int t = lookup_node(net, e[0].get<std::string>(), 1);
        int h = lookup_node(net, e[1].get<std::string>(), 1);
        net.edges.emplace_back(t, h);
    }
    for (int s : net.sources)
        if (terminal_set.count(s))
            throw ParseError(1, "node '" + net.nodes[s] + "' is both source and terminal");
    if (net.sources.empty() || net.terminals.empty())
        throw ParseError(1, "sources and terminals must be non-empty");
    return net;
}

std::string print_network(const Network& net) {
    std::ostringstream out;
    out << "sources:";
    for (int s : net.sources) out << " " << net.nodes[s];
    out << "\nterminals:";
    for (int t : net.terminals) out << " " << net.nodes[t];
    out << "\n";
    for (int v = 0; v < static_cast<int>(net.nodes.size()); ++v) {
        bool is_st = std::count(net.sources.begin(), net.sources.end(), v) ||
                     std::count(net.terminals.begin(), net.terminals.end(), v);
        if (!is_st) out << "node: " << net.nodes[v] << "\n";
    }
    for (const auto& e : net.edges)
        out << "edge: " << net.nodes[e.first] << " " << net.nodes[e.second] << "\n";
    return out.str();
}

EdgeKind AugmentedNetwork::kind(int edge_id) const {
    const int kk = k(), m = base.edge_count();
    if (edge_id >= 1 && edge_id <= kk) return EdgeKind::SourceLink;
    if (edge_id <= kk + m) return EdgeKind::Internal;
    if (edge_id <= total_edges) return EdgeKind::TerminalLink;
    throw std::out_of_range("edge id out of range");
}

int AugmentedNetwork::source_index(int edge_id) const {
    if (kind(edge_id) != EdgeKind::SourceLink) throw std::logic_error("not a source link");
    return edge_id;
}

int AugmentedNetwork::terminal_index(int edge_id) const {
    if (kind(edge_id) != EdgeKind::TerminalLink) throw std::logic_error("not a terminal link");
    return edge_id - k() - base.edge_count();
}

std::optional<int> AugmentedNetwork::tail(int edge_id) const {
    switch (kind(edge_id)) {
        case EdgeKind::SourceLink: return std::nullopt;
        case EdgeKind::Internal: return base.edges[edge_id - k() - 1].first;
        case EdgeKind::TerminalLink: return base.terminals[terminal_index(edge_id) - 1];
    }
    return std::nullopt;
}

std::optional<int> AugmentedNetwork::head(int edge_id) const {
    switch (kind(edge_id)) {
        case EdgeKind::SourceLink: return base.sources[edge_id - 1];
        case EdgeKind::Internal: return base.edges[edge_id - k() - 1].second;
        case EdgeKind::TerminalLink: return std::nullopt;
    }
    return std::nullopt;
}

const std::vector<int>& AugmentedNetwork::in_links(int edge_id) const {
    return in_links_by_edge[edge_id];
}

AugmentedNetwork normalize(const Network& net) {
    AugmentedNetwork aug;
    aug.base = net;
    aug.total_edges = net.k() + net.edge_count() + net.n();

    // in-edges per node, then per-edge incoming link lists
    std::vector<std::vector<int>> node_in(net.nodes.size());
    for (int i = 1; i <= net.k(); ++i) node_in[net.sources[i - 1]].push_back(i);
    for (int e = 0; e < net.edge_count(); ++e)
        node_in[net.edges[e].second].push_back(net.k() + 1 + e);

    aug.in_links_by_edge.assign(aug.total_edges + 1, {});
    for (int id = 1; id <= aug.total_edges; ++id) {
        auto t = aug.tail(id);
        if (t) aug.in_links_by_edge[id] = node_in[*t];
    }
    return aug;
}

Network strip_imaginary(const AugmentedNetwork& aug) { return aug.base; }

ValidationReport validate(const AugmentedNetwork& aug) {
    const Network& net = aug.base;
    ValidationReport rep;

    const int nv = static_cast<int>(net.nodes.size());
    std::vector<std::vector<int>> adj(nv);
    std::vector<int> indeg(nv, 0), real_indeg(nv, 0), outdeg(nv, 0);
    for (const auto& e : net.edges) {
        adj[e.first].push_back(e.second);
        ++indeg[e.second];
        ++real_indeg[e.second];
        ++outdeg[e.first];
    }

    // Kahn's algorithm for acyclicity
    std::vector<int> q, order;
    std::vector<int> deg = indeg;
    for (int v = 0; v < nv; ++v)
        if (deg[v] == 0) q.push_back(v);
    while (!q.empty()) {
        int v = q.back();
        q.pop_back();
        order.push_back(v);
        for (int w : adj[v])
            if (--deg[w] == 0) q.push_back(w);
    }
    if (static_cast<int>(order.size()) != nv) {
        rep.acyclic = false;
        for (int v = 0; v < nv; ++v)
            if (deg[v] > 0) rep.cycle_witness.push_back(v);
        return rep;
    }

    std::set<int> source_set(net.sources.begin(), net.sources.end());
    for (int v = 0; v < nv; ++v)
        if (!source_set.count(v) && real_indeg[v] == 0 && outdeg[v] > 0)
            rep.dangling_nodes.push_back(v);

    // per-source forward reachability
    for (int i = 0; i < net.k(); ++i) {
        std::vector<char> seen(nv, 0);
        std::vector<int> stack{net.sources[i]};
        seen[net.sources[i]] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        for (int j = 0; j < net.n(); ++j)
            if (!seen[net.terminals[j]]) rep.disconnected.emplace_back(i + 1, j + 1);
    }
    rep.trivially_unsolvable = !rep.disconnected.empty();
    return rep;
}

Network generate_random_network(const GenBudget& budget) {
    const int k = 3;
    if (budget.nodes < k + budget.terminals || budget.edges < budget.nodes - k)
        throw std::invalid_argument("budget infeasible: too few nodes or edges");

    for (int attempt = 0; attempt < budget.max_attempts; ++attempt) {
        std::mt19937_64 rng(budget.seed * 1000003ull + attempt);
        Network net;
        for (int i = 1; i <= k; ++i) declare_node(net, "s" + std::to_string(i));
        for (int j = 1; j <= budget.terminals; ++j) declare_node(net, "t" + std::to_string(j));
        const int internal = budget.nodes - k - budget.terminals;
        for (int v = 1; v <= internal; ++v) declare_node(net, "v" + std::to_string(v));
        net.sources = {0, 1, 2};
        for (int j = 0; j < budget.terminals; ++j) net.terminals.push_back(k + j);

        // topological placement: sources first, shuffled internals, then the
        // terminals (keeping them late makes the connectivity rejection rare)
        std::vector<int> internals, terms;
        for (int v = k; v < budget.nodes; ++v) {
            if (v < k + budget.terminals) terms.push_back(v);
            else internals.push_back(v);
        }
        std::shuffle(internals.begin(), internals.end(), rng);
        std::shuffle(terms.begin(), terms.end(), rng);
        std::vector<int> order = {0, 1, 2};
        order.insert(order.end(), internals.begin(), internals.end());
        order.insert(order.end(), terms.begin(), terms.end());
        std::vector<int> pos(budget.nodes);
        for (int i = 0; i < budget.nodes; ++i) pos[order[i]] = i;

        // each non-source node draws one mandatory in-edge from an earlier node
        for (int i = k; i < budget.nodes; ++i) {
            std::uniform_int_distribution<int> pick(0, i - 1);
            net.edges.emplace_back(order[pick(rng)], order[i]);
        }
        // spend the remaining edge budget on random forward pairs
        int extra = budget.edges - (budget.nodes - k);
        std::uniform_int_distribution<int> pick_pos(0, budget.nodes - 1);
        while (extra > 0) {
            int a = pick_pos(rng), b = pick_pos(rng);
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            if (order[b] < k) continue;  // sources take no in-edges
            net.edges.emplace_back(order[a], order[b]);
            --extra;
        }

        auto rep = validate(normalize(net));
        if (rep.ok()) return net;
    }
    throw std::runtime_error("budget infeasible after resampling");
}

}  // namespace sumnet
