#include "sumnet/region_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace sumnet {

int RegionGraph::source_region(int i) const {
    for (const auto& r : regions)
        if (r.source_index == i) return r.id;
    throw std::logic_error("no source region with index " + std::to_string(i));
}

int RegionGraph::terminal_region(int j) const {
    for (const auto& r : regions)
        if (r.terminal_indices.count(j)) return r.id;
    throw std::logic_error("no terminal region with index " + std::to_string(j));
}

int RegionGraph::region_by_name(const std::string& name) const {
    for (const auto& r : regions)
        if (r.name == name) return r.id;
    throw std::logic_error("no region named " + name);
}

namespace {

void finish_graph(RegionGraph& rg) {
    const int m = rg.region_count();
    rg.children.assign(m, {});
    for (int r = 0; r < m; ++r)
        for (int p : rg.parents[r]) rg.children[p].insert(r);
    // Kahn order over the parent relation
    std::vector<int> deg(m);
    for (int r = 0; r < m; ++r) deg[r] = static_cast<int>(rg.parents[r].size());
    std::vector<int> q;
    for (int r = 0; r < m; ++r)
        if (deg[r] == 0) q.push_back(r);
    std::sort(q.begin(), q.end());
    rg.topo_order.clear();
    size_t qi = 0;
    while (qi < q.size()) {
        int r = q[qi++];
        rg.topo_order.push_back(r);
        std::vector<int> next;
        for (int c : rg.children[r])
            if (--deg[c] == 0) next.push_back(c);
        std::sort(next.begin(), next.end());
        q.insert(q.end(), next.begin(), next.end());
    }
    if (static_cast<int>(rg.topo_order.size()) != m)
        throw std::logic_error("region graph has a cycle");
}

}  // namespace

RegionGraphSpec parse_region_graph(const std::string& text) {
    RegionGraphSpec spec;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    std::set<std::string> names;
    std::set<int> source_indices, terminal_indices;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream iss(line);
        std::vector<std::string> toks;
        std::string tok;
        while (iss >> tok) toks.push_back(tok);
        if (toks.empty()) continue;
        if (!header_seen) {
            if (toks.size() != 1 || toks[0] != "regiongraph")
                throw ParseError(lineno, "expected 'regiongraph' header");
            header_seen = true;
            continue;
        }
        RegionGraphSpec::Entry entry;
        size_t at = 1;
        if (toks[0] == "source") {
            if (toks.size() != 3) throw ParseError(lineno, "expected 'source <name> <i>'");
            entry.name = toks[1];
            entry.source_index = std::stoi(toks[2]);
            if (!source_indices.insert(*entry.source_index).second)
                throw ParseError(lineno, "duplicate source index");
            at = toks.size();
        } else if (toks[0] == "region" || toks[0] == "terminal") {
            if (toks[0] == "terminal") {
                if (toks.size() < 5 || toks[3] != ":")
                    throw ParseError(lineno, "expected 'terminal <name> <j> : <parent>+'");
                entry.terminal_index = std::stoi(toks[2]);
                if (!terminal_indices.insert(*entry.terminal_index).second)
                    throw ParseError(lineno, "duplicate terminal index");
                entry.name = toks[1];
                at = 4;
            } else {
                if (toks.size() < 4 || toks[2] != ":")
                    throw ParseError(lineno, "expected 'region <name> : <parent>+'");
                entry.name = toks[1];
                at = 3;
            }
            for (size_t i = at; i < toks.size(); ++i) entry.parent_names.push_back(toks[i]);
            if (entry.parent_names.size() < 2)
                throw ParseError(lineno, "region '" + entry.name + "' has fewer than two parents");
            for (const auto& p : entry.parent_names)
                if (!names.count(p)) throw ParseError(lineno, "unknown parent '" + p + "'");
        } else {
            throw ParseError(lineno, "unrecognized directive '" + toks[0] + "'");
        }
        if (!names.insert(entry.name).second)
            throw ParseError(lineno, "duplicate region name '" + entry.name + "'");
        spec.entries.push_back(std::move(entry));
    }
    if (!header_seen) throw ParseError(lineno, "missing 'regiongraph' header");
    return spec;
}

RegionGraphSpec parse_region_graph_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(1, std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("regions")) throw ParseError(1, "JSON region graph needs 'regions'");
    RegionGraphSpec spec;
    std::set<std::string> names;
    for (const auto& r : j["regions"]) {
        RegionGraphSpec::Entry entry;
        entry.name = r.at("name").get<std::string>();
        std::string kind = r.at("kind").get<std::string>();
        if (kind == "source") {
            entry.source_index = r.at("index").get<int>();
        } else {
            if (kind == "terminal") entry.terminal_index = r.at("index").get<int>();
            for (const auto& p : r.at("parents")) {
                std::string pn = p.get<std::string>();
                if (!names.count(pn)) throw ParseError(1, "unknown parent '" + pn + "'");
                entry.parent_names.push_back(pn);
            }
            if (entry.parent_names.size() < 2)
                throw ParseError(1, "region '" + entry.name + "' has fewer than two parents");
        }
        if (!names.insert(entry.name).second)
            throw ParseError(1, "duplicate region name '" + entry.name + "'");
        spec.entries.push_back(std::move(entry));
    }
    return spec;
}

RegionGraph region_graph_of(const RegionGraphSpec& spec) {
    RegionGraph rg;
    std::map<std::string, int> index;
    for (const auto& e : spec.entries) {
        Region r;
        r.id = static_cast<int>(rg.regions.size());
        r.name = e.name;
        r.source_index = e.source_index;
        if (e.terminal_index) r.terminal_indices.insert(*e.terminal_index);
        index[e.name] = r.id;
        rg.regions.push_back(std::move(r));
    }
    rg.parents.assign(rg.regions.size(), {});
    for (size_t i = 0; i < spec.entries.size(); ++i)
        for (const auto& pn : spec.entries[i].parent_names)
            rg.parents[i].insert(index.at(pn));
    rg.k = 0;
    rg.n = 0;
    for (const auto& r : rg.regions) {
        if (r.is_source()) ++rg.k;
        rg.n += static_cast<int>(r.terminal_indices.size());
    }
    finish_graph(rg);
    return rg;
}

namespace {

// union-find over augmented edge ids
struct EdgeUf {
    std::vector<int> up;
    explicit EdgeUf(int n) : up(n + 1) { std::iota(up.begin(), up.end(), 0); }
    int find(int x) {
        while (up[x] != x) {
            up[x] = up[up[x]];
            x = up[x];
        }
        return x;
    }
    void attach(int child_root, int parent_root) { up[child_root] = parent_root; }
};

}  // namespace

RegionGraph basic_decompose_ordered(const AugmentedNetwork& aug, const std::vector<int>& edge_order) {
    const int m = aug.total_edges;
    for (int id = 1; id <= m; ++id)
        if (aug.kind(id) != EdgeKind::SourceLink && aug.in_links(id).empty())
            throw std::invalid_argument("edge " + std::to_string(id) +
                                        " has no incoming links; validate the instance first");

    EdgeUf uf(m);
    std::vector<int> leader(m + 1);
    std::iota(leader.begin(), leader.end(), 0);

    // Merge any region whose leader's incoming links all map into a single
    // other region. The fixed point is the basic decomposition.
    auto parent_roots = [&](int root) {
        std::set<int> out;
        for (int e : aug.in_links(leader[root])) {
            int r = uf.find(e);
            if (r != root) out.insert(r);
        }
        return out;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int id : edge_order) {
            int root = uf.find(id);
            if (root != id) continue;  // id no longer names a region
            if (aug.kind(leader[root]) == EdgeKind::SourceLink) continue;
            auto ps = parent_roots(root);
            if (ps.size() == 1) {
                // the union keeps the parent's leader
                uf.attach(root, *ps.begin());
                changed = true;
            }
        }
    }

    // collect regions, canonical order: sources by index, then coding regions
    // by topological order, terminal regions last
    std::map<int, std::set<int>> members;
    for (int id = 1; id <= m; ++id) members[uf.find(id)].insert(id);

    struct Proto {
        std::set<int> edges;
        int leader;
        std::optional<int> source_index;
        std::set<int> terminal_indices;
    };
    std::vector<Proto> protos;
    std::map<int, int> root_to_proto;
    for (auto& [root, edges] : members) {
        Proto pr;
        pr.edges = edges;
        pr.leader = leader[root];
        if (aug.kind(pr.leader) == EdgeKind::SourceLink)
            pr.source_index = aug.source_index(pr.leader);
        for (int e : edges)
            if (aug.kind(e) == EdgeKind::TerminalLink)
                pr.terminal_indices.insert(aug.terminal_index(e));
        root_to_proto[root] = static_cast<int>(protos.size());
        protos.push_back(std::move(pr));
    }

    // provisional parent sets, on proto indices
    const int np = static_cast<int>(protos.size());
    std::vector<std::set<int>> pparents(np);
    for (int i = 0; i < np; ++i)
        for (int e : aug.in_links(protos[i].leader)) {
            int pi = root_to_proto[uf.find(e)];
            if (pi != i) pparents[i].insert(pi);
        }

    // order: source regions (by index), then the rest topologically with
    // terminal-bearing regions pushed to the back among ties
    std::vector<int> deg(np);
    for (int i = 0; i < np; ++i) deg[i] = static_cast<int>(pparents[i].size());
    std::vector<std::set<int>> pchildren(np);
    for (int i = 0; i < np; ++i)
        for (int p : pparents[i]) pchildren[p].insert(i);

    std::vector<int> order;
    std::vector<char> placed(np, 0);
    auto place_ready = [&](bool sources_only) {
        bool progressed = true;
        while (progressed) {
            progressed = false;
            // coding regions first, terminal-bearing later, stable by leader id
            std::vector<int> ready;
            for (int i = 0; i < np; ++i)
                if (!placed[i] && deg[i] == 0 &&
                    (!sources_only || protos[i].source_index.has_value()))
                    ready.push_back(i);
            std::sort(ready.begin(), ready.end(), [&](int a, int b) {
                bool ta = !protos[a].terminal_indices.empty();
                bool tb = !protos[b].terminal_indices.empty();
                if (ta != tb) return !ta;
                if (protos[a].source_index && protos[b].source_index)
                    return *protos[a].source_index < *protos[b].source_index;
                return protos[a].leader < protos[b].leader;
            });
            for (int i : ready) {
                placed[i] = 1;
                order.push_back(i);
                for (int c : pchildren[i]) --deg[c];
                progressed = true;
            }
            if (sources_only) break;
        }
    };
    place_ready(true);
    place_ready(false);
    if (static_cast<int>(order.size()) != np)
        throw std::logic_error("region graph has a cycle");

    RegionGraph rg;
    rg.k = aug.k();
    rg.n = aug.n();
    std::vector<int> proto_to_id(np);
    int coding_seq = 0;
    for (int idx : order) {
        Region r;
        r.id = static_cast<int>(rg.regions.size());
        r.edges = protos[idx].edges;
        r.leader = protos[idx].leader;
        r.source_index = protos[idx].source_index;
        r.terminal_indices = protos[idx].terminal_indices;
        if (r.source_index) {
            r.name = "S" + std::to_string(*r.source_index);
        } else if (!r.terminal_indices.empty()) {
            r.name = "T";
            bool first = true;
            for (int j : r.terminal_indices) {
                if (!first) r.name += "_";
                r.name += std::to_string(j);
                first = false;
            }
        } else {
            r.name = "R" + std::to_string(++coding_seq);
        }
        proto_to_id[idx] = r.id;
        rg.regions.push_back(std::move(r));
    }
    rg.parents.assign(np, {});
    for (int i = 0; i < np; ++i)
        for (int p : pparents[i]) rg.parents[proto_to_id[i]].insert(proto_to_id[p]);
    rg.region_of_edge.assign(m + 1, -1);
    for (int i = 0; i < np; ++i)
        for (int e : protos[i].edges) rg.region_of_edge[e] = proto_to_id[i];
    finish_graph(rg);
    return rg;
}

RegionGraph basic_decompose(const AugmentedNetwork& aug) {
    std::vector<int> order(aug.total_edges);
    std::iota(order.begin(), order.end(), 1);
    return basic_decompose_ordered(aug, order);
}

std::string BasicViolation::describe() const {
    switch (kind) {
        case NotAPartition: return "edge sets do not partition the augmented edge set";
        case NotARegion:
            return "region " + std::to_string(region) + " has no valid leader (edge " +
                   std::to_string(edge) + " lacks an in-region incoming link)";
        case InLinkOutside:
            return "edge " + std::to_string(edge) + " of region " + std::to_string(region) +
                   " has an incoming link outside the region";
        case TooFewParents:
            return "region " + std::to_string(region) + " has fewer than two parents";
    }
    return "";
}

std::optional<BasicViolation> is_basic(const AugmentedNetwork& aug,
                                       const std::vector<std::set<int>>& partition) {
    const int m = aug.total_edges;
    std::vector<int> owner(m + 1, -1);
    int covered = 0;
    for (size_t r = 0; r < partition.size(); ++r)
        for (int e : partition[r]) {
            if (e < 1 || e > m || owner[e] != -1)
                return BasicViolation{BasicViolation::NotAPartition, static_cast<int>(r), e};
            owner[e] = static_cast<int>(r);
            ++covered;
        }
    if (covered != m) return BasicViolation{BasicViolation::NotAPartition, -1, -1};

    for (size_t r = 0; r < partition.size(); ++r) {
        // the leader is the unique edge without an in-region incoming link
        std::vector<int> leaders;
        for (int e : partition[r]) {
            bool fed_inside = false;
            for (int x : aug.in_links(e))
                if (owner[x] == static_cast<int>(r)) fed_inside = true;
            if (!fed_inside) leaders.push_back(e);
        }
        if (leaders.size() != 1)
            return BasicViolation{BasicViolation::NotARegion, static_cast<int>(r),
                                  leaders.empty() ? -1 : leaders[1]};
        int lead = leaders[0];
        for (int e : partition[r]) {
            if (e == lead) continue;
            for (int x : aug.in_links(e))
                if (owner[x] != static_cast<int>(r))
                    return BasicViolation{BasicViolation::InLinkOutside, static_cast<int>(r), e};
        }
        if (aug.kind(lead) != EdgeKind::SourceLink) {
            std::set<int> parents;
            for (int x : aug.in_links(lead)) parents.insert(owner[x]);
            parents.erase(static_cast<int>(r));
            if (parents.size() < 2)
                return BasicViolation{BasicViolation::TooFewParents, static_cast<int>(r), lead};
        }
    }
    return std::nullopt;
}

std::set<int> super_region(const RegionGraph& rg, const std::set<int>& theta) {
    std::set<int> reg = theta;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int r : rg.topo_order) {
            if (reg.count(r) || rg.parents[r].empty()) continue;
            bool all_in = true;
            for (int p : rg.parents[r])
                if (!reg.count(p)) { all_in = false; break; }
            if (all_in) {
                reg.insert(r);
                grew = true;
            }
        }
    }
    return reg;
}

std::set<int> super_region_open(const RegionGraph& rg, const std::set<int>& theta) {
    auto reg = super_region(rg, theta);
    for (int r : theta) reg.erase(r);
    return reg;
}

bool region_reaches(const RegionGraph& rg, int from, int to) {
    if (from == to) return true;
    std::vector<char> seen(rg.region_count(), 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        int r = stack.back();
        stack.pop_back();
        for (int c : rg.children[r]) {
            if (c == to) return true;
            if (!seen[c]) {
                seen[c] = 1;
                stack.push_back(c);
            }
        }
    }
    return false;
}

std::string export_dot(const RegionGraph& rg) {
    std::ostringstream out;
    out << "digraph regions {\n";
    for (const auto& r : rg.regions) {
        std::string kind = r.is_source()  ? "source(" + std::to_string(*r.source_index) + ")"
                           : r.is_terminal() ? "terminal" : "coding";
        if (r.is_terminal()) {
            kind += "(";
            bool first = true;
            for (int j : r.terminal_indices) {
                if (!first) kind += ",";
                kind += std::to_string(j);
                first = false;
            }
            kind += ")";
        }
        out << "  \"" << r.name << "\" [label=\"" << r.name << " [" << kind << "] {";
        bool first = true;
        for (int e : r.edges) {
            if (!first) out << ",";
            out << e;
            first = false;
        }
        out << "}\"];\n";
    }
    for (int r = 0; r < rg.region_count(); ++r)
        for (int p : rg.parents[r])
            out << "  \"" << rg.regions[p].name << "\" -> \"" << rg.regions[r].name << "\";\n";
    out << "}\n";
    return out.str();
}

}  // namespace sumnet
