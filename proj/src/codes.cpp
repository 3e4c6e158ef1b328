#include "sumnet/codes.hpp"

#include <algorithm>
#include <deque>

#include "json.hpp"

namespace sumnet {

std::string CodeViolation::describe() const {
    switch (clause) {
        case SourcePinned: return "source " + std::to_string(id) + " does not carry its unit vector";
        case SpanMembership: return std::to_string(id) + " is outside its parents' span";
        case TerminalValue: return "terminal " + std::to_string(id) + " does not carry all-ones";
        case Missing: return std::to_string(id) + " has no vector";
    }
    return "";
}

std::optional<CodeViolation> verify_region_code(const RegionGraph& rg, const RegionCode& code, int k) {
    for (const auto& r : rg.regions)
        if (!code.vectors.count(r.id)) return CodeViolation{CodeViolation::Missing, r.id};
    const Vec3 bar = Vec3::all_ones(code.p, k);
    for (int r : rg.topo_order) {
        const Region& reg = rg.regions[r];
        const Vec3& v = code.vectors.at(r);
        if (reg.is_source()) {
            if (v != Vec3::alpha(code.p, *reg.source_index))
                return CodeViolation{CodeViolation::SourcePinned, r};
        } else {
            std::vector<Vec3> gens;
            for (int p : rg.parents[r]) gens.push_back(code.vectors.at(p));
            if (!in_span(v, gens)) return CodeViolation{CodeViolation::SpanMembership, r};
        }
        if (reg.is_terminal() && v != bar)
            return CodeViolation{CodeViolation::TerminalValue, r};
    }
    return std::nullopt;
}

std::optional<CodeViolation> verify_edge_code(const AugmentedNetwork& aug, const EdgeCode& code) {
    const int k = aug.k();
    const Vec3 bar = Vec3::all_ones(code.p, k);
    for (int e = 1; e <= aug.total_edges; ++e)
        if (!code.vectors.count(e)) return CodeViolation{CodeViolation::Missing, e};
    for (int e = 1; e <= aug.total_edges; ++e) {
        const Vec3& v = code.vectors.at(e);
        switch (aug.kind(e)) {
            case EdgeKind::SourceLink:
                if (v != Vec3::alpha(code.p, aug.source_index(e)))
                    return CodeViolation{CodeViolation::SourcePinned, e};
                break;
            case EdgeKind::TerminalLink:
                if (v != bar) return CodeViolation{CodeViolation::TerminalValue, e};
                [[fallthrough]];
            case EdgeKind::Internal: {
                std::vector<Vec3> gens;
                for (int x : aug.in_links(e)) gens.push_back(code.vectors.at(x));
                if (!in_span(v, gens)) return CodeViolation{CodeViolation::SpanMembership, e};
                break;
            }
        }
    }
    return std::nullopt;
}

RegionCode assign_pi_code(const PiPartition& part, const RegionGraph& rg,
                          const TerminalProfile& prof, const BFamily& fam) {
    if (!is_compatible(part, rg, prof).compatible)
        throw std::invalid_argument("assign_pi_code: partition is not compatible");
    RegionCode code;
    code.p = fam.p;
    const uint32_t p = fam.p;

    // later classes in ascending id order map onto B_4, B_5, ...
    std::map<int, int> set_of_class;
    int next_set = 4;
    for (int c : part.active) {
        if (part.is_source_class(c)) continue;
        set_of_class[c] = next_set++;
    }
    if (next_set - 1 > fam.K())
        throw std::invalid_argument("assign_pi_code: family smaller than class count");

    for (int r : part.universe) {
        int c = part.class_of(r);
        if (part.is_source_class(c)) {
            int i = c + 1;
            if (source_subclass(part, prof, i).count(r)) {
                code.vectors[r] = Vec3::alpha(p, i);
            } else {
                int off = off_plane_of(i);
                code.vectors[r] =
                    Vec3::alpha(p, kPlanes[off].i1) + Vec3::alpha(p, kPlanes[off].i2);
            }
        } else {
            int pl = -1;
            for (int q = 0; q < 3; ++q)
                if (prof.in_plane(r, q)) pl = q;
            if (pl < 0) throw std::logic_error("Pi region outside every pairwise super region");
            code.vectors[r] = fam.plane_rep(set_of_class.at(c), pl);
        }
    }

    // construction check: sources pinned, spans inside Pi, all-ones from
    // every Lambda_j
    for (int r : part.universe) {
        const Region& reg = rg.regions[r];
        if (reg.is_source()) continue;
        std::vector<Vec3> gens;
        for (int q : rg.parents[r]) {
            if (!code.vectors.count(q))
                throw std::logic_error("Pi region has a parent outside Pi");
            gens.push_back(code.vectors.at(q));
        }
        if (!in_span(code.vectors.at(r), gens))
            throw std::logic_error("constructed Pi code leaves a parents' span");
    }
    const Vec3 bar = Vec3::all_ones(p);
    for (int j = 1; j <= prof.n(); ++j) {
        auto lam = prof.lambda_of(j);
        if (lam.empty()) continue;
        std::vector<Vec3> gens;
        for (int q : lam) gens.push_back(code.vectors.at(q));
        if (!in_span(bar, gens))
            throw std::logic_error("constructed Pi code misses all-ones on a Lambda set");
    }
    return code;
}

RegionCode extend_code(const RegionGraph& rg, const TerminalProfile& prof,
                       const RegionCode& pi_code, bool fill_rest) {
    RegionCode code = pi_code;
    const uint32_t p = code.p;
    const Vec3 bar = Vec3::all_ones(p);

    for (int j = 1; j <= prof.n(); ++j) {
        auto omega = prof.omega_of(j);
        auto lam = prof.lambda_of(j);
        if (lam.empty())
            throw std::invalid_argument("extend_code: terminal " + std::to_string(j) +
                                        " has an empty Lambda set");
        std::vector<Vec3> gens;
        std::vector<int> lam_order(lam.begin(), lam.end());
        for (int q : lam_order) gens.push_back(code.vectors.at(q));
        auto coeff = in_span(bar, gens);
        if (!coeff)
            throw std::invalid_argument("extend_code: all-ones not spanned by Lambda_" +
                                        std::to_string(j));

        const int tj = prof.designated[j - 1];
        // routing tree: breadth-first from T_j backwards inside Omega_j
        std::map<int, int> next;  // region -> the child it forwards to
        std::deque<int> queue{tj};
        std::set<int> seen{tj};
        while (!queue.empty()) {
            int w = queue.front();
            queue.pop_front();
            for (int q : rg.parents[w]) {
                if (!omega.count(q) || seen.count(q)) continue;
                seen.insert(q);
                next[q] = w;
                queue.push_back(q);
            }
        }

        // inject each Lambda contribution at one child inside Omega_j
        std::map<int, Vec3> flow;
        for (size_t qi = 0; qi < lam_order.size(); ++qi) {
            if (coeff->at(qi) == 0) continue;
            int q = lam_order[qi];
            int entry = -1;
            for (int c : rg.children[q])
                if (omega.count(c) && seen.count(c)) { entry = c; break; }
            if (entry < 0)
                throw std::logic_error("extend_code: Lambda region lost its Omega child");
            Vec3 add = code.vectors.at(q).scaled(coeff->at(qi));
            auto it = flow.find(entry);
            if (it == flow.end()) flow[entry] = add;
            else it->second = it->second + add;
        }
        // push partial sums down the tree in topological order
        for (int r : rg.topo_order) {
            if (!seen.count(r)) continue;
            auto it = flow.find(r);
            if (it == flow.end() || it->second.is_zero()) continue;
            if (!code.vectors.count(r) || r == tj) code.vectors[r] = it->second;
            if (r == tj) continue;
            int w = next.at(r);
            auto wt = flow.find(w);
            if (wt == flow.end()) flow[w] = it->second;
            else wt->second = wt->second + it->second;
        }
        if (!code.vectors.count(tj) || code.vectors.at(tj) != bar)
            throw std::logic_error("extend_code: terminal " + std::to_string(j) +
                                   " did not aggregate to all-ones");
    }

    if (fill_rest) fill_unassigned(rg, code);
    return code;
}

void fill_unassigned(const RegionGraph& rg, RegionCode& code) {
    for (int r : rg.topo_order) {
        if (code.vectors.count(r)) continue;
        if (rg.parents[r].empty())
            throw std::logic_error("fill_unassigned: unassigned parentless region");
        code.vectors[r] = code.vectors.at(*rg.parents[r].begin());
    }
}

EdgeCode lift_to_edges(const AugmentedNetwork& aug, const RegionGraph& rg, const RegionCode& code) {
    EdgeCode out;
    out.p = code.p;
    for (int e = 1; e <= aug.total_edges; ++e) {
        int r = rg.region_of_edge.at(e);
        out.vectors[e] = code.vectors.at(r);
    }
    return out;
}

std::string code_to_json(const RegionCode& code, const RegionGraph& rg) {
    nlohmann::ordered_json j;
    j["prime"] = code.p;
    j["level"] = "region";
    nlohmann::ordered_json vecs;
    for (const auto& [r, v] : code.vectors)
        vecs[rg.regions[r].name] = {v.c[0], v.c[1], v.c[2]};
    j["vectors"] = std::move(vecs);
    return j.dump(2) + "\n";
}

std::string code_to_json(const EdgeCode& code) {
    nlohmann::ordered_json j;
    j["prime"] = code.p;
    j["level"] = "edge";
    nlohmann::ordered_json vecs;
    for (const auto& [e, v] : code.vectors)
        vecs[std::to_string(e)] = {v.c[0], v.c[1], v.c[2]};
    j["vectors"] = std::move(vecs);
    return j.dump(2) + "\n";
}

ParsedCode parse_code_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(1, std::string("invalid JSON: ") + e.what());
    }
    ParsedCode out;
    if (!j.contains("prime") || !j.contains("vectors"))
        throw ParseError(1, "code file needs 'prime' and 'vectors'");
    out.p = j["prime"].get<uint32_t>();
    if (!is_prime(out.p)) throw ParseError(1, "'prime' is not prime");
    out.level = j.value("level", "region");
    if (out.level != "region" && out.level != "edge")
        throw ParseError(1, "'level' must be 'region' or 'edge'");
    for (auto it = j["vectors"].begin(); it != j["vectors"].end(); ++it) {
        const auto& arr = it.value();
        if (!arr.is_array() || arr.size() != 3) throw ParseError(1, "vector must have 3 entries");
        long long a = arr[0].get<long long>(), b = arr[1].get<long long>(),
                  c = arr[2].get<long long>();
        auto norm = [&](long long x) {
            long long m = x % static_cast<long long>(out.p);
            if (m < 0) m += out.p;
            return static_cast<uint32_t>(m);
        };
        out.vectors.emplace(it.key(), Vec3(out.p, norm(a), norm(b), norm(c)));
    }
    return out;
}

RegionCode bind_region_code(const ParsedCode& parsed, const RegionGraph& rg) {
    if (parsed.level != "region") throw std::invalid_argument("code file is not region-level");
    RegionCode code;
    code.p = parsed.p;
    for (const auto& [name, v] : parsed.vectors) code.vectors[rg.region_by_name(name)] = v;
    return code;
}

EdgeCode bind_edge_code(const ParsedCode& parsed) {
    if (parsed.level != "edge") throw std::invalid_argument("code file is not edge-level");
    EdgeCode code;
    code.p = parsed.p;
    for (const auto& [name, v] : parsed.vectors) code.vectors[std::stoi(name)] = v;
    return code;
}

}  // namespace sumnet
