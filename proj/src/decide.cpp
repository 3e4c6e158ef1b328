#include "sumnet/decide.hpp"

#include <algorithm>
#include <deque>

#include "json.hpp"

namespace sumnet {

std::string to_string(Status s) {
    switch (s) {
        case Status::Solvable: return "solvable";
        case Status::Unsolvable: return "unsolvable";
        case Status::Unknown: return "unknown";
    }
    return "?";
}

namespace {

struct ConstructOk {
    RegionCode partial;  // Pi vectors, routing trees and forced chains only
    std::vector<ReductionStep> trace;
};

struct ConstructFail {
    bool separable_base = false;  // the failing instance was the separable case
    std::optional<CharacterResult> chr;
    std::optional<CompatibilityReport> compat;
};

using ConstructResult = std::variant<ConstructOk, ConstructFail>;

// shortest region path from q to target over child arcs, smallest ids first
std::vector<int> chain_path(const RegionGraph& rg, int q, int target) {
    std::map<int, int> prev;
    std::deque<int> queue{q};
    std::set<int> seen{q};
    while (!queue.empty()) {
        int r = queue.front();
        queue.pop_front();
        if (r == target) break;
        for (int c : rg.children[r]) {
            if (seen.count(c)) continue;
            seen.insert(c);
            prev[c] = r;
            queue.push_back(c);
        }
    }
    if (!seen.count(target)) throw std::logic_error("chain_path: target unreachable");
    std::vector<int> path;
    for (int at = target; at != q; at = prev.at(at)) path.push_back(at);
    std::reverse(path.begin(), path.end());
    return path;
}

ConstructResult construct_solution(const RegionGraph& rg, const std::vector<int>& designated,
                                   int depth) {
    TerminalProfile prof = compute_profile(rg, designated);
    if (prof.assumption1)
        throw std::logic_error("construct_solution: designated terminal inside Pi");

    if (prof.separable) {
        auto chr = character_partition(rg, prof);
        if (chr.halt == HaltReason::SourceClassesMerged) {
            CompatibilityReport rep;
            rep.compatible = false;
            CompatibilityViolation v;
        v.kind = CompatibilityViolation::SourceClassesEqual;
        rep.violations.push_back(v);
            return ConstructFail{true, std::move(chr), std::move(rep)};
        }
        auto compat = is_compatible(chr.partition, rg, prof);
        if (!compat.compatible) return ConstructFail{true, std::move(chr), std::move(compat)};

        const int K = std::max(3, chr.partition.class_count());
        const uint32_t p = choose_prime(K);
        auto fam = std::get<BFamily>(generate_B(K, p));
        RegionCode pi_code = assign_pi_code(chr.partition, rg, prof, fam);
        RegionCode partial = extend_code(rg, prof, pi_code, /*fill_rest=*/false);
        return ConstructOk{std::move(partial), {}};
    }

    if (depth <= 0) return ConstructFail{};

    // every non-singleton Omega set is a reduction candidate; larger index
    // sets first, then lexicographic, then the smallest region
    std::vector<std::set<int>> candidates;
    for (const auto& [iset, regions] : prof.omega)
        if (iset.size() >= 2 && !regions.empty()) candidates.push_back(iset);
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });

    for (const auto& iset : candidates) {
        for (int q : prof.omega.at(iset)) {
            auto red = super_terminal_reduce(rg, prof, iset, q);
            auto sub = construct_solution(rg, red.designated, depth - 1);
            if (std::holds_alternative<ConstructFail>(sub)) continue;
            auto ok = std::get<ConstructOk>(std::move(sub));
            const uint32_t p = ok.partial.p;
            const Vec3 bar = Vec3::all_ones(p);
            if (ok.partial.vectors.at(q) != bar)
                throw std::logic_error("reduction: super terminal missed all-ones");
            ReductionStep step{iset, q, {}};
            for (int j : iset) {
                for (int w : chain_path(rg, q, designated[j - 1])) {
                    auto it = ok.partial.vectors.find(w);
                    if (it != ok.partial.vectors.end()) {
                        if (it->second != bar)
                            throw std::logic_error("reduction chain collides with assigned region");
                    } else {
                        ok.partial.vectors[w] = bar;
                        step.chain_regions.push_back(w);
                    }
                }
            }
            ok.trace.insert(ok.trace.begin(), std::move(step));
            return ok;
        }
    }
    return ConstructFail{};
}

Decision decide_core(const RegionGraph& rg, const DecideOptions& opts) {
    if (rg.k != 3) throw std::invalid_argument("decision procedures require exactly 3 sources");
    Decision d;
    d.k = rg.k;
    d.n = rg.n;

    std::vector<int> designated(rg.n);
    for (int j = 1; j <= rg.n; ++j) designated[j - 1] = rg.terminal_region(j);

    // a terminal trapped in a pairwise super region can only see two unit
    // vectors; this also subsumes the broken-connectivity cases it causes
    TerminalProfile prof = compute_profile(rg);
    d.separable = prof.separable;
    if (prof.assumption1) {
        d.status = Status::Unsolvable;
        d.assumption1 = prof.assumption1;
        d.note = "a terminal region lies inside a pairwise source super region";
        return d;
    }

    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= rg.n; ++j)
            if (!region_reaches(rg, rg.source_region(i), designated[j - 1]))
                d.disconnected.emplace_back(i, j);
    if (!d.disconnected.empty()) {
        d.status = Status::Unsolvable;
        d.note = "a source does not reach a terminal";
        return d;
    }

    auto res = construct_solution(rg, designated, rg.n + 1);
    if (auto* ok = std::get_if<ConstructOk>(&res)) {
        RegionCode full = std::move(ok->partial);
        fill_unassigned(rg, full);
        if (auto bad = verify_region_code(rg, full))
            throw std::logic_error("constructed code failed verification: " + bad->describe());
        d.status = Status::Solvable;
        d.region_code = std::move(full);
        d.reduction_trace = std::move(ok->trace);
        if (d.n == 3 && prof.separable) {
            if (check_cir(rg, prof))
                throw std::logic_error("three-terminal cross-check disagrees: pattern found "
                                       "on a feasible instance");
        }
        return d;
    }

    auto& fail = std::get<ConstructFail>(res);
    if (prof.separable) {
        d.status = Status::Unsolvable;
        d.halt = fail.chr->halt;
        d.compatibility = fail.compat;
        d.partition_history = fail.chr->partition.history;
        for (int c : fail.chr->partition.active) {
            const auto& roster = fail.chr->partition.roster[c];
            d.partition_classes.emplace_back(roster.begin(), roster.end());
        }
        if (d.n == 3) {
            d.cir = check_cir(rg, prof);
            if (!d.cir)
                throw std::logic_error("three-terminal cross-check disagrees: no pattern on "
                                       "an infeasible instance");
        }
        if (auto sc = simple_case_condition(rg, prof); sc && d.n == 3)
            throw std::logic_error("sufficient feasibility condition met on an instance "
                                   "decided infeasible");
        return d;
    }

    if (rg.n <= 3)
        throw std::logic_error("reduction failed on an instance the theory guarantees");

    // theory is silent here: fall back to exhaustive evidence
    for (uint32_t q : opts.oracle_fields) {
        auto r = brute_force_region(rg, q, opts.oracle_budget);
        if (auto* found = std::get_if<OracleFound<RegionCode>>(&r)) {
            if (auto bad = verify_region_code(rg, found->code))
                throw std::logic_error("search produced an invalid code: " + bad->describe());
            d.status = Status::Solvable;
            d.region_code = std::move(found->code);
            d.note = "code found by exhaustive search over GF(" + std::to_string(q) + ")";
            d.oracle_evidence.push_back({q, "found", found->stats.nodes});
            return d;
        }
        if (std::holds_alternative<OracleInfeasible>(r))
            d.oracle_evidence.push_back({q, "infeasible", std::get<OracleInfeasible>(r).stats.nodes});
        else
            d.oracle_evidence.push_back({q, "exhausted", std::get<OracleExhausted>(r).stats.nodes});
    }
    d.status = Status::Unknown;
    d.note = "not terminal-separable and more than three terminals; no reduction branch closed";
    return d;
}

}  // namespace

Decision decide_region_graph(const RegionGraph& rg, const DecideOptions& opts) {
    return decide_core(rg, opts);
}

Decision decide_terminal_separable(const RegionGraph& rg, const TerminalProfile& prof) {
    if (!prof.separable) throw std::invalid_argument("instance is not terminal-separable");
    if (prof.assumption1) throw std::invalid_argument("a terminal region lies inside Pi");
    return decide_core(rg, {});
}

Decision decide_3s3t(const RegionGraph& rg, const TerminalProfile& prof, const DecideOptions& opts) {
    if (prof.n() != 3) throw std::invalid_argument("decide_3s3t needs exactly 3 terminals");
    return decide_core(rg, opts);
}

std::optional<CirWitness> check_cir(const RegionGraph& rg, const TerminalProfile& prof) {
    if (prof.n() != 3) throw std::invalid_argument("check_cir needs exactly 3 terminals");
    if (!prof.separable) throw std::invalid_argument("check_cir needs a terminal-separable instance");

    std::array<int, 3> perm{1, 2, 3};
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> t = perm;
    std::sort(t.begin(), t.end());
    do perms.push_back(t);
    while (std::next_permutation(t.begin(), t.end()));

    for (const auto& src : perms) {
        const int s1 = rg.source_region(src[0]);
        const auto& plane23 = prof.planes[plane_index(src[1], src[2])];
        const auto& plane12 = prof.planes[plane_index(src[0], src[1])];
        for (const auto& term : perms) {
            auto lam1 = prof.lambda_of(term[0]);
            auto lam2 = prof.lambda_of(term[1]);
            auto lam3 = prof.lambda_of(term[2]);
            if (lam1.size() != 2 || !lam1.count(s1)) continue;
            int p1 = -1;
            for (int r : lam1)
                if (r != s1) p1 = r;
            if (!plane23.count(p1) || rg.regions[p1].is_source()) continue;
            if (lam2.size() != 2 || !lam2.count(p1)) continue;
            int p2 = -1;
            for (int r : lam2)
                if (r != p1) p2 = r;
            if (!plane12.count(p2) || rg.regions[p2].is_source()) continue;
            auto u = super_region(rg, {s1, p2});
            auto u2 = super_region(rg, {s1, rg.source_region(src[2])});
            u.insert(u2.begin(), u2.end());
            if (std::all_of(lam3.begin(), lam3.end(), [&](int r) { return u.count(r) > 0; }))
                return CirWitness{src, term, p1, p2};
        }
    }
    return std::nullopt;
}

ReducedInstance super_terminal_reduce(const RegionGraph& rg, const TerminalProfile& prof,
                                      const std::set<int>& index_set, int q_region) {
    if (index_set.size() < 2) throw std::invalid_argument("reduction needs |I| >= 2");
    auto it = prof.omega.find(index_set);
    if (it == prof.omega.end() || !it->second.count(q_region))
        throw std::invalid_argument("region is not in Omega for this index set");
    (void)rg;
    ReducedInstance red;
    red.replaced = index_set;
    red.q_region = q_region;
    for (size_t j = 1; j <= prof.designated.size(); ++j)
        if (!index_set.count(static_cast<int>(j))) red.designated.push_back(prof.designated[j - 1]);
    red.designated.push_back(q_region);
    return red;
}

std::optional<int> simple_case_condition(const RegionGraph& rg, const TerminalProfile& prof) {
    if (prof.n() != 3 || !prof.separable) return std::nullopt;
    std::array<std::set<int>, 3> lam;
    for (int j = 1; j <= 3; ++j) lam[j - 1] = prof.lambda_of(j);

    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (lam[a].size() >= 3 && lam[b].size() >= 3) return 1;

    bool pairwise_ok = true;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            if (lam[a].size() != 2 || lam[b].size() != 2) continue;
            std::vector<int> inter;
            std::set_intersection(lam[a].begin(), lam[a].end(), lam[b].begin(), lam[b].end(),
                                  std::back_inserter(inter));
            if (!inter.empty()) pairwise_ok = false;
        }
    if (pairwise_ok) return 2;

    bool source_free = true;
    for (const auto& l : lam)
        for (int r : l)
            if (rg.regions[r].is_source()) source_free = false;
    if (source_free) return 3;

    for (int p = 0; p < 3; ++p) {
        std::set<int> open = prof.planes[p];
        open.erase(rg.source_region(kPlanes[p].i1));
        open.erase(rg.source_region(kPlanes[p].i2));
        bool all_hit = true;
        for (const auto& l : lam) {
            bool hit = false;
            for (int r : l)
                if (open.count(r)) hit = true;
            if (!hit) all_hit = false;
        }
        if (all_hit) return 4;
    }
    return std::nullopt;
}

Decision decide_network(const AugmentedNetwork& aug, const DecideOptions& opts) {
    auto rep = validate(aug);
    if (!rep.acyclic) throw std::invalid_argument("instance rejected: cycle detected");
    if (!rep.dangling_nodes.empty())
        throw std::invalid_argument("instance rejected: node '" +
                                    aug.base.nodes[rep.dangling_nodes.front()] +
                                    "' has outgoing edges but no incoming edge");
    Decision d;
    d.k = aug.k();
    d.n = aug.n();
    if (aug.k() > 3) throw std::invalid_argument("at most 3 sources are supported");

    if (!rep.disconnected.empty()) {
        d.status = Status::Unsolvable;
        d.disconnected = rep.disconnected;
        d.note = "a source does not reach a terminal";
        return d;
    }

    if (aug.k() <= 2) {
        // connectivity settles these instances; route unit vectors over the
        // per-source reachable edge sets and merge to all-ones where both meet
        const uint32_t p = 2;
        EdgeCode code;
        code.p = p;
        std::vector<int> order;  // topological over edges via repeated scan
        std::vector<uint32_t> mask(aug.total_edges + 1, 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (int e = 1; e <= aug.total_edges; ++e) {
                uint32_t m = mask[e];
                if (aug.kind(e) == EdgeKind::SourceLink) m = 1u << (aug.source_index(e) - 1);
                for (int x : aug.in_links(e)) m |= mask[x];
                if (m != mask[e]) {
                    mask[e] = m;
                    changed = true;
                }
            }
        }
        for (int e = 1; e <= aug.total_edges; ++e) {
            Vec3 v = Vec3::zero(p);
            for (int i = 0; i < aug.k(); ++i)
                if (mask[e] & (1u << i)) v = v + Vec3::alpha(p, i + 1);
            code.vectors[e] = v;
        }
        if (auto bad = verify_edge_code(aug, code))
            throw std::logic_error("routing code failed verification: " + bad->describe());
        d.status = Status::Solvable;
        d.edge_code = std::move(code);
        d.note = "decided by the source-terminal connectivity condition (fewer than 3 sources)";
        return d;
    }

    RegionGraph rg = basic_decompose(aug);
    Decision core = decide_core(rg, opts);
    core.k = d.k;
    core.n = d.n;
    if (core.status == Status::Solvable && core.region_code) {
        EdgeCode lifted = lift_to_edges(aug, rg, *core.region_code);
        if (auto bad = verify_edge_code(aug, lifted))
            throw std::logic_error("lifted code failed verification: " + bad->describe());
        core.edge_code = std::move(lifted);
    }
    return core;
}

bool reverify_region_decision(const Decision& d, const RegionGraph& rg) {
    switch (d.status) {
        case Status::Solvable:
            return d.region_code && !verify_region_code(rg, *d.region_code);
        case Status::Unsolvable: {
            if (!d.disconnected.empty()) {
                for (auto [i, j] : d.disconnected)
                    if (region_reaches(rg, rg.source_region(i), rg.terminal_region(j)))
                        return false;
                return true;
            }
            TerminalProfile prof = compute_profile(rg);
            if (d.assumption1)
                return prof.planes[d.assumption1->plane].count(
                           prof.designated[d.assumption1->terminal_index - 1]) > 0;
            if (d.cir) {
                auto w = check_cir(rg, prof);
                return w.has_value();
            }
            if (d.halt) {
                if (!replay_history(rg, prof, d.partition_history)) return false;
                if (*d.halt == HaltReason::SourceClassesMerged) return true;
                auto chr = character_partition(rg, prof);
                return !is_compatible(chr.partition, rg, prof).compatible;
            }
            return false;
        }
        case Status::Unknown:
            if (d.oracle_evidence.empty()) return false;
            for (const auto& ev : d.oracle_evidence)
                if (ev.result == "found") return false;
            return true;
    }
    return false;
}

bool reverify_network_decision(const Decision& d, const AugmentedNetwork& aug) {
    switch (d.status) {
        case Status::Solvable:
            return d.edge_code && !verify_edge_code(aug, *d.edge_code);
        case Status::Unsolvable: {
            if (!d.disconnected.empty()) {
                auto rep = validate(aug);
                for (auto [i, j] : d.disconnected)
                    if (std::find(rep.disconnected.begin(), rep.disconnected.end(),
                                  std::make_pair(i, j)) == rep.disconnected.end())
                        return false;
                return true;
            }
            return reverify_region_decision(d, basic_decompose(aug));
        }
        case Status::Unknown:
            return reverify_region_decision(d, basic_decompose(aug));
    }
    return false;
}

namespace {

nlohmann::ordered_json set_to_json(const std::set<int>& s, const RegionGraph* rg) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (int r : s) arr.push_back(rg ? nlohmann::ordered_json(rg->regions[r].name)
                                     : nlohmann::ordered_json(r));
    return arr;
}

nlohmann::ordered_json witness_to_json(const ConnectionWitness& w, const RegionGraph* rg) {
    nlohmann::ordered_json out;
    auto sub = [&](const SubclassRef& s) {
        nlohmann::ordered_json o;
        o["class"] = s.class_id;
        if (s.source_view)
            o["subclass"] = "source";
        else
            o["subclass"] = "plane(" + std::to_string(kPlanes[s.plane].i1) + "," +
                            std::to_string(kPlanes[s.plane].i2) + ")";
        return o;
    };
    if (const auto* lw = std::get_if<LambdaWitness>(&w)) {
        out["kind"] = "lambda-containment";
        out["j"] = lw->j;
        out["left"] = sub(lw->left);
        out["right"] = sub(lw->right);
    } else {
        const auto& ow = std::get<OverlapWitness>(w);
        out["kind"] = "reg-overlap";
        out["plane"] = {kPlanes[ow.plane].i1, kPlanes[ow.plane].i2};
        out["region"] =
            rg ? nlohmann::ordered_json(rg->regions[ow.overlap_region].name)
               : nlohmann::ordered_json(ow.overlap_region);
    }
    return out;
}

}  // namespace

std::string decision_to_json(const Decision& d, const RegionGraph* rg) {
    nlohmann::ordered_json j;
    j["status"] = to_string(d.status);

    nlohmann::ordered_json cert;
    if (d.status == Status::Solvable) {
        if (d.edge_code) {
            cert["kind"] = "edge-code";
            nlohmann::ordered_json vecs;
            for (const auto& [e, v] : d.edge_code->vectors)
                vecs[std::to_string(e)] = {v.c[0], v.c[1], v.c[2]};
            cert["prime"] = d.edge_code->p;
            cert["vectors"] = std::move(vecs);
        } else if (d.region_code) {
            cert["kind"] = "region-code";
            nlohmann::ordered_json vecs;
            for (const auto& [r, v] : d.region_code->vectors) {
                std::string key = rg ? rg->regions[r].name : std::to_string(r);
                vecs[key] = {v.c[0], v.c[1], v.c[2]};
            }
            cert["prime"] = d.region_code->p;
            cert["vectors"] = std::move(vecs);
        }
        if (!d.reduction_trace.empty()) {
            nlohmann::ordered_json steps = nlohmann::ordered_json::array();
            for (const auto& s : d.reduction_trace) {
                nlohmann::ordered_json o;
                o["replaced_terminals"] = s.index_set;
                o["super_terminal"] =
                    rg ? nlohmann::ordered_json(rg->regions[s.q_region].name)
                       : nlohmann::ordered_json(s.q_region);
                nlohmann::ordered_json chain = nlohmann::ordered_json::array();
                for (int w : s.chain_regions)
                    chain.push_back(rg ? nlohmann::ordered_json(rg->regions[w].name)
                                       : nlohmann::ordered_json(w));
                o["all_ones_chain"] = std::move(chain);
                steps.push_back(std::move(o));
            }
            cert["reduction_trace"] = std::move(steps);
        }
    } else if (d.status == Status::Unsolvable) {
        if (!d.disconnected.empty()) {
            cert["kind"] = "connectivity-violation";
            nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
            for (auto [i, jj] : d.disconnected) pairs.push_back({i, jj});
            cert["pairs"] = std::move(pairs);
        } else if (d.assumption1) {
            cert["kind"] = "terminal-inside-pi";
            cert["terminal"] = d.assumption1->terminal_index;
            cert["plane"] = {kPlanes[d.assumption1->plane].i1, kPlanes[d.assumption1->plane].i2};
        } else if (d.cir) {
            cert["kind"] = "infeasibility-pattern";
            cert["source_naming"] = d.cir->source_naming;
            cert["terminal_naming"] = d.cir->terminal_naming;
            cert["p1"] = rg ? nlohmann::ordered_json(rg->regions[d.cir->p1].name)
                            : nlohmann::ordered_json(d.cir->p1);
            cert["p2"] = rg ? nlohmann::ordered_json(rg->regions[d.cir->p2].name)
                            : nlohmann::ordered_json(d.cir->p2);
        } else if (d.halt) {
            cert["kind"] = "incompatible-partition";
        }
    } else {
        cert["kind"] = "search-evidence";
    }

    if (d.halt) {
        cert["halt_reason"] = (*d.halt == HaltReason::NoConnections) ? "no-connections"
                                                                     : "source-classes-merged";
        nlohmann::ordered_json classes = nlohmann::ordered_json::array();
        for (const auto& roster : d.partition_classes)
            classes.push_back(set_to_json(std::set<int>(roster.begin(), roster.end()), rg));
        cert["classes"] = std::move(classes);
        nlohmann::ordered_json hist = nlohmann::ordered_json::array();
        for (const auto& step : d.partition_history) {
            nlohmann::ordered_json o;
            o["merged"] = {step.c1, step.c2};
            o["witness"] = witness_to_json(step.witness, rg);
            hist.push_back(std::move(o));
        }
        cert["history"] = std::move(hist);
        if (d.compatibility) {
            nlohmann::ordered_json viols = nlohmann::ordered_json::array();
            for (const auto& v : d.compatibility->violations) {
                nlohmann::ordered_json o;
                o["what"] = v.describe();
                if (v.kind == CompatibilityViolation::LambdaTrapped) {
                    o["j"] = v.j;
                    o["plane"] = {kPlanes[v.plane].i1, kPlanes[v.plane].i2};
                }
                viols.push_back(std::move(o));
            }
            cert["violations"] = std::move(viols);
        }
    }
    if (!d.oracle_evidence.empty()) {
        nlohmann::ordered_json ev = nlohmann::ordered_json::array();
        for (const auto& e : d.oracle_evidence) {
            nlohmann::ordered_json o;
            o["prime"] = e.prime;
            o["result"] = e.result;
            o["nodes"] = e.nodes;
            ev.push_back(std::move(o));
        }
        cert["search"] = std::move(ev);
    }
    j["certificate"] = std::move(cert);

    nlohmann::ordered_json diag;
    diag["k"] = d.k;
    diag["n"] = d.n;
    diag["separable"] = d.separable;
    if (!d.note.empty()) diag["note"] = d.note;
    j["diagnostics"] = std::move(diag);
    return j.dump(2) + "\n";
}

}  // namespace sumnet
