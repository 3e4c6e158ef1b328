#include "sumnet/oracle.hpp"

#include <algorithm>
#include <chrono>

namespace sumnet {

namespace {

// echelonized basis of a subspace of GF(p)^3
struct Basis {
    Vec3 rows[3];
    int rank = 0;
    uint32_t p;
    explicit Basis(uint32_t prime) : p(prime) {}

    void add(Vec3 v) {
        Gf f(p);
        for (int i = 0; i < rank; ++i) {
            int lead = 0;
            while (lead < 3 && rows[i].c[lead] == 0) ++lead;
            if (lead < 3 && v.c[lead] != 0)
                v = v - rows[i].scaled(f.mul(v.c[lead], f.inv(rows[i].c[lead])));
        }
        if (v.is_zero()) return;
        rows[rank++] = v.normalized();
        std::sort(rows, rows + rank, [](const Vec3& a, const Vec3& b) {
            auto lead = [](const Vec3& x) {
                int i = 0;
                while (i < 3 && x.c[i] == 0) ++i;
                return i;
            };
            return lead(a) < lead(b);
        });
        // re-echelonize upwards
        for (int i = 0; i < rank; ++i)
            for (int j = i + 1; j < rank; ++j) {
                int lead = 0;
                while (lead < 3 && rows[j].c[lead] == 0) ++lead;
                if (lead < 3 && rows[i].c[lead] != 0)
                    rows[i] = rows[i] - rows[j].scaled(rows[i].c[lead]);
            }
    }

    void add_basis(const Basis& o) {
        for (int i = 0; i < o.rank; ++i) add(o.rows[i]);
    }

    bool contains(Vec3 v) const {
        Gf f(p);
        for (int i = 0; i < rank; ++i) {
            int lead = 0;
            while (lead < 3 && rows[i].c[lead] == 0) ++lead;
            if (lead < 3 && v.c[lead] != 0)
                v = v - rows[i].scaled(f.mul(v.c[lead], f.inv(rows[i].c[lead])));
        }
        return v.is_zero();
    }
};

// Shared search skeleton: cells in topological order, pinned sources and
// terminals, free cells drawing from their in-cells' span.
struct SearchProblem {
    uint32_t p;
    Vec3 bar;
    std::vector<std::optional<Vec3>> pinned;
    std::vector<char> skip_span_check;       // imaginary source cells
    std::vector<char> must_be_bar;
    std::vector<std::vector<int>> ins;       // in-cell ids, all earlier in order
    std::vector<char> relevant;              // reaches a terminal cell
    bool conflict = false;                   // pinning contradiction at setup
};

struct SearchOutcome {
    bool found = false;
    bool exhausted = false;
    std::vector<Vec3> values;
    SearchStats stats;
};

void compute_relevance(SearchProblem& prob) {
    const int m = static_cast<int>(prob.ins.size());
    std::vector<std::vector<int>> outs(m);
    for (int c = 0; c < m; ++c)
        for (int i : prob.ins[c]) outs[i].push_back(c);
    prob.relevant.assign(m, 0);
    std::vector<int> stack;
    for (int c = 0; c < m; ++c)
        if (prob.must_be_bar[c]) {
            prob.relevant[c] = 1;
            stack.push_back(c);
        }
    while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        for (int i : prob.ins[c])
            if (!prob.relevant[i]) {
                prob.relevant[i] = 1;
                stack.push_back(i);
            }
    }
}

// Upper bound of each cell's achievable span given the partial assignment;
// prunes when some terminal can no longer reach all-ones.
bool bar_still_reachable(const SearchProblem& prob, const std::vector<Vec3>& values,
                         int assigned_upto) {
    const int m = static_cast<int>(prob.ins.size());
    std::vector<Basis> pot;
    pot.reserve(m);
    for (int c = 0; c < m; ++c) {
        Basis b(prob.p);
        if (c <= assigned_upto) {
            b.add(values[c]);
        } else if (prob.pinned[c]) {
            b.add(*prob.pinned[c]);
        } else {
            for (int i : prob.ins[c]) b.add_basis(pot[i]);
        }
        if (prob.must_be_bar[c] && c > assigned_upto) {
            Basis feed(prob.p);
            for (int i : prob.ins[c]) feed.add_basis(pot[i]);
            if (!feed.contains(prob.bar)) return false;
        }
        pot.push_back(std::move(b));
    }
    return true;
}

SearchOutcome run_search(const SearchProblem& prob, const SearchBudget& budget) {
    SearchOutcome out;
    if (prob.conflict) return out;
    const int m = static_cast<int>(prob.ins.size());
    std::vector<Vec3> values(m, Vec3::zero(prob.p));
    std::vector<std::vector<Vec3>> cands(m);
    std::vector<size_t> choice(m, 0);
    const auto t0 = std::chrono::steady_clock::now();

    auto over_budget = [&]() {
        if (out.stats.nodes > budget.node_limit) return true;
        if (budget.time_limit_seconds > 0 && (out.stats.nodes & 0xfff) == 0) {
            auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
            if (dt.count() > budget.time_limit_seconds) return true;
        }
        return false;
    };

    int c = 0;
    bool descending = true;
    while (true) {
        if (c == m) {
            out.found = true;
            out.values = values;
            return out;
        }
        if (over_budget()) {
            out.exhausted = true;
            return out;
        }

        if (descending) {
            // build candidate list for this cell
            std::vector<Vec3> gens;
            for (int i : prob.ins[c]) gens.push_back(values[i]);
            if (prob.pinned[c]) {
                bool ok = prob.skip_span_check[c] || in_span(*prob.pinned[c], gens).has_value();
                cands[c] = ok ? std::vector<Vec3>{*prob.pinned[c]} : std::vector<Vec3>{};
            } else {
                auto members = span_members_normalized(gens, prob.p);
                if (members.empty()) members.push_back(Vec3::zero(prob.p));
                if (!prob.relevant[c]) members.resize(1);  // value never reaches a terminal
                cands[c] = std::move(members);
            }
            choice[c] = 0;
        }

        bool advanced = false;
        while (choice[c] < cands[c].size()) {
            values[c] = cands[c][choice[c]];
            ++choice[c];
            ++out.stats.nodes;
            bool prune = cands[c].size() > 1 && !bar_still_reachable(prob, values, c);
            if (!prune) {
                advanced = true;
                break;
            }
        }
        if (advanced) {
            ++c;
            descending = true;
        } else {
            --c;
            if (c < 0) return out;  // exact: no code over this field
            descending = false;
        }
    }
}

}  // namespace

RegionOracleResult brute_force_region(const RegionGraph& rg, uint32_t q,
                                      const SearchBudget& budget, int k) {
    SearchProblem prob{q, Vec3::all_ones(q, k), {}, {}, {}, {}, {}, false};
    const int m = rg.region_count();
    // cells in the region graph's topological order
    std::vector<int> cell_of_region(m);
    for (int i = 0; i < m; ++i) cell_of_region[rg.topo_order[i]] = i;
    prob.pinned.assign(m, std::nullopt);
    prob.skip_span_check.assign(m, 0);
    prob.must_be_bar.assign(m, 0);
    prob.ins.assign(m, {});
    for (int r = 0; r < m; ++r) {
        int c = cell_of_region[r];
        const Region& reg = rg.regions[r];
        for (int p : rg.parents[r]) prob.ins[c].push_back(cell_of_region[p]);
        std::sort(prob.ins[c].begin(), prob.ins[c].end());
        if (reg.is_source() && *reg.source_index <= k) {
            prob.pinned[c] = Vec3::alpha(q, *reg.source_index);
            prob.skip_span_check[c] = 1;
        }
        if (reg.is_terminal()) {
            prob.must_be_bar[c] = 1;
            if (prob.pinned[c] && *prob.pinned[c] != prob.bar) prob.conflict = true;
            prob.pinned[c] = prob.bar;
        }
    }
    compute_relevance(prob);

    auto outcome = run_search(prob, budget);
    if (outcome.found) {
        RegionCode code;
        code.p = q;
        for (int r = 0; r < m; ++r) code.vectors[r] = outcome.values[cell_of_region[r]];
        return OracleFound<RegionCode>{std::move(code), outcome.stats};
    }
    if (outcome.exhausted) return OracleExhausted{outcome.stats};
    return OracleInfeasible{q, outcome.stats};
}

EdgeOracleResult brute_force_edges(const AugmentedNetwork& aug, uint32_t q,
                                   const SearchBudget& budget) {
    const int m = aug.total_edges;
    SearchProblem prob{q, Vec3::all_ones(q, aug.k()), {}, {}, {}, {}, {}, false};
    prob.pinned.assign(m, std::nullopt);
    prob.skip_span_check.assign(m, 0);
    prob.must_be_bar.assign(m, 0);
    prob.ins.assign(m, {});

    // topological order over edges: e' before e whenever e' feeds e
    std::vector<int> cell_of_edge(m + 1, -1), indeg(m + 1, 0);
    std::vector<std::vector<int>> outs(m + 1);
    for (int e = 1; e <= m; ++e)
        for (int x : aug.in_links(e)) {
            outs[x].push_back(e);
            ++indeg[e];
        }
    std::vector<int> ready, order;
    for (int e = 1; e <= m; ++e)
        if (indeg[e] == 0) ready.push_back(e);
    std::sort(ready.begin(), ready.end());
    size_t qi = 0;
    while (qi < ready.size()) {
        int e = ready[qi++];
        order.push_back(e);
        std::vector<int> next;
        for (int y : outs[e])
            if (--indeg[y] == 0) next.push_back(y);
        std::sort(next.begin(), next.end());
        ready.insert(ready.end(), next.begin(), next.end());
    }
    if (static_cast<int>(order.size()) != m)
        throw std::invalid_argument("brute_force_edges: instance has a cycle");
    for (int i = 0; i < m; ++i) cell_of_edge[order[i]] = i;

    for (int e = 1; e <= m; ++e) {
        int c = cell_of_edge[e];
        for (int x : aug.in_links(e)) prob.ins[c].push_back(cell_of_edge[x]);
        std::sort(prob.ins[c].begin(), prob.ins[c].end());
        switch (aug.kind(e)) {
            case EdgeKind::SourceLink:
                prob.pinned[c] = Vec3::alpha(q, aug.source_index(e));
                prob.skip_span_check[c] = 1;
                break;
            case EdgeKind::TerminalLink:
                prob.pinned[c] = prob.bar;
                prob.must_be_bar[c] = 1;
                break;
            case EdgeKind::Internal:
                break;
        }
    }
    compute_relevance(prob);

    auto outcome = run_search(prob, budget);
    if (outcome.found) {
        EdgeCode code;
        code.p = q;
        for (int e = 1; e <= m; ++e) code.vectors[e] = outcome.values[cell_of_edge[e]];
        return OracleFound<EdgeCode>{std::move(code), outcome.stats};
    }
    if (outcome.exhausted) return OracleExhausted{outcome.stats};
    return OracleInfeasible{q, outcome.stats};
}

}  // namespace sumnet
