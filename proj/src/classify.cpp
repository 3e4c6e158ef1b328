#include "sumnet/classify.hpp"

#include <algorithm>
#include <stdexcept>

namespace sumnet {

int plane_index(int i1, int i2) {
    if (i1 > i2) std::swap(i1, i2);
    for (int p = 0; p < 3; ++p)
        if (kPlanes[p].i1 == i1 && kPlanes[p].i2 == i2) return p;
    throw std::invalid_argument("bad source pair");
}

int off_plane_of(int i) {
    switch (i) {
        case 1: return plane_index(2, 3);
        case 2: return plane_index(1, 3);
        case 3: return plane_index(1, 2);
    }
    throw std::invalid_argument("bad source index");
}

std::set<int> TerminalProfile::lambda_of(int j) const {
    auto it = lambda.find({j});
    return it == lambda.end() ? std::set<int>{} : it->second;
}

std::set<int> TerminalProfile::omega_of(int j) const {
    auto it = omega.find({j});
    return it == omega.end() ? std::set<int>{} : it->second;
}

std::set<int> compute_pi(const RegionGraph& rg) {
    if (rg.k != 3) throw std::invalid_argument("compute_pi needs exactly 3 source regions");
    std::set<int> pi;
    for (const auto& plane : kPlanes) {
        auto reg = super_region(rg, {rg.source_region(plane.i1), rg.source_region(plane.i2)});
        pi.insert(reg.begin(), reg.end());
    }
    return pi;
}

std::vector<std::set<int>> label_terminals(const RegionGraph& rg, const std::vector<int>& designated) {
    std::vector<std::set<int>> labels(rg.region_count());
    for (size_t j = 0; j < designated.size(); ++j)
        labels[designated[j]].insert(static_cast<int>(j) + 1);
    // children before parents
    for (auto it = rg.topo_order.rbegin(); it != rg.topo_order.rend(); ++it) {
        int r = *it;
        for (int c : rg.children[r]) labels[r].insert(labels[c].begin(), labels[c].end());
    }
    return labels;
}

TerminalProfile compute_profile(const RegionGraph& rg) {
    std::vector<int> designated(rg.n);
    for (int j = 1; j <= rg.n; ++j) designated[j - 1] = rg.terminal_region(j);
    return compute_profile(rg, designated);
}

TerminalProfile compute_profile(const RegionGraph& rg, const std::vector<int>& designated) {
    TerminalProfile prof;
    prof.designated = designated;
    for (int p = 0; p < 3; ++p)
        prof.planes[p] = super_region(
            rg, {rg.source_region(kPlanes[p].i1), rg.source_region(kPlanes[p].i2)});
    for (int p = 0; p < 3; ++p) prof.pi.insert(prof.planes[p].begin(), prof.planes[p].end());

    prof.labels = label_terminals(rg, designated);

    for (int r = 0; r < rg.region_count(); ++r) {
        if (prof.pi.count(r) || prof.labels[r].empty()) continue;
        prof.omega[prof.labels[r]].insert(r);
    }
    for (const auto& [iset, regions] : prof.omega) {
        std::set<int> lam;
        for (int r : regions)
            for (int q : rg.parents[r])
                if (prof.pi.count(q)) lam.insert(q);
        if (!lam.empty()) prof.lambda[iset] = lam;
    }

    prof.separable = true;
    for (const auto& [iset, regions] : prof.omega)
        if (iset.size() > 1 && !regions.empty()) prof.separable = false;

    prof.assumption1 = check_assumption1(rg, prof);
    return prof;
}

bool is_terminal_separable(const TerminalProfile& profile) { return profile.separable; }

std::optional<Assumption1Violation> check_assumption1(const RegionGraph& rg,
                                                      const TerminalProfile& profile) {
    (void)rg;
    for (size_t j = 0; j < profile.designated.size(); ++j)
        for (int p = 0; p < 3; ++p)
            if (profile.planes[p].count(profile.designated[j]))
                return Assumption1Violation{static_cast<int>(j) + 1, p};
    return std::nullopt;
}

}  // namespace sumnet
