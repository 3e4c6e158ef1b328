#ifndef SUMNET_TESTS_SUPPORT_HPP
#define SUMNET_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sumnet/classify.hpp"
#include "sumnet/region_graph.hpp"

namespace support {

inline std::set<int> ids_of(const sumnet::RegionGraph& rg, const std::vector<std::string>& names) {
    std::set<int> out;
    for (const auto& nm : names) out.insert(rg.region_by_name(nm));
    return out;
}

inline std::set<std::string> names_of(const sumnet::RegionGraph& rg, const std::set<int>& ids) {
    std::set<std::string> out;
    for (int r : ids) out.insert(rg.regions[r].name);
    return out;
}

// Random direct region-graph instance: a few coding regions per source
// plane, then terminals drawn from Pi with parents straddling at least two
// planes. Always terminal-separable with every source reaching every
// terminal.
inline sumnet::RegionGraph random_separable_rg(uint64_t seed, int max_plane_regions = 3,
                                               int n_terminals = 3) {
    std::mt19937_64 rng(seed);
    sumnet::RegionGraphSpec spec;
    using Entry = sumnet::RegionGraphSpec::Entry;
    for (int i = 1; i <= 3; ++i) {
        Entry e;
        e.name = "S" + std::to_string(i);
        e.source_index = i;
        spec.entries.push_back(e);
    }
    // plane members, seeded with the two sources
    std::vector<std::vector<std::string>> plane_members(3);
    for (int p = 0; p < 3; ++p) {
        plane_members[p] = {"S" + std::to_string(sumnet::kPlanes[p].i1),
                            "S" + std::to_string(sumnet::kPlanes[p].i2)};
        std::uniform_int_distribution<int> cnt(1, max_plane_regions);
        int m = cnt(rng);
        for (int x = 0; x < m; ++x) {
            Entry e;
            e.name = "P" + std::to_string(p) + "_" + std::to_string(x);
            std::uniform_int_distribution<int> pick(0, static_cast<int>(plane_members[p].size()) - 1);
            int a = pick(rng), b = pick(rng);
            while (b == a) b = pick(rng);
            e.parent_names = {plane_members[p][a], plane_members[p][b]};
            spec.entries.push_back(e);
            plane_members[p].push_back(e.name);
        }
    }
    // terminals straddle two planes: the parent pair must not fit inside a
    // single pairwise super region (sources belong to two planes at once)
    auto same_plane = [&](const std::string& a, const std::string& b) {
        for (int p = 0; p < 3; ++p) {
            bool ha = std::find(plane_members[p].begin(), plane_members[p].end(), a) !=
                      plane_members[p].end();
            bool hb = std::find(plane_members[p].begin(), plane_members[p].end(), b) !=
                      plane_members[p].end();
            if (ha && hb) return true;
        }
        return false;
    };
    for (int j = 1; j <= n_terminals; ++j) {
        Entry e;
        e.name = "T" + std::to_string(j);
        e.terminal_index = j;
        std::uniform_int_distribution<int> plane_pick(0, 2);
        auto pick_from = [&](int p) {
            std::uniform_int_distribution<int> pick(0, static_cast<int>(plane_members[p].size()) - 1);
            return plane_members[p][pick(rng)];
        };
        std::string a, b;
        do {
            a = pick_from(plane_pick(rng));
            b = pick_from(plane_pick(rng));
        } while (a == b || same_plane(a, b));
        e.parent_names = {a, b};
        std::uniform_int_distribution<int> extra(0, 3);
        if (extra(rng) == 0) {
            std::string third = pick_from(plane_pick(rng));
            if (third != a && third != b) e.parent_names.push_back(third);
        }
        spec.entries.push_back(e);
    }
    return region_graph_of(spec);
}

}  // namespace support

#endif
