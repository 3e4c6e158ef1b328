#include "sumnet/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace sumnet {

PiPartition trivial_partition(const std::set<int>& pi, const RegionGraph& rg) {
    if (pi.empty()) throw std::invalid_argument("trivial_partition: empty Pi");
    PiPartition part;
    part.universe.assign(pi.begin(), pi.end());
    part.class_of_region.assign(rg.region_count(), -1);
    part.roster.resize(pi.size());
    // source classes first, ids 0..2
    for (int i = 1; i <= 3; ++i) {
        int r = rg.source_region(i);
        if (!pi.count(r)) throw std::invalid_argument("source region outside Pi");
        part.roster[i - 1] = {r};
        part.class_of_region[r] = i - 1;
    }
    int next = 3;
    for (int r : part.universe) {
        if (part.class_of_region[r] >= 0) continue;
        part.roster[next] = {r};
        part.class_of_region[r] = next;
        ++next;
    }
    part.roster.resize(next);
    for (int c = 0; c < next; ++c) part.active.push_back(c);
    return part;
}

std::set<int> subclass_of(const PiPartition& part, const TerminalProfile& prof,
                          int class_id, int plane) {
    std::set<int> out;
    for (int r : part.roster[class_id])
        if (prof.planes[plane].count(r)) out.insert(r);
    return out;
}

std::set<int> source_subclass(const PiPartition& part, const TerminalProfile& prof, int i) {
    int c = part.source_class(i);
    std::set<int> out;
    for (int p = 0; p < 3; ++p) {
        if (p == off_plane_of(i)) continue;
        auto s = subclass_of(part, prof, c, p);
        out.insert(s.begin(), s.end());
    }
    return out;
}

std::vector<SubclassRef> subclasses_of(const PiPartition& part, int class_id) {
    std::vector<SubclassRef> out;
    if (part.is_source_class(class_id)) {
        out.push_back({class_id, true, -1});
        out.push_back({class_id, false, off_plane_of(class_id + 1)});
    } else {
        for (int p = 0; p < 3; ++p) out.push_back({class_id, false, p});
    }
    return out;
}

std::set<int> subclass_members(const PiPartition& part, const TerminalProfile& prof,
                               const SubclassRef& ref) {
    if (ref.source_view) return source_subclass(part, prof, ref.class_id + 1);
    return subclass_of(part, prof, ref.class_id, ref.plane);
}

namespace {

bool lambda_straddles(const std::set<int>& lam, const std::set<int>& a, const std::set<int>& b) {
    bool hit_a = false, hit_b = false;
    for (int r : lam) {
        if (a.count(r)) { hit_a = true; continue; }
        if (b.count(r)) { hit_b = true; continue; }
        return false;  // outside both subclasses
    }
    return hit_a && hit_b;
}

}  // namespace

std::optional<ConnectionWitness> classes_connected(const PiPartition& part, const RegionGraph& rg,
                                                   const TerminalProfile& prof, int c1, int c2) {
    if (c1 == c2) throw std::invalid_argument("classes_connected: identical classes");
    auto subs1 = subclasses_of(part, c1);
    auto subs2 = subclasses_of(part, c2);

    for (int j = 1; j <= prof.n(); ++j) {
        auto lam = prof.lambda_of(j);
        if (lam.empty()) continue;
        for (const auto& a : subs1) {
            auto sa = subclass_members(part, prof, a);
            if (sa.empty()) continue;
            for (const auto& b : subs2) {
                auto sb = subclass_members(part, prof, b);
                if (sb.empty()) continue;
                if (lambda_straddles(lam, sa, sb))
                    return ConnectionWitness{LambdaWitness{j, a, b}};
            }
        }
    }

    for (int p = 0; p < 3; ++p) {
        auto s1 = subclass_of(part, prof, c1, p);
        auto s2 = subclass_of(part, prof, c2, p);
        if (s1.empty() || s2.empty()) continue;  // reg(empty) = empty
        auto r1 = super_region(rg, s1);
        auto r2 = super_region(rg, s2);
        for (int r : r1)
            if (r2.count(r)) return ConnectionWitness{OverlapWitness{p, r}};
    }
    return std::nullopt;
}

bool verify_witness(const PiPartition& part, const RegionGraph& rg, const TerminalProfile& prof,
                    int c1, int c2, const ConnectionWitness& witness) {
    if (const auto* lw = std::get_if<LambdaWitness>(&witness)) {
        if (lw->left.class_id != c1 || lw->right.class_id != c2) return false;
        auto lam = prof.lambda_of(lw->j);
        if (lam.empty()) return false;
        auto a = subclass_members(part, prof, lw->left);
        auto b = subclass_members(part, prof, lw->right);
        return lambda_straddles(lam, a, b);
    }
    const auto& ow = std::get<OverlapWitness>(witness);
    auto s1 = subclass_of(part, prof, c1, ow.plane);
    auto s2 = subclass_of(part, prof, c2, ow.plane);
    if (s1.empty() || s2.empty()) return false;
    auto r1 = super_region(rg, s1);
    auto r2 = super_region(rg, s2);
    return r1.count(ow.overlap_region) && r2.count(ow.overlap_region);
}

void contract(PiPartition& part, const RegionGraph& rg, const TerminalProfile& prof,
              int c1, int c2, const ConnectionWitness& witness) {
    if (c1 > c2) std::swap(c1, c2);
    if (!verify_witness(part, rg, prof, c1, c2, witness))
        throw std::logic_error("contract: witness does not verify");
    if (part.is_source_class(c1) && part.is_source_class(c2)) part.source_merge = true;
    for (int r : part.roster[c2]) {
        part.roster[c1].insert(r);
        part.class_of_region[r] = c1;
    }
    part.roster[c2].clear();
    part.active.erase(std::find(part.active.begin(), part.active.end(), c2));
    part.history.push_back(MergeStep{c1, c2, witness});
}

CharacterResult character_partition(const RegionGraph& rg, const TerminalProfile& prof) {
    std::vector<int> rank;
    return character_partition_ordered(rg, prof, rank);
}

CharacterResult character_partition_ordered(const RegionGraph& rg, const TerminalProfile& prof,
                                            const std::vector<int>& class_rank) {
    PiPartition part = trivial_partition(prof.pi, rg);
    auto order_of = [&](int c) {
        return (c < static_cast<int>(class_rank.size())) ? class_rank[c] : c;
    };
    const size_t max_rounds = prof.pi.size() + 1;
    for (size_t round = 0; round < max_rounds; ++round) {
        bool contracted = false;
        std::vector<int> scan = part.active;
        std::sort(scan.begin(), scan.end(),
                  [&](int a, int b) { return order_of(a) < order_of(b); });
        for (size_t x = 0; x < scan.size() && !contracted; ++x) {
            for (size_t y = x + 1; y < scan.size() && !contracted; ++y) {
                int c1 = std::min(scan[x], scan[y]);
                int c2 = std::max(scan[x], scan[y]);
                auto w = classes_connected(part, rg, prof, c1, c2);
                if (!w) continue;
                contract(part, rg, prof, c1, c2, *w);
                contracted = true;
                if (part.source_merge)
                    return CharacterResult{std::move(part), HaltReason::SourceClassesMerged};
            }
        }
        if (!contracted) return CharacterResult{std::move(part), HaltReason::NoConnections};
    }
    throw std::logic_error("character_partition did not terminate");
}

std::string CompatibilityViolation::describe() const {
    switch (kind) {
        case SourceClassesEqual: return "two source classes coincide";
        case ConnectedPair:
            return "classes " + std::to_string(c1) + " and " + std::to_string(c2) +
                   " are connected";
        case LambdaTrapped:
            return "Lambda_" + std::to_string(j) + " lies inside the plane (" +
                   std::to_string(kPlanes[plane].i1) + "," + std::to_string(kPlanes[plane].i2) +
                   ") subclass union";
    }
    return "";
}

CompatibilityReport is_compatible(const PiPartition& part, const RegionGraph& rg,
                                  const TerminalProfile& prof) {
    CompatibilityReport rep;
    if (part.source_merge ||
        part.class_of(rg.source_region(1)) == part.class_of(rg.source_region(2)) ||
        part.class_of(rg.source_region(1)) == part.class_of(rg.source_region(3)) ||
        part.class_of(rg.source_region(2)) == part.class_of(rg.source_region(3))) {
        rep.compatible = false;
        CompatibilityViolation v;
        v.kind = CompatibilityViolation::SourceClassesEqual;
        rep.violations.push_back(v);
        return rep;
    }

    for (size_t x = 0; x < part.active.size(); ++x)
        for (size_t y = x + 1; y < part.active.size(); ++y) {
            int c1 = part.active[x], c2 = part.active[y];
            if (auto w = classes_connected(part, rg, prof, c1, c2)) {
                CompatibilityViolation v;
                v.kind = CompatibilityViolation::ConnectedPair;
                v.c1 = c1;
                v.c2 = c2;
                v.witness = w;
                rep.violations.push_back(std::move(v));
            }
        }

    for (int j = 1; j <= prof.n(); ++j) {
        auto lam = prof.lambda_of(j);
        if (lam.empty()) continue;
        for (int p = 0; p < 3; ++p) {
            std::set<int> u = source_subclass(part, prof, kPlanes[p].i1);
            auto u2 = source_subclass(part, prof, kPlanes[p].i2);
            u.insert(u2.begin(), u2.end());
            for (int c : part.active) {
                if (part.is_source_class(c)) continue;
                auto s = subclass_of(part, prof, c, p);
                u.insert(s.begin(), s.end());
            }
            if (std::all_of(lam.begin(), lam.end(), [&](int r) { return u.count(r) > 0; })) {
                CompatibilityViolation v;
            v.kind = CompatibilityViolation::LambdaTrapped;
                v.j = j;
                v.plane = p;
                rep.violations.push_back(std::move(v));
            }
        }
    }
    rep.compatible = rep.violations.empty();
    return rep;
}

bool replay_history(const RegionGraph& rg, const TerminalProfile& prof,
                    const std::vector<MergeStep>& history) {
    PiPartition part = trivial_partition(prof.pi, rg);
    for (const auto& step : history) {
        if (!verify_witness(part, rg, prof, step.c1, step.c2, step.witness)) return false;
        contract(part, rg, prof, step.c1, step.c2, step.witness);
    }
    return true;
}

}  // namespace sumnet
