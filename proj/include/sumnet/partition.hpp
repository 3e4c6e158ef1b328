#ifndef SUMNET_PARTITION_HPP
#define SUMNET_PARTITION_HPP

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sumnet/classify.hpp"

namespace sumnet {

// Identifies a subclass of an equivalence class: either the merged source
// view [S_i]_i, or the slice of the class inside one pairwise super region.
struct SubclassRef {
    int class_id;
    bool source_view = false;  // true: [S_i]_i for the class's source index
    int plane = -1;            // index into kPlanes when !source_view
};

struct LambdaWitness {
    int j;  // terminal index whose Lambda_j straddles the two subclasses
    SubclassRef left, right;
};

struct OverlapWitness {
    int plane;          // index into kPlanes
    int overlap_region; // smallest region in both subclass closures
};

using ConnectionWitness = std::variant<LambdaWitness, OverlapWitness>;

struct MergeStep {
    int c1, c2;  // class ids merged, c1 < c2; result keeps c1
    ConnectionWitness witness;
};

// A partition of Pi into equivalence classes. Class ids are stable: 0,1,2
// are the source classes of S1,S2,S3; the remaining ids follow Pi order.
// Merging keeps the smaller id.
struct PiPartition {
    std::vector<int> universe;            // Pi as sorted region ids
    std::vector<std::set<int>> roster;    // class id -> members (inactive: empty)
    std::vector<int> class_of_region;     // indexed by region id (-1 outside Pi)
    std::vector<int> active;              // active class ids, ascending
    std::vector<MergeStep> history;
    bool source_merge = false;            // two source classes were combined

    int class_count() const { return static_cast<int>(active.size()); }
    int class_of(int region) const { return class_of_region[region]; }
    bool is_source_class(int c) const { return c < 3; }
    int source_class(int i) const { return i - 1; }  // 1-based source index
};

PiPartition trivial_partition(const std::set<int>& pi, const RegionGraph& rg);

// the slice of [R] inside reg(S_i1, S_i2)
std::set<int> subclass_of(const PiPartition& part, const TerminalProfile& prof,
                          int class_id, int plane);
// the merged source view: [S_i]_{i,j1} with [S_i]_{i,j2}
std::set<int> source_subclass(const PiPartition& part, const TerminalProfile& prof, int i);

// the subclass family of a class, in deterministic scan order
std::vector<SubclassRef> subclasses_of(const PiPartition& part, int class_id);
std::set<int> subclass_members(const PiPartition& part, const TerminalProfile& prof,
                               const SubclassRef& ref);

// First witness that the two classes are connected, scanning Lambda
// containments (j ascending) before plane-closure overlaps, in plane order
// (1,2), (1,3), (2,3). A Lambda containment must straddle: it meets both
// subclasses, one from each class.
std::optional<ConnectionWitness> classes_connected(const PiPartition& part, const RegionGraph& rg,
                                                   const TerminalProfile& prof, int c1, int c2);

bool verify_witness(const PiPartition& part, const RegionGraph& rg, const TerminalProfile& prof,
                    int c1, int c2, const ConnectionWitness& witness);

// Merges the two classes; throws if the witness does not re-verify.
void contract(PiPartition& part, const RegionGraph& rg, const TerminalProfile& prof,
              int c1, int c2, const ConnectionWitness& witness);

enum class HaltReason { NoConnections, SourceClassesMerged };

struct CharacterResult {
    PiPartition partition;
    HaltReason halt;
};

// Repeatedly contracts the first connected pair under the deterministic
// scan; a contraction that identifies two source classes is performed and
// then reported as the halt reason.
CharacterResult character_partition(const RegionGraph& rg, const TerminalProfile& prof);
// Same, but class pairs are probed in the given preference order (a
// permutation of "rank"); the decision outcome is order-independent.
CharacterResult character_partition_ordered(const RegionGraph& rg, const TerminalProfile& prof,
                                            const std::vector<int>& class_rank);

struct CompatibilityViolation {
    enum Kind { SourceClassesEqual, ConnectedPair, LambdaTrapped } kind = SourceClassesEqual;
    // ConnectedPair:
    int c1 = -1, c2 = -1;
    std::optional<ConnectionWitness> witness;
    // LambdaTrapped: Lambda_j inside the plane subclass union
    int j = -1;
    int plane = -1;
    std::string describe() const;
};

struct CompatibilityReport {
    bool compatible = true;
    std::vector<CompatibilityViolation> violations;  // all found, scan order
};

CompatibilityReport is_compatible(const PiPartition& part, const RegionGraph& rg,
                                  const TerminalProfile& prof);

// re-runs every history step on a fresh trivial partition
bool replay_history(const RegionGraph& rg, const TerminalProfile& prof,
                    const std::vector<MergeStep>& history);

}  // namespace sumnet

#endif
