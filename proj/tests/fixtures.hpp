#ifndef SUMNET_TESTS_FIXTURES_HPP
#define SUMNET_TESTS_FIXTURES_HPP

#include <string>

#include "sumnet/classify.hpp"
#include "sumnet/network.hpp"
#include "sumnet/region_graph.hpp"

namespace fixtures {

// single source, single terminal, one edge
inline std::string line_net() {
    return "sources: s1\n"
           "terminals: t1\n"
           "edge: s1 t1\n";
}

// three sources into one terminal through a shared junction
inline std::string diamond_net() {
    return "sources: s1 s2 s3\n"
           "terminals: t1\n"
           "node: a\n"
           "edge: s1 a\n"
           "edge: s2 a\n"
           "edge: a t1\n"
           "edge: s3 t1\n";
}

// 3s/3t network with two junctions and a relay; its basic decomposition has
// nine regions with a two-parent relay region feeding t2
inline std::string relay_net() {
    return "sources: s1 s2 s3\n"
           "terminals: t1 t2 t3\n"
           "node: a\n"
           "node: b\n"
           "node: c\n"
           "node: d\n"
           "node: e\n"
           "edge: s1 a\n"   // aug 4
           "edge: s1 t1\n"  // aug 5
           "edge: s2 d\n"   // aug 6
           "edge: s2 a\n"   // aug 7
           "edge: s3 d\n"   // aug 8
           "edge: s3 t2\n"  // aug 9
           "edge: a b\n"    // aug 10
           "edge: d e\n"    // aug 11
           "edge: b t3\n"   // aug 12
           "edge: b c\n"    // aug 13
           "edge: e t1\n"   // aug 14
           "edge: e c\n"    // aug 15
           "edge: e t3\n"   // aug 16
           "edge: c t2\n";  // aug 17
}

// one coding region over sources 1,2; source 3 feeds the terminals directly
inline std::string tripod_rg() {
    return "regiongraph\n"
           "source S1 1\n"
           "source S2 2\n"
           "source S3 3\n"
           "region R1 : S1 S2\n"
           "terminal T1 1 : R1 S3\n"
           "terminal T2 2 : R1 S3\n"
           "terminal T3 3 : R1 S3\n";
}

// one coding region per source pair, terminals chained around the ring;
// terminal-separable but infeasible
inline std::string ring_rg() {
    return "regiongraph\n"
           "source S1 1\n"
           "source S2 2\n"
           "source S3 3\n"
           "region P1 : S2 S3\n"
           "region P2 : S1 S2\n"
           "region P3 : S1 S3\n"
           "terminal T1 1 : S1 P1\n"
           "terminal T2 2 : P1 P2\n"
           "terminal T3 3 : P2 P3\n";
}

// not terminal-separable: R5 collects two planes and feeds both t2 and t3
inline std::string funnel_rg() {
    return "regiongraph\n"
           "source S1 1\n"
           "source S2 2\n"
           "source S3 3\n"
           "region R1 : S1 S2\n"
           "region R2 : S1 S3\n"
           "region R3 : S2 S3\n"
           "region R4 : S1 R1\n"
           "region R5 : R2 R3\n"
           "terminal T1 1 : R1 R3\n"
           "terminal T2 2 : R4 R5\n"
           "terminal T3 3 : R3 R5\n";
}

// six terminals over seven coding regions; its character partition merges
// one big class and the pair {R2,R6}
inline std::string lattice_rg() {
    return "regiongraph\n"
           "source S1 1\n"
           "source S2 2\n"
           "source S3 3\n"
           "region R1 : S1 S2\n"
           "region R2 : S1 S3\n"
           "region R3 : S2 S3\n"
           "region R4 : S1 R1\n"
           "region R5 : S2 R3\n"
           "region R6 : R3 S3\n"
           "region R7 : S1 R2\n"
           "terminal T1 1 : S1 R3\n"
           "terminal T2 2 : R1 R5\n"
           "terminal T3 3 : R3 R1\n"
           "terminal T4 4 : R4 R5\n"
           "terminal T5 5 : R7 R3\n"
           "terminal T6 6 : R2 R6\n";
}

// contraction cascade that ends by identifying two source classes
inline std::string cascade_rg() {
    return "regiongraph\n"
           "source S1 1\n"
           "source S2 2\n"
           "source S3 3\n"
           "region R1 : S1 S3\n"
           "region R2 : S2 S3\n"
           "region R3 : S2 S3\n"
           "region R4 : R2 R3\n"
           "terminal T1 1 : S2 R1\n"
           "terminal T2 2 : R1 R2\n"
           "terminal T3 3 : R1 R3\n"
           "terminal T4 4 : S1 R4\n";
}

// four terminals, not terminal-separable, and every reduction branch is
// infeasible: the decision stays open
inline std::string ring4_rg() {
    return "regiongraph\n"
           "source S1 1\n"
           "source S2 2\n"
           "source S3 3\n"
           "region P1 : S2 S3\n"
           "region P2 : S1 S2\n"
           "region P3 : S1 S3\n"
           "region W : P2 P3\n"
           "terminal T1 1 : S1 P1\n"
           "terminal T2 2 : P1 P2\n"
           "terminal T3 3 : W P3\n"
           "terminal T4 4 : W P2\n";
}

// no source region appears in any terminal's Lambda set
inline std::string midlayer_rg() {
    return "regiongraph\n"
           "source S1 1\n"
           "source S2 2\n"
           "source S3 3\n"
           "region A : S1 S2\n"
           "region B : S1 S3\n"
           "region C : S2 S3\n"
           "terminal T1 1 : A C\n"
           "terminal T2 2 : A B\n"
           "terminal T3 3 : B C\n";
}

inline sumnet::RegionGraph graph(const std::string& text) {
    return sumnet::region_graph_of(sumnet::parse_region_graph(text));
}

inline sumnet::AugmentedNetwork net(const std::string& text) {
    return sumnet::normalize(sumnet::parse_network(text));
}

}  // namespace fixtures

#endif
