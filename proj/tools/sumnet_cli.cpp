// sumnet: region-decomposition analysis and code construction for
// three-source sum networks.
//
// Subcommands: decompose, classify, partition, decide, solve, verify,
// oracle, gen, export-dot. All outputs are JSON or DOT on stdout.
// Exit codes: 0 ok, 2 I/O error, 3 parse error, 4 internal invariant
// breach; decide --exit-status maps the verdict to 10/11/12.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sumnet/decide.hpp"

using namespace sumnet;
using nlohmann::ordered_json;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// An instance file is either a network or a direct region graph, in the
// line grammar or its JSON mirror.
struct Instance {
    std::optional<AugmentedNetwork> net;
    std::optional<RegionGraph> rg;   // direct region-graph instances

    bool is_network() const { return net.has_value(); }
};

Instance load_instance(const std::string& path) {
    std::string text = slurp(path);
    Instance inst;
    if (has_suffix(path, ".json")) {
        auto j = nlohmann::json::parse(text, nullptr, false);
        if (j.is_discarded()) throw ParseError(1, "invalid JSON");
        if (j.contains("regions")) {
            inst.rg = region_graph_of(parse_region_graph_json(text));
        } else {
            inst.net = normalize(parse_network_json(text));
        }
        return inst;
    }
    // sniff the line grammar: a leading 'regiongraph' header marks the
    // direct format
    std::istringstream ss(text);
    std::string first;
    while (std::getline(ss, first)) {
        auto hash = first.find('#');
        if (hash != std::string::npos) first.erase(hash);
        std::istringstream ls(first);
        std::string tok;
        if (ls >> tok) {
            if (tok == "regiongraph") {
                inst.rg = region_graph_of(parse_region_graph(text));
            } else {
                inst.net = normalize(parse_network(text));
            }
            return inst;
        }
    }
    throw ParseError(1, "empty instance file");
}

// the region graph every region-level command works on
RegionGraph working_graph(const Instance& inst) {
    if (inst.rg) return *inst.rg;
    auto rep = validate(*inst.net);
    if (!rep.acyclic) throw ParseError(0, "instance rejected: cycle detected");
    if (!rep.dangling_nodes.empty())
        throw ParseError(0, "instance rejected: node with outputs but no inputs");
    return basic_decompose(*inst.net);
}

// The emitted object doubles as a direct region-graph instance: feeding it
// back through classify matches the fused network pipeline.
ordered_json regions_json(const RegionGraph& rg) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rg.regions) {
        ordered_json o;
        o["name"] = r.name;
        if (r.is_source()) {
            o["kind"] = "source";
            o["index"] = *r.source_index;
        } else if (r.is_terminal()) {
            o["kind"] = "terminal";
            if (r.terminal_indices.size() == 1) o["index"] = *r.terminal_indices.begin();
            o["terminal_indices"] = r.terminal_indices;
        } else {
            o["kind"] = "coding";
        }
        if (!r.edges.empty()) o["edges"] = r.edges;
        ordered_json parents = ordered_json::array();
        for (int p : rg.parents[r.id]) parents.push_back(rg.regions[p].name);
        o["parents"] = std::move(parents);
        arr.push_back(std::move(o));
    }
    return arr;
}

ordered_json name_set(const RegionGraph& rg, const std::set<int>& s) {
    ordered_json arr = ordered_json::array();
    for (int r : s) arr.push_back(rg.regions[r].name);
    return arr;
}

std::string iset_key(const std::set<int>& iset) {
    std::string key;
    for (int j : iset) {
        if (!key.empty()) key += ",";
        key += std::to_string(j);
    }
    return key;
}

ordered_json classify_json(const RegionGraph& rg, const TerminalProfile& prof) {
    ordered_json j;
    j["pi"] = name_set(rg, prof.pi);
    ordered_json labels;
    for (int r = 0; r < rg.region_count(); ++r)
        labels[rg.regions[r].name] = prof.labels[r];
    j["labels"] = std::move(labels);
    ordered_json omega, lambda;
    for (const auto& [iset, regions] : prof.omega) omega[iset_key(iset)] = name_set(rg, regions);
    for (const auto& [iset, regions] : prof.lambda) lambda[iset_key(iset)] = name_set(rg, regions);
    j["omega"] = std::move(omega);
    j["lambda"] = std::move(lambda);
    j["separable"] = prof.separable;
    if (prof.assumption1) {
        ordered_json a;
        a["terminal"] = prof.assumption1->terminal_index;
        a["plane"] = {kPlanes[prof.assumption1->plane].i1, kPlanes[prof.assumption1->plane].i2};
        j["assumption1"] = std::move(a);
    } else {
        j["assumption1"] = "ok";
    }
    return j;
}

int cmd_decompose(const std::string& path) {
    auto inst = load_instance(path);
    RegionGraph rg = working_graph(inst);
    ordered_json j;
    j["regions"] = regions_json(rg);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_classify(const std::string& path) {
    auto inst = load_instance(path);
    RegionGraph rg = working_graph(inst);
    auto prof = compute_profile(rg);
    std::cout << classify_json(rg, prof).dump(2) << "\n";
    return 0;
}

int cmd_partition(const std::string& path) {
    auto inst = load_instance(path);
    RegionGraph rg = working_graph(inst);
    auto prof = compute_profile(rg);
    if (prof.assumption1)
        throw std::invalid_argument("partitioning needs every terminal outside Pi");
    if (!prof.separable)
        throw std::invalid_argument("partitioning needs a terminal-separable instance");
    auto res = character_partition(rg, prof);
    ordered_json j;
    ordered_json classes = ordered_json::array();
    for (int c : res.partition.active) classes.push_back(name_set(rg, res.partition.roster[c]));
    j["classes"] = std::move(classes);
    ordered_json hist = ordered_json::array();
    for (const auto& step : res.partition.history) {
        ordered_json o;
        o["merged"] = {step.c1, step.c2};
        if (const auto* lw = std::get_if<LambdaWitness>(&step.witness)) {
            o["witness"]["kind"] = "lambda-containment";
            o["witness"]["j"] = lw->j;
        } else {
            const auto& ow = std::get<OverlapWitness>(step.witness);
            o["witness"]["kind"] = "reg-overlap";
            o["witness"]["plane"] = {kPlanes[ow.plane].i1, kPlanes[ow.plane].i2};
            o["witness"]["region"] = rg.regions[ow.overlap_region].name;
        }
        hist.push_back(std::move(o));
    }
    j["history"] = std::move(hist);
    j["halt_reason"] = res.halt == HaltReason::NoConnections ? "no-connections"
                                                             : "source-classes-merged";
    auto rep = is_compatible(res.partition, rg, prof);
    j["compatible"] = rep.compatible;
    ordered_json viols = ordered_json::array();
    for (const auto& v : rep.violations) {
        ordered_json o;
        o["what"] = v.describe();
        if (v.kind == CompatibilityViolation::LambdaTrapped) {
            o["j"] = v.j;
            o["plane"] = {kPlanes[v.plane].i1, kPlanes[v.plane].i2};
        }
        viols.push_back(std::move(o));
    }
    j["violations"] = std::move(viols);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_decide(const std::string& path, bool exit_status) {
    auto inst = load_instance(path);
    Decision d;
    if (inst.is_network()) {
        d = decide_network(*inst.net);
        if (inst.net->k() == 3) {
            RegionGraph rg = basic_decompose(*inst.net);
            std::cout << decision_to_json(d, &rg);
        } else {
            std::cout << decision_to_json(d, nullptr);
        }
    } else {
        d = decide_region_graph(*inst.rg);
        std::cout << decision_to_json(d, &*inst.rg);
    }
    if (!exit_status) return 0;
    switch (d.status) {
        case Status::Solvable: return 10;
        case Status::Unsolvable: return 11;
        case Status::Unknown: return 12;
    }
    return 0;
}

int cmd_solve(const std::string& path, const std::string& out_path) {
    auto inst = load_instance(path);
    std::string code_text;
    if (inst.is_network()) {
        auto d = decide_network(*inst.net);
        if (d.status != Status::Solvable || !d.edge_code) {
            std::cerr << "no solution: status " << to_string(d.status) << "\n";
            return 1;
        }
        code_text = code_to_json(*d.edge_code);
    } else {
        auto d = decide_region_graph(*inst.rg);
        if (d.status != Status::Solvable || !d.region_code) {
            std::cerr << "no solution: status " << to_string(d.status) << "\n";
            return 1;
        }
        code_text = code_to_json(*d.region_code, *inst.rg);
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << code_text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        out << code_text;
    }
    return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& code_path) {
    auto inst = load_instance(instance_path);
    auto parsed = parse_code_json(slurp(code_path));
    ordered_json j;
    std::optional<CodeViolation> violation;
    if (parsed.level == "edge") {
        if (!inst.is_network()) throw std::invalid_argument("edge code on a region instance");
        violation = verify_edge_code(*inst.net, bind_edge_code(parsed));
    } else {
        RegionGraph rg = working_graph(inst);
        int k = inst.is_network() ? inst.net->k() : 3;
        violation = verify_region_code(rg, bind_region_code(parsed, rg), k);
    }
    if (violation) {
        j["result"] = "violation";
        j["detail"] = violation->describe();
        std::cout << j.dump(2) << "\n";
        return 1;
    }
    j["result"] = "ok";
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_oracle(const std::string& path, const std::string& fields, const std::string& level,
               double time_limit, uint64_t node_limit) {
    auto inst = load_instance(path);
    std::vector<uint32_t> primes;
    std::stringstream ss(fields);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        int v = std::stoi(tok);
        if (v < 2 || !is_prime(static_cast<uint32_t>(v)))
            throw std::invalid_argument("--fields must list primes");
        primes.push_back(static_cast<uint32_t>(v));
    }
    SearchBudget budget;
    budget.time_limit_seconds = time_limit;
    budget.node_limit = node_limit;

    ordered_json j;
    j["level"] = level;
    ordered_json results = ordered_json::array();
    if (level == "edge") {
        if (!inst.is_network()) throw std::invalid_argument("edge-level search needs a network");
        for (uint32_t q : primes) {
            auto res = brute_force_edges(*inst.net, q, budget);
            ordered_json o;
            o["prime"] = q;
            if (auto* f = std::get_if<OracleFound<EdgeCode>>(&res)) {
                o["result"] = "found";
                o["nodes"] = f->stats.nodes;
                o["code"] = nlohmann::json::parse(code_to_json(f->code));
            } else if (auto* inf = std::get_if<OracleInfeasible>(&res)) {
                o["result"] = "infeasible";
                o["nodes"] = inf->stats.nodes;
            } else {
                o["result"] = "exhausted";
                o["nodes"] = std::get<OracleExhausted>(res).stats.nodes;
            }
            results.push_back(std::move(o));
        }
    } else if (level == "region") {
        RegionGraph rg = working_graph(inst);
        int k = inst.is_network() ? inst.net->k() : 3;
        for (uint32_t q : primes) {
            auto res = brute_force_region(rg, q, budget, k);
            ordered_json o;
            o["prime"] = q;
            if (auto* f = std::get_if<OracleFound<RegionCode>>(&res)) {
                o["result"] = "found";
                o["nodes"] = f->stats.nodes;
                o["code"] = nlohmann::json::parse(code_to_json(f->code, rg));
            } else if (auto* inf = std::get_if<OracleInfeasible>(&res)) {
                o["result"] = "infeasible";
                o["nodes"] = inf->stats.nodes;
            } else {
                o["result"] = "exhausted";
                o["nodes"] = std::get<OracleExhausted>(res).stats.nodes;
            }
            results.push_back(std::move(o));
        }
    } else {
        throw std::invalid_argument("--level must be region or edge");
    }
    j["results"] = std::move(results);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_gen(uint64_t seed, int nodes, int edges, int terminals, const std::string& out_path) {
    GenBudget budget;
    budget.seed = seed;
    budget.nodes = nodes;
    budget.edges = edges;
    budget.terminals = terminals;
    Network net = generate_random_network(budget);
    std::string text = print_network(net);
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        out << text;
    }
    return 0;
}

int cmd_export_dot(const std::string& path) {
    auto inst = load_instance(path);
    std::cout << export_dot(working_graph(inst));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"region-decomposition solvability analysis for 3-source sum networks"};
    app.require_subcommand(1);
    app.footer(
        "instance grammars:\n"
        "  network (line-oriented, '#' comments):\n"
        "      sources: <id>+\n"
        "      terminals: <id>+\n"
        "      node: <id>          (optional pre-declaration)\n"
        "      edge: <tail> <head>\n"
        "  region graph (first line 'regiongraph'):\n"
        "      source <name> <i>\n"
        "      region <name> : <parent>+\n"
        "      terminal <name> <j> : <parent>+\n"
        "  a JSON mirror of either format is accepted for .json files\n"
        "  (fields: sources/terminals/edges, or regions)");

    std::string path, code_path, out_path = "-";
    bool exit_status = false;
    std::string fields = "2,3,5", level = "region";
    double time_limit = 0;
    uint64_t node_limit = 20'000'000;
    uint64_t seed = 1;
    int nodes = 10, edges = 18, terminals = 3;

    auto* decompose = app.add_subcommand("decompose", "compute the basic region decomposition");
    decompose->add_option("instance", path)->required();

    auto* classify = app.add_subcommand("classify", "pi, labels, omega/lambda tables");
    classify->add_option("instance", path)->required();

    auto* partition = app.add_subcommand("partition", "character partition and compatibility");
    partition->add_option("instance", path)->required();

    auto* decide = app.add_subcommand("decide", "decide solvability with a certificate");
    decide->add_option("instance", path)->required();
    decide->add_flag("--exit-status", exit_status, "exit 10 solvable, 11 unsolvable, 12 unknown");

    auto* solve = app.add_subcommand("solve", "construct a code for a solvable instance");
    solve->add_option("instance", path)->required();
    solve->add_option("-o,--output", out_path, "code file (default stdout)");

    auto* verify = app.add_subcommand("verify", "check a code file against an instance");
    verify->add_option("instance", path)->required();
    verify->add_option("code", code_path)->required();

    auto* oracle = app.add_subcommand("oracle", "exhaustive search over small prime fields");
    oracle->add_option("instance", path)->required();
    oracle->add_option("--fields", fields, "comma-separated primes (default 2,3,5)");
    oracle->add_option("--level", level, "region or edge (default region)");
    oracle->add_option("--time-limit", time_limit, "seconds per field, 0 = unlimited");
    oracle->add_option("--node-limit", node_limit, "search nodes per field");

    auto* gen = app.add_subcommand("gen", "emit a random instance in the line grammar");
    gen->add_option("--seed", seed);
    gen->add_option("--nodes", nodes);
    gen->add_option("--edges", edges);
    gen->add_option("--terminals", terminals);
    gen->add_option("-o,--output", out_path, "instance file (default stdout)");

    auto* export_dot_cmd = app.add_subcommand("export-dot", "region graph in DOT format");
    export_dot_cmd->add_option("instance", path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*decompose) return cmd_decompose(path);
        if (*classify) return cmd_classify(path);
        if (*partition) return cmd_partition(path);
        if (*decide) return cmd_decide(path, exit_status);
        if (*solve) return cmd_solve(path, out_path);
        if (*verify) return cmd_verify(path, code_path);
        if (*oracle) return cmd_oracle(path, fields, level, time_limit, node_limit);
        if (*gen) return cmd_gen(seed, nodes, edges, terminals, out_path);
        if (*export_dot_cmd) return cmd_export_dot(path);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
