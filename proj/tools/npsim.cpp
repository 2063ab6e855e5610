#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "npsim/exp_sim.hpp"
#include "npsim/feasible.hpp"
#include "npsim/fixtures.hpp"
#include "npsim/graph_io.hpp"
#include "npsim/harness.hpp"
#include "npsim/poly_sim.hpp"
#include "npsim/sim.hpp"
#include "npsim/walk_verify.hpp"

namespace {

using namespace npsim;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// --machine accepts a path or "fixture:<name>".
MachineSpec load_machine(const std::string& arg) {
    const std::string prefix = "fixture:";
    if (arg.rfind(prefix, 0) == 0) {
        for (const auto& f : fixtures::all())
            if (arg.substr(prefix.size()) == f.name) return parse_machine_spec(*f.text);
        throw std::runtime_error("unknown fixture '" + arg.substr(prefix.size()) + "'");
    }
    return parse_machine_spec(read_file(arg));
}

std::vector<std::string> split_specs(const std::string& spec) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos < spec.size()) {
        size_t next = spec.find(';', pos);
        if (next == std::string::npos) next = spec.size();
        if (next > pos) out.push_back(spec.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

long effective_cap(long cap, long n) { return cap > 0 ? cap : default_step_cap(n); }

int cmd_run(const std::string& machine, const std::string& input, long cap) {
    MachineSpec m = load_machine(machine);
    cap = effective_cap(cap, static_cast<long>(input.size()) + 1);
    OwnedRun run = simulate_dtm(m, input, cap);
    std::cout << "status: " << to_string(run.result.status) << '\n'
              << "steps: " << run.result.steps << '\n';
    if (run.result.halted())
        std::cout << "final: " << m.state_name(run.result.final_state)
                  << (run.result.accepted ? " (accept)" : " (reject)") << '\n';
    return run.result.halted() && run.result.accepted ? 0 : 1;
}

int cmd_exp(const std::string& machine, const std::string& instance, int cert_len, long cap,
            bool complete, const std::string& dot_path) {
    MachineSpec m = load_machine(machine);
    ExpOptions opt;
    opt.step_cap = effective_cap(cap, static_cast<long>(instance.size()) + cert_len);
    opt.complete_sweep = complete;
    ExpResult r = simulate_all_certificates_exp(m, instance, cert_len, opt);
    std::cout << "verdict: " << (r.accepted ? "yes" : "no") << '\n'
              << "branches: " << r.branches.size() << '\n'
              << "edges: " << r.footmarks->size() << '\n';
    if (r.any_capped) std::cout << "note: some branch hit the step cap\n";
    if (r.any_stuck) std::cout << "note: some branch got stuck\n";
    FootmarksBounds b = footmarks_bounds(*r.footmarks, opt.step_cap);
    std::cout << "width: " << b.width << " height: " << b.height << '\n';
    if (!dot_path.empty()) write_file(dot_path, to_dot(*r.footmarks));
    return 0;
}

int cmd_poly(const std::string& machine, const std::string& instance, int cert_len, long cap,
             long budget, const std::string& stats_path, const std::string& dot_path) {
    MachineSpec m = load_machine(machine);
    PolyOptions opt;
    opt.step_cap = effective_cap(cap, static_cast<long>(instance.size()) + cert_len);
    opt.verify_budget = budget;
    PolyResult r = simulate_all_certificates_poly(m, instance, cert_len, opt);
    std::cout << "verdict: " << to_string(r.verdict) << '\n'
              << "verify-calls: " << r.stats.verify_calls << '\n'
              << "rounds: " << r.stats.rounds << '\n'
              << "edges: " << r.stats.h_edges << '\n';
    if (!r.stats.cap_reason.empty()) std::cout << "cap: " << r.stats.cap_reason << '\n';
    if (!stats_path.empty()) {
        std::ostringstream s;
        s << "{\n  \"verdict\": \"" << to_string(r.verdict) << "\",\n  \"verify_calls\": "
          << r.stats.verify_calls << ",\n  \"rounds\": " << r.stats.rounds
          << ",\n  \"edges\": " << r.stats.h_edges << "\n}\n";
        write_file(stats_path, s.str());
    }
    if (!dot_path.empty()) write_file(dot_path, to_dot(*r.h));
    return 0;
}

std::shared_ptr<NodeStore> make_store(const std::string& machine_arg,
                                      std::shared_ptr<MachineSpec>& keep_alive) {
    if (machine_arg.empty()) return std::make_shared<NodeStore>();
    keep_alive = std::make_shared<MachineSpec>(load_machine(machine_arg));
    return std::make_shared<NodeStore>(keep_alive.get());
}

int cmd_feasible(const std::string& graph_path, const std::string& final_spec,
                 const std::string& init_spec, const std::string& machine_arg,
                 const std::string& dot_path) {
    std::shared_ptr<MachineSpec> keep;
    auto store = make_store(machine_arg, keep);
    CompGraph g = parse_edge_list(read_file(graph_path), store);
    EdgeSet finals = g.make_edge_set();
    for (const auto& s : split_specs(final_spec)) finals.insert(parse_edge_spec(s, *store));
    std::set<NodeId> initials;
    for (const auto& s : split_specs(init_spec)) initials.insert(parse_node_tuple(s, *store));
    FeasibleStats stats;
    CompGraph out = compute_feasible_graph(g, initials, finals, &stats);
    std::cout << "#! kept " << out.size() << " of " << g.size() << " edges in " << stats.sweeps
              << " sweeps\n"
              << dump_edge_list(out);
    if (!dot_path.empty()) write_file(dot_path, to_dot(out));
    return 0;
}

int cmd_verify_walk(const std::string& graph_path, const std::string& target_spec,
                    const std::string& init_spec, const std::string& machine_arg,
                    const std::string& trace_path) {
    std::shared_ptr<MachineSpec> keep;
    auto store = make_store(machine_arg, keep);
    CompGraph g = parse_edge_list(read_file(graph_path), store);
    Edge target = parse_edge_spec(target_spec, *store);
    std::set<NodeId> initials;
    for (const auto& s : split_specs(init_spec)) initials.insert(parse_node_tuple(s, *store));
    VerifyStats stats;
    bool ok = verify_existence_of_walk(g, initials, target, &stats);
    std::cout << "walk-exists: " << (ok ? "yes" : "no") << '\n'
              << "iterations: " << stats.iterations << '\n'
              << "walks-taken: " << stats.walks_taken << '\n';
    if (!trace_path.empty()) {
        std::ostringstream s;
        s << "target: " << store->node_label(target.from) << " -> " << store->node_label(target.to)
          << "\nresult: " << (ok ? "yes" : "no") << "\niterations: " << stats.iterations
          << "\nwalks-taken: " << stats.walks_taken << '\n';
        write_file(trace_path, s.str());
    }
    return ok ? 0 : 1;
}

int cmd_diff(const std::string& seeds, const MachineBounds& bounds, const std::string& out_path,
             bool fault_injection) {
    size_t dots = seeds.find("..");
    std::uint64_t lo, hi;
    if (dots == std::string::npos) {
        lo = hi = std::stoull(seeds);
    } else {
        lo = std::stoull(seeds.substr(0, dots));
        hi = std::stoull(seeds.substr(dots + 2));
    }
    DiffSummary sum = run_differential_range(lo, hi, bounds, fault_injection);
    std::cout << "total: " << sum.total << " agreed: " << sum.agreed
              << " disagreed: " << sum.disagreed << " capped: " << sum.capped << '\n';
    for (const CaseReport& rep : sum.disagreements)
        std::cout << "seed " << rep.input.seed << ": direct=" << to_string(rep.direct.status)
                  << " exp=" << to_string(rep.exp.status) << " poly=" << to_string(rep.poly.status)
                  << '\n';
    if (!out_path.empty()) write_file(out_path, report_to_json(sum));
    return sum.disagreed > 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Computation-walk simulation lab for nondeterministic acceptance"};
    app.require_subcommand(1);

    std::string machine, input, instance, graph_path, final_spec, init_spec, target_spec;
    std::string dot_path, stats_path, trace_path, out_path, seeds, fixture_name;
    int cert_len = 0;
    long cap = 0, budget = 0;
    bool complete = false, fault_injection = false;
    MachineBounds bounds;

    auto* run = app.add_subcommand("run", "Run the machine on one input");
    run->add_option("--machine", machine, "machine file or fixture:<name>")->required();
    run->add_option("--input", input, "tape contents");
    run->add_option("--step-cap", cap, "step budget (default 10*(n)^2)");

    auto* exp = app.add_subcommand("exp", "Exponential sweep over all certificates");
    exp->add_option("--machine", machine)->required();
    exp->add_option("--instance", instance);
    exp->add_option("--cert-len", cert_len)->required();
    exp->add_option("--step-cap", cap);
    exp->add_flag("--complete", complete, "keep sweeping after the first accept");
    exp->add_option("--dump-dot", dot_path);

    auto* poly = app.add_subcommand("poly", "Verified-extension simulation over all certificates");
    poly->add_option("--machine", machine)->required();
    poly->add_option("--instance", instance);
    poly->add_option("--cert-len", cert_len)->required();
    poly->add_option("--step-cap", cap);
    poly->add_option("--verify-budget", budget, "max walk verifications (0 = unlimited)");
    poly->add_option("--stats", stats_path);
    poly->add_option("--dump-dot", dot_path);

    auto* feas = app.add_subcommand("feasible", "Feasible-graph pruning of an edge-list graph");
    feas->add_option("--graph", graph_path)->required();
    feas->add_option("--final-edges", final_spec, "';'-separated edge tuples")->required();
    feas->add_option("--initial-nodes", init_spec, "';'-separated node tuples")->required();
    feas->add_option("--machine", machine, "optional machine for named states/symbols");
    feas->add_option("--dump-dot", dot_path);

    auto* verify = app.add_subcommand("verify-walk", "Decide walk existence for a target edge");
    verify->add_option("--graph", graph_path)->required();
    verify->add_option("--target-edge", target_spec)->required();
    verify->add_option("--initial-nodes", init_spec)->required();
    verify->add_option("--machine", machine);
    verify->add_option("--trace", trace_path);

    auto* diff = app.add_subcommand("diff", "Differential run across seeded random cases");
    diff->add_option("--seeds", seeds, "A..B inclusive, or a single seed")->required();
    diff->add_option("--max-states", bounds.max_states);
    diff->add_option("--max-symbols", bounds.max_symbols);
    diff->add_option("--max-cert-len", bounds.max_cert_len);
    diff->add_option("--max-instance-len", bounds.max_instance_len);
    diff->add_option("--step-cap", bounds.step_cap);
    diff->add_option("--verify-budget", bounds.verify_budget);
    diff->add_option("--out", out_path, "JSON report path");
    diff->add_flag("--fault-injection", fault_injection,
                   "drop one certificate branch in the verified engine (self-test)");

    auto* fixture = app.add_subcommand("fixture", "Print a bundled machine");
    fixture->add_option("name", fixture_name)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(machine, input, cap);
        if (exp->parsed()) return cmd_exp(machine, instance, cert_len, cap, complete, dot_path);
        if (poly->parsed())
            return cmd_poly(machine, instance, cert_len, cap, budget, stats_path, dot_path);
        if (feas->parsed())
            return cmd_feasible(graph_path, final_spec, init_spec, machine, dot_path);
        if (verify->parsed())
            return cmd_verify_walk(graph_path, target_spec, init_spec, machine, trace_path);
        if (diff->parsed()) return cmd_diff(seeds, bounds, out_path, fault_injection);
        if (fixture->parsed()) {
            for (const auto& f : npsim::fixtures::all())
                if (fixture_name == f.name) {
                    std::cout << *f.text;
                    return 0;
                }
            std::cerr << "unknown fixture '" << fixture_name << "'\n";
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
