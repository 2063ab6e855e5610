// End-to-end acceptance gate: one pass/fail line per criterion, exit 0 only
// when every criterion holds.  Each check replays the library against an
// independent brute-force reference at desk scale.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "npsim/exp_sim.hpp"
#include "npsim/feasible.hpp"
#include "npsim/fixtures.hpp"
#include "npsim/harness.hpp"
#include "npsim/graph_io.hpp"
#include "npsim/machine.hpp"
#include "npsim/poly_sim.hpp"
#include "npsim/sim.hpp"
#include "npsim/walk_verify.hpp"
#include "support.hpp"

using namespace npsim;
using namespace npsim::testing;

namespace {

int failures = 0;

void report(int n, const char* title, bool ok, const std::string& detail) {
    std::printf("criterion %d [%s] %s -- %s\n", n, ok ? "PASS" : "FAIL", title, detail.c_str());
    if (!ok) ++failures;
}

std::string fixture_instance(const std::string& name) {
    return (name == "scan" || name == "bounce") ? "aa" : "0#";
}

// Corpus for the feasible/cover laws: whole footmark graphs (unions of
// computation walks) plus variants restricted to a random subset of their
// final edges.  Dropping edges instead would break the walk-union shape
// these laws assume.
std::vector<FootmarkCase> footmark_corpus(std::uint64_t seed0, size_t want,
                                          const MachineBounds& bounds, size_t max_edges) {
    std::vector<FootmarkCase> out;
    for (std::uint64_t seed = seed0; out.size() < want && seed < seed0 + 50 * want; ++seed) {
        auto base = make_footmark_case(seed, bounds, max_edges);
        if (!base) continue;
        out.push_back(*base);
        if (base->final_edges.size() > 1 && out.size() < want) {
            FootmarkCase t = *base;
            std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
            EdgeSet sub = t.graph.make_edge_set();
            for (const Edge& e : base->final_edges)
                if (rng() & 1) sub.insert(e);
            if (!sub.empty() && sub.size() < base->final_edges.size()) {
                t.final_edges = sub;
                out.push_back(std::move(t));
            }
        }
    }
    return out;
}

// 1. Exponential certificate sweep agrees with direct enumeration on the
//    fixtures and >=500 seeded cases, in under 60 seconds.
void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    long checked = 0, mismatched = 0;
    for (const auto& fx : fixtures::all()) {
        MachineSpec spec = parse_machine_spec(*fx.text);
        ExpOptions opt;
        opt.step_cap = 200;
        ExpResult r = simulate_all_certificates_exp(spec, fixture_instance(fx.name), 1, opt);
        DirectEnumResult ref =
            enumerate_certificates_direct(spec, fixture_instance(fx.name), 1, 200);
        ++checked;
        if (r.accepted != ref.any_accepted) ++mismatched;
    }
    MachineBounds bounds;
    for (std::uint64_t seed = 0; seed < 520; ++seed) {
        DiffCase c = generate_case(seed, bounds);
        MachineSpec spec = parse_machine_spec(c.machine_text);
        ExpOptions opt;
        opt.step_cap = c.step_cap;
        ExpResult r = simulate_all_certificates_exp(spec, c.instance, c.cert_len, opt);
        DirectEnumResult ref =
            enumerate_certificates_direct(spec, c.instance, c.cert_len, c.step_cap);
        ++checked;
        if (r.accepted != ref.any_accepted) ++mismatched;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[160];
    std::snprintf(buf, sizeof buf, "%ld cases, %ld mismatched, %.1f s", checked, mismatched,
                  secs);
    report(1, "sweep verdict equals direct enumeration", mismatched == 0 && checked >= 504 &&
                                                             secs < 60.0, buf);
}

// 2. Feasible-graph construction: removed set equals the reference fixed
//    point, no unprotected step-pendant edge survives, walks into final
//    edges survive intact, and the construction is idempotent.
void criterion2() {
    MachineBounds bounds;
    auto corpus = footmark_corpus(0, 520, bounds, 200);
    long removed_bad = 0, pendant_bad = 0, walk_bad = 0, idem_bad = 0, walk_skipped = 0;
    for (auto& fc : corpus) {
        CompGraph full = fc.graph;
        EdgeSet cover = compute_cover_edges(full, fc.final_edges);
        EdgeSet prot = initial_edges_of(fc.graph, fc.initial_nodes);
        for (const Edge& e : fc.final_edges) prot.insert(e);

        CompGraph out = compute_feasible_graph(fc.graph, fc.initial_nodes, fc.final_edges);
        CompGraph ref = oracle_feasible(fc.graph, fc.initial_nodes, fc.final_edges);
        if (dump_edge_list(out) != dump_edge_list(ref)) ++removed_bad;

        for (const Edge& e : out.edges()) {
            if (prot.count(e)) continue;
            if (is_step_pendant(out, e, cover)) {
                ++pendant_bad;
                break;
            }
        }

        try {
            for (const auto& walk : oracle_walks_ending_in(fc.graph, fc.initial_nodes,
                                                           fc.final_edges)) {
                for (const Edge& e : walk)
                    if (!out.has_edge(e)) {
                        ++walk_bad;
                        break;
                    }
            }
        } catch (const OracleBudgetExceeded&) {
            ++walk_skipped;
        }

        CompGraph again = compute_feasible_graph(out, fc.initial_nodes, fc.final_edges);
        if (dump_edge_list(again) != dump_edge_list(out)) ++idem_bad;
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%zu graphs: %ld removal mismatches, %ld pendant leaks, %ld broken walks "
                  "(%ld walk checks skipped), %ld non-idempotent",
                  corpus.size(), removed_bad, pendant_bad, walk_bad, walk_skipped, idem_bad);
    report(2, "feasible-graph construction laws", corpus.size() >= 500 && removed_bad == 0 &&
                                                      pendant_bad == 0 && walk_bad == 0 &&
                                                      idem_bad == 0,
           buf);
}

// 3. Cover edges: the computed cover equals the definitional chain closure
//    and contains every ceiling edge of every walk ending in a final edge.
void criterion3() {
    MachineBounds bounds;
    auto corpus = footmark_corpus(0, 520, bounds, 200);
    long set_bad = 0, ceiling_bad = 0, skipped = 0;
    for (auto& fc : corpus) {
        CompGraph g = fc.graph;
        EdgeSet cover = compute_cover_edges(g, fc.final_edges);
        EdgeSet ref = oracle_cover(g, fc.final_edges);
        if (!(cover == ref)) ++set_bad;
        try {
            for (const auto& walk : oracle_walks_ending_in(g, fc.initial_nodes,
                                                           fc.final_edges)) {
                std::map<int, Edge> last_at_index;
                for (const Edge& e : walk) last_at_index.insert_or_assign(edge_index(g, e), e);
                for (const auto& [idx, e] : last_at_index)
                    if (!cover.count(e)) {
                        ++ceiling_bad;
                        break;
                    }
            }
        } catch (const OracleBudgetExceeded&) {
            ++skipped;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%zu graphs: %ld closure mismatches, %ld missing ceiling edges (%ld skipped)",
                  corpus.size(), set_bad, ceiling_bad, skipped);
    report(3, "cover equals the ceiling-chain closure", corpus.size() >= 500 && set_bad == 0 &&
                                                            ceiling_bad == 0,
           buf);
}

// 4. Walk verification agrees with the exhaustive surface-consistent DFS on
//    >=1000 subgraphs, never exceeding one iteration per edge.
void criterion4() {
    MachineBounds bounds;
    auto corpus = make_corpus(0, 1050, bounds, 150, 3);
    long graphs = 0, compared = 0, mismatched = 0, skipped = 0, iter_bad = 0;
    for (auto& fc : corpus) {
        ++graphs;
        EdgeList probes(fc.final_edges.begin(), fc.final_edges.end());
        int k = 0;
        for (const Edge& e : fc.graph.edges())
            if (k++ % 3 == 0) probes.push_back(e);
        for (const Edge& target : probes) {
            bool ref;
            try {
                ref = oracle_walk_exists(fc.graph, fc.initial_nodes, target);
            } catch (const OracleBudgetExceeded&) {
                ++skipped;
                continue;
            }
            VerifyStats stats;
            bool got = verify_existence_of_walk(fc.graph, fc.initial_nodes, target, &stats);
            ++compared;
            if (got != ref) ++mismatched;
            if (stats.iterations > static_cast<long>(fc.graph.size())) ++iter_bad;
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%ld graphs, %ld probes: %ld mismatched, %ld over iteration bound (%ld skipped)",
                  graphs, compared, mismatched, iter_bad, skipped);
    report(4, "walk verification equals the DFS reference", graphs >= 1000 && mismatched == 0 &&
                                                                iter_bad == 0,
           buf);
}

// 5. Every sweep-generated footmark graph obeys the width, height, and
//    edge-count laws.
void criterion5() {
    MachineBounds bounds;
    long checked = 0, violated = 0;
    for (std::uint64_t seed = 0; seed < 700 && checked < 520; ++seed) {
        DiffCase c = generate_case(seed, bounds);
        MachineSpec spec = parse_machine_spec(c.machine_text);
        ExpOptions opt;
        opt.step_cap = c.step_cap;
        opt.complete_sweep = true;
        ExpResult r = simulate_all_certificates_exp(spec, c.instance, c.cert_len, opt);
        if (r.footmarks->empty()) continue;
        ++checked;
        FootmarksBounds b = footmarks_bounds(*r.footmarks, c.step_cap);
        if (!b.width_ok || !b.height_ok || !b.size_law_ok) ++violated;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "%ld graphs, %ld bound violations", checked, violated);
    report(5, "footmark graphs obey the structural bounds", checked >= 500 && violated == 0, buf);
}

// 6. With no certificate cells the polynomial simulator reduces to plain
//    deterministic simulation.
void criterion6() {
    long checked = 0, mismatched = 0, capped = 0;
    auto check_one = [&](const MachineSpec& spec, const std::string& instance, long cap) {
        PolyOptions opt;
        opt.step_cap = cap;
        opt.verify_budget = 2000;
        PolyResult r = simulate_all_certificates_poly(spec, instance, 0, opt);
        OwnedRun run = simulate_dtm(spec, instance, cap);
        if (r.verdict == PolyVerdict::Capped || !run.result.halted()) {
            ++capped;
            return;
        }
        ++checked;
        if ((r.verdict == PolyVerdict::Accepted) != run.result.accepted) ++mismatched;
    };
    for (const auto& fx : fixtures::all())
        check_one(parse_machine_spec(*fx.text), fixture_instance(fx.name), 200);
    MachineBounds bounds;
    for (std::uint64_t seed = 0; seed < 250; ++seed) {
        DiffCase c = generate_case(seed, bounds);
        check_one(parse_machine_spec(c.machine_text), c.instance, c.step_cap);
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "%ld decided cases, %ld mismatched, %ld capped", checked,
                  mismatched, capped);
    report(6, "zero-certificate runs reduce to direct simulation", checked >= 150 &&
                                                                       mismatched == 0,
           buf);
}

// 7. The differential harness classifies every seeded case and every
//    disagreement carries a minimized case whose replay still disagrees.
//    Agreement between the engines is itself the hypothesis under test:
//    both a clean sweep and reproducible counterexamples pass.
void criterion7() {
    MachineBounds bounds;
    DiffSummary s = run_differential_range(0, 519, bounds);
    bool classified = s.total == 520 && s.agreed + s.disagreed + s.capped == s.total;
    long bundle_bad = 0;
    for (const CaseReport& r : s.disagreements) {
        if (!r.minimized) {
            ++bundle_bad;
            continue;
        }
        CaseReport replay = run_differential(*r.minimized, /*minimize=*/false);
        if (!replay.disagreement) ++bundle_bad;
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%ld cases: %ld agree, %ld disagree, %ld capped; %ld bad bundles", s.total,
                  s.agreed, s.disagreed, s.capped, bundle_bad);
    report(7, "differential harness classifies and reproduces", classified && bundle_bad == 0,
           buf);
}

// 8. A deliberate fault in the candidate-edge generator must surface as a
//    minimized, reproducible disagreement -- guarding against vacuous
//    agreement in criterion 7.
void criterion8() {
    MachineBounds bounds;
    DiffSummary s = run_differential_range(0, 149, bounds, /*fault_injection=*/true);
    long reproduced = 0;
    for (const CaseReport& r : s.disagreements) {
        if (!r.minimized) continue;
        CaseReport replay = run_differential(*r.minimized, false, /*fault_injection=*/true);
        if (replay.disagreement) ++reproduced;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%ld cases, %ld disagreements, %ld minimized and reproduced",
                  s.total, s.disagreed, reproduced);
    report(8, "injected fault is detected and minimized", s.disagreed >= 1 &&
                                                              reproduced == s.disagreed,
           buf);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::printf("%s\n", failures == 0 ? "all criteria passed" : "some criteria failed");
    return failures == 0 ? 0 : 1;
}
