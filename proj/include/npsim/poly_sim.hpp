#pragma once

#include <memory>
#include <string>
#include <vector>

#include "npsim/comp_graph.hpp"
#include "npsim/walk_verify.hpp"

namespace npsim {

// Cell layout of the verifier tape: the instance occupies [0, |L|), the
// certificate [|L|, |L|+cert_len), blanks elsewhere.
struct NpGraphParams {
    const MachineSpec* spec = nullptr;
    std::vector<SymId> instance;
    int cert_len = 0;
    long step_cap = 0;
    // Test-only fault: drop the last branch symbol when materializing
    // first-visit certificate edges.
    bool fault_drop_last_branch = false;

    int cert_lo() const { return static_cast<int>(instance.size()); }
    int cert_hi() const { return cert_lo() + cert_len; }
};

// Candidate continuation edges of v in the dynamic graph: first visits get
// the cell's fixed content (one edge per tape symbol inside the certificate
// window), revisits get every populated-precedent node up to one tier above
// the current maximum of that cell in h.  Final-state nodes yield nothing.
EdgeList get_next_edges(CompGraph& h, const NpGraphParams& p, NodeId v);

enum class PolyVerdict { Accepted, Rejected, Capped };

const char* to_string(PolyVerdict v);

struct PolyStats {
    long verify_calls = 0;
    long rounds = 0;
    size_t h_edges = 0;
    bool capped = false;
    std::string cap_reason;
};

struct PolyOptions {
    long step_cap = 0;
    long verify_budget = 0;  // 0 = unlimited
    bool fault_drop_last_branch = false;
};

// Grows the verified footmark graph h edge by edge: every boundary
// candidate must admit a computation walk in h plus that candidate.
// Accepts as soon as a verified edge reaches the accept state; rejects when
// no boundary edge verifies; caps degrade to a diagnostic verdict.
PolyVerdict is_accepted_on_footmarks(CompGraph& h, const NpGraphParams& p,
                                     const std::set<NodeId>& initial_nodes, PolyStats& stats,
                                     long verify_budget);

struct PolyResult {
    PolyVerdict verdict = PolyVerdict::Rejected;
    PolyStats stats;
    std::shared_ptr<NodeStore> store;
    std::shared_ptr<CompGraph> h;
    std::set<NodeId> initial_nodes;
};

// Claimed polynomial-time equivalent of the certificate sweep: decides
// whether any certificate content leads the verifier to accept.
PolyResult simulate_all_certificates_poly(const MachineSpec& spec, std::string_view instance,
                                          int cert_len, const PolyOptions& opt);

}  // namespace npsim
