#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "npsim/machine.hpp"

namespace npsim {

using NodeId = std::int32_t;
using CaseId = std::int32_t;
inline constexpr NodeId kInvalidNode = -1;
inline constexpr CaseId kInvalidCase = -1;

// A computation-graph node: the machine visits cell `index` for the
// (tier+1)-th time in state `state`, reading `symbol`.  `last_state` /
// `last_symbol` identify the transition case of the previous visit;
// both are kNone exactly when tier == 0.
struct NodeData {
    int index = 0;
    int tier = 0;
    StateId state = kNone;
    SymId symbol = kNone;
    StateId last_state = kNone;
    SymId last_symbol = kNone;

    auto key() const {
        return std::tie(index, tier, state, symbol, last_state, last_symbol);
    }
    bool operator==(const NodeData&) const = default;
};

// Transition case V_{i,t}^{q,s}: all nodes sharing (index, tier, state,
// symbol), distinguished only by their previous-visit fields.
struct CaseKey {
    int index = 0;
    int tier = 0;
    StateId state = kNone;
    SymId symbol = kNone;
    auto key() const { return std::tie(index, tier, state, symbol); }
    bool operator<(const CaseKey& o) const { return key() < o.key(); }
    bool operator==(const CaseKey&) const = default;
};

// Interning arena for nodes and transition cases.  Shared by every graph
// built over the same machine run; node ids are stable for its lifetime.
// The machine spec is optional: graphs parsed from edge-list files carry
// no transition function, and derived fields are unavailable for them.
class NodeStore {
public:
    explicit NodeStore(const MachineSpec* spec = nullptr) : spec_(spec) {}

    NodeId intern(const NodeData& data);
    CaseId intern_case(const CaseKey& key);
    std::optional<NodeId> find(const NodeData& data) const;
    std::optional<CaseId> find_case(const CaseKey& key) const;

    const NodeData& node(NodeId id) const { return nodes_.at(static_cast<size_t>(id)); }
    const CaseKey& case_key(CaseId id) const { return cases_.at(static_cast<size_t>(id)).key; }
    const std::vector<NodeId>& case_members(CaseId id) const {
        return cases_.at(static_cast<size_t>(id)).members;
    }
    // The single permitted tier-0 member of a case, if interned.
    std::optional<NodeId> case_tier0_node(CaseId id) const;

    // Transition case of a node (always exists, the node is a member).
    CaseId case_of(NodeId id) const { return node_case_.at(static_cast<size_t>(id)); }

    const MachineSpec* spec() const { return spec_; }
    size_t num_nodes() const { return nodes_.size(); }

    // Derived fields from the transition function.  Contract violations:
    // no machine spec attached, final-state node, or undefined rule.
    const Rule& rule_of(NodeId id) const;
    StateId next_state(NodeId id) const { return rule_of(id).next; }
    SymId output(NodeId id) const { return rule_of(id).write; }
    int dir(NodeId id) const { return rule_of(id).dir; }
    int next_index(NodeId id) const { return node(id).index + rule_of(id).dir; }
    SymId case_output(CaseId id) const;

    std::string node_label(NodeId id) const;

private:
    struct CaseData {
        CaseKey key;
        std::vector<NodeId> members;
    };
    const MachineSpec* spec_;
    std::vector<NodeData> nodes_;
    std::vector<CaseData> cases_;
    std::vector<CaseId> node_case_;
    std::map<std::tuple<int, int, StateId, SymId, StateId, SymId>, NodeId> node_ids_;
    std::map<CaseKey, CaseId> case_ids_;
};

struct Edge {
    NodeId from = kInvalidNode;
    NodeId to = kInvalidNode;
    bool operator==(const Edge&) const = default;
    bool valid() const { return from != kInvalidNode; }
};

// Canonical edge order: by the (index, tier, state, symbol, prev) tuples of
// the endpoints.  Gives deterministic iteration independent of intern order.
struct EdgeLess {
    const NodeStore* store = nullptr;
    bool operator()(const Edge& a, const Edge& b) const {
        auto ka = std::make_pair(store->node(a.from).key(), store->node(a.to).key());
        auto kb = std::make_pair(store->node(b.from).key(), store->node(b.to).key());
        return ka < kb;
    }
};

using EdgeSet = std::set<Edge, EdgeLess>;
using EdgeList = std::vector<Edge>;

// Directed graph over interned nodes.  Edges connect nodes at adjacent
// cell indices; each node keeps four incidence lists split by the side
// the edge lies on.  Copying a graph is cheap enough at lab scale; the
// node arena is shared.
class CompGraph {
public:
    explicit CompGraph(std::shared_ptr<NodeStore> store) : store_(std::move(store)) {}

    NodeStore& store() { return *store_; }
    const NodeStore& store() const { return *store_; }
    std::shared_ptr<NodeStore> store_ptr() const { return store_; }

    // Inserts the edge; returns false (no-op) if already present.
    // Contract violations: |Δindex| != 1, or a self edge.
    bool add_edge(NodeId from, NodeId to);
    bool add_edge(const Edge& e) { return add_edge(e.from, e.to); }
    // Removes the edge; returns false if absent.
    bool remove_edge(const Edge& e);
    bool has_edge(const Edge& e) const { return edges_.count(e) != 0; }

    EdgeSet make_edge_set() const { return EdgeSet(EdgeLess{store_.get()}); }
    const EdgeSet& edges() const { return edges_; }
    size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }

    bool contains_node(NodeId v) const;
    std::vector<NodeId> nodes() const;  // nodes with at least one incident edge

    const EdgeList& left_incoming(NodeId v) const;
    const EdgeList& left_outgoing(NodeId v) const;
    const EdgeList& right_incoming(NodeId v) const;
    const EdgeList& right_outgoing(NodeId v) const;
    EdgeList incoming(NodeId v) const;
    EdgeList outgoing(NodeId v) const;
    EdgeList incident(NodeId v) const;

    // Cell span of the incident nodes: number of distinct indices covered.
    int min_index() const;
    int max_index() const;
    int width() const { return empty() ? 0 : max_index() - min_index() + 1; }
    // Tier-level count: max tier + 1.
    int height() const;

    EdgeList edges_with_index(int i) const;

    bool operator==(const CompGraph& o) const { return edges_ == o.edges_; }

private:
    struct Adj {
        EdgeList left_in, left_out, right_in, right_out;
        bool empty() const {
            return left_in.empty() && left_out.empty() && right_in.empty() && right_out.empty();
        }
    };
    const Adj* adj(NodeId v) const;

    std::shared_ptr<NodeStore> store_;
    std::map<NodeId, Adj> adj_;
    EdgeSet edges_{EdgeLess{nullptr}};
    bool edges_init_ = false;
    void ensure_edge_cmp();
};

// --- Edge geometry -------------------------------------------------------

// Cell index of an edge: the smaller endpoint index.
int edge_index(const CompGraph& g, const Edge& e);
// +1 if the edge moves right, -1 if left.
int edge_dir(const CompGraph& g, const Edge& e);
// The endpoint of e lying at cell index i (contract violation otherwise).
NodeId endpoint_at(const CompGraph& g, const Edge& e, int i);
bool edges_adjacent(const CompGraph& g, const Edge& a, const Edge& b);

// --- Node-level relations ------------------------------------------------

// Transition case of the previous visit of the node's cell; nullopt iff
// tier 0.  The case is interned (possibly empty) on demand.
std::optional<CaseId> precedent_of_node(CompGraph& g, NodeId v);
// Nodes of the graph whose precedent case contains v.
std::vector<NodeId> succedents_of_node(const CompGraph& g, NodeId v);

bool is_folding_node(const CompGraph& g, NodeId v);

// --- Edge-level relations ------------------------------------------------

// Precedents of (u,v): edges (v',u') of g with v' in the precedent case of
// v, u' at index(u), and u'=u, or u' in the precedent case of u, or
// tier(u) > tier(u') + 1.
EdgeList get_precedents(CompGraph& g, const Edge& e);
// Succedents: the converse relation.
EdgeList get_succedents(CompGraph& g, const Edge& e);

bool is_left_adjacent(const CompGraph& g, const Edge& f, const Edge& e);
bool is_right_adjacent(const CompGraph& g, const Edge& f, const Edge& e);
// Same cell pair, tier-compatible (exposed for completeness; the pruning
// passes do not consult it).
bool is_aligned_adjacent(const CompGraph& g, const Edge& f, const Edge& e);

// Pendant on the trailing side: no adjacent edge beyond that side and the
// corresponding endpoint is not folding.
bool is_left_pendant(const CompGraph& g, const Edge& e);
bool is_right_pendant(const CompGraph& g, const Edge& e);
bool is_ex_pendant(const CompGraph& g, const Edge& e);

// Edges one cell behind e that support it from above (directly at a
// non-folding endpoint, or through a chain of precedent edges across
// folding endpoints).  For an ex-pendant edge both sides are explored.
EdgeList ceiling_adjacent_edges(CompGraph& g, const Edge& e);

// Lateral support test used by the sweep passes.  E_i must be edges of a
// single cell index (contract violation otherwise): true iff f touches one
// of them, or f is incident to a folding node, or f is a final edge, or f
// starts at an initial node.
bool is_index_adjacent(const CompGraph& g, const Edge& f, const EdgeList& layer,
                       const EdgeSet& final_edges, const std::set<NodeId>& initial_nodes);

// --- Walks and surfaces ---------------------------------------------------

struct Walk {
    NodeId start = kInvalidNode;
    std::vector<Edge> edges;
    bool empty() const { return edges.empty(); }
    NodeId last_node() const { return edges.empty() ? start : edges.back().to; }
};

// Latest transition case per visited cell.
using Surface = std::map<int, CaseId>;

// Replays the walk and returns the resulting surface.
Surface surface_of_walk(CompGraph& g, const Walk& w);

}  // namespace npsim
