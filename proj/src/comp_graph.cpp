#include "npsim/comp_graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace npsim {

// --- NodeStore -------------------------------------------------------------

NodeId NodeStore::intern(const NodeData& data) {
    if ((data.tier == 0) != (data.last_state == kNone && data.last_symbol == kNone))
        throw ContractError("node previous-visit fields must be undefined exactly at tier 0");
    if (data.tier < 0) throw ContractError("node tier must be non-negative");
    auto key = std::make_tuple(data.index, data.tier, data.state, data.symbol, data.last_state,
                               data.last_symbol);
    if (auto it = node_ids_.find(key); it != node_ids_.end()) return it->second;
    if (spec_) {
        if (data.state < 0 || data.state >= spec_->num_states() || data.symbol < 0 ||
            data.symbol >= spec_->num_symbols())
            throw ContractError("node references an unknown state or symbol");
        if (!spec_->is_final(data.state) && !spec_->rule(data.state, data.symbol))
            throw ContractError("node for (state, symbol) pair with no transition");
    }
    NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(data);
    node_ids_.emplace(key, id);
    CaseId c = intern_case({data.index, data.tier, data.state, data.symbol});
    cases_[static_cast<size_t>(c)].members.push_back(id);
    node_case_.push_back(c);
    return id;
}

CaseId NodeStore::intern_case(const CaseKey& key) {
    if (auto it = case_ids_.find(key); it != case_ids_.end()) return it->second;
    CaseId id = static_cast<CaseId>(cases_.size());
    cases_.push_back({key, {}});
    case_ids_.emplace(key, id);
    return id;
}

std::optional<NodeId> NodeStore::find(const NodeData& data) const {
    auto it = node_ids_.find(std::make_tuple(data.index, data.tier, data.state, data.symbol,
                                             data.last_state, data.last_symbol));
    if (it == node_ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<CaseId> NodeStore::find_case(const CaseKey& key) const {
    auto it = case_ids_.find(key);
    if (it == case_ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<NodeId> NodeStore::case_tier0_node(CaseId id) const {
    for (NodeId v : case_members(id))
        if (node(v).tier == 0) return v;
    return std::nullopt;
}

const Rule& NodeStore::rule_of(NodeId id) const {
    if (!spec_) throw ContractError("derived node fields need a machine spec");
    const NodeData& d = node(id);
    if (spec_->is_final(d.state))
        throw ContractError("final-state node has no outgoing transition");
    const Rule* r = spec_->rule(d.state, d.symbol);
    if (!r) throw ContractError("no transition for this node's (state, symbol)");
    return *r;
}

SymId NodeStore::case_output(CaseId id) const {
    if (!spec_) throw ContractError("derived case fields need a machine spec");
    const CaseKey& k = case_key(id);
    if (spec_->is_final(k.state))
        throw ContractError("final-state case has no output");
    const Rule* r = spec_->rule(k.state, k.symbol);
    if (!r) throw ContractError("no transition for this case's (state, symbol)");
    return r->write;
}

std::string NodeStore::node_label(NodeId id) const {
    const NodeData& d = node(id);
    std::ostringstream out;
    auto state_name = [&](StateId q) {
        return spec_ ? spec_->state_name(q) : "q" + std::to_string(q);
    };
    auto sym_name = [&](SymId s) {
        return spec_ ? std::string(1, spec_->sym_name(s)) : "s" + std::to_string(s);
    };
    out << '(' << d.index << ',' << d.tier << ',' << state_name(d.state) << ',' << sym_name(d.symbol);
    if (d.tier > 0)
        out << ',' << state_name(d.last_state) << ',' << sym_name(d.last_symbol);
    else
        out << ",-,-";
    out << ')';
    return out.str();
}

// --- CompGraph ---------------------------------------------------------------

void CompGraph::ensure_edge_cmp() {
    if (!edges_init_) {
        edges_ = EdgeSet(EdgeLess{store_.get()});
        edges_init_ = true;
    }
}

bool CompGraph::add_edge(NodeId from, NodeId to) {
    ensure_edge_cmp();
    const NodeData& a = store_->node(from);
    const NodeData& b = store_->node(to);
    int delta = b.index - a.index;
    if (delta != 1 && delta != -1)
        throw ContractError("edges must connect adjacent cell indices");
    Edge e{from, to};
    if (!edges_.insert(e).second) return false;
    if (delta > 0) {
        adj_[from].right_out.push_back(e);
        adj_[to].left_in.push_back(e);
    } else {
        adj_[from].left_out.push_back(e);
        adj_[to].right_in.push_back(e);
    }
    return true;
}

bool CompGraph::remove_edge(const Edge& e) {
    ensure_edge_cmp();
    if (edges_.erase(e) == 0) return false;
    auto drop = [&](EdgeList& list) {
        list.erase(std::remove(list.begin(), list.end(), e), list.end());
    };
    int delta = store_->node(e.to).index - store_->node(e.from).index;
    if (delta > 0) {
        drop(adj_[e.from].right_out);
        drop(adj_[e.to].left_in);
    } else {
        drop(adj_[e.from].left_out);
        drop(adj_[e.to].right_in);
    }
    if (adj_[e.from].empty()) adj_.erase(e.from);
    if (auto it = adj_.find(e.to); it != adj_.end() && it->second.empty()) adj_.erase(e.to);
    return true;
}

const CompGraph::Adj* CompGraph::adj(NodeId v) const {
    auto it = adj_.find(v);
    return it == adj_.end() ? nullptr : &it->second;
}

bool CompGraph::contains_node(NodeId v) const { return adj(v) != nullptr; }

std::vector<NodeId> CompGraph::nodes() const {
    std::vector<NodeId> out;
    out.reserve(adj_.size());
    for (const auto& [v, lists] : adj_) out.push_back(v);
    return out;
}

namespace {
const EdgeList kEmptyList;
}

const EdgeList& CompGraph::left_incoming(NodeId v) const {
    const Adj* a = adj(v);
    return a ? a->left_in : kEmptyList;
}
const EdgeList& CompGraph::left_outgoing(NodeId v) const {
    const Adj* a = adj(v);
    return a ? a->left_out : kEmptyList;
}
const EdgeList& CompGraph::right_incoming(NodeId v) const {
    const Adj* a = adj(v);
    return a ? a->right_in : kEmptyList;
}
const EdgeList& CompGraph::right_outgoing(NodeId v) const {
    const Adj* a = adj(v);
    return a ? a->right_out : kEmptyList;
}

EdgeList CompGraph::incoming(NodeId v) const {
    EdgeList out = left_incoming(v);
    const EdgeList& r = right_incoming(v);
    out.insert(out.end(), r.begin(), r.end());
    return out;
}
EdgeList CompGraph::outgoing(NodeId v) const {
    EdgeList out = left_outgoing(v);
    const EdgeList& r = right_outgoing(v);
    out.insert(out.end(), r.begin(), r.end());
    return out;
}
EdgeList CompGraph::incident(NodeId v) const {
    EdgeList out = incoming(v);
    EdgeList o = outgoing(v);
    out.insert(out.end(), o.begin(), o.end());
    return out;
}

int CompGraph::min_index() const {
    if (empty()) throw ContractError("empty graph has no cell span");
    int best = store_->node(adj_.begin()->first).index;
    for (const auto& [v, lists] : adj_) best = std::min(best, store_->node(v).index);
    return best;
}

int CompGraph::max_index() const {
    if (empty()) throw ContractError("empty graph has no cell span");
    int best = store_->node(adj_.begin()->first).index;
    for (const auto& [v, lists] : adj_) best = std::max(best, store_->node(v).index);
    return best;
}

int CompGraph::height() const {
    int best = -1;
    for (const auto& [v, lists] : adj_) best = std::max(best, store_->node(v).tier);
    return best + 1;
}

EdgeList CompGraph::edges_with_index(int i) const {
    EdgeList out;
    for (const Edge& e : edges_)
        if (edge_index(*this, e) == i) out.push_back(e);
    return out;
}

// --- Edge geometry -----------------------------------------------------------

int edge_index(const CompGraph& g, const Edge& e) {
    return std::min(g.store().node(e.from).index, g.store().node(e.to).index);
}

int edge_dir(const CompGraph& g, const Edge& e) {
    return g.store().node(e.to).index - g.store().node(e.from).index;
}

NodeId endpoint_at(const CompGraph& g, const Edge& e, int i) {
    if (g.store().node(e.from).index == i) return e.from;
    if (g.store().node(e.to).index == i) return e.to;
    throw ContractError("edge has no endpoint at the requested cell index");
}

bool edges_adjacent(const CompGraph&, const Edge& a, const Edge& b) {
    if (a == b) return false;
    return a.from == b.from || a.from == b.to || a.to == b.from || a.to == b.to;
}

// --- Node-level relations -----------------------------------------------------

std::optional<CaseId> precedent_of_node(CompGraph& g, NodeId v) {
    const NodeData& d = g.store().node(v);
    if (d.tier == 0) return std::nullopt;
    return g.store().intern_case({d.index, d.tier - 1, d.last_state, d.last_symbol});
}

std::vector<NodeId> succedents_of_node(const CompGraph& g, NodeId v) {
    const NodeData& d = g.store().node(v);
    std::vector<NodeId> out;
    for (NodeId w : g.nodes()) {
        const NodeData& e = g.store().node(w);
        if (e.index == d.index && e.tier == d.tier + 1 && e.last_state == d.state &&
            e.last_symbol == d.symbol)
            out.push_back(w);
    }
    return out;
}

bool is_folding_node(const CompGraph& g, NodeId v) {
    return (!g.left_incoming(v).empty() && !g.left_outgoing(v).empty()) ||
           (!g.right_incoming(v).empty() && !g.right_outgoing(v).empty());
}

// --- Edge-level relations -------------------------------------------------------

namespace {

// Is z a member of the precedent case of u?
bool in_precedent_case(const NodeStore& store, NodeId z, NodeId u) {
    const NodeData& du = store.node(u);
    if (du.tier == 0) return false;
    const NodeData& dz = store.node(z);
    return dz.index == du.index && dz.tier == du.tier - 1 && dz.state == du.last_state &&
           dz.symbol == du.last_symbol;
}

// Is w a member of the succedent node set of u?
bool in_succedent_set(const NodeStore& store, NodeId w, NodeId u) {
    const NodeData& du = store.node(u);
    const NodeData& dw = store.node(w);
    return dw.index == du.index && dw.tier == du.tier + 1 && dw.last_state == du.state &&
           dw.last_symbol == du.symbol;
}

}  // namespace

EdgeList get_precedents(CompGraph& g, const Edge& e) {
    const NodeStore& store = g.store();
    EdgeList out;
    auto pc = precedent_of_node(g, e.to);
    if (!pc) return out;
    int d = edge_dir(g, e);
    for (NodeId vp : store.case_members(*pc)) {
        if (!g.contains_node(vp)) continue;
        const EdgeList& outs = d > 0 ? g.left_outgoing(vp) : g.right_outgoing(vp);
        for (const Edge& cand : outs) {
            NodeId up = cand.to;
            if (up == e.from || in_precedent_case(store, up, e.from) ||
                store.node(e.from).tier > store.node(up).tier + 1)
                out.push_back(cand);
        }
    }
    std::sort(out.begin(), out.end(), EdgeLess{&store});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

EdgeList get_succedents(CompGraph& g, const Edge& e) {
    const NodeStore& store = g.store();
    EdgeList out;
    int d = edge_dir(g, e);
    // Candidate terminals: nodes at index(from), tier+1, remembering (state,
    // symbol) of `from`; candidate edges arrive there against e's direction.
    for (NodeId up : g.nodes()) {
        if (!in_succedent_set(store, up, e.from)) continue;
        const EdgeList& ins = d > 0 ? g.right_incoming(up) : g.left_incoming(up);
        for (const Edge& cand : ins) {
            NodeId vp = cand.from;
            if (store.node(vp).index != store.node(e.to).index) continue;
            if (vp == e.to || in_succedent_set(store, vp, e.to) ||
                store.node(vp).tier > store.node(e.to).tier + 1)
                out.push_back(cand);
        }
    }
    std::sort(out.begin(), out.end(), EdgeLess{&store});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_left_adjacent(const CompGraph& g, const Edge& f, const Edge& e) {
    return edges_adjacent(g, f, e) && edge_index(g, f) == edge_index(g, e) - 1;
}

bool is_right_adjacent(const CompGraph& g, const Edge& f, const Edge& e) {
    return edges_adjacent(g, f, e) && edge_index(g, f) == edge_index(g, e) + 1;
}

bool is_aligned_adjacent(const CompGraph& g, const Edge& f, const Edge& e) {
    return edges_adjacent(g, f, e) && edge_index(g, f) == edge_index(g, e);
}

bool is_left_pendant(const CompGraph& g, const Edge& e) {
    int i = edge_index(g, e);
    NodeId near = endpoint_at(g, e, i);
    if (is_folding_node(g, near)) return false;
    for (NodeId v : {e.from, e.to})
        for (const Edge& f : g.incident(v))
            if (!(f == e) && edge_index(g, f) == i - 1) return false;
    return true;
}

bool is_right_pendant(const CompGraph& g, const Edge& e) {
    int i = edge_index(g, e);
    NodeId far = endpoint_at(g, e, i + 1);
    if (is_folding_node(g, far)) return false;
    for (NodeId v : {e.from, e.to})
        for (const Edge& f : g.incident(v))
            if (!(f == e) && edge_index(g, f) == i + 1) return false;
    return true;
}

bool is_ex_pendant(const CompGraph& g, const Edge& e) {
    return is_left_pendant(g, e) || is_right_pendant(g, e);
}

EdgeList ceiling_adjacent_edges(CompGraph& g, const Edge& e0) {
    const NodeStore& store = g.store();
    EdgeSet found = g.make_edge_set();

    // Supporters arrive from the neighboring cell pair: same-pair parallels
    // (which share e0's edge index) are not ceiling-adjacent.
    auto collect_at = [&](NodeId y, const Edge& c) {
        for (const Edge& f : g.incoming(y))
            if (!(f == e0) && edge_index(g, f) != edge_index(g, c)) found.insert(f);
    };

    // Precedent chains stay on e0's cell pair; a chain may pass an edge only
    // where the chain-side endpoint folds, and contributes the incoming
    // edges of its non-folding endpoints.
    std::deque<std::pair<int, Edge>> queue;
    std::set<std::pair<int, std::pair<NodeId, NodeId>>> visited;
    auto enter_chain = [&](int i, const Edge& e) {
        for (const Edge& prev : get_precedents(g, e)) queue.emplace_back(i, prev);
    };

    // Direct support one cell behind the starting endpoint.
    int init_side = store.node(e0.from).index;
    collect_at(e0.from, e0);
    if (is_folding_node(g, e0.from)) enter_chain(init_side, e0);
    if (is_ex_pendant(g, e0)) {
        int term_side = store.node(e0.to).index;
        if (is_folding_node(g, e0.to))
            enter_chain(term_side, e0);
        else
            collect_at(e0.to, e0);
    }

    while (!queue.empty()) {
        auto [i, c] = queue.front();
        queue.pop_front();
        if (!visited.insert({i, {c.from, c.to}}).second) continue;
        for (NodeId y : {c.from, c.to})
            if (!is_folding_node(g, y)) collect_at(y, c);
        if (is_folding_node(g, endpoint_at(g, c, i))) {
            enter_chain(i, c);
        } else if (!(c == e0)) {
            // The chain grounds here: the landing edge itself supports e0.
            found.insert(c);
        }
    }
    return EdgeList(found.begin(), found.end());
}

bool is_index_adjacent(const CompGraph& g, const Edge& f, const EdgeList& layer,
                       const EdgeSet& final_edges, const std::set<NodeId>& initial_nodes) {
    if (!layer.empty()) {
        int i = edge_index(g, layer.front());
        for (const Edge& e : layer)
            if (edge_index(g, e) != i)
                throw ContractError("layer edges must share one cell index");
    }
    for (const Edge& e : layer)
        if (edges_adjacent(g, f, e)) return true;
    if (is_folding_node(g, f.from) || is_folding_node(g, f.to)) return true;
    if (final_edges.count(f)) return true;
    if (initial_nodes.count(f.from)) return true;
    return false;
}

// --- Walks and surfaces -----------------------------------------------------------

Surface surface_of_walk(CompGraph& g, const Walk& w) {
    Surface s;
    auto touch = [&](NodeId v) {
        const NodeData& d = g.store().node(v);
        s[d.index] = g.store().case_of(v);
    };
    if (w.start != kInvalidNode) touch(w.start);
    for (const Edge& e : w.edges) touch(e.to);
    return s;
}

}  // namespace npsim
