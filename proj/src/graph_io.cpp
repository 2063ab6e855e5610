#include "npsim/graph_io.hpp"

#include <sstream>

namespace npsim {

namespace {

std::string trim(std::string_view s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) return {};
    size_t b = s.find_last_not_of(" \t\r");
    return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (true) {
        size_t next = s.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(trim(s.substr(pos)));
            return out;
        }
        out.push_back(trim(s.substr(pos, next - pos)));
        pos = next + 1;
    }
}

StateId resolve_state(const std::string& tok, const NodeStore& store) {
    if (const MachineSpec* spec = store.spec()) {
        StateId q = spec->state_id(tok);
        if (q == kNone) throw ParseError("unknown state '" + tok + "'");
        return q;
    }
    if (tok.size() < 2 || tok[0] != 'q') throw ParseError("expected q<id>, got '" + tok + "'");
    return std::stoi(tok.substr(1));
}

SymId resolve_symbol(const std::string& tok, const NodeStore& store) {
    if (const MachineSpec* spec = store.spec()) {
        if (tok.size() != 1) throw ParseError("expected a symbol character, got '" + tok + "'");
        SymId s = spec->sym_id(tok[0]);
        if (s == kNone) throw ParseError("unknown symbol '" + tok + "'");
        return s;
    }
    if (tok.size() < 2 || tok[0] != 's') throw ParseError("expected s<id>, got '" + tok + "'");
    return std::stoi(tok.substr(1));
}

}  // namespace

NodeId parse_node_tuple(std::string_view text, NodeStore& store) {
    std::string body = trim(text);
    if (body.size() < 2 || body.front() != '(' || body.back() != ')')
        throw ParseError("node tuple must be parenthesized: '" + body + "'");
    auto parts = split(std::string_view(body).substr(1, body.size() - 2), ',');
    if (parts.size() != 6)
        throw ParseError("node tuple needs 6 fields: '" + body + "'");
    NodeData d;
    d.index = std::stoi(parts[0]);
    d.tier = std::stoi(parts[1]);
    d.state = resolve_state(parts[2], store);
    d.symbol = resolve_symbol(parts[3], store);
    if (parts[4] == "-" && parts[5] == "-") {
        d.last_state = kNone;
        d.last_symbol = kNone;
    } else {
        d.last_state = resolve_state(parts[4], store);
        d.last_symbol = resolve_symbol(parts[5], store);
    }
    return store.intern(d);
}

Edge parse_edge_spec(std::string_view text, NodeStore& store) {
    size_t arrow = text.find("->");
    if (arrow == std::string_view::npos)
        throw ParseError("edge needs '->': '" + std::string(text) + "'");
    NodeId from = parse_node_tuple(text.substr(0, arrow), store);
    NodeId to = parse_node_tuple(text.substr(arrow + 2), store);
    return {from, to};
}

std::string dump_edge_list(const CompGraph& g) {
    std::ostringstream out;
    const NodeStore& store = g.store();
    for (const Edge& e : g.edges())
        out << store.node_label(e.from) << " -> " << store.node_label(e.to) << '\n';
    return out.str();
}

CompGraph parse_edge_list(std::string_view text, std::shared_ptr<NodeStore> store) {
    CompGraph g(store);
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        if (auto hash = line.find("#!"); hash != std::string_view::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;
        g.add_edge(parse_edge_spec(line, *store));
    }
    return g;
}

std::string to_dot(const CompGraph& g, const std::string& name) {
    std::ostringstream out;
    const NodeStore& store = g.store();
    out << "digraph " << name << " {\n  rankdir=BT;\n";
    for (NodeId v : g.nodes()) {
        const NodeData& d = store.node(v);
        out << "  n" << v << " [label=\"" << store.node_label(v)
            << "\", pos=\"" << d.index << ',' << d.tier << "!\"];\n";
    }
    for (const Edge& e : g.edges()) out << "  n" << e.from << " -> n" << e.to << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace npsim
