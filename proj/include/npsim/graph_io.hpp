#pragma once

#include <iosfwd>
#include <string>

#include "npsim/comp_graph.hpp"

namespace npsim {

// Line format, one edge per line:
//   (i,t,state,symbol,last_state,last_symbol) -> (i,t,state,symbol,last_state,last_symbol)
// Tier-0 nodes carry "-,-" in the last two fields.  With a machine spec,
// states/symbols are written by name; standalone graphs use q<id>/s<id>.
std::string dump_edge_list(const CompGraph& g);
// Parses the same format.  Node tuples are resolved against the spec when
// one is attached to the store; otherwise q<id>/s<id> ids are expected.
CompGraph parse_edge_list(std::string_view text, std::shared_ptr<NodeStore> store);

// Single node in the tuple syntax above; intern into the store.
NodeId parse_node_tuple(std::string_view text, NodeStore& store);
// Single edge "(...) -> (...)".
Edge parse_edge_spec(std::string_view text, NodeStore& store);

std::string to_dot(const CompGraph& g, const std::string& name = "footmarks");

}  // namespace npsim
