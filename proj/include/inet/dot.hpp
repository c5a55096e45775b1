#pragma once

#include <string>

#include "inet/acnet.hpp"

namespace inet {

// Graphviz rendering. Cells are triangles labelled symbol@principal, free
// ports are plain nodes, loops are self-edges on point nodes. Edges touching
// a principal port are bold, active pairs are red, cuts are doubled.
std::string to_dot(const Net& net, const std::string& name = "net");
std::string to_dot(const ACNet& net, const std::string& name = "net");

}  // namespace inet
