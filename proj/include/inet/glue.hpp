#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "inet/net.hpp"

namespace inet {

// An ordered list of distinct free ports.
using Interface = std::vector<Port>;

struct Context {
  Net net;
  Interface interface;

  friend bool operator==(const Context&, const Context&) = default;
};

// Witness that whole = glue(left, injection, right).
struct CuttingWitness {
  Net left;
  PartialInjection injection;
  Net right;
};

std::optional<Error> check_context(const Context& c);

// Disjoint carriers, dom f free in a, codom f free in b.
Net glue(const Net& a, const PartialInjection& f, const Net& b);
PartialInjection chord(const Interface& i, const Interface& j);
Net context_glue(const Context& a, const Context& b);
std::optional<Error> verify_cutting(const Net& whole, const CuttingWitness& w);

// The same gluing as a pair of contexts, interfaces ordered by ascending
// source port.
std::pair<Context, Context> contexts_of_gluing(const Net& a, const PartialInjection& f, const Net& b);

// Given alpha : source -> s, the morphism source -> glue(s, f, s_prime)
// obtained by following glued wires through s_prime.
PortMap extend_morphism(const Net& source, const PortMap& alpha, const Net& s,
                        const PartialInjection& f, const Net& s_prime);
// The inclusion s -> glue(s, f, s_prime).
PortMap inclusion(const Net& s, const PartialInjection& f, const Net& s_prime);

// Splits f into the pairs whose source lies in ports and the rest.
std::pair<PartialInjection, PartialInjection> split_by_domain(const PartialInjection& f,
                                                              const PortSet& ports);

}  // namespace inet
