#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "inet/perm.hpp"

namespace inet {

using Symbol = std::string;
using CellPermutation = LabelledPermutation<Symbol>;
// cycle.front() is the principal port, the rest are auxiliary ports in order.
using Cell = CellPermutation::Orbit;

class SymbolTable {
 public:
  // Throws DuplicateName if the symbol exists.
  void declare(const Symbol& name, std::size_t arity);
  std::optional<std::size_t> arity(const Symbol& name) const;
  bool contains(const Symbol& name) const { return arity_.count(name) > 0; }
  const std::map<Symbol, std::size_t>& entries() const { return arity_; }

  friend bool operator==(const SymbolTable&, const SymbolTable&) = default;

 private:
  std::map<Symbol, std::size_t> arity_;
};

// An interaction net: an involutive wiring and a set of cells whose ports are
// wired and are not loops. The invariants are checked on construction.
class Net {
 public:
  Net() = default;
  Net(WPermutation wiring, CellPermutation cells);
  Net(WPermutation wiring, std::vector<Cell> cells);

  const WPermutation& wiring() const { return wiring_; }
  const CellPermutation& cells() const { return cells_; }

  PortSet carrier() const { return wiring_.domain(); }
  PortSet ports() const;
  PortSet loops() const { return wiring_.fixed_points(); }
  PortSet cell_ports() const { return cells_.domain(); }
  PortSet free_ports() const;

  bool is_free(Port p) const { return wiring_.contains(p) && !wiring_.fixed(p) && !cells_.contains(p); }
  bool empty() const { return wiring_.empty(); }

  friend bool operator==(const Net&, const Net&) = default;

 private:
  WPermutation wiring_;
  CellPermutation cells_;
};

struct PortPartition {
  PortSet loops;
  PortSet cell_ports;
  PortSet free_ports;
};

PortPartition port_partition(const Net& net);

std::optional<Error> check_structure(const WPermutation& wiring, const CellPermutation& cells);
std::optional<Error> validate(const Net& net, const SymbolTable& symbols);

// Throws NotTotal if the bijection misses a port of the carrier.
Net rename(const Net& net, const PartialInjection& bijection);
Net shift(const Net& net, Port offset);
// Largest port of the carrier plus one, or 0 for the empty net.
Port next_fresh_port(const Net& net);
// Maps the given ports, in ascending order, to base, base + 1, ...
PartialInjection fresh_renaming(const PortSet& ports, Port base);

Net parallel_sum(const Net& a, const Net& b);

using PortMap = std::map<Port, Port>;

PortMap identity_map(const Net& net);
PortMap compose(const PortMap& g, const PortMap& f);
std::optional<Error> check_morphism(const Net& source, const Net& target, const PortMap& f);
std::optional<PortMap> find_isomorphism(const Net& a, const Net& b, bool fix_free_ports);
bool isomorphic(const Net& a, const Net& b, bool fix_free_ports = false);

std::string to_string(const Net& net);

}  // namespace inet
