#pragma once

#include <optional>

#include "inet/glue.hpp"

namespace inet {

// Axiom/cut net. Cut endpoints are axiom ports; each cut joins two distinct
// axioms; cells sit on ports that are neither cut nor loop.
class ACNet {
 public:
  ACNet() = default;
  ACNet(WPermutation axioms, WPermutation cuts, CellPermutation cells);
  ACNet(WPermutation axioms, WPermutation cuts, std::vector<Cell> cells);

  const WPermutation& axioms() const { return axioms_; }
  const WPermutation& cuts() const { return cuts_; }
  const CellPermutation& cells() const { return cells_; }

  PortSet carrier() const { return axioms_.domain(); }
  PortSet ports() const;
  PortSet free_ports() const;
  bool is_free(Port p) const;

  friend bool operator==(const ACNet&, const ACNet&) = default;

 private:
  WPermutation axioms_;
  WPermutation cuts_;
  CellPermutation cells_;
};

struct ACContext {
  ACNet net;
  Interface interface;
};

std::optional<Error> check_ac_structure(const WPermutation& axioms, const WPermutation& cuts,
                                        const CellPermutation& cells);
std::optional<Error> validate_ac(const ACNet& net, const SymbolTable& symbols);

ACNet juxtapose(const ACContext& a, const ACContext& b);

// Delocalizes the cuts onto fresh ports above the carrier.
Net ex_collapse(const ACNet& net);
// f must be defined exactly on the cut ports and avoid the axiom ports.
Net ex_collapse(const ACNet& net, const PartialInjection& delocalize);
ACNet cutfree_lift(const Net& net);
bool ex_equivalent(const ACNet& a, const ACNet& b);

}  // namespace inet
