#include "inet/acnet.hpp"

namespace inet {

namespace {

std::string port_str(Port p) { return std::to_string(p); }

}  // namespace

ACNet::ACNet(WPermutation axioms, WPermutation cuts, CellPermutation cells)
    : axioms_(std::move(axioms)), cuts_(std::move(cuts)), cells_(std::move(cells)) {
  if (auto e = check_ac_structure(axioms_, cuts_, cells_)) throw *e;
}

ACNet::ACNet(WPermutation axioms, WPermutation cuts, std::vector<Cell> cells)
    : ACNet(std::move(axioms), std::move(cuts), CellPermutation(std::move(cells))) {}

PortSet ACNet::ports() const {
  PortSet out;
  for (const auto& [p, q] : axioms_.table()) {
    if (p != q && !cuts_.contains(p)) out.insert(out.end(), p);
  }
  return out;
}

PortSet ACNet::free_ports() const {
  PortSet out;
  for (const auto& [p, q] : axioms_.table()) {
    if (p != q && !cuts_.contains(p) && !cells_.contains(p)) out.insert(out.end(), p);
  }
  return out;
}

bool ACNet::is_free(Port p) const {
  auto q = axioms_(p);
  return q && *q != p && !cuts_.contains(p) && !cells_.contains(p);
}

std::optional<Error> check_ac_structure(const WPermutation& axioms, const WPermutation& cuts,
                                        const CellPermutation& cells) {
  for (const Orbit& o : cuts.orbits()) {
    if (o.fixed_point()) {
      return Error(ErrorKind::CutIsFixedPoint, "cut " + port_str(o.first) + " is a fixed point", o.first);
    }
    for (Port p : {o.first, o.second}) {
      auto q = axioms(p);
      if (!q || *q == p) {
        return Error(ErrorKind::CutNotBetweenAxioms,
                     "cut (" + port_str(o.first) + " " + port_str(o.second) + ") endpoint " + port_str(p) +
                         " is not on an axiom",
                     o.first);
      }
    }
    if (axioms(o.first) == o.second) {
      return Error(ErrorKind::CutNotBetweenAxioms,
                   "cut (" + port_str(o.first) + " " + port_str(o.second) + ") closes a single axiom",
                   o.first);
    }
  }
  for (const Cell& c : cells.orbits()) {
    for (Port p : c.cycle) {
      auto q = axioms(p);
      if (!q) return Error(ErrorKind::CellPortUnwired, "cell port " + port_str(p) + " is not on an axiom", p);
      if (*q == p) return Error(ErrorKind::CellPortIsLoop, "cell port " + port_str(p) + " is a loop", p);
      if (cuts.contains(p)) return Error(ErrorKind::IllTyped, "cell port " + port_str(p) + " is cut", p);
    }
  }
  return std::nullopt;
}

std::optional<Error> validate_ac(const ACNet& net, const SymbolTable& symbols) {
  if (auto e = check_ac_structure(net.axioms(), net.cuts(), net.cells())) return e;
  for (const Cell& c : net.cells().orbits()) {
    auto arity = symbols.arity(c.label);
    if (!arity) return Error(ErrorKind::UnknownSymbol, "unknown symbol " + c.label, c.point());
    if (c.cycle.size() != *arity + 1) {
      return Error(ErrorKind::ArityMismatch, "cell " + c.label + " at " + port_str(c.point()) + " has " +
                                                 std::to_string(c.cycle.size()) + " ports",
                   c.point());
    }
  }
  return std::nullopt;
}

ACNet juxtapose(const ACContext& a, const ACContext& b) {
  if (a.interface.size() != b.interface.size()) {
    throw Error(ErrorKind::SizeMismatch, "interfaces of sizes " + std::to_string(a.interface.size()) +
                                             " and " + std::to_string(b.interface.size()));
  }
  for (const ACContext* c : {&a, &b}) {
    PortSet seen;
    for (Port p : c->interface) {
      if (!c->net.is_free(p)) throw Error(ErrorKind::IllTyped, "interface port " + port_str(p) + " is not free", p);
      if (!seen.insert(p).second) throw Error(ErrorKind::PortReuse, "interface repeats " + port_str(p), p);
    }
  }
  WPermutation axioms = sum(a.net.axioms(), b.net.axioms());
  std::vector<Orbit> cuts = a.net.cuts().orbits();
  for (const Orbit& o : b.net.cuts().orbits()) cuts.push_back(o);
  for (std::size_t i = 0; i < a.interface.size(); ++i) cuts.push_back({a.interface[i], b.interface[i]});
  return ACNet(std::move(axioms), WPermutation(cuts), sum(a.net.cells(), b.net.cells()));
}

Net ex_collapse(const ACNet& net, const PartialInjection& f) {
  if (f.domain() != net.cuts().domain()) {
    throw Error(ErrorKind::IllTyped, "delocalizing map must be defined exactly on the cut ports");
  }
  for (const auto& [x, y] : f.pairs()) {
    if (net.axioms().contains(y)) {
      throw Error(ErrorKind::DisjointnessViolation, "delocalized port " + port_str(y) + " is an axiom port", y);
    }
    (void)x;
  }
  std::vector<Orbit> moved;
  for (const Orbit& o : net.cuts().orbits()) moved.push_back({*f(o.first), *f(o.second)});
  return Net(full_ex_compose(net.axioms(), WPermutation(moved), f), net.cells());
}

Net ex_collapse(const ACNet& net) {
  auto t = net.axioms().table();
  Port base = t.empty() ? 0 : t.back().first + 1;
  return ex_collapse(net, fresh_renaming(net.cuts().domain(), base));
}

ACNet cutfree_lift(const Net& net) { return ACNet(net.wiring(), WPermutation(), net.cells()); }

bool ex_equivalent(const ACNet& a, const ACNet& b) { return ex_collapse(a) == ex_collapse(b); }

}  // namespace inet
