#include "inet/net.hpp"

#include <numeric>
#include <sstream>
#include <unordered_map>

namespace inet {

void SymbolTable::declare(const Symbol& name, std::size_t arity) {
  if (!arity_.emplace(name, arity).second) {
    throw Error(ErrorKind::DuplicateName, "symbol " + name + " declared twice");
  }
}

std::optional<std::size_t> SymbolTable::arity(const Symbol& name) const {
  auto it = arity_.find(name);
  if (it == arity_.end()) return std::nullopt;
  return it->second;
}

Net::Net(WPermutation wiring, CellPermutation cells)
    : wiring_(std::move(wiring)), cells_(std::move(cells)) {
  if (auto e = check_structure(wiring_, cells_)) throw *e;
}

Net::Net(WPermutation wiring, std::vector<Cell> cells)
    : Net(std::move(wiring), CellPermutation(std::move(cells))) {}

PortSet Net::ports() const {
  PortSet out;
  for (const auto& [p, q] : wiring_.table()) {
    if (p != q) out.insert(out.end(), p);
  }
  return out;
}

PortSet Net::free_ports() const {
  PortSet out;
  for (const auto& [p, q] : wiring_.table()) {
    if (p != q && !cells_.contains(p)) out.insert(out.end(), p);
  }
  return out;
}

PortPartition port_partition(const Net& net) {
  PortPartition out;
  for (const auto& [p, q] : net.wiring().table()) {
    if (p == q) {
      out.loops.insert(out.loops.end(), p);
    } else if (net.cells().contains(p)) {
      out.cell_ports.insert(out.cell_ports.end(), p);
    } else {
      out.free_ports.insert(out.free_ports.end(), p);
    }
  }
  return out;
}

std::optional<Error> check_structure(const WPermutation& wiring, const CellPermutation& cells) {
  // Both tables are sorted by port, so one merge pass suffices.
  auto w = wiring.table();
  auto it = w.begin();
  for (const auto& entry : cells.index()) {
    Port p = entry.first;
    while (it != w.end() && it->first < p) ++it;
    if (it == w.end() || it->first != p) {
      return Error(ErrorKind::CellPortUnwired, "cell port " + std::to_string(p) + " is not wired", p);
    }
    if (it->second == p) return Error(ErrorKind::CellPortIsLoop, "cell port " + std::to_string(p) + " is a loop", p);
  }
  return std::nullopt;
}

std::optional<Error> validate(const Net& net, const SymbolTable& symbols) {
  if (auto e = check_structure(net.wiring(), net.cells())) return e;
  for (const Cell& c : net.cells().orbits()) {
    auto arity = symbols.arity(c.label);
    if (!arity) return Error(ErrorKind::UnknownSymbol, "unknown symbol " + c.label, c.point());
    if (c.cycle.size() != *arity + 1) {
      return Error(ErrorKind::ArityMismatch,
                   "cell " + c.label + " at " + std::to_string(c.point()) + " has " +
                       std::to_string(c.cycle.size()) + " ports, expected " +
                       std::to_string(*arity + 1),
                   c.point());
    }
  }
  return std::nullopt;
}

namespace {

template <class F>
Net rename_with(const Net& net, F&& map) {
  std::vector<Orbit> wires;
  for (const Orbit& o : net.wiring().orbits()) wires.push_back({map(o.first), map(o.second)});
  std::vector<Cell> cells;
  cells.reserve(net.cells().size());
  for (const Cell& c : net.cells().orbits()) {
    Cell d{{}, c.label};
    d.cycle.reserve(c.cycle.size());
    for (Port p : c.cycle) d.cycle.push_back(map(p));
    cells.push_back(std::move(d));
  }
  return Net(WPermutation(wires), CellPermutation(std::move(cells)));
}

}  // namespace

Net rename(const Net& net, const PartialInjection& bijection) {
  return rename_with(net, [&](Port p) {
    auto q = bijection(p);
    if (!q) throw Error(ErrorKind::NotTotal, "renaming misses port " + std::to_string(p), p);
    return *q;
  });
}

Net shift(const Net& net, Port offset) {
  return rename_with(net, [&](Port p) { return p + offset; });
}

Port next_fresh_port(const Net& net) {
  auto t = net.wiring().table();
  return t.empty() ? 0 : t.back().first + 1;
}

PartialInjection fresh_renaming(const PortSet& ports, Port base) {
  std::vector<PartialInjection::Pair> out;
  out.reserve(ports.size());
  for (Port p : ports) out.push_back({p, base++});
  return PartialInjection(std::move(out));
}

Net parallel_sum(const Net& a, const Net& b) {
  return Net(sum(a.wiring(), b.wiring()), sum(a.cells(), b.cells()));
}

PortMap identity_map(const Net& net) {
  PortMap out;
  for (Port p : net.carrier()) out.emplace_hint(out.end(), p, p);
  return out;
}

PortMap compose(const PortMap& g, const PortMap& f) {
  PortMap out;
  for (const auto& [x, y] : f) {
    auto it = g.find(y);
    if (it != g.end()) out.emplace_hint(out.end(), x, it->second);
  }
  return out;
}

std::optional<Error> check_morphism(const Net& source, const Net& target, const PortMap& f) {
  auto img = [&](Port p) -> std::optional<Port> {
    auto it = f.find(p);
    if (it == f.end()) return std::nullopt;
    return it->second;
  };
  auto str = [](Port p) { return std::to_string(p); };
  for (Port p : source.carrier()) {
    auto q = img(p);
    if (!q) return Error(ErrorKind::NotTotal, "map undefined at " + str(p), p);
    if (!target.wiring().contains(*q)) {
      return Error(ErrorKind::NotInTarget, "image of " + str(p) + " is not a target port", p);
    }
  }
  for (Port p : source.carrier()) {
    if (*img(*source.wiring()(p)) != *target.wiring()(*img(p))) {
      return Error(ErrorKind::WiringNotPreserved, "wiring not preserved at " + str(p), p);
    }
  }
  for (const Cell& c : source.cells().orbits()) {
    for (Port p : c.cycle) {
      if (!target.cells().contains(*img(p))) {
        return Error(ErrorKind::CellPortNotPreserved, "cell port " + str(p) + " maps outside cells", p);
      }
    }
    for (Port p : c.cycle) {
      if (*img(*source.cells()(p)) != *target.cells()(*img(p))) {
        return Error(ErrorKind::CellNotPreserved, "cell order not preserved at " + str(p), p);
      }
    }
    const Cell& d = target.cells().orbit(target.cells().locate(*img(c.point()))->orbit);
    if (d.label != c.label) {
      return Error(ErrorKind::LabelNotPreserved, "label " + c.label + " maps to " + d.label, c.point());
    }
    if (d.point() != *img(c.point())) {
      return Error(ErrorKind::PrincipalNotPreserved, "principal port " + str(c.point()) + " not preserved",
                   c.point());
    }
  }
  return std::nullopt;
}

namespace {

struct Components {
  // Cell indices per component, and the free-free wires and loops outside cells.
  std::vector<std::vector<std::size_t>> cells;
  std::vector<Orbit> bare_wires;
  std::vector<Port> loops;
};

Components components(const Net& net) {
  const auto& cs = net.cells();
  std::vector<std::size_t> parent(cs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  Components out;
  for (const Orbit& o : net.wiring().orbits()) {
    if (o.fixed_point()) {
      out.loops.push_back(o.first);
      continue;
    }
    auto a = cs.locate(o.first);
    auto b = cs.locate(o.second);
    if (a && b) {
      parent[find(a->orbit)] = find(b->orbit);
    } else if (!a && !b) {
      out.bare_wires.push_back(o);
    }
  }
  std::unordered_map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    auto [it, fresh] = slot.emplace(find(i), out.cells.size());
    if (fresh) out.cells.emplace_back();
    out.cells[it->second].push_back(i);
  }
  return out;
}

struct Matching {
  std::unordered_map<Port, Port> map;
  std::unordered_map<Port, Port> back;
  std::vector<long> cell_ab;
  std::vector<long> cell_ba;
  std::vector<Port> bound;
  std::vector<std::size_t> paired;

  bool bind(Port p, Port q) {
    auto it = map.find(p);
    if (it != map.end()) return it->second == q;
    if (back.count(q)) return false;
    map.emplace(p, q);
    back.emplace(q, p);
    bound.push_back(p);
    return true;
  }

  void rollback() {
    for (Port p : bound) {
      back.erase(map.at(p));
      map.erase(p);
    }
    for (std::size_t x : paired) {
      cell_ba[static_cast<std::size_t>(cell_ab[x])] = -1;
      cell_ab[x] = -1;
    }
    commit();
  }

  void commit() {
    bound.clear();
    paired.clear();
  }
};

// Extends m by sending cell ca of a to cell cb of b and following wires.
// Returns false on conflict, leaving m partly filled.
bool propagate(const Net& a, const Net& b, std::size_t ca, std::size_t cb, bool fix_free,
               Matching& m) {
  std::vector<std::pair<std::size_t, std::size_t>> work;
  auto pair_cells = [&](std::size_t x, std::size_t y) {
    if (m.cell_ab[x] >= 0) return m.cell_ab[x] == static_cast<long>(y);
    if (m.cell_ba[y] >= 0) return false;
    const Cell& cx = a.cells().orbit(x);
    const Cell& cy = b.cells().orbit(y);
    if (cx.label != cy.label || cx.cycle.size() != cy.cycle.size()) return false;
    m.cell_ab[x] = static_cast<long>(y);
    m.cell_ba[y] = static_cast<long>(x);
    m.paired.push_back(x);
    work.push_back({x, y});
    return true;
  };
  if (!pair_cells(ca, cb)) return false;
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    const Cell& cx = a.cells().orbit(x);
    const Cell& cy = b.cells().orbit(y);
    for (std::size_t i = 0; i < cx.cycle.size(); ++i) {
      if (!m.bind(cx.cycle[i], cy.cycle[i])) return false;
    }
    for (std::size_t i = 0; i < cx.cycle.size(); ++i) {
      Port p = *a.wiring()(cx.cycle[i]);
      Port q = *b.wiring()(cy.cycle[i]);
      auto pa = a.cells().locate(p);
      auto qb = b.cells().locate(q);
      if (pa.has_value() != qb.has_value()) return false;
      if (pa) {
        if (pa->index != qb->index || !pair_cells(pa->orbit, qb->orbit)) return false;
      } else {
        if (fix_free && p != q) return false;
        if (!m.bind(p, q)) return false;
      }
    }
  }
  return true;
}

}  // namespace

std::optional<PortMap> find_isomorphism(const Net& a, const Net& b, bool fix_free_ports) {
  if (a.carrier().size() != b.carrier().size() || a.cells().size() != b.cells().size()) {
    return std::nullopt;
  }
  Components ka = components(a);
  Components kb = components(b);
  if (ka.cells.size() != kb.cells.size() || ka.bare_wires.size() != kb.bare_wires.size() ||
      ka.loops.size() != kb.loops.size()) {
    return std::nullopt;
  }
  Matching m;
  m.cell_ab.assign(a.cells().size(), -1);
  m.cell_ba.assign(b.cells().size(), -1);
  // Components are bucketed by a cheap invariant before trying matches.
  auto signature = [&](const Net& n, const std::vector<std::size_t>& comp) {
    std::vector<std::string> parts;
    for (std::size_t c : comp) {
      const Cell& cell = n.cells().orbit(c);
      std::string part = cell.label + "/" + std::to_string(cell.cycle.size());
      for (Port p : cell.cycle) {
        Port q = *n.wiring()(p);
        if (!n.cells().contains(q)) part += fix_free_ports ? "," + std::to_string(q) : ",f";
      }
      parts.push_back(std::move(part));
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& x : parts) out += x + ";";
    return out;
  };
  std::unordered_map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t j = kb.cells.size(); j-- > 0;) buckets[signature(b, kb.cells[j])].push_back(j);
  // Isomorphism is an equivalence on components, so a greedy matching of
  // components is complete.
  for (const auto& comp : ka.cells) {
    auto it = buckets.find(signature(a, comp));
    if (it == buckets.end()) return std::nullopt;
    auto& candidates = it->second;
    bool matched = false;
    for (std::size_t k = candidates.size(); k-- > 0 && !matched;) {
      for (std::size_t start : kb.cells[candidates[k]]) {
        if (propagate(a, b, comp.front(), start, fix_free_ports, m)) {
          m.commit();
          candidates.erase(candidates.begin() + static_cast<long>(k));
          matched = true;
          break;
        }
        m.rollback();
      }
    }
    if (!matched) return std::nullopt;
  }
  auto& map = m.map;
  if (fix_free_ports) {
    for (const Orbit& o : ka.bare_wires) {
      if (b.wiring()(o.first) != o.second || !b.is_free(o.first) || !b.is_free(o.second)) {
        return std::nullopt;
      }
      map[o.first] = o.first;
      map[o.second] = o.second;
    }
  } else {
    for (std::size_t i = 0; i < ka.bare_wires.size(); ++i) {
      map[ka.bare_wires[i].first] = kb.bare_wires[i].first;
      map[ka.bare_wires[i].second] = kb.bare_wires[i].second;
    }
  }
  for (std::size_t i = 0; i < ka.loops.size(); ++i) map[ka.loops[i]] = kb.loops[i];
  PortMap out(map.begin(), map.end());
  if (out.size() != a.carrier().size()) return std::nullopt;
  if (check_morphism(a, b, out)) return std::nullopt;
  return out;
}

bool isomorphic(const Net& a, const Net& b, bool fix_free_ports) {
  return find_isomorphism(a, b, fix_free_ports).has_value();
}

std::string to_string(const Net& net) {
  std::ostringstream os;
  os << '(' << to_string(net.wiring()) << ", ";
  bool first = true;
  for (const Cell& c : net.cells().orbits()) {
    os << (first ? "" : " ") << c.label << '(' << c.cycle.front();
    for (std::size_t i = 1; i < c.cycle.size(); ++i) os << (i == 1 ? ";" : ",") << c.cycle[i];
    os << ')';
    first = false;
  }
  if (first) os << "no cells";
  os << ')';
  return os.str();
}

}  // namespace inet
