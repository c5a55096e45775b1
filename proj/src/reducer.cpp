#include <algorithm>
#include <functional>
#include <limits>
#include <random>
#include <unordered_map>

#include "inet/dynamics.hpp"

namespace inet {

namespace {

constexpr Port kNone = std::numeric_limits<Port>::max();

struct CompiledRule {
  const Rule* rule;
  std::uint32_t left_label;
  std::vector<Orbit> wires;  // offsets into the replacement carrier
  std::vector<std::pair<std::uint32_t, std::vector<Port>>> cells;
  std::vector<Port> interface;
  Port carrier;
};

// Everything the reducer knows about one port, kept together for locality.
struct PortRec {
  Port wire = kNone;  // kNone when the id is not in the carrier
  std::uint32_t cell = kNone;
  std::uint32_t pos = kNone;
  Port pool_pos = kNone;  // set for the smaller principal port of a redex
};

struct CellRec {
  std::uint32_t label;
  std::uint32_t first;  // into the flat port store
  std::uint32_t size;   // 0 once the cell is gone
};

}  // namespace

// Ports are renumbered densely: the carrier of the input in ascending order,
// then the fresh ports in allocation order. The renaming preserves order, so
// the leftmost redex and loop names are computed on the dense ids.
struct Reducer::State {
  std::vector<Port> initial;  // dense id -> port, below the fresh range
  Port fresh_base = 0;
  std::vector<PortRec> port;
  std::vector<CellRec> cells;
  std::vector<Port> cell_ports;
  std::vector<Symbol> labels;
  std::unordered_map<Symbol, std::uint32_t> label_ids;
  std::vector<CompiledRule> compiled;
  std::unordered_map<std::uint64_t, std::size_t> table;
  // Live redexes in any order. For the leftmost order the redexes of the
  // input sit sorted behind a cursor and later ones in a min-heap, both with
  // lazy deletion.
  std::vector<Port> pool;
  std::vector<Port> sorted;
  std::size_t cursor = 0;
  bool started = false;
  std::vector<Port> heap;
  std::mt19937_64 rng;

  Port external(Port id) const {
    return id < initial.size() ? initial[id] : fresh_base + (id - static_cast<Port>(initial.size()));
  }

  Port allocate(Port count) {
    Port first = static_cast<Port>(port.size());
    port.resize(port.size() + count);
    return first;
  }

  std::uint32_t intern(const Symbol& s) {
    auto [it, fresh] = label_ids.emplace(s, static_cast<std::uint32_t>(labels.size()));
    if (fresh) labels.push_back(s);
    return it->second;
  }

  static std::uint64_t key(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  void compile(const Rule& r) {
    CompiledRule c{&r, intern(r.left_symbol), {}, {}, {}, 0};
    std::uint32_t right = intern(r.right_symbol);
    const Net& rp = r.replacement.net;
    std::unordered_map<Port, Port> offset;
    for (Port p : rp.carrier()) offset.emplace(p, c.carrier++);
    for (const Orbit& o : rp.wiring().orbits()) c.wires.push_back({offset[o.first], offset[o.second]});
    for (const Cell& cell : rp.cells().orbits()) {
      std::vector<Port> ports;
      for (Port p : cell.cycle) ports.push_back(offset[p]);
      c.cells.push_back({intern(cell.label), std::move(ports)});
    }
    for (Port p : r.replacement.interface) c.interface.push_back(offset[p]);
    table[key(c.left_label, right)] = compiled.size();
    compiled.push_back(std::move(c));
  }

  // Rule for a principal-principal wire between cells a and b, if any.
  const CompiledRule* rule_for(std::uint32_t ca, std::uint32_t cb) const {
    auto it = table.find(key(cells[ca].label, cells[cb].label));
    return it == table.end() ? nullptr : &compiled[it->second];
  }

  std::optional<std::uint32_t> principal_owner(Port p) const {
    if (port[p].pos != 0) return std::nullopt;
    return port[p].cell;
  }

  void consider(Port a) {
    auto ca = principal_owner(a);
    if (!ca) return;
    Port b = port[a].wire;
    auto cb = principal_owner(b);
    if (!cb || !rule_for(*ca, *cb)) return;
    Port k = std::min(a, b);
    if (port[k].pool_pos != kNone) return;
    port[k].pool_pos = static_cast<Port>(pool.size());
    pool.push_back(k);
    if (!started) {
      sorted.push_back(k);
      return;
    }
    heap.push_back(k);
    std::push_heap(heap.begin(), heap.end(), std::greater<>());
  }

  void forget(Port k) {
    Port i = port[k].pool_pos;
    port[k].pool_pos = kNone;
    if (i + 1 != pool.size()) {
      pool[i] = pool.back();
      port[pool[i]].pool_pos = i;
    }
    pool.pop_back();
  }

  Port leftmost() {
    // A fired redex destroys its ports, so a stale entry never comes back.
    while (cursor < sorted.size() && port[sorted[cursor]].pool_pos == kNone) ++cursor;
    while (!heap.empty() && port[heap.front()].pool_pos == kNone) {
      std::pop_heap(heap.begin(), heap.end(), std::greater<>());
      heap.pop_back();
    }
    if (cursor == sorted.size()) return heap.front();
    if (heap.empty()) return sorted[cursor];
    return std::min(sorted[cursor], heap.front());
  }

  void add_cell(std::uint32_t label, const Port* ports, std::size_t n) {
    auto id = static_cast<std::uint32_t>(cells.size());
    auto first = static_cast<std::uint32_t>(cell_ports.size());
    for (std::uint32_t i = 0; i < n; ++i) {
      port[ports[i]].cell = id;
      port[ports[i]].pos = i;
      cell_ports.push_back(ports[i]);
    }
    cells.push_back({label, first, static_cast<std::uint32_t>(n)});
  }

  void drop_cell(std::uint32_t id) {
    CellRec& c = cells[id];
    for (std::uint32_t i = 0; i < c.size; ++i) {
      PortRec& r = port[cell_ports[c.first + i]];
      r.cell = r.pos = kNone;
    }
    c.size = 0;
  }

  void link(Port a, Port b) {
    port[a].wire = b;
    port[b].wire = a;
  }

  Step fire(Port k) {
    forget(k);
    Port a = k;
    Port b = port[a].wire;
    std::uint32_t ca = port[a].cell;
    std::uint32_t cb = port[b].cell;
    const CompiledRule& rule = *rule_for(ca, cb);
    if (cells[ca].label != rule.left_label) {
      std::swap(a, b);
      std::swap(ca, cb);
    }
    std::vector<Port> aux;
    for (std::uint32_t c : {ca, cb}) {
      const CellRec& rec = cells[c];
      aux.insert(aux.end(), cell_ports.begin() + rec.first + 1, cell_ports.begin() + rec.first + rec.size);
    }
    const Port n = static_cast<Port>(aux.size());
    if (n != rule.interface.size()) {
      throw Error(ErrorKind::ArityMismatch, "redex arity does not match rule interface", external(a));
    }
    const Port base = allocate(2 * n + rule.carrier);
    const Port z0 = base + 2 * n;

    std::vector<Port> ends(n);
    for (Port i = 0; i < n; ++i) ends[i] = port[aux[i]].wire;
    port[a].wire = port[b].wire = kNone;
    for (Port p : aux) port[p].wire = kNone;
    drop_cell(ca);
    drop_cell(cb);

    // The outer context: attachment points become base + i.
    for (Port i = 0; i < n; ++i) {
      auto it = std::find(aux.begin(), aux.end(), ends[i]);
      if (it == aux.end()) {
        link(base + i, ends[i]);
      } else if (Port j = static_cast<Port>(it - aux.begin()); j > i) {
        link(base + i, base + j);
      }
    }
    // The replacement, renamed onto z0, z0 + 1, ...
    for (const Orbit& o : rule.wires) link(z0 + o.first, z0 + o.second);
    std::vector<Port> fresh_principals;
    std::vector<Port> renamed;
    for (const auto& [label, ports] : rule.cells) {
      renamed.clear();
      for (Port p : ports) renamed.push_back(z0 + p);
      fresh_principals.push_back(renamed.front());
      add_cell(label, renamed.data(), renamed.size());
    }
    // Splice the chord base + i -> replacement interface, as in full_ex_compose.
    std::unordered_map<Port, Port> consumed;
    auto consumed_at = [&](Port p) {
      auto it = consumed.find(p);
      return it == consumed.end() ? kNone : it->second;
    };
    std::vector<Port> touched;
    for (Port i = 0; i < n; ++i) {
      Port p = base + i;
      Port q = z0 + rule.interface[i];
      Port pe = port[p].wire;
      Port qe = port[q].wire;
      Port m = std::min({consumed_at(p), consumed_at(q), p, q});
      port[p].wire = port[q].wire = kNone;
      consumed.erase(p);
      consumed.erase(q);
      if (pe == q) {
        port[m].wire = m;
        continue;
      }
      link(pe, qe);
      consumed[pe] = m;
      consumed[qe] = m;
      touched.push_back(pe);
      touched.push_back(qe);
    }
    for (Port p : fresh_principals) consider(p);
    for (Port p : touched) {
      if (port[p].wire != kNone) consider(p);
    }
    return {external(a), external(b), rule.rule};
  }
};

Reducer::Reducer(const Net& net, const RuleSet& rules)
    : Reducer(net, rules, next_fresh_port(net)) {}

Reducer::Reducer(const Net& net, const RuleSet& rules, Port fresh_base)
    : state_(std::make_unique<State>()) {
  State& s = *state_;
  if (fresh_base < next_fresh_port(net)) {
    throw Error(ErrorKind::DisjointnessViolation, "fresh ports overlap the net", fresh_base);
  }
  s.fresh_base = fresh_base;
  for (const Rule& r : rules.rules()) s.compile(r);
  const auto& table = net.wiring().table();
  s.initial.reserve(table.size());
  for (const auto& entry : table) s.initial.push_back(entry.first);
  // A direct rank table when the port names are dense enough.
  std::vector<Port> rank;
  if (next_fresh_port(net) <= 4 * s.initial.size() + 1024) {
    rank.assign(next_fresh_port(net), kNone);
    for (Port i = 0; i < s.initial.size(); ++i) rank[s.initial[i]] = i;
  }
  auto id = [&](Port p) {
    if (!rank.empty()) return rank[p];
    return static_cast<Port>(std::lower_bound(s.initial.begin(), s.initial.end(), p) - s.initial.begin());
  };
  s.allocate(static_cast<Port>(s.initial.size()));
  for (std::size_t i = 0; i < table.size(); ++i) s.port[i].wire = id(table[i].second);
  s.cells.reserve(net.cells().size());
  std::vector<Port> ports;
  for (const Cell& c : net.cells().orbits()) {
    ports.clear();
    for (Port p : c.cycle) ports.push_back(id(p));
    s.add_cell(s.intern(c.label), ports.data(), ports.size());
  }
  for (const CellRec& c : s.cells) s.consider(s.cell_ports[c.first]);
  std::sort(s.sorted.begin(), s.sorted.end());
  s.started = true;
}

Reducer::~Reducer() = default;

std::optional<Reducer::Step> Reducer::step(Strategy strategy) {
  State& s = *state_;
  if (s.pool.empty()) return std::nullopt;
  Port k;
  if (strategy == Strategy::Leftmost) {
    k = s.leftmost();
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, s.pool.size() - 1);
    k = s.pool[pick(s.rng)];
  }
  return s.fire(k);
}

std::size_t Reducer::redex_count() const { return state_->pool.size(); }

Port Reducer::fresh_base() const { return state_->external(static_cast<Port>(state_->port.size())); }

void Reducer::seed(std::uint64_t v) { state_->rng.seed(v); }

Net Reducer::net() const {
  const State& s = *state_;
  std::vector<Orbit> wires;
  for (Port p = 0; p < s.port.size(); ++p) {
    Port q = s.port[p].wire;
    if (q != kNone && p <= q) wires.push_back({s.external(p), s.external(q)});
  }
  std::vector<Cell> cells;
  for (const CellRec& c : s.cells) {
    if (c.size == 0) continue;
    std::vector<Port> ports;
    ports.reserve(c.size);
    for (std::uint32_t i = 0; i < c.size; ++i) ports.push_back(s.external(s.cell_ports[c.first + i]));
    cells.push_back({std::move(ports), s.labels[c.label]});
  }
  return Net(WPermutation(wires), std::move(cells));
}

}  // namespace inet
