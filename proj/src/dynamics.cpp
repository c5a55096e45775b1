#include "inet/dynamics.hpp"

#include <algorithm>

namespace inet {

namespace {

std::string port_str(Port p) { return std::to_string(p); }

const Cell* principal_cell(const Net& net, Port p) {
  auto pos = net.cells().locate(p);
  if (!pos || pos->index != 0) return nullptr;
  return &net.cells().orbit(pos->orbit);
}

}  // namespace

std::optional<Error> validate_rule(const Rule& rule, const SymbolTable& symbols) {
  auto n = symbols.arity(rule.left_symbol);
  if (!n) return Error(ErrorKind::UnknownSymbol, "unknown symbol " + rule.left_symbol);
  auto m = symbols.arity(rule.right_symbol);
  if (!m) return Error(ErrorKind::UnknownSymbol, "unknown symbol " + rule.right_symbol);
  if (auto e = validate(rule.replacement.net, symbols)) return e;
  if (auto e = check_context(rule.replacement)) return e;
  const Interface& i = rule.replacement.interface;
  if (i.size() != *n + *m) {
    return Error(ErrorKind::SizeMismatch, "rule " + rule.left_symbol + " " + rule.right_symbol +
                                              " needs " + std::to_string(*n + *m) +
                                              " interface ports, has " + std::to_string(i.size()));
  }
  PortSet listed(i.begin(), i.end());
  for (Port p : rule.replacement.net.free_ports()) {
    if (!listed.count(p)) {
      return Error(ErrorKind::Mismatch, "free port " + port_str(p) + " missing from the rule interface", p);
    }
  }
  return std::nullopt;
}

RuleSet::RuleSet(std::vector<Rule> rules) {
  for (auto& r : rules) add(std::move(r));
}

void RuleSet::add(Rule rule) {
  auto key = std::minmax(rule.left_symbol, rule.right_symbol);
  std::pair<Symbol, Symbol> k{key.first, key.second};
  if (index_.count(k)) {
    throw Error(ErrorKind::DuplicateRule,
                "second rule for " + rule.left_symbol + " and " + rule.right_symbol);
  }
  index_.emplace(k, rules_.size());
  rules_.push_back(std::move(rule));
}

std::optional<RuleSet::Lookup> RuleSet::find(const Symbol& a, const Symbol& b) const {
  auto key = std::minmax(a, b);
  auto it = index_.find({key.first, key.second});
  if (it == index_.end()) return std::nullopt;
  const Rule& r = rules_[it->second];
  return Lookup{&r, r.left_symbol != a};
}

Context lhs_redex(const Rule& rule, const SymbolTable& symbols, Port base) {
  auto n = symbols.arity(rule.left_symbol);
  if (!n) throw Error(ErrorKind::UnknownSymbol, "unknown symbol " + rule.left_symbol);
  auto m = symbols.arity(rule.right_symbol);
  if (!m) throw Error(ErrorKind::UnknownSymbol, "unknown symbol " + rule.right_symbol);
  const Port N = static_cast<Port>(*n);
  const Port M = static_cast<Port>(*m);
  const Port b = base;
  const Port c = base + N + 1;
  std::vector<Orbit> wires{{b, c}};
  Cell left{{b}, rule.left_symbol};
  Cell right{{c}, rule.right_symbol};
  Interface iface;
  for (Port i = 1; i <= N; ++i) {
    Port a = base + N + M + 1 + i;
    wires.push_back({a, b + i});
    left.cycle.push_back(b + i);
    iface.push_back(a);
  }
  for (Port j = 1; j <= M; ++j) {
    Port d = base + 2 * N + M + 1 + j;
    wires.push_back({d, c + j});
    right.cycle.push_back(c + j);
    iface.push_back(d);
  }
  return {Net(WPermutation(wires), std::vector<Cell>{left, right}), iface};
}

std::vector<ActivePair> active_pairs(const Net& net) {
  std::vector<ActivePair> out;
  for (const Orbit& o : net.wiring().orbits()) {
    if (o.fixed_point()) continue;
    const Cell* a = principal_cell(net, o.first);
    const Cell* b = principal_cell(net, o.second);
    if (!a || !b) continue;
    if (std::tie(b->label, o.second) < std::tie(a->label, o.first)) {
      out.push_back({o.second, o.first, *b, *a});
    } else {
      out.push_back({o.first, o.second, *a, *b});
    }
  }
  return out;
}

std::vector<Match> match_redexes(const Net& net, const RuleSet& rules) {
  std::vector<Match> out;
  for (ActivePair& pair : active_pairs(net)) {
    auto hit = rules.find(pair.left_cell.label, pair.right_cell.label);
    if (!hit) continue;
    if (hit->flipped) {
      std::swap(pair.left, pair.right);
      std::swap(pair.left_cell, pair.right_cell);
    }
    out.push_back({pair, hit->rule});
  }
  return out;
}

RedexCut cut_redex(const Net& net, const ActivePair& pair, const Rule& rule, Port base) {
  const Cell* l = principal_cell(net, pair.left);
  const Cell* r = principal_cell(net, pair.right);
  if (!l || !r || net.wiring()(pair.left) != pair.right) {
    throw Error(ErrorKind::StaleRedex, "no active pair on " + port_str(pair.left) + " " + port_str(pair.right),
                pair.left);
  }
  if (l->label != rule.left_symbol || r->label != rule.right_symbol) {
    throw Error(ErrorKind::SymbolMismatch, "pair " + l->label + " " + r->label + " does not match rule " +
                                               rule.left_symbol + " " + rule.right_symbol,
                pair.left);
  }
  std::vector<Port> aux(l->cycle.begin() + 1, l->cycle.end());
  aux.insert(aux.end(), r->cycle.begin() + 1, r->cycle.end());
  const Port k = static_cast<Port>(aux.size());
  if (aux.size() != rule.replacement.interface.size()) {
    throw Error(ErrorKind::ArityMismatch, "redex has " + std::to_string(aux.size()) +
                                              " auxiliary ports, rule interface " +
                                              std::to_string(rule.replacement.interface.size()));
  }
  auto aux_index = [&](Port p) -> std::optional<Port> {
    auto it = std::find(aux.begin(), aux.end(), p);
    if (it == aux.end()) return std::nullopt;
    return static_cast<Port>(it - aux.begin());
  };
  PortSet inside(l->cycle.begin(), l->cycle.end());
  inside.insert(r->cycle.begin(), r->cycle.end());

  std::vector<Orbit> outer_wires;
  for (const Orbit& o : net.wiring().orbits()) {
    if (!inside.count(o.first) && !inside.count(o.second)) outer_wires.push_back(o);
  }
  Interface outer_iface;
  Interface redex_iface;
  std::vector<Orbit> redex_wires{{pair.left, pair.right}};
  for (Port i = 0; i < k; ++i) {
    Port w = *net.wiring()(aux[i]);
    if (auto j = aux_index(w)) {
      if (*j > i) outer_wires.push_back({base + i, base + *j});
    } else {
      outer_wires.push_back({base + i, w});
    }
    outer_iface.push_back(base + i);
    redex_wires.push_back({base + k + i, aux[i]});
    redex_iface.push_back(base + k + i);
  }
  std::vector<Cell> outer_cells;
  for (const Cell& c : net.cells().orbits()) {
    if (c.point() != pair.left && c.point() != pair.right) outer_cells.push_back(c);
  }
  RedexCut out{{Net(WPermutation(outer_wires), std::move(outer_cells)), outer_iface},
               {Net(WPermutation(redex_wires), std::vector<Cell>{*l, *r}), redex_iface}};
  return out;
}

Port fresh_ports_per_step(const Rule& rule) {
  return static_cast<Port>(2 * rule.replacement.interface.size() +
                           rule.replacement.net.wiring().size());
}

Net apply(const Net& net, const ActivePair& pair, const Rule& rule, Port base) {
  RedexCut cut = cut_redex(net, pair, rule, base);
  const Port k = static_cast<Port>(cut.outer.interface.size());
  PartialInjection beta = fresh_renaming(rule.replacement.net.carrier(), base + 2 * k);
  Context replacement{rename(rule.replacement.net, beta), {}};
  for (Port p : rule.replacement.interface) replacement.interface.push_back(*beta(p));
  return context_glue(cut.outer, replacement);
}

Net apply(const Net& net, const ActivePair& pair, const Rule& rule) {
  return apply(net, pair, rule, next_fresh_port(net));
}

NormalizeResult normalize(const Net& net, const RuleSet& rules, const NormalizeOptions& options,
                          const StepObserver& observer) {
  Reducer reducer(net, rules);
  reducer.seed(options.seed);
  std::size_t steps = 0;
  while (steps < options.max_steps) {
    auto s = reducer.step(options.strategy);
    if (!s) break;
    ++steps;
    if (observer) observer(steps, *s, reducer);
  }
  return {reducer.net(), steps, reducer.redex_count() == 0};
}

}  // namespace inet
