#include "inet/dpo.hpp"

#include <algorithm>
#include <unordered_map>

namespace inet {

namespace {

Port top(std::initializer_list<const Net*> nets) {
  Port out = 0;
  for (const Net* n : nets) out = std::max(out, next_fresh_port(*n));
  return out;
}

// Renames the ports of net listed in moves, keeping the others.
Net rename_some(const Net& net, const std::unordered_map<Port, Port>& moves) {
  std::vector<PartialInjection::Pair> pairs;
  for (Port p : net.carrier()) {
    auto it = moves.find(p);
    pairs.push_back({p, it == moves.end() ? p : it->second});
  }
  return rename(net, PartialInjection(std::move(pairs)));
}

}  // namespace

Net image_of(const Net& source, const AlmostInjective& m) { return rename(source, m.renaming); }

Net target_of(const Net& source, const AlmostInjective& m) {
  return glue(image_of(source, m), m.gluing, m.residue);
}

std::optional<Error> check_almost_injective(const Net& source, const Net& target, const AlmostInjective& m) {
  try {
    if (target_of(source, m) == target) return std::nullopt;
    return Error(ErrorKind::NotAlmostInjective, "decomposition does not rebuild the target");
  } catch (const Error& e) {
    return e;
  }
}

PortMap as_port_map(const Net& source, const AlmostInjective& m) {
  PortMap alpha;
  for (const auto& [x, y] : m.renaming.pairs()) {
    if (source.wiring().contains(x)) alpha.emplace(x, y);
  }
  return extend_morphism(source, alpha, image_of(source, m), m.gluing, m.residue);
}

std::optional<Error> check_generalized_rule(const GeneralizedRule& rule) {
  try {
    (void)redex_of(rule);
    (void)replacement_of(rule);
  } catch (const Error& e) {
    return e;
  }
  auto left = compose(rule.into_redex.gluing, rule.into_redex.renaming).domain();
  auto right = compose(rule.into_replacement.gluing, rule.into_replacement.renaming).domain();
  if (left != right) {
    return Error(ErrorKind::Mismatch, "the two sides glue different ports of the interface net");
  }
  return std::nullopt;
}

Net redex_of(const GeneralizedRule& rule) { return target_of(rule.interface_net, rule.into_redex); }

Net replacement_of(const GeneralizedRule& rule) {
  return target_of(rule.interface_net, rule.into_replacement);
}

Net pushout_of_gluings(const Net& base, const PartialInjection& f, const Net& left_residue,
                       const PartialInjection& g, const Net& right_residue) {
  return glue(base, sum(f, g), parallel_sum(left_residue, right_residue));
}

ComplementResult complement(const Net& inner, const AlmostInjective& mid, const AlmostInjective& outer) {
  Net inner_image = image_of(inner, mid);
  Net middle = glue(inner_image, mid.gluing, mid.residue);
  Net target = target_of(middle, outer);
  // Extend the outer renaming to ports consumed inside the middle net.
  Port next = std::max({top({&target, &outer.residue, &inner_image, &mid.residue, &middle}),
                        outer.renaming.empty() ? 0 : *outer.renaming.codomain().rbegin() + 1});
  std::unordered_map<Port, Port> hat;
  for (const Net* part : std::initializer_list<const Net*>{&inner_image, &mid.residue}) {
    for (Port p : part->carrier()) {
      auto q = middle.wiring().contains(p) ? outer.renaming(p) : std::nullopt;
      hat.emplace(p, q ? *q : next++);
    }
  }
  Net r0 = rename_some(inner_image, hat);
  Net r0_residue = rename_some(mid.residue, hat);
  std::vector<PartialInjection::Pair> f0;
  for (const auto& [x, y] : mid.gluing.pairs()) f0.push_back({hat.at(x), hat.at(y)});
  auto [g_inner, g_rest] = split_by_domain(outer.gluing, r0.carrier());

  ComplementResult out;
  out.middle = glue(r0, g_inner, outer.residue);
  std::vector<PartialInjection::Pair> renaming;
  for (const auto& [x, y] : mid.renaming.pairs()) {
    if (inner.wiring().contains(x)) renaming.push_back({x, hat.at(y)});
  }
  out.inner_to_middle = {PartialInjection(std::move(renaming)), g_inner, outer.residue};
  out.witness = {out.middle, sum(PartialInjection(std::move(f0)), star(g_rest)), r0_residue};
  return out;
}

GeneralizedRule lift_rule(const Rule& rule, const SymbolTable& symbols) {
  Context redex = lhs_redex(rule, symbols, 0);
  const Port k = static_cast<Port>(redex.interface.size());
  const Port base = next_fresh_port(redex.net);
  std::vector<Orbit> wires;
  std::vector<PartialInjection::Pair> identity;
  std::vector<PartialInjection::Pair> to_redex;
  std::unordered_map<Port, Port> redex_moves;
  for (Port i = 0; i < k; ++i) {
    Port a = redex.interface[i];
    wires.push_back({a, base + i});
    identity.push_back({a, a});
    identity.push_back({base + i, base + i});
    to_redex.push_back({base + i, base + k + i});
    redex_moves.emplace(a, base + k + i);
  }
  GeneralizedRule out;
  out.interface_net = Net(WPermutation(wires), CellPermutation());
  out.into_redex = {PartialInjection(identity), PartialInjection(to_redex),
                    rename_some(redex.net, redex_moves)};

  const Net& rp = rule.replacement.net;
  const Port pbase = next_fresh_port(rp);
  std::vector<PartialInjection::Pair> onto;
  std::vector<PartialInjection::Pair> to_replacement;
  std::unordered_map<Port, Port> replacement_moves;
  for (Port i = 0; i < k; ++i) {
    onto.push_back({redex.interface[i], rule.replacement.interface[i]});
    onto.push_back({base + i, pbase + i});
    to_replacement.push_back({pbase + i, pbase + k + i});
    replacement_moves.emplace(rule.replacement.interface[i], pbase + k + i);
  }
  out.into_replacement = {PartialInjection(onto), PartialInjection(to_replacement),
                          rename_some(rp, replacement_moves)};
  return out;
}

AlmostInjective redex_occurrence(const Net& target, const ActivePair& pair, const Rule& rule,
                                 const SymbolTable& symbols) {
  Context redex = lhs_redex(rule, symbols, 0);
  RedexCut cut = cut_redex(target, pair, rule, next_fresh_port(target));
  const Cell& l = *std::find_if(cut.redex.net.cells().orbits().begin(), cut.redex.net.cells().orbits().end(),
                                [&](const Cell& c) { return c.point() == pair.left; });
  const Cell& r = *std::find_if(cut.redex.net.cells().orbits().begin(), cut.redex.net.cells().orbits().end(),
                                [&](const Cell& c) { return c.point() == pair.right; });
  std::vector<PartialInjection::Pair> beta;
  const Port n = static_cast<Port>(l.cycle.size() - 1);
  for (Port i = 0; i <= n; ++i) beta.push_back({i, l.cycle[i]});
  for (Port j = 0; j < r.cycle.size(); ++j) beta.push_back({n + 1 + j, r.cycle[j]});
  for (std::size_t i = 0; i < redex.interface.size(); ++i) {
    beta.push_back({redex.interface[i], cut.redex.interface[i]});
  }
  return {PartialInjection(std::move(beta)), star(chord(cut.outer.interface, cut.redex.interface)),
          cut.outer.net};
}

Net generalized_reduce(const Net& target, const GeneralizedRule& rule, const AlmostInjective& occurrence) {
  ComplementResult c = complement(rule.interface_net, rule.into_redex, occurrence);
  const AlmostInjective& side = c.inner_to_middle;
  const AlmostInjective& rep = rule.into_replacement;
  // The interface net sits at its image in the middle net, so ports that stay
  // free keep their names in the target.
  Net base = image_of(rule.interface_net, side);
  Port next = top({&target, &side.residue, &rep.residue, &rule.interface_net, &c.middle});
  PartialInjection lambda = fresh_renaming(rep.residue.carrier(), next);
  PartialInjection back = star(side.renaming);
  const PartialInjection& f = side.gluing;
  PartialInjection g = compose(lambda, compose(rep.gluing, compose(rep.renaming, back)));
  return pushout_of_gluings(base, f, side.residue, g, rename(rep.residue, lambda));
}

NormalizeResult normalize_dpo(const Net& net, const RuleSet& rules, const SymbolTable& symbols,
                              std::size_t max_steps, const DpoObserver& observer) {
  std::unordered_map<const Rule*, GeneralizedRule> lifted;
  Net current = net;
  std::size_t steps = 0;
  while (steps < max_steps) {
    auto matches = match_redexes(current, rules);
    if (matches.empty()) return {current, steps, true};
    const Match& m = matches.front();
    auto it = lifted.find(m.rule);
    if (it == lifted.end()) it = lifted.emplace(m.rule, lift_rule(*m.rule, symbols)).first;
    current = generalized_reduce(current, it->second, redex_occurrence(current, m.pair, *m.rule, symbols));
    ++steps;
    if (observer) observer(steps, m, current);
  }
  return {current, steps, match_redexes(current, rules).empty()};
}

}  // namespace inet
