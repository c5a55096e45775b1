#include "inet/glue.hpp"

#include <unordered_map>

namespace inet {

std::optional<Error> check_context(const Context& c) {
  PortSet seen;
  for (Port p : c.interface) {
    if (!c.net.is_free(p)) {
      return Error(ErrorKind::IllTyped, "interface port " + std::to_string(p) + " is not free", p);
    }
    if (!seen.insert(p).second) {
      return Error(ErrorKind::PortReuse, "interface repeats port " + std::to_string(p), p);
    }
  }
  return std::nullopt;
}

Net glue(const Net& a, const PartialInjection& f, const Net& b) {
  for (const auto& [x, y] : f.pairs()) {
    if (!a.is_free(x)) throw Error(ErrorKind::IllTyped, "port " + std::to_string(x) + " is not free on the left", x);
    if (!b.is_free(y)) throw Error(ErrorKind::IllTyped, "port " + std::to_string(y) + " is not free on the right", y);
  }
  return Net(full_ex_compose(a.wiring(), b.wiring(), f), sum(a.cells(), b.cells()));
}

PartialInjection chord(const Interface& i, const Interface& j) {
  if (i.size() != j.size()) {
    throw Error(ErrorKind::SizeMismatch, "interfaces of sizes " + std::to_string(i.size()) + " and " +
                                             std::to_string(j.size()));
  }
  std::vector<PartialInjection::Pair> out;
  out.reserve(i.size());
  for (std::size_t k = 0; k < i.size(); ++k) out.push_back({i[k], j[k]});
  return PartialInjection(std::move(out));
}

Net context_glue(const Context& a, const Context& b) {
  if (auto e = check_context(a)) throw *e;
  if (auto e = check_context(b)) throw *e;
  return glue(a.net, chord(a.interface, b.interface), b.net);
}

std::optional<Error> verify_cutting(const Net& whole, const CuttingWitness& w) {
  try {
    if (glue(w.left, w.injection, w.right) == whole) return std::nullopt;
    return Error(ErrorKind::Mismatch, "gluing the witness does not reproduce the net");
  } catch (const Error& e) {
    return e;
  }
}

std::pair<Context, Context> contexts_of_gluing(const Net& a, const PartialInjection& f, const Net& b) {
  Context left{a, {}};
  Context right{b, {}};
  for (const auto& [x, y] : f.pairs()) {
    left.interface.push_back(x);
    right.interface.push_back(y);
  }
  return {left, right};
}

PortMap extend_morphism(const Net& source, const PortMap& alpha, const Net& s,
                        const PartialInjection& f, const Net& s_prime) {
  if (auto e = check_morphism(source, s, alpha)) throw *e;
  // Where a glued port of s ends up in the gluing: follow the wire through
  // s_prime and back until it leaves the cut, or close a loop.
  std::unordered_map<Port, Port> memo;
  auto exit_of = [&](Port q) {
    auto hit = memo.find(q);
    if (hit != memo.end()) return hit->second;
    Port lowest = q;
    Port at = q;
    Port result;
    while (true) {
      Port x = *f(at);
      Port y = *s_prime.wiring()(x);
      lowest = std::min({lowest, x, y});
      auto z = f.preimage(y);
      if (!z) {
        result = y;
        break;
      }
      Port w = *s.wiring()(*z);
      lowest = std::min(lowest, *z);
      if (w == q) {
        result = lowest;
        break;
      }
      if (!f.defined_at(w)) {
        result = w;
        break;
      }
      lowest = std::min(lowest, w);
      at = w;
    }
    memo.emplace(q, result);
    return result;
  };
  PortMap out;
  for (const auto& [p, q] : alpha) {
    if (!source.wiring().contains(p)) continue;
    out.emplace(p, f.defined_at(q) ? exit_of(q) : q);
  }
  return out;
}

PortMap inclusion(const Net& s, const PartialInjection& f, const Net& s_prime) {
  return extend_morphism(s, identity_map(s), s, f, s_prime);
}

std::pair<PartialInjection, PartialInjection> split_by_domain(const PartialInjection& f,
                                                              const PortSet& ports) {
  std::vector<PartialInjection::Pair> in;
  std::vector<PartialInjection::Pair> rest;
  for (const auto& pr : f.pairs()) (ports.count(pr.first) ? in : rest).push_back(pr);
  return {PartialInjection(std::move(in)), PartialInjection(std::move(rest))};
}

}  // namespace inet
