#include "inet/perm.hpp"

#include <limits>
#include <sstream>
#include <unordered_map>

namespace inet {

namespace {

std::optional<Port> lookup(const std::vector<std::pair<Port, Port>>& table, Port x) {
  auto it = std::lower_bound(table.begin(), table.end(), x,
                             [](const auto& e, Port v) { return e.first < v; });
  if (it == table.end() || it->first != x) return std::nullopt;
  return it->second;
}

std::string port_str(Port p) { return std::to_string(p); }

void check_typed(const WPermutation& sigma, const WPermutation& tau, const PartialInjection& f) {
  for (const auto& [p, q] : sigma.table()) {
    if (tau.contains(p)) {
      throw Error(ErrorKind::DisjointnessViolation, "port " + port_str(p) + " in both operands", p);
    }
    (void)q;
  }
  for (const auto& [x, y] : f.pairs()) {
    if (!sigma.contains(x)) {
      throw Error(ErrorKind::IllTyped, "injection source " + port_str(x) + " outside left", x);
    }
    if (!tau.contains(y)) {
      throw Error(ErrorKind::IllTyped, "injection target " + port_str(y) + " outside right", y);
    }
  }
}

}  // namespace

PartialInjection::PartialInjection(std::initializer_list<Pair> pairs)
    : PartialInjection(std::vector<Pair>(pairs)) {}

PartialInjection::PartialInjection(std::vector<Pair> pairs) : forward_(std::move(pairs)) {
  std::sort(forward_.begin(), forward_.end());
  for (std::size_t i = 1; i < forward_.size(); ++i) {
    if (forward_[i].first == forward_[i - 1].first) {
      if (forward_[i].second != forward_[i - 1].second) {
        throw Error(ErrorKind::NotInjective, "port " + port_str(forward_[i].first) +
                                                 " has two images", forward_[i].first);
      }
    }
  }
  forward_.erase(std::unique(forward_.begin(), forward_.end()), forward_.end());
  backward_.reserve(forward_.size());
  for (const auto& [x, y] : forward_) backward_.push_back({y, x});
  std::sort(backward_.begin(), backward_.end());
  for (std::size_t i = 1; i < backward_.size(); ++i) {
    if (backward_[i].first == backward_[i - 1].first) {
      throw Error(ErrorKind::NotInjective,
                  "port " + port_str(backward_[i].first) + " has two preimages",
                  backward_[i].first);
    }
  }
}

std::optional<Port> PartialInjection::operator()(Port x) const { return lookup(forward_, x); }

std::optional<Port> PartialInjection::preimage(Port y) const { return lookup(backward_, y); }

PortSet PartialInjection::domain() const {
  PortSet out;
  for (const auto& e : forward_) out.insert(out.end(), e.first);
  return out;
}

PortSet PartialInjection::codomain() const {
  PortSet out;
  for (const auto& e : backward_) out.insert(out.end(), e.first);
  return out;
}

PartialInjection star(const PartialInjection& f) {
  std::vector<PartialInjection::Pair> out;
  out.reserve(f.size());
  for (const auto& [x, y] : f.pairs()) out.push_back({y, x});
  return PartialInjection(std::move(out));
}

PartialInjection restrict(const PartialInjection& f, const PortSet& from, const PortSet& to) {
  std::vector<PartialInjection::Pair> out;
  for (const auto& [x, y] : f.pairs()) {
    if (from.count(x) && to.count(y)) out.push_back({x, y});
  }
  return PartialInjection(std::move(out));
}

PartialInjection restrict_domain(const PartialInjection& f, const PortSet& from) {
  std::vector<PartialInjection::Pair> out;
  for (const auto& [x, y] : f.pairs()) {
    if (from.count(x)) out.push_back({x, y});
  }
  return PartialInjection(std::move(out));
}

PartialInjection sum(const PartialInjection& f, const PartialInjection& g) {
  for (const auto& [x, y] : g.pairs()) {
    if (f.defined_at(x)) {
      throw Error(ErrorKind::DisjointnessViolation, "domains share " + port_str(x), x);
    }
    if (f.hits(y)) {
      throw Error(ErrorKind::DisjointnessViolation, "codomains share " + port_str(y), y);
    }
  }
  std::vector<PartialInjection::Pair> out(f.pairs().begin(), f.pairs().end());
  out.insert(out.end(), g.pairs().begin(), g.pairs().end());
  return PartialInjection(std::move(out));
}

PartialInjection compose(const PartialInjection& g, const PartialInjection& f) {
  std::vector<PartialInjection::Pair> out;
  for (const auto& [x, y] : f.pairs()) {
    if (auto z = g(y)) out.push_back({x, *z});
  }
  return PartialInjection(std::move(out));
}

bool refines(const PartialInjection& f, const PartialInjection& g) {
  for (const auto& [x, y] : f.pairs()) {
    if (g(x) != y) return false;
  }
  return true;
}

PartialInjection ex(const PartialInjection& f, const PartialInjection& g) {
  for (const auto& [x, y] : g.pairs()) {
    if (!f.hits(x)) throw Error(ErrorKind::IllTyped, "feedback source " + port_str(x) + " not produced", x);
    if (!f.defined_at(y)) throw Error(ErrorKind::IllTyped, "feedback target " + port_str(y) + " not consumed", y);
  }
  std::vector<PartialInjection::Pair> out;
  for (const auto& [x, first] : f.pairs()) {
    if (g.hits(x)) continue;
    Port y = first;
    // Injectivity forbids revisiting, so this walk is bounded by |g|.
    while (auto z = g(y)) y = *f(*z);
    out.push_back({x, y});
  }
  return PartialInjection(std::move(out));
}

PartialInjection ex_truncated(const PartialInjection& f, const PartialInjection& g, std::size_t n) {
  PortSet from = f.domain();
  for (Port p : g.codomain()) from.erase(p);
  PortSet to = f.codomain();
  for (Port p : g.domain()) to.erase(p);
  std::vector<PartialInjection::Pair> out;
  PartialInjection power = f;  // f (g f)^k
  for (std::size_t k = 0; k < n; ++k) {
    PartialInjection part = restrict(power, from, to);
    for (const auto& [x, y] : part.pairs()) out.push_back({x, y});
    power = compose(f, compose(g, power));
    if (power.empty()) break;
  }
  return PartialInjection(std::move(out));
}

WPermutation::WPermutation(std::initializer_list<std::initializer_list<Port>> orbits) {
  std::vector<Orbit> os;
  for (const auto& o : orbits) {
    if (o.size() == 1) {
      os.push_back({*o.begin(), *o.begin()});
    } else if (o.size() == 2) {
      os.push_back({*o.begin(), *(o.begin() + 1)});
    } else {
      throw Error(ErrorKind::NotInvolutive, "orbit of size " + std::to_string(o.size()));
    }
  }
  build(os);
}

WPermutation::WPermutation(const std::vector<Orbit>& orbits) { build(orbits); }

void WPermutation::build(const std::vector<Orbit>& orbits) {
  image_.clear();
  image_.reserve(orbits.size() * 2);
  for (const Orbit& o : orbits) {
    image_.push_back({o.first, o.second});
    if (!o.fixed_point()) image_.push_back({o.second, o.first});
  }
  std::sort(image_.begin(), image_.end());
  for (std::size_t i = 1; i < image_.size(); ++i) {
    if (image_[i].first == image_[i - 1].first) {
      throw Error(ErrorKind::PortReuse, "port " + port_str(image_[i].first) + " in two orbits",
                  image_[i].first);
    }
  }
}

WPermutation WPermutation::from_injection(const PartialInjection& f) {
  std::vector<Orbit> os;
  for (const auto& [x, y] : f.pairs()) {
    if (f(y) != x) {
      throw Error(ErrorKind::NotInvolutive, "port " + port_str(x) + " is not mapped back", x);
    }
    if (x <= y) os.push_back({x, y});
  }
  return WPermutation(os);
}

std::optional<Port> WPermutation::operator()(Port p) const { return lookup(image_, p); }

bool WPermutation::fixed(Port p) const { return (*this)(p) == p; }

std::vector<Orbit> WPermutation::orbits() const {
  std::vector<Orbit> out;
  for (const auto& [p, q] : image_) {
    if (p <= q) out.push_back({p, q});
  }
  return out;
}

PortSet WPermutation::domain() const {
  PortSet out;
  for (const auto& e : image_) out.insert(out.end(), e.first);
  return out;
}

PortSet WPermutation::fixed_points() const {
  PortSet out;
  for (const auto& [p, q] : image_) {
    if (p == q) out.insert(out.end(), p);
  }
  return out;
}

PartialInjection WPermutation::as_injection() const { return PartialInjection(image_); }

WPermutation sum(const WPermutation& a, const WPermutation& b) {
  for (const auto& [p, q] : b.table()) {
    if (a.contains(p)) throw Error(ErrorKind::DisjointnessViolation, "port " + port_str(p) + " shared", p);
    (void)q;
  }
  std::vector<Orbit> os = a.orbits();
  auto more = b.orbits();
  os.insert(os.end(), more.begin(), more.end());
  return WPermutation(os);
}

WPermutation ex0_compose(const WPermutation& sigma, const WPermutation& tau,
                         const PartialInjection& f) {
  check_typed(sigma, tau, f);
  return WPermutation::from_injection(ex(sum(sigma, tau).as_injection(), sum(f, star(f))));
}

std::vector<DoubleOrbit> double_orbits(const WPermutation& sigma, const WPermutation& tau,
                                       const PartialInjection& f) {
  check_typed(sigma, tau, f);
  // Orbit of x under f* tau f sigma, or nothing when the walk leaves dom f.
  auto cycle = [&](Port x) -> std::optional<std::vector<Port>> {
    std::vector<Port> seen{x};
    Port y = x;
    for (std::size_t step = 0; step <= f.size(); ++step) {
      auto a = f(*sigma(y));
      if (!a) return std::nullopt;
      auto b = f.preimage(*tau(*a));
      if (!b) return std::nullopt;
      y = *b;
      if (y == x) return seen;
      seen.push_back(y);
    }
    return std::nullopt;
  };
  auto directed = [&](const std::vector<Port>& o) {
    DoubleOrbit d;
    for (Port z : o) {
      d.left.insert(z);
      d.right.insert(*f(*sigma(z)));
    }
    d.representative = std::min(*d.left.begin(), *d.right.begin());
    return d;
  };
  std::vector<DoubleOrbit> out;
  PortSet done;
  for (const auto& [x, fx] : f.pairs()) {
    (void)fx;
    if (done.count(x)) continue;
    auto o = cycle(x);
    if (!o) continue;
    // Each closed cycle is traversed once in each direction; the reverse
    // traversal starts at sigma(x). Keep the one holding the cycle minimum.
    DoubleOrbit d = directed(*o);
    done.insert(d.left.begin(), d.left.end());
    if (auto back = cycle(*sigma(x))) {
      DoubleOrbit e = directed(*back);
      done.insert(e.left.begin(), e.left.end());
      if (e.representative < d.representative) d = std::move(e);
    }
    out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end(), [](const DoubleOrbit& a, const DoubleOrbit& b) {
    return a.representative < b.representative;
  });
  return out;
}

WPermutation full_ex_compose(const WPermutation& sigma, const WPermutation& tau,
                             const PartialInjection& f) {
  check_typed(sigma, tau, f);
  constexpr Port kNone = std::numeric_limits<Port>::max();
  // A segment is a maximal path of the partially spliced structure. A segment
  // with equal ends is a fixed point, which reflects a walk back onto itself.
  struct Segment {
    Port a;
    Port b;
    Port consumed;
    bool alive;
  };
  std::vector<Segment> segs;
  std::unordered_map<Port, std::size_t> at;
  auto orbits = sum(sigma, tau).orbits();
  segs.reserve(orbits.size() + f.size());
  at.reserve(orbits.size() * 2);
  for (const Orbit& o : orbits) {
    at[o.first] = segs.size();
    at[o.second] = segs.size();
    segs.push_back({o.first, o.second, kNone, true});
  }
  std::vector<Orbit> closed;
  auto other_end = [&](const Segment& s, Port p) -> Port {
    if (s.a == s.b) return kNone;
    return s.a == p ? s.b : s.a;
  };
  for (const auto& [p, q] : f.pairs()) {
    std::size_t w = at.at(p);
    std::size_t v = at.at(q);
    at.erase(p);
    at.erase(q);
    Port m = std::min({segs[w].consumed, segs[v].consumed, p, q});
    segs[w].alive = false;
    segs[v].alive = false;
    if (w == v) {
      closed.push_back({m, m});
      continue;
    }
    Port x = other_end(segs[w], p);
    Port y = other_end(segs[v], q);
    if (x == kNone && y == kNone) {
      closed.push_back({m, m});
      continue;
    }
    if (x == kNone) x = y;
    if (y == kNone) y = x;
    at[x] = segs.size();
    at[y] = segs.size();
    segs.push_back({x, y, m, true});
  }
  for (const Segment& s : segs) {
    if (s.alive) closed.push_back({std::min(s.a, s.b), std::max(s.a, s.b)});
  }
  return WPermutation(closed);
}

std::string to_string(const PartialInjection& f) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [x, y] : f.pairs()) {
    os << (first ? "" : ", ") << x << "->" << y;
    first = false;
  }
  os << '}';
  return os.str();
}

std::string to_string(const WPermutation& s) {
  std::ostringstream os;
  for (const Orbit& o : s.orbits()) {
    if (o.fixed_point()) {
      os << '(' << o.first << ')';
    } else {
      os << '(' << o.first << ' ' << o.second << ')';
    }
  }
  if (s.empty()) os << "()";
  return os.str();
}

}  // namespace inet
