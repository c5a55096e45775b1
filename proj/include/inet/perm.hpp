#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "inet/error.hpp"

namespace inet {

using PortSet = std::set<Port>;

// A finite partial injection on ports, stored as a sorted table in both
// directions.
class PartialInjection {
 public:
  using Pair = std::pair<Port, Port>;

  PartialInjection() = default;
  PartialInjection(std::initializer_list<Pair> pairs);
  explicit PartialInjection(std::vector<Pair> pairs);

  std::optional<Port> operator()(Port x) const;
  std::optional<Port> preimage(Port y) const;
  bool defined_at(Port x) const { return (*this)(x).has_value(); }
  bool hits(Port y) const { return preimage(y).has_value(); }

  PortSet domain() const;
  PortSet codomain() const;
  // Sorted by source.
  std::span<const Pair> pairs() const { return forward_; }
  std::size_t size() const { return forward_.size(); }
  bool empty() const { return forward_.empty(); }

  friend bool operator==(const PartialInjection& a, const PartialInjection& b) {
    return a.forward_ == b.forward_;
  }

 private:
  std::vector<Pair> forward_;
  std::vector<Pair> backward_;
};

PartialInjection star(const PartialInjection& f);
PartialInjection restrict(const PartialInjection& f, const PortSet& from, const PortSet& to);
PartialInjection restrict_domain(const PartialInjection& f, const PortSet& from);
// Throws DisjointnessViolation when domains or codomains overlap.
PartialInjection sum(const PartialInjection& f, const PartialInjection& g);
// g after f, defined where both steps are.
PartialInjection compose(const PartialInjection& g, const PartialInjection& f);
bool refines(const PartialInjection& f, const PartialInjection& g);

// Execution of f against the feedback g. Requires dom g within codom f and
// codom g within dom f; otherwise IllTyped.
PartialInjection ex(const PartialInjection& f, const PartialInjection& g);
// Sum of f (g f)^k for k < n, restricted to dom f - codom g and codom f - dom g.
PartialInjection ex_truncated(const PartialInjection& f, const PartialInjection& g, std::size_t n);

struct Orbit {
  Port first;
  Port second;

  bool fixed_point() const { return first == second; }
  friend bool operator==(const Orbit&, const Orbit&) = default;
  friend auto operator<=>(const Orbit&, const Orbit&) = default;
};

// An involution on a finite set of ports: wires and fixed points.
class WPermutation {
 public:
  WPermutation() = default;
  WPermutation(std::initializer_list<std::initializer_list<Port>> orbits);
  explicit WPermutation(const std::vector<Orbit>& orbits);

  static WPermutation from_injection(const PartialInjection& f);

  std::optional<Port> operator()(Port p) const;
  bool contains(Port p) const { return (*this)(p).has_value(); }
  bool fixed(Port p) const;

  // Each orbit once with first <= second, sorted by first.
  std::vector<Orbit> orbits() const;
  PortSet domain() const;
  PortSet fixed_points() const;
  PartialInjection as_injection() const;
  std::size_t size() const { return image_.size(); }
  bool empty() const { return image_.empty(); }
  std::span<const std::pair<Port, Port>> table() const { return image_; }

  friend bool operator==(const WPermutation&, const WPermutation&) = default;

 private:
  void build(const std::vector<Orbit>& orbits);
  std::vector<std::pair<Port, Port>> image_;
};

WPermutation sum(const WPermutation& a, const WPermutation& b);

// A permutation whose cycles carry a label and a distinguished first port.
template <class Label>
class LabelledPermutation {
 public:
  struct Orbit {
    std::vector<Port> cycle;
    Label label;

    Port point() const { return cycle.front(); }
    friend bool operator==(const Orbit&, const Orbit&) = default;
  };

  struct Position {
    std::size_t orbit;
    std::size_t index;
  };

  LabelledPermutation() = default;

  explicit LabelledPermutation(std::vector<Orbit> orbits) : orbits_(std::move(orbits)) {
    for (const Orbit& o : orbits_) {
      if (o.cycle.empty()) throw Error(ErrorKind::IllTyped, "empty cycle");
    }
    auto by_point = [](const Orbit& a, const Orbit& b) { return a.point() < b.point(); };
    if (!std::is_sorted(orbits_.begin(), orbits_.end(), by_point)) std::sort(orbits_.begin(), orbits_.end(), by_point);
    for (std::size_t i = 0; i < orbits_.size(); ++i) {
      for (std::size_t j = 0; j < orbits_[i].cycle.size(); ++j) {
        index_.push_back({orbits_[i].cycle[j], Position{i, j}});
      }
    }
    auto by_port = [](const auto& a, const auto& b) { return a.first < b.first; };
    if (!std::is_sorted(index_.begin(), index_.end(), by_port)) std::sort(index_.begin(), index_.end(), by_port);
    for (std::size_t i = 1; i < index_.size(); ++i) {
      if (index_[i].first == index_[i - 1].first) {
        throw Error(ErrorKind::PortReuse,
                    "port " + std::to_string(index_[i].first) + " occurs in two cycles",
                    index_[i].first);
      }
    }
  }

  std::span<const Orbit> orbits() const { return orbits_; }
  // Every port with its position, ascending by port.
  std::span<const std::pair<Port, Position>> index() const { return index_; }
  const Orbit& orbit(std::size_t i) const { return orbits_[i]; }
  std::size_t size() const { return orbits_.size(); }
  bool empty() const { return orbits_.empty(); }

  std::optional<Position> locate(Port p) const {
    auto it = std::lower_bound(index_.begin(), index_.end(), p,
                               [](const auto& e, Port x) { return e.first < x; });
    if (it == index_.end() || it->first != p) return std::nullopt;
    return it->second;
  }

  bool contains(Port p) const { return locate(p).has_value(); }

  std::optional<Port> operator()(Port p) const {
    auto pos = locate(p);
    if (!pos) return std::nullopt;
    const auto& c = orbits_[pos->orbit].cycle;
    return c[(pos->index + 1) % c.size()];
  }

  PortSet domain() const {
    PortSet out;
    for (const auto& e : index_) out.insert(out.end(), e.first);
    return out;
  }

  friend bool operator==(const LabelledPermutation& a, const LabelledPermutation& b) {
    return a.orbits_ == b.orbits_;
  }

 private:
  std::vector<Orbit> orbits_;
  std::vector<std::pair<Port, Position>> index_;
};

template <class Label>
LabelledPermutation<Label> sum(const LabelledPermutation<Label>& a,
                               const LabelledPermutation<Label>& b) {
  std::vector<typename LabelledPermutation<Label>::Orbit> all(a.orbits().begin(),
                                                              a.orbits().end());
  all.insert(all.end(), b.orbits().begin(), b.orbits().end());
  try {
    return LabelledPermutation<Label>(std::move(all));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PortReuse) throw;
    throw Error(ErrorKind::DisjointnessViolation, e.what(), e.port());
  }
}

// Closed cycle of the composite structure: cut ports on the sigma side and
// on the tau side.
struct DoubleOrbit {
  PortSet left;
  PortSet right;
  Port representative;

  friend bool operator==(const DoubleOrbit&, const DoubleOrbit&) = default;
};

// Ex(sigma + tau, f + f*). sigma, tau disjoint, dom f in dom sigma, codom f in
// dom tau.
WPermutation ex0_compose(const WPermutation& sigma, const WPermutation& tau,
                         const PartialInjection& f);
// Sorted by representative.
std::vector<DoubleOrbit> double_orbits(const WPermutation& sigma, const WPermutation& tau,
                                       const PartialInjection& f);
// ex0_compose plus one fixed point per closed cycle, computed by splicing.
WPermutation full_ex_compose(const WPermutation& sigma, const WPermutation& tau,
                             const PartialInjection& f);

std::string to_string(const PartialInjection& f);
std::string to_string(const WPermutation& s);

}  // namespace inet
