#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "inet/glue.hpp"

namespace inet {

struct Rule {
  Symbol left_symbol;
  Symbol right_symbol;
  // Its interface lists every free port of the net, in the order matching
  // the left cell's auxiliary ports and then the right cell's.
  Context replacement;

  friend bool operator==(const Rule&, const Rule&) = default;
};

std::optional<Error> validate_rule(const Rule& rule, const SymbolTable& symbols);

class RuleSet {
 public:
  struct Lookup {
    const Rule* rule;
    // True when the rule's left symbol is the second argument.
    bool flipped;
  };

  RuleSet() = default;
  explicit RuleSet(std::vector<Rule> rules);

  // Throws DuplicateRule if the unordered symbol pair already has a rule.
  void add(Rule rule);
  std::optional<Lookup> find(const Symbol& a, const Symbol& b) const;
  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }

 private:
  std::vector<Rule> rules_;
  std::map<std::pair<Symbol, Symbol>, std::size_t> index_;
};

struct ActivePair {
  Port left;
  Port right;
  Cell left_cell;
  Cell right_cell;

  friend bool operator==(const ActivePair&, const ActivePair&) = default;
};

struct Match {
  ActivePair pair;
  const Rule* rule;
};

// Ports from fresh_base: b, b1..bn, c, c1..cm, a1..an, d1..dm.
Context lhs_redex(const Rule& rule, const SymbolTable& symbols, Port fresh_base);

// Wires between two principal ports, by ascending smaller endpoint, oriented
// by (symbol, principal port).
std::vector<ActivePair> active_pairs(const Net& net);
// Active pairs that have a rule, oriented so the left cell carries the rule's
// left symbol.
std::vector<Match> match_redexes(const Net& net, const RuleSet& rules);

struct RedexCut {
  // The net without the two cells and their wire; the former attachment
  // points are fresh ports listed as the interface.
  Context outer;
  // The occurrence of lhs_redex, interface aligned with outer's.
  Context redex;
};

// Uses 2k ports from fresh_base, k being the number of auxiliary ports.
RedexCut cut_redex(const Net& net, const ActivePair& pair, const Rule& rule, Port fresh_base);
// Replacement ports follow the 2k ports used by cut_redex.
Net apply(const Net& net, const ActivePair& pair, const Rule& rule, Port fresh_base);
Net apply(const Net& net, const ActivePair& pair, const Rule& rule);
// Number of fresh ports one application of rule consumes.
Port fresh_ports_per_step(const Rule& rule);

enum class Strategy { Leftmost, Random };

struct NormalizeOptions {
  Strategy strategy = Strategy::Leftmost;
  std::uint64_t seed = 0;
  std::size_t max_steps = 1'000'000;
};

struct NormalizeResult {
  Net net;
  std::size_t steps;
  bool normal_form;
};

// In-place reduction state. Equivalent to iterating apply with a fresh base
// that starts at next_fresh_port(net) and advances by fresh_ports_per_step,
// but each step costs time proportional to the rule size.
class Reducer {
 public:
  struct Step {
    Port left;
    Port right;
    const Rule* rule;
  };

  Reducer(const Net& net, const RuleSet& rules);
  Reducer(const Net& net, const RuleSet& rules, Port fresh_base);
  ~Reducer();
  Reducer(const Reducer&) = delete;
  Reducer& operator=(const Reducer&) = delete;

  // Performs one step; nothing when no redex is left.
  std::optional<Step> step(Strategy strategy);
  std::size_t redex_count() const;
  Port fresh_base() const;
  void seed(std::uint64_t s);
  Net net() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

using StepObserver = std::function<void(std::size_t, const Reducer::Step&, const Reducer&)>;

NormalizeResult normalize(const Net& net, const RuleSet& rules, const NormalizeOptions& options = {},
                          const StepObserver& observer = {});

}  // namespace inet
