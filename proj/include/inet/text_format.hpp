#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "inet/acnet.hpp"
#include "inet/dynamics.hpp"

namespace inet {

// A net block holds an interaction net, or an AC net when it has cuts.
struct NetBlock {
  std::string name;
  using Value = std::variant<Net, ACNet>;
  Value net;
  std::vector<std::pair<std::string, Interface>> interfaces;

  bool is_ac() const { return std::holds_alternative<ACNet>(net); }
  friend bool operator==(const NetBlock&, const NetBlock&) = default;
};

struct Document {
  SymbolTable symbols;
  std::vector<NetBlock> nets;
  std::vector<Rule> rules;

  const NetBlock* find_net(std::string_view name) const;
  RuleSet rule_set() const { return RuleSet(rules); }
  friend bool operator==(const Document&, const Document&) = default;
};

// Line-oriented format, '#' starts a comment:
//   symbol NAME ARITY
//   net NAME { wire P Q | loop P | cell NAME P0 P1.. | cut P Q | interface NAME P.. }
//   rule NAME NAME { rhs { wire/loop/cell lines } interface P1 P2 .. }
// Throws ParseError on the first problem.
Document parse(std::string_view text);

// Canonical text. parse(print(d)) == d.
std::string print(const Document& doc);

// Diagnostic line "file:line:col: error: Kind: message".
std::string format_diagnostic(std::string_view file, const ParseError& e);

}  // namespace inet
