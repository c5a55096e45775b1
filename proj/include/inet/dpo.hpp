#pragma once

#include <optional>

#include "inet/dynamics.hpp"

namespace inet {

// target = glue(rename(source, renaming), gluing, residue).
struct AlmostInjective {
  PartialInjection renaming;
  PartialInjection gluing;
  Net residue;
};

Net image_of(const Net& source, const AlmostInjective& m);
Net target_of(const Net& source, const AlmostInjective& m);
std::optional<Error> check_almost_injective(const Net& source, const Net& target, const AlmostInjective& m);
// The underlying port map source -> target.
PortMap as_port_map(const Net& source, const AlmostInjective& m);

struct GeneralizedRule {
  Net interface_net;
  AlmostInjective into_redex;
  AlmostInjective into_replacement;
};

std::optional<Error> check_generalized_rule(const GeneralizedRule& rule);
Net redex_of(const GeneralizedRule& rule);
Net replacement_of(const GeneralizedRule& rule);

// glue(base, f + g, left_residue + right_residue).
Net pushout_of_gluings(const Net& base, const PartialInjection& f, const Net& left_residue,
                       const PartialInjection& g, const Net& right_residue);

struct ComplementResult {
  // inner -> middle, middle being a subnet of the outer target.
  AlmostInjective inner_to_middle;
  Net middle;
  // target = glue(middle, injection, right).
  CuttingWitness witness;
};

ComplementResult complement(const Net& inner, const AlmostInjective& mid_witness,
                            const AlmostInjective& outer_witness);

GeneralizedRule lift_rule(const Rule& rule, const SymbolTable& symbols);

// The redex occurrence of a matched active pair, renaming lhs_redex(rule, 0).
AlmostInjective redex_occurrence(const Net& target, const ActivePair& pair, const Rule& rule,
                                 const SymbolTable& symbols);

Net generalized_reduce(const Net& target, const GeneralizedRule& rule, const AlmostInjective& occurrence);

// Leftmost sequence of generalized reductions.
using DpoObserver = std::function<void(std::size_t, const Match&, const Net&)>;

NormalizeResult normalize_dpo(const Net& net, const RuleSet& rules, const SymbolTable& symbols,
                              std::size_t max_steps = 1'000'000, const DpoObserver& observer = {});

}  // namespace inet
