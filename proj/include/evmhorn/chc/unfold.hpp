#pragma once

#include "evmhorn/chc/ir.hpp"

#include <set>

namespace evmhorn::chc {

/// Resolves every use of `p` against every clause producing `p`, then drops `p`.
ClauseSet unfold_predicate(const ClauseSet& cs, const PredicateId& p);

/// Predicates that must survive folding: goal predicates and heads of premise-free clauses.
std::set<PredicateId> protected_predicates(const ClauseSet& cs);

/// Unfolds predicates used exactly once and produced by exactly one other clause.
ClauseSet fold_linear(const ClauseSet& cs, const std::set<PredicateId>& extra_protected = {});

/// Linear folding, then unfolding of every remaining non-recursive predicate.
ClauseSet fold_exhaustive(const ClauseSet& cs, std::size_t cap = 1000000,
                          const std::set<PredicateId>& extra_protected = {});

}  // namespace evmhorn::chc
