#pragma once

#include "evmhorn/spec/typecheck.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace evmhorn::chc {

using spec::bigint;
using spec::ExprP;
using spec::Scalar;
using spec::ScalarTuple;
using spec::TypeP;
using spec::TypedName;

/// Predicate base name plus its compile-time parameter values.
struct PredicateId {
    std::string base;
    ScalarTuple params;

    /// `base_p1_p2`, with non-alphanumerics sanitized and negatives written as `m<n>`.
    std::string mangle() const;

    friend bool operator==(const PredicateId& a, const PredicateId& b)
    {
        return a.base == b.base && a.params == b.params;
    }
    friend bool operator<(const PredicateId& a, const PredicateId& b)
    {
        if (a.base != b.base)
            return a.base < b.base;
        return a.params < b.params;
    }
};

std::string to_string(const PredicateId& p);

struct Atom {
    PredicateId pred;
    std::vector<ExprP> args;
};

/// ∀ vars. constraints ∧ premises ⇒ head; a missing head is `false` (a goal).
struct GroundClause {
    std::vector<TypedName> vars;
    std::vector<ExprP> constraints;
    std::vector<Atom> premises;
    std::optional<Atom> head;
    std::string origin;  ///< rule or query name, for diagnostics
};

struct QueryGoal {
    std::string name;
    bool is_test = false;
    bool expect_sat = false;
    ScalarTuple params;  ///< selector values the goal was instantiated with
    GroundClause clause;
};

struct ClauseSet {
    std::vector<GroundClause> clauses;
    std::map<PredicateId, std::vector<TypeP>> signatures;
    std::vector<QueryGoal> goals;
    std::shared_ptr<const spec::TypedSpec> spec;  ///< datatype declarations for encoding
    bool encoded = false;                         ///< all positions primitive

    /// Number of clauses whose head is `p`.
    std::size_t producers(const PredicateId& p) const;
};

struct SelectorDivergence : std::runtime_error {
    explicit SelectorDivergence(const std::string& what);
};

struct RecursivePredicate : std::runtime_error {
    PredicateId pred;
    explicit RecursivePredicate(PredicateId p);
};

struct ClauseBlowup : std::runtime_error {
    explicit ClauseBlowup(std::size_t n);
};

/// Deterministic text rendering used by `--dump-ir` and golden tests.
std::string dump(const ClauseSet& cs);
std::string dump(const GroundClause& c);

/// Set of free variables (Var nodes) in an expression.
void free_vars(const ExprP& e, std::map<std::string, TypeP>& out);

/// Substitutes Var nodes by name.
ExprP substitute(const ExprP& e, const std::map<std::string, ExprP>& sub);

/// Substitutes Local nodes (match binders, fold accumulators) by name.
ExprP substitute_locals(const ExprP& e, const std::map<std::string, ExprP>& sub);

}  // namespace evmhorn::chc
