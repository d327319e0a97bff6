#pragma once

#include "evmhorn/chc/ir.hpp"
#include "evmhorn/spec/selectors.hpp"

namespace evmhorn::chc {

struct InstantiateOptions {
    std::size_t selector_cap = std::size_t{1} << 20;
    bool include_rules = true;
    bool include_queries = true;
};

/// Expands every rule and query of the bound specification into ground clauses.
ClauseSet instantiate(const spec::BoundSpec& spec, const InstantiateOptions& opts = {});

/// Bottom-up simplification of constant subexpressions.
ExprP simplify(const ExprP& e);

/// Literal value of an expression after simplification, if it is one.
std::optional<Scalar> as_scalar(const ExprP& e);

/// Simplifies every clause and drops clauses with a constraint folded to false.
ClauseSet fold_constants(const ClauseSet& cs);

/// Lowers sum types to discriminant-plus-payload tuples and matches to if-then-else.
ClauseSet encode_values(const ClauseSet& cs);

/// Primitive component types of a (possibly sum-typed) type, in encoding order.
std::vector<TypeP> encoded_types(const spec::TypedSpec& spec, const TypeP& t);

/// Spec-level integer division and modulo (Euclidean, as in smt-lib); divisor must be nonzero.
bigint int_div(const bigint& a, const bigint& b);
bigint int_mod(const bigint& a, const bigint& b);

}  // namespace evmhorn::chc
