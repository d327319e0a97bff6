#pragma once

#include "evmhorn/chc/ir.hpp"

namespace evmhorn::backend {

struct SmtScript {
    std::string text;
};

struct NonPrimitiveType : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// CHC script for one goal: every clause of `cs` plus `goal` as a false-headed clause.
SmtScript emit_smtlib(const chc::ClauseSet& cs, const chc::QueryGoal& goal);

/// smt-lib rendering of a single primitive expression.
std::string smt_expr(const spec::ExprP& e);

/// Symbol quoted with |...| when it is not a simple smt-lib symbol.
std::string smt_symbol(const std::string& s);

}  // namespace evmhorn::backend
