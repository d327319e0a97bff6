#pragma once

#include "evmhorn/backend/verdict.hpp"
#include "evmhorn/chc/ir.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

namespace evmhorn::backend {

using chc::bigint;

struct ArrayValue;

/// Ground value of the evaluator. Top stands for an unknown value of any sort.
struct Value {
    enum class Kind { Top, Int, Bool, Array };

    Kind kind = Kind::Top;
    bigint i;
    bool b = false;
    std::shared_ptr<const ArrayValue> arr;

    static Value top() { return Value{}; }
    static Value of_int(bigint v);
    static Value of_bool(bool v);
    /// Array with default `dflt` and exceptions `ex`; entries equal to the default are dropped.
    static Value array(Value dflt, std::map<bigint, Value> ex = {});

    bool is_top() const noexcept { return kind == Kind::Top; }

    friend bool operator==(const Value& a, const Value& b);
    friend bool operator<(const Value& a, const Value& b);
};

struct ArrayValue {
    Value dflt;
    std::map<bigint, Value> ex;
};

/// Lookup in an array value; Top for a Top array or index that can hit distinct entries.
Value select(const Value& arr, const Value& idx);

/// `a` is below `b` in the information order: Top is greatest, arrays pointwise.
bool leq(const Value& a, const Value& b);

std::string to_string(const Value& v);

using Tuple = std::vector<Value>;

struct Fact {
    Tuple values;
    bool exact = true;
};

struct FactStore {
    std::map<chc::PredicateId, std::vector<Fact>> facts;
    std::map<chc::PredicateId, std::set<std::size_t>> widened;  ///< positions forced to Top
    std::size_t iterations = 0;
    bool saturated = false;
    std::string stop_reason;  ///< set when saturation was cut short

    std::size_t size() const;
    /// Some fact of `p` lies above `t` pointwise.
    bool covers(const chc::PredicateId& p, const Tuple& t) const;
};

struct EvalCaps {
    std::size_t max_iterations = 100000;
    std::size_t max_values_per_position = 256;
    std::size_t max_facts = 2000000;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Semi-naive bottom-up fixpoint of the clauses of a value-encoded clause set.
FactStore saturate(const chc::ClauseSet& cs, const EvalCaps& caps = {});

enum class Tri { False, True, Unknown };

/// Whether `goal` fires on the facts in `store`; Unknown when only undecided constraints allow it.
Tri goal_holds(const FactStore& store, const chc::QueryGoal& goal);

/// Verdict for one goal from an existing saturation.
Verdict verdict_for(const FactStore& store, const chc::QueryGoal& goal);

/// Saturates and checks `goal`.
Verdict evaluate_naive(const chc::ClauseSet& cs, const chc::QueryGoal& goal,
                       const EvalCaps& caps = {});

/// Evaluates a ground primitive expression under a variable assignment.
Value eval(const spec::ExprP& e, const std::map<std::string, Value>& env);

}  // namespace evmhorn::backend
