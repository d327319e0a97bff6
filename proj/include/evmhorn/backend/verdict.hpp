#pragma once

#include <cstddef>
#include <string>

namespace evmhorn::backend {

struct Verdict {
    enum class Status { Reachable, Unreachable, Unknown };

    Status status = Status::Unknown;
    /// For Unknown: timeout, solver-unknown, blowup, unresolvable-cfg or solver-crash.
    std::string reason;
    /// False when a Reachable answer of the internal engine relied on widening or
    /// on an undecided constraint.
    bool exact = true;

    std::string engine;  ///< "external-solver" or "internal-evaluator"
    std::string solver;
    std::string solver_version;
    double wall_seconds = 0;
    std::size_t iterations = 0;
    std::string folding;

    static Verdict unknown(std::string why)
    {
        Verdict v;
        v.reason = std::move(why);
        return v;
    }
};

std::string to_string(Verdict::Status s);

/// SAT when all premises of the query are derivable, UNSAT otherwise.
std::string sat_label(const Verdict& v);

}  // namespace evmhorn::backend
