#pragma once

#include "evmhorn/backend/smtlib.hpp"
#include "evmhorn/backend/verdict.hpp"

#include <chrono>
#include <functional>

namespace evmhorn::backend {

enum class Answer { Sat, Unsat, Unknown };

struct SolverCrash : std::runtime_error {
    int exit_code;
    std::string stderr_excerpt;
    SolverCrash(int code, std::string err);
};

struct Timeout : std::runtime_error {
    Timeout() : std::runtime_error("solver timeout") {}
};

/// Runs `<solver_cmd> <script file>` and parses the first status token of its output.
Answer run_solver(const SmtScript& script, const std::string& solver_cmd,
                  std::chrono::duration<double> timeout);

/// Goal-clause convention: unsat means the goal is derivable.
Verdict interpret(Answer a);

/// First line of `<solver_cmd> --version`, or empty when it cannot be run.
std::string solver_version(const std::string& solver_cmd);

/// Runs `tasks` with at most `jobs` in flight; results keep input order.
std::vector<Verdict> run_pool(const std::vector<std::function<Verdict()>>& tasks, unsigned jobs);

}  // namespace evmhorn::backend
