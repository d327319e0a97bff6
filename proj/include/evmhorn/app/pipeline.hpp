#pragma once

#include "evmhorn/absem/generate.hpp"
#include "evmhorn/backend/verdict.hpp"
#include "evmhorn/chc/ir.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace evmhorn::app {

inline constexpr int report_version = 1;

enum class Folding { none, linear, exhaustive, all };
enum class Engine { internal, external };
enum class Property { reentrancy, assertions };

Folding parse_folding(const std::string& s);
Engine parse_engine(const std::string& s);
Property parse_property(const std::string& s);
std::string to_string(Folding f);
std::string to_string(Property p);

struct RunOptions {
    Engine engine = Engine::internal;
    std::string solver = "z3";
    double timeout_seconds = 60;  ///< per query (external), per saturation (internal)
    unsigned jobs = 1;
    Folding folding = Folding::none;
    std::string dump_ir_dir;  ///< stage snapshots are written here when set
    absem::Mode mode = absem::Mode::base;
};

/// Applies one folding mode; `all` is not a single mode and is rejected.
chc::ClauseSet apply_folding(const chc::ClauseSet& cs, Folding f);

/// Verdicts for every goal of `cs`, in goal order, under a single folding mode.
std::vector<backend::Verdict> solve_goals(const chc::ClauseSet& cs, Folding f,
                                          const RunOptions& opts);

/// Folds and solves. For Folding::all each goal gets the first completed verdict over the
/// three modes, preferring the fastest one.
std::vector<backend::Verdict> solve(const chc::ClauseSet& cs, const RunOptions& opts,
                                    std::size_t* folded_size = nullptr);

struct QueryResult {
    std::string kind;
    std::string name;
    std::size_t pc = 0;
    std::string opcode;
    backend::Verdict verdict;
};

struct AnalysisReport {
    std::string code_hash;
    std::size_t code_size = 0;
    std::string property;
    std::string cfg_status;
    std::size_t cfg_blocks = 0;
    std::size_t cfg_edges = 0;
    std::optional<std::size_t> unresolved_pc;
    std::vector<std::pair<std::string, double>> timings;
    std::size_t clauses = 0;
    std::size_t folded_clauses = 0;
    std::vector<QueryResult> queries;
    std::string classification;  ///< safe, vulnerable, out-of-scope or unknown
    std::string rejection;       ///< why the contract is out of scope
    std::string folding;
    std::string engine;
};

AnalysisReport analyze(const evm::Bytecode& b, Property p, const RunOptions& opts);

nlohmann::ordered_json to_json(const AnalysisReport& r);

/// 0 all Unreachable, 1 some Reachable, 2 Unknown present, 3 rejected.
int exit_code(const AnalysisReport& r);

/// Writes `chc::dump(cs)` to `<dir>/<index>-<stage>.ir`.
void dump_stage(const std::string& dir, int index, std::string_view stage,
                const chc::ClauseSet& cs);

}  // namespace evmhorn::app
