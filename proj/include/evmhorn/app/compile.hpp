#pragma once

#include "evmhorn/absem/generate.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace evmhorn::app {

/// Adds selectors from JSON: {name: {"in": "ii", "out": "i", "rows": [[...], ...]}} for
/// constant selectors, or {"table": [{"args": [...], "rows": [[...], ...]}, ...]}.
void load_selector_facts(spec::TableSelectorProvider& p, const nlohmann::json& j);

struct CompileRequest {
    std::vector<std::string> spec_texts;       ///< user specification files
    std::optional<absem::Mode> bundled;        ///< include evm-base.hrt / evm-calldata.hrt
    std::optional<bytes> code;                 ///< contract whose pre-analysis feeds selectors
    std::optional<nlohmann::json> facts;       ///< extra selector tables
    bool fresh_init = false;                   ///< add the fresh initOp rule
    std::vector<std::string> properties;       ///< "reentrancy", "assertions"
    std::string dump_ir_dir;
};

struct CompiledScript {
    std::string file_name;  ///< `<goal>_<params>.smt2`
    std::string text;
};

struct CompileResult {
    chc::ClauseSet clauses;
    std::vector<CompiledScript> scripts;
};

CompileResult compile(const CompileRequest& req);

}  // namespace evmhorn::app
