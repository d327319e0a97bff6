#pragma once

#include "evmhorn/pre/constprop.hpp"

#include <stdexcept>
#include <string>

namespace evmhorn::pre {

struct CfgEdge {
    enum class Kind { jump, fallthrough };

    std::size_t from = 0;  ///< start pc of the source block
    std::size_t to = 0;    ///< start pc of the target block
    Kind kind = Kind::jump;

    friend auto operator<=>(const CfgEdge&, const CfgEdge&) = default;
};

std::string_view to_string(CfgEdge::Kind k) noexcept;

struct Cfg {
    std::vector<evm::AtomicBlock> blocks;  ///< all atomic blocks, ascending start pc
    std::vector<CfgEdge> edges;            ///< sorted, no duplicates
    std::optional<std::size_t> unresolved_pc;  ///< set when status is Unresolvable
    std::size_t iterations = 0;

    bool resolved() const noexcept { return !unresolved_pc; }
    std::vector<std::size_t> nodes() const;
    /// Targets of jump edges leaving the block whose terminator sits at `pc`.
    std::vector<std::size_t> jump_targets(std::size_t pc) const;
    const evm::AtomicBlock* block_at(std::size_t start_pc) const;
};

struct CfgOptions {
    std::size_t max_targets = 64;  ///< target sets above this size widen to Unknown
    std::size_t max_depth = 1024;
};

/// Fixpoint over stacks of jump-target sets.
Cfg reconstruct_cfg(const evm::Bytecode& b, const CfgOptions& opts = {});

/// Deterministic JSON rendering {nodes, edges, status}.
std::string cfg_to_json(const Cfg& cfg);

struct CyclicCfg : std::runtime_error {
    std::size_t block;  ///< start pc of a block on a cycle
    explicit CyclicCfg(std::size_t pc);
};

/// Re-runs propagation along a topological order of a resolved, acyclic CFG.
ConstFacts refine_topological(const Cfg& cfg, const evm::Bytecode& b);

/// refine_topological when applicable, per-block facts otherwise.
ConstFacts best_facts(const Cfg& cfg, const evm::Bytecode& b);

}  // namespace evmhorn::pre
