#pragma once

#include "evmhorn/evm/bytecode.hpp"

#include <map>
#include <optional>
#include <vector>

namespace evmhorn::pre {

/// Flat constant lattice over words: a known value or Unknown.
struct ConstLattice {
    std::optional<word> value;

    static ConstLattice unknown() { return {}; }
    static ConstLattice of(word v) { return ConstLattice{v}; }

    bool known() const noexcept { return value.has_value(); }

    friend bool operator==(const ConstLattice&, const ConstLattice&) = default;
};

ConstLattice join(const ConstLattice& a, const ConstLattice& b);

/// Information order: Unknown is the top element.
bool leq(const ConstLattice& a, const ConstLattice& b);

/// Abstract stack holding the topmost known cells, bottom first. Cells below
/// are unknown unless `complete` says the vector is the whole stack.
struct ConstStack {
    std::vector<ConstLattice> cells;
    bool complete = false;

    /// Cell `k` positions below the top (0 = top).
    ConstLattice peek(std::size_t k) const;

    static ConstStack empty() { return ConstStack{{}, true}; }
    static ConstStack unknown_depth() { return ConstStack{}; }

    friend bool operator==(const ConstStack&, const ConstStack&) = default;
};

/// Aligns both stacks at the top and joins cellwise.
ConstStack join(const ConstStack& a, const ConstStack& b);

/// Facts for one instruction: its stack arguments (0 = top) and pushed value.
struct PcFacts {
    std::vector<ConstLattice> args;
    ConstLattice result;

    friend bool operator==(const PcFacts&, const PcFacts&) = default;
};

using ConstFacts = std::map<std::size_t, PcFacts>;

/// Pointwise order on facts; a pc missing on the left is fine, on the right it counts as Unknown.
bool leq(const ConstFacts& a, const ConstFacts& b);

struct BlockResult {
    ConstStack exit;
    ConstFacts facts;
    bool falls_off = true;  ///< false when the block certainly fails before its end
};

/// Partial execution of one atomic block from an abstract entry stack.
BlockResult propagate_block(const evm::Bytecode& b, const evm::AtomicBlock& block,
                            const ConstStack& entry);

/// Entry stack used when nothing is known about predecessors: empty at pc 0 unless pc 0
/// can also be reached by a jump.
ConstStack default_entry(const evm::Bytecode& b, const evm::AtomicBlock& block);

/// Per-block pass over every atomic block with default entries.
ConstFacts propagate_blocks(const evm::Bytecode& b);

}  // namespace evmhorn::pre
