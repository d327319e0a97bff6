#pragma once

#include "evmhorn/pre/cfg.hpp"
#include "evmhorn/spec/selectors.hpp"

#include <memory>

namespace evmhorn::pre {

/// Opcodes handled by the generic binary-operation rule of the bundled spec.
const std::vector<std::uint8_t>& bin_ops();

/// Opcodes modelled only by their stack effect: results are the pre-analysis constant or Top.
const std::vector<std::uint8_t>& havoc_ops();

/// Opcodes that overwrite memory with data the analysis does not track.
const std::vector<std::uint8_t>& memory_havoc_ops();

/// Selector relations describing contract `id`.
///
/// Unknown constants are exported as -1. Argument selectors always return one row.
std::shared_ptr<spec::TableSelectorProvider> export_selector_facts(const evm::Bytecode& b,
                                                                   const ConstFacts& facts,
                                                                   const Cfg& cfg, int id = 0);

}  // namespace evmhorn::pre
