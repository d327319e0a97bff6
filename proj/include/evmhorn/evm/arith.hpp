#pragma once

#include "evmhorn/evm/word.hpp"

#include <optional>
#include <span>

namespace evmhorn::evm {

/// True for opcodes whose result depends only on their stack arguments.
bool is_pure_arith(std::uint8_t opcode) noexcept;

/// Evaluates a pure arithmetic/comparison/bitwise opcode.
/// `args[0]` is the top of the stack. Returns nullopt for opcodes outside is_pure_arith.
std::optional<word> eval_pure(std::uint8_t opcode, std::span<const word> args);

}  // namespace evmhorn::evm
