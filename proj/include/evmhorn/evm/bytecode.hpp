#pragma once

#include "evmhorn/evm/opcodes.hpp"
#include "evmhorn/evm/word.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace evmhorn::evm {

struct MalformedHex : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AssemblyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Instruction {
    std::size_t pc = 0;
    std::uint8_t opcode = 0;
    std::optional<word> immediate;  ///< set for PUSH0..PUSH32

    const OpcodeInfo& meta() const noexcept { return info(opcode); }
    std::size_t size() const noexcept { return 1 + meta().immediate; }
    std::size_t next_pc() const noexcept { return pc + size(); }
};

class Bytecode {
public:
    Bytecode() = default;
    explicit Bytecode(bytes code);

    const bytes& code() const noexcept { return code_; }
    const std::vector<Instruction>& instructions() const noexcept { return instructions_; }

    /// Instruction starting at `pc`, or nullptr when pc is inside push data or out of range.
    const Instruction* at(std::size_t pc) const noexcept;
    std::size_t index_of(std::size_t pc) const;

    bool is_jumpdest(std::size_t pc) const noexcept;

private:
    bytes code_;
    std::vector<Instruction> instructions_;
    std::vector<std::int32_t> index_by_pc_;
};

/// Parses hex text (optional 0x prefix, whitespace ignored).
Bytecode decode(std::string_view hex_text);
bytes parse_hex(std::string_view hex_text);

/// Serializes instructions back into bytes. Truncated pushes are re-emitted at full width.
bytes encode(const std::vector<Instruction>& instructions);

struct AtomicBlock {
    std::size_t start_pc = 0;
    std::size_t end_pc = 0;  ///< pc of the last instruction
    std::size_t first = 0;   ///< index into Bytecode::instructions()
    std::size_t count = 0;
};

std::vector<AtomicBlock> split_atomic_blocks(const Bytecode& b);

/// True when the instruction ends a block by itself.
bool is_terminator(std::uint8_t opcode) noexcept;

/// Small assembler for hand-written test contracts.
///
/// Tokens are mnemonics, numeric immediates after PUSHk, `name:` label definitions and
/// `@name` label references usable as PUSH immediates. `;` starts a comment.
bytes assemble(std::string_view source);

std::string disassemble(const Bytecode& b);

}  // namespace evmhorn::evm
