#include "evmhorn/evm/opcodes.hpp"

#include <array>
#include <string>

namespace evmhorn::evm {

std::string_view to_string(OpClass c) noexcept
{
    switch (c)
    {
    case OpClass::local: return "local";
    case OpClass::jump: return "jump";
    case OpClass::call_like: return "call-like";
    case OpClass::halting: return "halting";
    case OpClass::invalid: return "invalid";
    case OpClass::unsupported: return "unsupported";
    }
    return "invalid";
}

namespace {

constexpr std::array<std::string_view, 32> push_names = {
    "PUSH1",  "PUSH2",  "PUSH3",  "PUSH4",  "PUSH5",  "PUSH6",  "PUSH7",  "PUSH8",
    "PUSH9",  "PUSH10", "PUSH11", "PUSH12", "PUSH13", "PUSH14", "PUSH15", "PUSH16",
    "PUSH17", "PUSH18", "PUSH19", "PUSH20", "PUSH21", "PUSH22", "PUSH23", "PUSH24",
    "PUSH25", "PUSH26", "PUSH27", "PUSH28", "PUSH29", "PUSH30", "PUSH31", "PUSH32"};
constexpr std::array<std::string_view, 16> dup_names = {
    "DUP1", "DUP2",  "DUP3",  "DUP4",  "DUP5",  "DUP6",  "DUP7",  "DUP8",
    "DUP9", "DUP10", "DUP11", "DUP12", "DUP13", "DUP14", "DUP15", "DUP16"};
constexpr std::array<std::string_view, 16> swap_names = {
    "SWAP1", "SWAP2",  "SWAP3",  "SWAP4",  "SWAP5",  "SWAP6",  "SWAP7",  "SWAP8",
    "SWAP9", "SWAP10", "SWAP11", "SWAP12", "SWAP13", "SWAP14", "SWAP15", "SWAP16"};
constexpr std::array<std::string_view, 5> log_names = {"LOG0", "LOG1", "LOG2", "LOG3", "LOG4"};

struct Table {
    std::array<OpcodeInfo, 256> entries{};

    void def(std::uint8_t o, std::string_view name, int pops, int pushes,
             OpClass cls = OpClass::local)
    {
        entries[o] = OpcodeInfo{name, static_cast<std::uint8_t>(pops),
                                static_cast<std::uint8_t>(pushes), cls, 0, true};
    }

    Table()
    {
        for (auto& e : entries)
            e = OpcodeInfo{"INVALID", 0, 0, OpClass::invalid, 0, false};

        using namespace op;
        def(STOP, "STOP", 0, 0, OpClass::halting);
        def(ADD, "ADD", 2, 1);
        def(MUL, "MUL", 2, 1);
        def(SUB, "SUB", 2, 1);
        def(DIV, "DIV", 2, 1);
        def(SDIV, "SDIV", 2, 1);
        def(MOD, "MOD", 2, 1);
        def(SMOD, "SMOD", 2, 1);
        def(ADDMOD, "ADDMOD", 3, 1);
        def(MULMOD, "MULMOD", 3, 1);
        def(EXP, "EXP", 2, 1);
        def(SIGNEXTEND, "SIGNEXTEND", 2, 1);
        def(LT, "LT", 2, 1);
        def(GT, "GT", 2, 1);
        def(SLT, "SLT", 2, 1);
        def(SGT, "SGT", 2, 1);
        def(EQ, "EQ", 2, 1);
        def(ISZERO, "ISZERO", 1, 1);
        def(AND, "AND", 2, 1);
        def(OR, "OR", 2, 1);
        def(XOR, "XOR", 2, 1);
        def(NOT, "NOT", 1, 1);
        def(BYTE, "BYTE", 2, 1);
        def(SHL, "SHL", 2, 1);
        def(SHR, "SHR", 2, 1);
        def(SAR, "SAR", 2, 1);
        def(SHA3, "KECCAK256", 2, 1);
        def(ADDRESS, "ADDRESS", 0, 1);
        def(BALANCE, "BALANCE", 1, 1);
        def(ORIGIN, "ORIGIN", 0, 1);
        def(CALLER, "CALLER", 0, 1);
        def(CALLVALUE, "CALLVALUE", 0, 1);
        def(CALLDATALOAD, "CALLDATALOAD", 1, 1);
        def(CALLDATASIZE, "CALLDATASIZE", 0, 1);
        def(CALLDATACOPY, "CALLDATACOPY", 3, 0);
        def(CODESIZE, "CODESIZE", 0, 1);
        def(CODECOPY, "CODECOPY", 3, 0);
        def(GASPRICE, "GASPRICE", 0, 1);
        def(EXTCODESIZE, "EXTCODESIZE", 1, 1);
        def(EXTCODECOPY, "EXTCODECOPY", 4, 0);
        def(RETURNDATASIZE, "RETURNDATASIZE", 0, 1);
        def(RETURNDATACOPY, "RETURNDATACOPY", 3, 0);
        def(EXTCODEHASH, "EXTCODEHASH", 1, 1);
        def(BLOCKHASH, "BLOCKHASH", 1, 1);
        def(COINBASE, "COINBASE", 0, 1);
        def(TIMESTAMP, "TIMESTAMP", 0, 1);
        def(NUMBER, "NUMBER", 0, 1);
        def(PREVRANDAO, "PREVRANDAO", 0, 1);
        def(GASLIMIT, "GASLIMIT", 0, 1);
        def(CHAINID, "CHAINID", 0, 1);
        def(SELFBALANCE, "SELFBALANCE", 0, 1);
        def(BASEFEE, "BASEFEE", 0, 1);
        def(BLOBHASH, "BLOBHASH", 1, 1, OpClass::unsupported);
        def(BLOBBASEFEE, "BLOBBASEFEE", 0, 1, OpClass::unsupported);
        def(POP, "POP", 1, 0);
        def(MLOAD, "MLOAD", 1, 1);
        def(MSTORE, "MSTORE", 2, 0);
        def(MSTORE8, "MSTORE8", 2, 0);
        def(SLOAD, "SLOAD", 1, 1);
        def(SSTORE, "SSTORE", 2, 0);
        def(JUMP, "JUMP", 1, 0, OpClass::jump);
        def(JUMPI, "JUMPI", 2, 0, OpClass::jump);
        def(PC, "PC", 0, 1);
        def(MSIZE, "MSIZE", 0, 1);
        def(GAS, "GAS", 0, 1);
        def(JUMPDEST, "JUMPDEST", 0, 0);
        def(TLOAD, "TLOAD", 1, 1, OpClass::unsupported);
        def(TSTORE, "TSTORE", 2, 0, OpClass::unsupported);
        def(MCOPY, "MCOPY", 3, 0, OpClass::unsupported);
        def(PUSH0, "PUSH0", 0, 1);
        for (int k = 1; k <= 32; ++k)
        {
            def(static_cast<std::uint8_t>(PUSH1 + k - 1), push_names[k - 1], 0, 1);
            entries[PUSH1 + k - 1].immediate = static_cast<std::uint8_t>(k);
        }
        for (int n = 1; n <= 16; ++n)
        {
            def(static_cast<std::uint8_t>(DUP1 + n - 1), dup_names[n - 1], n, n + 1);
            def(static_cast<std::uint8_t>(SWAP1 + n - 1), swap_names[n - 1], n + 1, n + 1);
        }
        for (int n = 0; n <= 4; ++n)
            def(static_cast<std::uint8_t>(LOG0 + n), log_names[n], 2 + n, 0);
        def(CREATE, "CREATE", 3, 1, OpClass::call_like);
        def(CALL, "CALL", 7, 1, OpClass::call_like);
        def(CALLCODE, "CALLCODE", 7, 1, OpClass::call_like);
        def(RETURN, "RETURN", 2, 0, OpClass::halting);
        def(DELEGATECALL, "DELEGATECALL", 6, 1, OpClass::call_like);
        def(CREATE2, "CREATE2", 4, 1, OpClass::unsupported);
        def(STATICCALL, "STATICCALL", 6, 1, OpClass::call_like);
        def(REVERT, "REVERT", 2, 0, OpClass::halting);
        def(INVALID, "INVALID", 0, 0, OpClass::invalid);
        def(SELFDESTRUCT, "SELFDESTRUCT", 1, 0, OpClass::halting);
    }
};

const Table& table()
{
    static const Table t;
    return t;
}

}  // namespace

const OpcodeInfo& info(std::uint8_t opcode) noexcept { return table().entries[opcode]; }

std::optional<std::uint8_t> opcode_by_name(std::string_view mnemonic) noexcept
{
    if (mnemonic == "SHA3")
        return op::SHA3;
    if (mnemonic == "DIFFICULTY")
        return op::PREVRANDAO;
    for (int o = 0; o < 256; ++o)
    {
        const auto& e = table().entries[o];
        if (e.defined && e.mnemonic == mnemonic)
            return static_cast<std::uint8_t>(o);
    }
    return std::nullopt;
}

}  // namespace evmhorn::evm
