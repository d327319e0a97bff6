#pragma once

#include "evmhorn/evm/bytecode.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace evmhorn::evm {

enum class Status { running, stopped, exception };

/// Machine state of the oracle interpreter. The stack is stored bottom first.
struct ConcreteState {
    std::size_t pc = 0;
    std::vector<word> stack;
    bytes memory;
    std::map<word, word> storage;  ///< zero-valued slots are never stored
    bytes calldata;
    Status status = Status::running;
    bytes returndata;
    std::string reason;  ///< why an exception happened
    std::size_t steps = 0;

    bool operator==(const ConcreteState&) const = default;
};

/// Values of environment-dependent opcodes for one run. Balance and call value are zero.
struct Environment {
    word address = 0x1000;
    word origin = 0x2000;
    word caller = 0x2000;
    word gasprice = 1;
    word coinbase = 0;
    word timestamp = 1;
    word number = 1;
    word prevrandao = 0;
    word gaslimit = 30000000;
    word chainid = 1;
    word basefee = 0;
    word blobbasefee = 1;
    word gas = 1000000;
    word blockhash_seed = 0;  ///< BLOCKHASH(n) = keccak256(n ++ seed)
};

struct UnsupportedOpcode : std::runtime_error {
    std::size_t pc;
    std::uint8_t opcode;
    UnsupportedOpcode(std::size_t pc_, std::uint8_t opcode_);
};

struct StepLimitExceeded : std::runtime_error {
    ConcreteState state;
    explicit StepLimitExceeded(ConcreteState s);
};

/// Called before every executed instruction with the state at that point.
using StepObserver = std::function<void(const ConcreteState&)>;

/// Largest memory the oracle grows to; larger accesses behave like running out of gas.
inline constexpr std::size_t max_memory_bytes = 1u << 20;

ConcreteState run_concrete(const Bytecode& b, const bytes& calldata,
                           const std::map<word, word>& pre_storage, std::size_t step_limit,
                           const Environment& env = {}, const StepObserver& observer = {});

word blockhash_of(const Environment& env, const word& number);

}  // namespace evmhorn::evm
