#pragma once

#include "evmhorn/evm/word.hpp"

#include <cstddef>
#include <cstdint>

namespace evmhorn::evm {

/// Keccak-256 as used by the EVM (original padding, not FIPS-202 SHA3-256).
word keccak256(const std::uint8_t* data, std::size_t len);

inline word keccak256(const bytes& b) { return keccak256(b.data(), b.size()); }

}  // namespace evmhorn::evm
