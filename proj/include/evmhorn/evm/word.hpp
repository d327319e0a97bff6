#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace evmhorn {

/// 256-bit EVM machine word with wrap-around arithmetic.
using word = boost::multiprecision::uint256_t;

/// Unbounded integer used at the specification level.
using bigint = boost::multiprecision::cpp_int;

using bytes = std::vector<std::uint8_t>;

/// 2^256 as an unbounded integer.
const bigint& word_modulus();

inline bigint to_bigint(const word& w) { return bigint(w); }

/// Reduces an unbounded integer into the word range (two's complement for negatives).
word to_word(const bigint& v);

/// Big-endian 32-byte encoding.
std::array<std::uint8_t, 32> to_be_bytes(const word& w);
word from_be_bytes(const std::uint8_t* data, std::size_t len);

std::string to_hex(const bytes& b, bool prefix = true);
std::string to_hex(const word& w);

}  // namespace evmhorn
