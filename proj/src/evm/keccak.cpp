#include "evmhorn/evm/keccak.hpp"

#include <array>
#include <cstring>

namespace evmhorn::evm {

namespace {

constexpr std::array<std::uint64_t, 24> round_constants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

constexpr std::array<int, 24> rotations = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                                           27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};
constexpr std::array<int, 24> lanes = {10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                                       15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

inline std::uint64_t rotl(std::uint64_t x, int s) { return (x << s) | (x >> (64 - s)); }

void keccak_f(std::array<std::uint64_t, 25>& st)
{
    for (auto rc : round_constants)
    {
        std::uint64_t bc[5];
        for (int i = 0; i < 5; ++i)
            bc[i] = st[i] ^ st[i + 5] ^ st[i + 10] ^ st[i + 15] ^ st[i + 20];
        for (int i = 0; i < 5; ++i)
        {
            const auto t = bc[(i + 4) % 5] ^ rotl(bc[(i + 1) % 5], 1);
            for (int j = 0; j < 25; j += 5)
                st[j + i] ^= t;
        }
        auto t = st[1];
        for (int i = 0; i < 24; ++i)
        {
            const int j = lanes[i];
            const auto tmp = st[j];
            st[j] = rotl(t, rotations[i]);
            t = tmp;
        }
        for (int j = 0; j < 25; j += 5)
        {
            for (int i = 0; i < 5; ++i)
                bc[i] = st[j + i];
            for (int i = 0; i < 5; ++i)
                st[j + i] ^= (~bc[(i + 1) % 5]) & bc[(i + 2) % 5];
        }
        st[0] ^= rc;
    }
}

}  // namespace

word keccak256(const std::uint8_t* data, std::size_t len)
{
    constexpr std::size_t rate = 136;
    std::array<std::uint64_t, 25> st{};
    auto absorb = [&](const std::uint8_t* block) {
        for (std::size_t i = 0; i < rate / 8; ++i)
        {
            std::uint64_t lane = 0;
            for (int b = 7; b >= 0; --b)
                lane = (lane << 8) | block[i * 8 + static_cast<std::size_t>(b)];
            st[i] ^= lane;
        }
        keccak_f(st);
    };
    while (len >= rate)
    {
        absorb(data);
        data += rate;
        len -= rate;
    }
    std::array<std::uint8_t, rate> last{};
    if (len > 0)
        std::memcpy(last.data(), data, len);
    last[len] ^= 0x01;
    last[rate - 1] ^= 0x80;
    absorb(last.data());

    std::uint8_t out[32];
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t b = 0; b < 8; ++b)
            out[i * 8 + b] = static_cast<std::uint8_t>(st[i] >> (8 * b));
    return from_be_bytes(out, 32);
}

}  // namespace evmhorn::evm
