#include "evmhorn/evm/word.hpp"

#include <sstream>

namespace evmhorn {

const bigint& word_modulus()
{
    static const bigint m = bigint(1) << 256;
    return m;
}

word to_word(const bigint& v)
{
    bigint r = v % word_modulus();
    if (r < 0)
        r += word_modulus();
    return word(r);
}

std::array<std::uint8_t, 32> to_be_bytes(const word& w)
{
    std::array<std::uint8_t, 32> out{};
    word v = w;
    for (int i = 31; i >= 0; --i)
    {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xff);
        v >>= 8;
    }
    return out;
}

word from_be_bytes(const std::uint8_t* data, std::size_t len)
{
    word v = 0;
    for (std::size_t i = 0; i < len; ++i)
        v = (v << 8) | data[i];
    return v;
}

std::string to_hex(const bytes& b, bool prefix)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s = prefix ? "0x" : "";
    s.reserve(s.size() + b.size() * 2);
    for (auto c : b)
    {
        s.push_back(digits[c >> 4]);
        s.push_back(digits[c & 0xf]);
    }
    return s;
}

std::string to_hex(const word& w)
{
    std::ostringstream os;
    os << std::hex << w;
    return "0x" + os.str();
}

}  // namespace evmhorn
