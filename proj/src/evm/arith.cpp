#include "evmhorn/evm/arith.hpp"

#include "evmhorn/evm/opcodes.hpp"

namespace evmhorn::evm {

namespace {

const word sign_bit = word(1) << 255;

bool negative(const word& v) { return (v & sign_bit) != 0; }
word negate(const word& v) { return ~v + 1; }

word exp_mod(word base, word e)
{
    word r = 1;
    while (e != 0)
    {
        if ((e & 1) != 0)
            r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_pure_arith(std::uint8_t o) noexcept
{
    return (o >= op::ADD && o <= op::SIGNEXTEND) || (o >= op::LT && o <= op::SAR);
}

std::optional<word> eval_pure(std::uint8_t o, std::span<const word> args)
{
    if (!is_pure_arith(o))
        return std::nullopt;
    const word& a = args[0];
    const word b = args.size() > 1 ? args[1] : word(0);
    switch (o)
    {
    case op::ADD: return a + b;
    case op::MUL: return a * b;
    case op::SUB: return a - b;
    case op::DIV: return b == 0 ? word(0) : word(a / b);
    case op::MOD: return b == 0 ? word(0) : word(a % b);
    case op::SDIV:
    {
        if (b == 0)
            return word(0);
        const bool na = negative(a), nb = negative(b);
        const word q = (na ? negate(a) : a) / (nb ? negate(b) : b);
        return na != nb ? negate(q) : q;
    }
    case op::SMOD:
    {
        if (b == 0)
            return word(0);
        const bool na = negative(a);
        const word r = (na ? negate(a) : a) % (negative(b) ? negate(b) : b);
        return na ? negate(r) : r;
    }
    case op::ADDMOD:
    {
        const word& n = args[2];
        if (n == 0)
            return word(0);
        return word((bigint(a) + bigint(b)) % bigint(n));
    }
    case op::MULMOD:
    {
        const word& n = args[2];
        if (n == 0)
            return word(0);
        return word((bigint(a) * bigint(b)) % bigint(n));
    }
    case op::EXP: return exp_mod(a, b);
    case op::SIGNEXTEND:
    {
        if (a >= 31)
            return b;
        const unsigned bit = static_cast<unsigned>(a) * 8 + 7;
        const word mask = (word(1) << bit) - 1;
        if ((b >> bit & 1) != 0)
            return b | ~mask;
        return b & mask;
    }
    case op::LT: return word(a < b ? 1 : 0);
    case op::GT: return word(a > b ? 1 : 0);
    case op::SLT:
    {
        const bool na = negative(a), nb = negative(b);
        return word(na != nb ? na : a < b);
    }
    case op::SGT:
    {
        const bool na = negative(a), nb = negative(b);
        return word(na != nb ? nb : a > b);
    }
    case op::EQ: return word(a == b ? 1 : 0);
    case op::ISZERO: return word(a == 0 ? 1 : 0);
    case op::AND: return a & b;
    case op::OR: return a | b;
    case op::XOR: return a ^ b;
    case op::NOT: return ~a;
    case op::BYTE:
    {
        if (a >= 32)
            return word(0);
        const unsigned shift = (31 - static_cast<unsigned>(a)) * 8;
        return (b >> shift) & 0xff;
    }
    case op::SHL: return a >= 256 ? word(0) : word(b << static_cast<unsigned>(a));
    case op::SHR: return a >= 256 ? word(0) : word(b >> static_cast<unsigned>(a));
    case op::SAR:
    {
        const bool nb = negative(b);
        if (a >= 256)
            return nb ? ~word(0) : word(0);
        const unsigned s = static_cast<unsigned>(a);
        word r = b >> s;
        if (nb && s > 0)
            r |= ~(~word(0) >> s);
        return r;
    }
    default: return std::nullopt;
    }
}

}  // namespace evmhorn::evm
