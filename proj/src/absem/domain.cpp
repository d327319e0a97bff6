#include "evmhorn/absem/domain.hpp"

#include "evmhorn/evm/arith.hpp"

#include <set>

namespace evmhorn::absem {

using namespace evm;

bool leq(const AbsValue& a, const AbsValue& b)
{
    return b.is_top() || a == b;
}

std::string to_string(const AbsValue& v)
{
    return v.is_top() ? "T" : to_hex(*v.value);
}

namespace {

bigint pow256(int n)
{
    return bigint(1) << (8 * n);
}

bool is_comparison(std::uint8_t o)
{
    return o == op::LT || o == op::GT || o == op::SLT || o == op::SGT || o == op::EQ;
}

}  // namespace

AbsValue abs_binop(std::uint8_t opcode, const AbsValue& x, const AbsValue& y)
{
    switch (opcode)
    {
    case op::ADD:
    case op::SUB:
    case op::MUL:
    case op::DIV:
    case op::MOD: break;
    default:
        if (!is_comparison(opcode))
            throw std::invalid_argument("abs_binop: not a binary arithmetic opcode");
    }
    if (x.is_top() || y.is_top())
        return AbsValue::top();
    const word args[2] = {*x.value, *y.value};
    return AbsValue::of(*eval_pure(opcode, args));
}

bool abs_comp(std::uint8_t opcode, const AbsValue& x, const AbsValue& y)
{
    if (!is_comparison(opcode))
        throw std::invalid_argument("abs_comp: not a comparison opcode");
    if (x.is_top() || y.is_top())
        return true;
    const word args[2] = {*x.value, *y.value};
    return *eval_pure(opcode, args) != 0;
}

AbsValue extract(const AbsValue& v, int l, int r)
{
    if (l > r || v.is_top())
        return AbsValue::top();
    const bigint x = bigint(*v.value);
    return AbsValue::of(to_word((x / pow256(31 - r)) % pow256(r - l + 1)));
}

AbsValue concat(const AbsValue& v, const AbsValue& w, int n)
{
    if (v.is_top() || w.is_top())
        return AbsValue::top();
    return AbsValue::of(to_word(bigint(*v.value) * pow256(n) + bigint(*w.value)));
}

AbsValue AbsArray::select(const bigint& i) const
{
    const auto it = ex.find(i);
    return it == ex.end() ? dflt : it->second;
}

AbsArray AbsArray::store(const bigint& i, AbsValue v) const
{
    AbsArray out = *this;
    if (v == dflt)
        out.ex.erase(i);
    else
        out.ex[i] = std::move(v);
    return out;
}

namespace {

std::set<bigint> keys(const AbsArray& a, const AbsArray& b)
{
    std::set<bigint> out;
    for (const auto& [k, v] : a.ex)
        out.insert(k);
    for (const auto& [k, v] : b.ex)
        out.insert(k);
    return out;
}

}  // namespace

bool leq(const AbsArray& a, const AbsArray& b)
{
    if (!leq(a.dflt, b.dflt))
        return false;
    for (const auto& k : keys(a, b))
        if (!leq(a.select(k), b.select(k)))
            return false;
    return true;
}

bool leq_prefix(const AbsArray& a, const AbsArray& b, const bigint& n)
{
    // Indices below n that are exceptions of neither array compare the defaults.
    std::size_t listed = 0;
    for (const auto& k : keys(a, b))
    {
        if (k < 0 || k >= n)
            continue;
        ++listed;
        if (!leq(a.select(k), b.select(k)))
            return false;
    }
    return bigint(listed) >= n || leq(a.dflt, b.dflt);
}

AbsValue access_word(const AbsArray& m, const bigint& p)
{
    const int k = static_cast<int>(p % 32);
    const bigint i = p / 32;
    if (k == 0)
        return m.select(i);
    return concat(extract(m.select(i), k, 31), extract(m.select(i + 1), 0, k - 1), k);
}

AbsArray store_word(const AbsArray& m, const std::optional<bigint>& p, const AbsValue& v)
{
    if (!p)
        return AbsArray::constant(AbsValue::top());
    const int k = static_cast<int>(*p % 32);
    const bigint i = *p / 32;
    if (k == 0)
        return m.store(i, v);
    const AbsValue lo = concat(extract(m.select(i), 0, k - 1), extract(v, 0, 31 - k), 32 - k);
    const AbsValue hi = concat(extract(v, 32 - k, 31), extract(m.select(i + 1), k, 31), 32 - k);
    return m.store(i, lo).store(i + 1, hi);
}

AbsArray stack_to_array(const std::vector<word>& stack)
{
    AbsArray out = AbsArray::constant(AbsValue::of(0));
    for (std::size_t i = 0; i < stack.size(); ++i)
        out = out.store(i, AbsValue::of(stack[i]));
    return out;
}

AbsArray to_word_mem(const bytes& memory)
{
    AbsArray out = AbsArray::constant(AbsValue::of(0));
    for (std::size_t w = 0; w * 32 < memory.size(); ++w)
    {
        std::array<std::uint8_t, 32> chunk{};
        for (std::size_t b = 0; b < 32 && w * 32 + b < memory.size(); ++b)
            chunk[b] = memory[w * 32 + b];
        out = out.store(w, AbsValue::of(from_be_bytes(chunk.data(), 32)));
    }
    return out;
}

AbsArray storage_to_array(const std::map<word, word>& storage)
{
    AbsArray out = AbsArray::constant(AbsValue::of(0));
    for (const auto& [k, v] : storage)
        out = out.store(bigint(k), AbsValue::of(v));
    return out;
}

bool leq(const AbsFact& a, const AbsFact& b)
{
    if (a.kind != b.kind || (a.kind == AbsFact::Kind::MState && a.pc != b.pc))
        return false;
    if (b.cl && (!a.cl || *a.cl != *b.cl))
        return false;
    if (a.kind == AbsFact::Kind::Exc)
        return true;
    if (!leq(a.stor, b.stor))
        return false;
    if (a.kind == AbsFact::Kind::Halt)
        return true;
    if (b.size && (!a.size || *a.size != *b.size))
        return false;
    if (!leq(a.mem, b.mem))
        return false;
    if (!a.size)
        return leq(a.stack, b.stack);
    return leq_prefix(a.stack, b.stack, *a.size);
}

bool leq(const OrderedFactSet& a, const OrderedFactSet& b)
{
    for (const auto& x : a)
    {
        bool found = false;
        for (const auto& y : b)
            if (leq(x, y))
            {
                found = true;
                break;
            }
        if (!found)
            return false;
    }
    return true;
}

namespace {

std::string array_string(const AbsArray& a)
{
    std::string out = "[" + to_string(a.dflt);
    for (const auto& [k, v] : a.ex)
        out += ", " + k.str() + ":" + to_string(v);
    return out + "]";
}

}  // namespace

std::string to_string(const AbsFact& f)
{
    const std::string cl = f.cl ? (*f.cl ? "true" : "false") : "T";
    switch (f.kind)
    {
    case AbsFact::Kind::Exc: return "Exc(" + cl + ")";
    case AbsFact::Kind::Halt: return "Halt(" + array_string(f.stor) + ", " + cl + ")";
    case AbsFact::Kind::MState: break;
    }
    return "MState{" + std::to_string(f.pc) + "}(" + (f.size ? f.size->str() : "T") + ", " +
           array_string(f.stack) + ", " + array_string(f.mem) + ", " + array_string(f.stor) +
           ", " + cl + ")";
}

OrderedFactSet alpha_state(const ConcreteState& state, bool cl)
{
    AbsFact f;
    f.cl = cl;
    switch (state.status)
    {
    case Status::exception: f.kind = AbsFact::Kind::Exc; break;
    case Status::stopped:
        f.kind = AbsFact::Kind::Halt;
        f.stor = storage_to_array(state.storage);
        break;
    case Status::running:
        f.kind = AbsFact::Kind::MState;
        f.pc = state.pc;
        f.size = bigint(state.stack.size());
        f.stack = stack_to_array(state.stack);
        f.mem = to_word_mem(state.memory);
        f.stor = storage_to_array(state.storage);
        break;
    }
    return {f};
}

}  // namespace evmhorn::absem
