#include "evmhorn/pre/constprop.hpp"

#include "evmhorn/evm/arith.hpp"
#include "evmhorn/evm/interpreter.hpp"
#include "evmhorn/evm/keccak.hpp"

#include <algorithm>

namespace evmhorn::pre {

using namespace evm;

ConstLattice join(const ConstLattice& a, const ConstLattice& b)
{
    return a == b ? a : ConstLattice::unknown();
}

bool leq(const ConstLattice& a, const ConstLattice& b)
{
    return !b.known() || a == b;
}

ConstLattice ConstStack::peek(std::size_t k) const
{
    if (k < cells.size())
        return cells[cells.size() - 1 - k];
    return ConstLattice::unknown();
}

ConstStack join(const ConstStack& a, const ConstStack& b)
{
    ConstStack out;
    const std::size_t n = std::min(a.cells.size(), b.cells.size());
    out.complete = a.complete && b.complete && a.cells.size() == b.cells.size();
    out.cells.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        out.cells[n - 1 - k] = join(a.peek(k), b.peek(k));
    return out;
}

bool leq(const ConstFacts& a, const ConstFacts& b)
{
    for (const auto& [pc, fa] : a)
    {
        const auto it = b.find(pc);
        if (it == b.end())
            continue;
        const auto& fb = it->second;
        if (!leq(fa.result, fb.result))
            return false;
        for (std::size_t k = 0; k < fa.args.size() && k < fb.args.size(); ++k)
            if (!leq(fa.args[k], fb.args[k]))
                return false;
    }
    return true;
}

namespace {

constexpr std::size_t stack_limit = 1024;
constexpr std::size_t sha3_limit = 4096;

/// Bytes of memory whose value is known inside the current block.
class KnownMemory {
public:
    void clear() { bytes_.clear(); }

    void write(const word& off, std::size_t len, const std::optional<word>& v)
    {
        if (off > word(max_memory_bytes))
        {
            clear();
            return;
        }
        const auto base = static_cast<std::size_t>(off);
        std::array<std::uint8_t, 32> be{};
        if (v)
            be = to_be_bytes(*v);
        for (std::size_t i = 0; i < len; ++i)
        {
            if (v)
                bytes_[base + i] = len == 32 ? be[i] : be[31];
            else
                bytes_.erase(base + i);
        }
    }

    std::optional<bytes> read(const word& off, const word& len) const
    {
        if (len > word(sha3_limit) || off > word(max_memory_bytes))
            return std::nullopt;
        const auto base = static_cast<std::size_t>(off);
        bytes out(static_cast<std::size_t>(len));
        for (std::size_t i = 0; i < out.size(); ++i)
        {
            const auto it = bytes_.find(base + i);
            if (it == bytes_.end())
                return std::nullopt;
            out[i] = it->second;
        }
        return out;
    }

private:
    std::map<std::size_t, std::uint8_t> bytes_;
};

bool writes_untracked_memory(std::uint8_t o)
{
    switch (o)
    {
    case op::CALLDATACOPY:
    case op::CODECOPY:
    case op::EXTCODECOPY:
    case op::RETURNDATACOPY:
    case op::MCOPY:
    case op::CALL:
    case op::CALLCODE:
    case op::DELEGATECALL:
    case op::STATICCALL:
        return true;
    default:
        return false;
    }
}

}  // namespace

BlockResult propagate_block(const Bytecode& b, const AtomicBlock& block, const ConstStack& entry)
{
    BlockResult r;
    ConstStack st = entry;
    KnownMemory mem;
    const auto& ins = b.instructions();

    auto pop = [&](std::size_t n) {
        const std::size_t k = std::min(n, st.cells.size());
        st.cells.resize(st.cells.size() - k);
    };
    auto push = [&](ConstLattice v) {
        st.cells.push_back(std::move(v));
        if (st.cells.size() > stack_limit)
        {
            st.cells.erase(st.cells.begin());
            st.complete = false;
        }
    };

    for (std::size_t i = block.first; i < block.first + block.count; ++i)
    {
        const Instruction& in = ins[i];
        const std::uint8_t o = in.opcode;
        const OpcodeInfo& m = in.meta();

        PcFacts f;
        for (std::size_t k = 0; k < m.pops; ++k)
            f.args.push_back(st.peek(k));

        if (st.complete && st.cells.size() < m.pops)
        {
            // Certain underflow: this instruction throws, nothing after it runs.
            r.facts[in.pc] = std::move(f);
            r.falls_off = false;
            st.cells.clear();
            break;
        }

        std::vector<word> known;
        bool all_known = true;
        for (const auto& a : f.args)
        {
            all_known = all_known && a.known();
            if (a.known())
                known.push_back(*a.value);
        }

        ConstLattice result;
        if (is_push(o))
            result = ConstLattice::of(in.immediate.value_or(word(0)));
        else if (is_dup(o))
            result = st.peek(o - op::DUP1);
        else if (is_pure_arith(o) && all_known)
        {
            if (auto v = eval_pure(o, known))
                result = ConstLattice::of(*v);
        }
        else if (o == op::PC)
            result = ConstLattice::of(word(in.pc));
        else if (o == op::CODESIZE)
            result = ConstLattice::of(word(b.code().size()));
        else if (o == op::SHA3 && all_known)
        {
            if (auto data = mem.read(known[0], known[1]))
                result = ConstLattice::of(keccak256(*data));
        }
        else if (o == op::MLOAD && all_known)
        {
            if (auto data = mem.read(known[0], word(32)))
                result = ConstLattice::of(from_be_bytes(data->data(), 32));
        }

        if (o == op::MSTORE || o == op::MSTORE8)
        {
            const std::size_t len = o == op::MSTORE ? 32 : 1;
            if (f.args[0].known())
                mem.write(*f.args[0].value, len, f.args[1].value);
            else
                mem.clear();
        }
        else if (writes_untracked_memory(o))
            mem.clear();

        if (is_swap(o))
        {
            const std::size_t n = o - op::SWAP1 + 1;
            if (st.cells.size() > n)
                std::swap(st.cells[st.cells.size() - 1], st.cells[st.cells.size() - 1 - n]);
            else if (!st.cells.empty())
                st.cells.back() = ConstLattice::unknown();  // the lower cell was unknown
            if (!st.cells.empty())
                f.result = st.cells.back();
        }
        else if (is_dup(o))
        {
            push(result);
            f.result = result;
        }
        else
        {
            pop(m.pops);
            for (std::size_t k = 0; k < m.pushes; ++k)
                push(result);
            if (m.pushes == 1)
                f.result = result;
        }
        r.facts[in.pc] = std::move(f);
    }
    r.exit = std::move(st);
    return r;
}

ConstStack default_entry(const Bytecode& b, const AtomicBlock& block)
{
    if (block.start_pc == 0 && !b.is_jumpdest(0))
        return ConstStack::empty();
    return ConstStack::unknown_depth();
}

ConstFacts propagate_blocks(const Bytecode& b)
{
    ConstFacts out;
    for (const auto& blk : split_atomic_blocks(b))
    {
        auto r = propagate_block(b, blk, default_entry(b, blk));
        out.merge(r.facts);
    }
    return out;
}

}  // namespace evmhorn::pre
