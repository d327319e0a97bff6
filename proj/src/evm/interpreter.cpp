#include "evmhorn/evm/interpreter.hpp"

#include "evmhorn/evm/arith.hpp"
#include "evmhorn/evm/keccak.hpp"

#include <algorithm>

namespace evmhorn::evm {

UnsupportedOpcode::UnsupportedOpcode(std::size_t pc_, std::uint8_t opcode_)
  : std::runtime_error("unsupported opcode " + std::string(info(opcode_).mnemonic) + " at pc " +
                       std::to_string(pc_)),
    pc(pc_),
    opcode(opcode_)
{}

StepLimitExceeded::StepLimitExceeded(ConcreteState s)
  : std::runtime_error("step limit exceeded after " + std::to_string(s.steps) + " steps"),
    state(std::move(s))
{}

word blockhash_of(const Environment& env, const word& number)
{
    bytes buf;
    const auto a = to_be_bytes(number);
    const auto b = to_be_bytes(env.blockhash_seed);
    buf.insert(buf.end(), a.begin(), a.end());
    buf.insert(buf.end(), b.begin(), b.end());
    return keccak256(buf);
}

namespace {

struct Fault {
    std::string reason;
};

class Machine {
public:
    Machine(const Bytecode& b, const Environment& env, ConcreteState& s) : b_(b), env_(env), s_(s)
    {}

    void step()
    {
        const Instruction* ins = b_.at(s_.pc);
        if (ins == nullptr)
        {
            // running off the end of code is an implicit STOP
            s_.status = Status::stopped;
            return;
        }
        const auto o = ins->opcode;
        const auto& m = ins->meta();
        if (m.cls == OpClass::call_like || o == op::CREATE2)
            throw UnsupportedOpcode(s_.pc, o);
        if (!m.defined || o == op::INVALID)
            throw Fault{"invalid instruction"};
        if (s_.stack.size() < m.pops)
            throw Fault{"stack underflow"};
        if (s_.stack.size() - m.pops + m.pushes > 1024)
            throw Fault{"stack overflow"};

        std::size_t next = ins->next_pc();
        if (is_pure_arith(o))
        {
            std::vector<word> args(m.pops);
            for (std::size_t i = 0; i < m.pops; ++i)
                args[i] = pop();
            push(*eval_pure(o, args));
        }
        else if (is_push(o))
        {
            push(ins->immediate.value_or(0));
        }
        else if (is_dup(o))
        {
            const std::size_t n = o - op::DUP1 + 1;
            push(s_.stack[s_.stack.size() - n]);
        }
        else if (is_swap(o))
        {
            const std::size_t n = o - op::SWAP1 + 1;
            std::swap(s_.stack.back(), s_.stack[s_.stack.size() - 1 - n]);
        }
        else if (is_log(o))
        {
            const word off = pop(), len = pop();
            for (int i = 0; i < o - op::LOG0; ++i)
                pop();
            touch(off, len);
        }
        else
        {
            switch (o)
            {
            case op::STOP: s_.status = Status::stopped; break;
            case op::SHA3:
            {
                const word off = pop(), len = pop();
                touch(off, len);
                const auto o0 = static_cast<std::size_t>(off);
                const auto n = static_cast<std::size_t>(len);
                push(keccak256(n == 0 ? nullptr : s_.memory.data() + o0, n));
                break;
            }
            case op::ADDRESS: push(env_.address); break;
            case op::BALANCE: pop(); push(0); break;
            case op::ORIGIN: push(env_.origin); break;
            case op::CALLER: push(env_.caller); break;
            case op::CALLVALUE: push(0); break;
            case op::CALLDATALOAD:
            {
                const word off = pop();
                std::uint8_t buf[32] = {};
                if (off < s_.calldata.size())
                {
                    const auto o0 = static_cast<std::size_t>(off);
                    for (std::size_t i = 0; i < 32 && o0 + i < s_.calldata.size(); ++i)
                        buf[i] = s_.calldata[o0 + i];
                }
                push(from_be_bytes(buf, 32));
                break;
            }
            case op::CALLDATASIZE: push(s_.calldata.size()); break;
            case op::CALLDATACOPY: copy_in(s_.calldata); break;
            case op::CODESIZE: push(b_.code().size()); break;
            case op::CODECOPY: copy_in(b_.code()); break;
            case op::GASPRICE: push(env_.gasprice); break;
            case op::EXTCODESIZE: pop(); push(0); break;
            case op::EXTCODECOPY: pop(); copy_in(bytes{}); break;
            case op::RETURNDATASIZE: push(0); break;
            case op::RETURNDATACOPY:
            {
                const word dst = pop(), src = pop(), len = pop();
                if (src != 0 || len != 0)
                    throw Fault{"return data out of bounds"};
                touch(dst, len);
                break;
            }
            case op::EXTCODEHASH: pop(); push(0); break;
            case op::BLOCKHASH: push(blockhash_of(env_, pop())); break;
            case op::COINBASE: push(env_.coinbase); break;
            case op::TIMESTAMP: push(env_.timestamp); break;
            case op::NUMBER: push(env_.number); break;
            case op::PREVRANDAO: push(env_.prevrandao); break;
            case op::GASLIMIT: push(env_.gaslimit); break;
            case op::CHAINID: push(env_.chainid); break;
            case op::SELFBALANCE: push(0); break;
            case op::BASEFEE: push(env_.basefee); break;
            case op::BLOBHASH: pop(); push(0); break;
            case op::BLOBBASEFEE: push(env_.blobbasefee); break;
            case op::POP: pop(); break;
            case op::MLOAD:
            {
                const word off = pop();
                touch(off, 32);
                push(from_be_bytes(s_.memory.data() + static_cast<std::size_t>(off), 32));
                break;
            }
            case op::MSTORE:
            {
                const word off = pop(), v = pop();
                touch(off, 32);
                const auto be = to_be_bytes(v);
                std::copy(be.begin(), be.end(),
                          s_.memory.begin() + static_cast<std::ptrdiff_t>(off));
                break;
            }
            case op::MSTORE8:
            {
                const word off = pop(), v = pop();
                touch(off, 1);
                s_.memory[static_cast<std::size_t>(off)] = static_cast<std::uint8_t>(v & 0xff);
                break;
            }
            case op::SLOAD:
            {
                const auto it = s_.storage.find(pop());
                push(it == s_.storage.end() ? word(0) : it->second);
                break;
            }
            case op::SSTORE:
            {
                const word key = pop(), v = pop();
                if (v == 0)
                    s_.storage.erase(key);
                else
                    s_.storage[key] = v;
                break;
            }
            case op::JUMP: next = jump_target(pop()); break;
            case op::JUMPI:
            {
                const word dest = pop(), cond = pop();
                if (cond != 0)
                    next = jump_target(dest);
                break;
            }
            case op::PC: push(s_.pc); break;
            case op::MSIZE: push(msize_); break;
            case op::GAS: push(env_.gas); break;
            case op::JUMPDEST: break;
            case op::TLOAD:
            {
                const auto it = transient_.find(pop());
                push(it == transient_.end() ? word(0) : it->second);
                break;
            }
            case op::TSTORE:
            {
                const word key = pop(), v = pop();
                transient_[key] = v;
                break;
            }
            case op::MCOPY:
            {
                const word dst = pop(), src = pop(), len = pop();
                touch(src, len);
                touch(dst, len);
                if (len == 0)
                    break;
                const auto n = static_cast<std::size_t>(len);
                std::vector<std::uint8_t> tmp(
                    s_.memory.begin() + static_cast<std::ptrdiff_t>(src),
                    s_.memory.begin() + static_cast<std::ptrdiff_t>(src) +
                        static_cast<std::ptrdiff_t>(n));
                std::copy(tmp.begin(), tmp.end(),
                          s_.memory.begin() + static_cast<std::ptrdiff_t>(dst));
                break;
            }
            case op::RETURN:
            case op::REVERT:
            {
                const word off = pop(), len = pop();
                touch(off, len);
                if (len != 0)
                {
                    const auto o0 = static_cast<std::ptrdiff_t>(off);
                    s_.returndata.assign(
                        s_.memory.begin() + o0,
                        s_.memory.begin() + o0 + static_cast<std::ptrdiff_t>(len));
                }
                if (o == op::RETURN)
                {
                    s_.status = Status::stopped;
                }
                else
                {
                    s_.status = Status::exception;
                    s_.reason = "revert";
                }
                break;
            }
            case op::SELFDESTRUCT: pop(); s_.status = Status::stopped; break;
            default: throw UnsupportedOpcode(s_.pc, o);
            }
        }
        if (s_.status == Status::running)
            s_.pc = next;
    }

private:
    word pop()
    {
        word v = s_.stack.back();
        s_.stack.pop_back();
        return v;
    }
    void push(const word& v) { s_.stack.push_back(v); }

    std::size_t jump_target(const word& dest) const
    {
        if (dest >= b_.code().size() || !b_.is_jumpdest(static_cast<std::size_t>(dest)))
            throw Fault{"bad jump destination"};
        return static_cast<std::size_t>(dest);
    }

    /// Grows memory to cover [off, off+len); zero-length accesses never grow it.
    void touch(const word& off, const word& len)
    {
        if (len == 0)
            return;
        if (off > max_memory_bytes || len > max_memory_bytes || off + len > max_memory_bytes)
            throw Fault{"memory limit"};
        const auto end = static_cast<std::size_t>(off + len);
        const std::size_t words = (end + 31) / 32 * 32;
        if (s_.memory.size() < words)
            s_.memory.resize(words, 0);
        msize_ = std::max(msize_, words);
    }

    void copy_in(const bytes& src)
    {
        const word dst = pop(), from = pop(), len = pop();
        touch(dst, len);
        const auto n = static_cast<std::size_t>(len);
        const auto d = static_cast<std::size_t>(dst);
        for (std::size_t i = 0; i < n; ++i)
        {
            const word at = from + i;
            s_.memory[d + i] = at < src.size() ? src[static_cast<std::size_t>(at)] : 0;
        }
    }

    const Bytecode& b_;
    const Environment& env_;
    ConcreteState& s_;
    std::size_t msize_ = 0;
    std::map<word, word> transient_;
};

}  // namespace

ConcreteState run_concrete(const Bytecode& b, const bytes& calldata,
                           const std::map<word, word>& pre_storage, std::size_t step_limit,
                           const Environment& env, const StepObserver& observer)
{
    ConcreteState s;
    s.calldata = calldata;
    for (const auto& [k, v] : pre_storage)
        if (v != 0)
            s.storage.emplace(k, v);

    Machine m(b, env, s);
    while (s.status == Status::running)
    {
        if (s.steps >= step_limit)
            throw StepLimitExceeded(s);
        if (observer)
            observer(s);
        try
        {
            m.step();
        }
        catch (const Fault& f)
        {
            s.status = Status::exception;
            s.reason = f.reason;
        }
        ++s.steps;
    }
    return s;
}

}  // namespace evmhorn::evm
