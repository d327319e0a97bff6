#include "evmhorn/pre/export.hpp"

#include <algorithm>
#include <set>

namespace evmhorn::pre {

using namespace evm;
using spec::Scalar;
using spec::ScalarTuple;

const std::vector<std::uint8_t>& bin_ops()
{
    static const std::vector<std::uint8_t> ops = {op::ADD, op::MUL, op::SUB, op::DIV,
                                                  op::MOD, op::LT,  op::GT,  op::SLT,
                                                  op::SGT, op::EQ};
    return ops;
}

const std::vector<std::uint8_t>& memory_havoc_ops()
{
    static const std::vector<std::uint8_t> ops = {op::CALLDATACOPY, op::CODECOPY,
                                                  op::EXTCODECOPY, op::RETURNDATACOPY, op::MCOPY};
    return ops;
}

const std::vector<std::uint8_t>& havoc_ops()
{
    static const std::vector<std::uint8_t> ops = [] {
        // Opcodes with dedicated rules in the bundled specs.
        std::set<std::uint8_t> special = {
            op::STOP,   op::ISZERO, op::NOT,      op::POP,          op::MLOAD,
            op::MSTORE, op::MSTORE8, op::SLOAD,   op::SSTORE,       op::JUMP,
            op::JUMPI,  op::JUMPDEST, op::CALL,   op::CALLCODE,     op::DELEGATECALL,
            op::STATICCALL, op::CREATE, op::CREATE2, op::RETURN,    op::REVERT,
            op::INVALID, op::SELFDESTRUCT, op::CALLDATALOAD, op::CALLDATASIZE};
        special.insert(bin_ops().begin(), bin_ops().end());
        special.insert(memory_havoc_ops().begin(), memory_havoc_ops().end());
        std::vector<std::uint8_t> out;
        for (int o = 0; o < 256; ++o)
        {
            const auto c = static_cast<std::uint8_t>(o);
            if (!info(c).defined || special.count(c) != 0 || is_push(c) || is_dup(c) || is_swap(c))
                continue;
            out.push_back(c);
        }
        return out;
    }();
    return ops;
}

namespace {

Scalar num(long long v) { return Scalar::of_int(v); }

Scalar exported(const ConstLattice& c)
{
    return c.known() ? Scalar::of_int(spec::bigint(*c.value)) : num(-1);
}

}  // namespace

std::shared_ptr<spec::TableSelectorProvider> export_selector_facts(const Bytecode& b,
                                                                   const ConstFacts& facts,
                                                                   const Cfg& cfg, int id)
{
    using spec::sig;
    auto p = std::make_shared<spec::TableSelectorProvider>();
    const Scalar sid = num(id);

    p->add_rows("ids", sig("", "i"), {{sid}});
    p->add("interval", sig("i", "i"), [](const ScalarTuple& a) {
        std::vector<ScalarTuple> out;
        for (spec::bigint i = 0; i < a[0].i; ++i)
            out.push_back({Scalar::of_int(i)});
        return out;
    });

    std::map<ScalarTuple, std::vector<ScalarTuple>> all_pcs, by_op, args1, args2, args3, result,
        targets, halt_pcs;
    for (const auto& in : b.instructions())
    {
        const Scalar pc = num(static_cast<long long>(in.pc));
        all_pcs[{sid}].push_back({pc});
        by_op[{sid, num(in.opcode)}].push_back({pc});
        const auto it = facts.find(in.pc);
        auto arg = [&](std::size_t k) {
            if (it == facts.end() || k >= it->second.args.size())
                return num(-1);
            return exported(it->second.args[k]);
        };
        args1[{sid, pc}] = {{arg(0)}};
        args2[{sid, pc}] = {{arg(0), arg(1)}};
        args3[{sid, pc}] = {{arg(0), arg(1), arg(2)}};
        result[{sid, pc}] = {{it == facts.end() ? num(-1) : exported(it->second.result)}};
        if (in.opcode == op::JUMP || in.opcode == op::JUMPI)
        {
            auto& rows = targets[{sid, pc}];
            for (auto t : cfg.jump_targets(in.pc))
                rows.push_back({num(static_cast<long long>(t))});
        }
    }
    // Execution also halts when control runs past the last instruction.
    std::set<std::size_t> ends;
    ends.insert(b.code().size());
    if (!b.instructions().empty())
        ends.insert(std::max(b.code().size(), b.instructions().back().next_pc()));
    for (auto e : ends)
        halt_pcs[{sid}].push_back({num(static_cast<long long>(e))});

    p->add_table("pcsForId", sig("i", "i"), all_pcs);
    p->add_table("pcsForIdAndOpcode", sig("ii", "i"), by_op);
    p->add_table("argumentsOneForIdAndPc", sig("ii", "i"), args1);
    p->add_table("argumentsTwoForIdAndPc", sig("ii", "ii"), args2);
    p->add_table("argumentsThreeForIdAndPc", sig("ii", "iii"), args3);
    p->add_table("resultForIdAndPc", sig("ii", "i"), result);
    p->add_table("jumpTargetsForPc", sig("ii", "i"), targets);
    p->add_table("haltPcsForId", sig("i", "i"), halt_pcs);

    std::vector<ScalarTuple> last;
    if (!b.instructions().empty())
        last.push_back({num(static_cast<long long>(b.instructions().back().pc))});
    p->add_rows("lastPc", sig("", "i"), last);

    std::vector<ScalarTuple> bins, havoc, memhavoc, pushes, dups, swaps, calls;
    for (auto o : bin_ops())
        bins.push_back({num(o)});
    for (auto o : havoc_ops())
        havoc.push_back({num(o), num(info(o).pops), num(info(o).pushes)});
    for (auto o : memory_havoc_ops())
        memhavoc.push_back({num(o), num(info(o).pops)});
    for (int o = op::PUSH0; o <= op::PUSH32; ++o)
        pushes.push_back({num(o), num(o - op::PUSH0)});
    for (int n = 1; n <= 16; ++n)
    {
        dups.push_back({num(op::DUP1 + n - 1), num(n)});
        swaps.push_back({num(op::SWAP1 + n - 1), num(n)});
    }
    for (auto o : {op::CALL, op::STATICCALL, op::CREATE, op::CREATE2})
        calls.push_back({num(o), num(info(o).pops)});
    p->add_rows("binOps", sig("", "i"), bins);
    p->add_rows("callOps", sig("", "ii"), calls);
    p->add_rows("havocOps", sig("", "iii"), havoc);
    p->add_rows("memHavocOps", sig("", "ii"), memhavoc);
    p->add_rows("pushOps", sig("", "ii"), pushes);
    p->add_rows("dupOps", sig("", "ii"), dups);
    p->add_rows("swapOps", sig("", "ii"), swaps);
    return p;
}

}  // namespace evmhorn::pre
