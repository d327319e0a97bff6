#include "evmhorn/pre/cfg.hpp"

#include "evmhorn/evm/arith.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace evmhorn::pre {

using namespace evm;

std::string_view to_string(CfgEdge::Kind k) noexcept
{
    return k == CfgEdge::Kind::jump ? "jump" : "fallthrough";
}

std::vector<std::size_t> Cfg::nodes() const
{
    std::vector<std::size_t> out;
    for (const auto& b : blocks)
        out.push_back(b.start_pc);
    return out;
}

std::vector<std::size_t> Cfg::jump_targets(std::size_t pc) const
{
    std::vector<std::size_t> out;
    const AtomicBlock* src = nullptr;
    for (const auto& b : blocks)
        if (b.end_pc == pc)
            src = &b;
    if (src == nullptr)
        return out;
    for (const auto& e : edges)
        if (e.from == src->start_pc && e.kind == CfgEdge::Kind::jump)
            out.push_back(e.to);
    return out;
}

const AtomicBlock* Cfg::block_at(std::size_t start_pc) const
{
    const auto it = std::lower_bound(
        blocks.begin(), blocks.end(), start_pc,
        [](const AtomicBlock& b, std::size_t pc) { return b.start_pc < pc; });
    return it != blocks.end() && it->start_pc == start_pc ? &*it : nullptr;
}

CyclicCfg::CyclicCfg(std::size_t pc)
    : std::runtime_error("control flow graph has a cycle through block " + std::to_string(pc)),
      block(pc)
{
}

namespace {

/// Set of possible jump targets, or Unknown.
struct TargetCell {
    bool unknown = true;
    std::set<word> vals;

    static TargetCell of(word v) { return TargetCell{false, {v}}; }
    friend bool operator==(const TargetCell&, const TargetCell&) = default;
};

struct TargetStack {
    std::vector<TargetCell> cells;  ///< bottom first
    bool complete = false;

    TargetCell peek(std::size_t k) const
    {
        return k < cells.size() ? cells[cells.size() - 1 - k] : TargetCell{};
    }
    friend bool operator==(const TargetStack&, const TargetStack&) = default;
};

TargetCell join(const TargetCell& a, const TargetCell& b, std::size_t cap)
{
    if (a.unknown || b.unknown)
        return TargetCell{};
    TargetCell out = a;
    out.vals.insert(b.vals.begin(), b.vals.end());
    if (out.vals.size() > cap)
        return TargetCell{};
    return out;
}

TargetStack join(const TargetStack& a, const TargetStack& b, std::size_t cap)
{
    TargetStack out;
    const std::size_t n = std::min(a.cells.size(), b.cells.size());
    out.complete = a.complete && b.complete && a.cells.size() == b.cells.size();
    out.cells.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        out.cells[n - 1 - k] = join(a.peek(k), b.peek(k), cap);
    return out;
}

/// Applies a pure operation to every combination of argument values.
TargetCell apply(std::uint8_t o, const std::vector<TargetCell>& args, std::size_t cap)
{
    std::size_t combos = 1;
    for (const auto& a : args)
    {
        if (a.unknown)
            return TargetCell{};
        combos *= a.vals.size();
        if (combos > cap)
            return TargetCell{};
    }
    TargetCell out{false, {}};
    std::vector<word> cur(args.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == args.size())
        {
            if (auto v = eval_pure(o, cur))
                out.vals.insert(*v);
            return;
        }
        for (const auto& v : args[i].vals)
        {
            cur[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

struct BlockOutcome {
    TargetStack exit;
    bool falls_off = true;
    std::optional<TargetCell> target;  ///< jump target cell of a final JUMP/JUMPI
};

BlockOutcome transfer(const Bytecode& b, const AtomicBlock& blk, TargetStack st,
                      const CfgOptions& opts)
{
    BlockOutcome r;
    const auto& ins = b.instructions();
    for (std::size_t i = blk.first; i < blk.first + blk.count; ++i)
    {
        const Instruction& in = ins[i];
        const std::uint8_t o = in.opcode;
        const OpcodeInfo& m = in.meta();
        if (st.complete && st.cells.size() < m.pops)
        {
            r.falls_off = false;
            st.cells.clear();
            break;
        }
        if (o == op::JUMP || o == op::JUMPI)
            r.target = st.peek(0);
        if (is_swap(o))
        {
            const std::size_t n = o - op::SWAP1 + 1;
            if (st.cells.size() > n)
                std::swap(st.cells[st.cells.size() - 1], st.cells[st.cells.size() - 1 - n]);
            else if (!st.cells.empty())
                st.cells.back() = TargetCell{};
            continue;
        }
        TargetCell result;
        if (is_push(o))
            result = TargetCell::of(in.immediate.value_or(word(0)));
        else if (is_dup(o))
            result = st.peek(o - op::DUP1);
        else if (is_pure_arith(o))
        {
            std::vector<TargetCell> args;
            for (std::size_t k = 0; k < m.pops; ++k)
                args.push_back(st.peek(k));
            result = apply(o, args, opts.max_targets);
        }
        else if (o == op::PC)
            result = TargetCell::of(word(in.pc));
        else if (o == op::CODESIZE)
            result = TargetCell::of(word(b.code().size()));
        if (!is_dup(o))
            st.cells.resize(st.cells.size() - std::min<std::size_t>(m.pops, st.cells.size()));
        const std::size_t pushes = is_dup(o) ? 1 : m.pushes;
        for (std::size_t k = 0; k < pushes; ++k)
            st.cells.push_back(result);
        if (st.cells.size() > opts.max_depth)
        {
            if (st.complete)
            {
                r.falls_off = false;
                st.cells.clear();
                break;
            }
            st.cells.erase(st.cells.begin());
        }
    }
    r.exit = std::move(st);
    return r;
}

}  // namespace

Cfg reconstruct_cfg(const Bytecode& b, const CfgOptions& opts)
{
    Cfg cfg;
    cfg.blocks = split_atomic_blocks(b);
    if (cfg.blocks.empty())
        return cfg;

    std::map<std::size_t, TargetStack> entry;
    std::set<std::size_t> work;
    std::set<CfgEdge> edges;
    std::set<std::size_t> unresolved;
    entry[cfg.blocks.front().start_pc] = TargetStack{{}, true};
    work.insert(cfg.blocks.front().start_pc);

    auto flow = [&](std::size_t to, const TargetStack& st) {
        const auto it = entry.find(to);
        if (it == entry.end())
        {
            entry.emplace(to, st);
            work.insert(to);
            return;
        }
        auto joined = join(it->second, st, opts.max_targets);
        if (!(joined == it->second))
        {
            it->second = std::move(joined);
            work.insert(to);
        }
    };

    while (!work.empty())
    {
        const std::size_t start = *work.begin();
        work.erase(work.begin());
        ++cfg.iterations;
        const AtomicBlock* blk = cfg.block_at(start);
        auto out = transfer(b, *blk, entry.at(start), opts);
        if (!out.falls_off)
            continue;
        const std::uint8_t last = b.instructions()[blk->first + blk->count - 1].opcode;
        if (last == op::JUMP || last == op::JUMPI)
        {
            const TargetCell& t = *out.target;
            bool ok = !t.unknown;
            for (const auto& v : t.vals)
                ok = ok && v < word(b.code().size()) &&
                     b.is_jumpdest(static_cast<std::size_t>(v));
            if (!ok)
                unresolved.insert(blk->end_pc);
            else
                for (const auto& v : t.vals)
                {
                    const auto to = static_cast<std::size_t>(v);
                    edges.insert(CfgEdge{start, to, CfgEdge::Kind::jump});
                    flow(to, out.exit);
                }
        }
        const bool falls = last == op::JUMPI || !is_terminator(last);
        if (falls)
        {
            const std::size_t next = b.instructions()[blk->first + blk->count - 1].next_pc();
            if (cfg.block_at(next) != nullptr)
            {
                edges.insert(CfgEdge{start, next, CfgEdge::Kind::fallthrough});
                flow(next, out.exit);
            }
        }
    }
    cfg.edges.assign(edges.begin(), edges.end());
    if (!unresolved.empty())
        cfg.unresolved_pc = *unresolved.begin();
    return cfg;
}

std::string cfg_to_json(const Cfg& cfg)
{
    nlohmann::ordered_json j;
    j["nodes"] = cfg.nodes();
    auto edges = nlohmann::ordered_json::array();
    for (const auto& e : cfg.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", to_string(e.kind)}});
    j["edges"] = std::move(edges);
    j["status"] = cfg.resolved() ? "Resolved" : "Unresolvable";
    if (cfg.unresolved_pc)
        j["unresolvedPc"] = *cfg.unresolved_pc;
    return j.dump(2);
}

ConstFacts refine_topological(const Cfg& cfg, const Bytecode& b)
{
    if (!cfg.resolved())
        throw std::invalid_argument("refine_topological needs a resolved control flow graph");
    std::map<std::size_t, std::vector<std::size_t>> succ, pred;
    std::map<std::size_t, std::size_t> indeg;
    for (const auto& blk : cfg.blocks)
        indeg[blk.start_pc] = 0;
    for (const auto& e : cfg.edges)
    {
        succ[e.from].push_back(e.to);
        pred[e.to].push_back(e.from);
        ++indeg[e.to];
    }
    std::vector<std::size_t> order;
    std::set<std::size_t> ready;
    for (const auto& [pc, d] : indeg)
        if (d == 0)
            ready.insert(pc);
    while (!ready.empty())
    {
        const std::size_t pc = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(pc);
        for (auto s : succ[pc])
            if (--indeg[s] == 0)
                ready.insert(s);
    }
    for (const auto& [pc, d] : indeg)
        if (d != 0)
            throw CyclicCfg(pc);

    ConstFacts out;
    std::map<std::size_t, BlockResult> done;
    for (const auto pc : order)
    {
        const AtomicBlock& blk = *cfg.block_at(pc);
        std::optional<ConstStack> in;
        if (pc == cfg.blocks.front().start_pc)
            in = ConstStack::empty();
        for (auto p : pred[pc])
        {
            const auto& r = done.at(p);
            if (!r.falls_off)
                continue;
            in = in ? join(*in, r.exit) : r.exit;
        }
        auto r = propagate_block(b, blk, in.value_or(ConstStack::unknown_depth()));
        for (const auto& [k, f] : r.facts)
            out[k] = f;
        done.emplace(pc, std::move(r));
    }
    return out;
}

ConstFacts best_facts(const Cfg& cfg, const Bytecode& b)
{
    if (cfg.resolved())
    {
        try
        {
            return refine_topological(cfg, b);
        }
        catch (const CyclicCfg&)
        {
        }
    }
    return propagate_blocks(b);
}

}  // namespace evmhorn::pre
