#include "evmhorn/evm/bytecode.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace evmhorn::evm {

Bytecode::Bytecode(bytes code) : code_(std::move(code))
{
    index_by_pc_.assign(code_.size(), -1);
    std::size_t pc = 0;
    while (pc < code_.size())
    {
        Instruction ins;
        ins.pc = pc;
        ins.opcode = code_[pc];
        const auto k = ins.meta().immediate;
        if (is_push(ins.opcode))
        {
            // bytes past the end of code read as zero
            word v = 0;
            for (std::size_t i = 0; i < k; ++i)
            {
                const std::size_t at = pc + 1 + i;
                v = (v << 8) | (at < code_.size() ? code_[at] : 0);
            }
            ins.immediate = v;
        }
        index_by_pc_[pc] = static_cast<std::int32_t>(instructions_.size());
        instructions_.push_back(ins);
        pc += 1 + k;
    }
}

const Instruction* Bytecode::at(std::size_t pc) const noexcept
{
    if (pc >= index_by_pc_.size() || index_by_pc_[pc] < 0)
        return nullptr;
    return &instructions_[static_cast<std::size_t>(index_by_pc_[pc])];
}

std::size_t Bytecode::index_of(std::size_t pc) const
{
    if (pc >= index_by_pc_.size() || index_by_pc_[pc] < 0)
        throw std::out_of_range("no instruction at pc " + std::to_string(pc));
    return static_cast<std::size_t>(index_by_pc_[pc]);
}

bool Bytecode::is_jumpdest(std::size_t pc) const noexcept
{
    const auto* ins = at(pc);
    return ins != nullptr && ins->opcode == op::JUMPDEST;
}

bytes parse_hex(std::string_view hex_text)
{
    std::string digits;
    digits.reserve(hex_text.size());
    for (char c : hex_text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            digits.push_back(c);
    std::string_view s = digits;
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X'))
        s.remove_prefix(2);
    if (s.size() % 2 != 0)
        throw MalformedHex("odd number of hex digits");

    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9')
            return c - '0';
        if (c >= 'a' && c <= 'f')
            return c - 'a' + 10;
        if (c >= 'A' && c <= 'F')
            return c - 'A' + 10;
        return -1;
    };
    bytes out;
    out.reserve(s.size() / 2);
    for (std::size_t i = 0; i < s.size(); i += 2)
    {
        const int hi = nibble(s[i]);
        const int lo = nibble(s[i + 1]);
        if (hi < 0 || lo < 0)
            throw MalformedHex(std::string("non-hex character '") + (hi < 0 ? s[i] : s[i + 1]) +
                               "'");
        out.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
    }
    return out;
}

Bytecode decode(std::string_view hex_text) { return Bytecode(parse_hex(hex_text)); }

bytes encode(const std::vector<Instruction>& instructions)
{
    bytes out;
    for (const auto& ins : instructions)
    {
        out.push_back(ins.opcode);
        const auto k = ins.meta().immediate;
        if (k > 0)
        {
            const auto be = to_be_bytes(ins.immediate.value_or(0));
            out.insert(out.end(), be.end() - k, be.end());
        }
    }
    return out;
}

bool is_terminator(std::uint8_t opcode) noexcept
{
    const auto c = info(opcode).cls;
    return c == OpClass::jump || c == OpClass::halting || c == OpClass::invalid;
}

std::vector<AtomicBlock> split_atomic_blocks(const Bytecode& b)
{
    std::vector<AtomicBlock> blocks;
    const auto& ins = b.instructions();
    std::size_t i = 0;
    while (i < ins.size())
    {
        AtomicBlock blk;
        blk.start_pc = ins[i].pc;
        blk.first = i;
        std::size_t j = i;
        while (true)
        {
            const bool last = j + 1 >= ins.size() || is_terminator(ins[j].opcode) ||
                              ins[j + 1].opcode == op::JUMPDEST;
            if (last)
                break;
            ++j;
        }
        blk.end_pc = ins[j].pc;
        blk.count = j - i + 1;
        blocks.push_back(blk);
        i = j + 1;
    }
    return blocks;
}

namespace {

std::vector<std::string> tokenize_asm(std::string_view src)
{
    std::vector<std::string> toks;
    std::string cur;
    bool comment = false;
    for (char c : src)
    {
        if (comment)
        {
            if (c == '\n')
                comment = false;
            continue;
        }
        if (c == ';')
        {
            comment = true;
        }
        else if (!std::isspace(static_cast<unsigned char>(c)) && c != ',')
        {
            cur.push_back(c);
            continue;
        }
        if (!cur.empty())
            toks.push_back(std::move(cur));
        cur.clear();
    }
    if (!cur.empty())
        toks.push_back(std::move(cur));
    return toks;
}

word parse_number(const std::string& t)
{
    try
    {
        if (t.size() > 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X'))
            return word("0x" + t.substr(2));
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw AssemblyError("bad immediate '" + t + "'");
        return word(t);
    }
    catch (const std::runtime_error&)
    {
        throw AssemblyError("bad immediate '" + t + "'");
    }
}

}  // namespace

bytes assemble(std::string_view source)
{
    const auto toks = tokenize_asm(source);

    struct Item {
        std::uint8_t opcode;
        std::string operand;
    };
    std::vector<Item> items;
    std::map<std::string, std::size_t> labels;
    std::size_t pc = 0;
    for (std::size_t i = 0; i < toks.size(); ++i)
    {
        const auto& t = toks[i];
        if (t.back() == ':')
        {
            const auto name = t.substr(0, t.size() - 1);
            if (!labels.emplace(name, pc).second)
                throw AssemblyError("duplicate label '" + name + "'");
            continue;
        }
        const auto o = opcode_by_name(t);
        if (!o)
            throw AssemblyError("unknown mnemonic '" + t + "'");
        Item it{*o, {}};
        if (info(*o).immediate > 0)
        {
            if (i + 1 >= toks.size())
                throw AssemblyError(t + " needs an immediate");
            it.operand = toks[++i];
        }
        pc += 1 + info(*o).immediate;
        items.push_back(std::move(it));
    }

    bytes out;
    for (const auto& it : items)
    {
        out.push_back(it.opcode);
        const auto k = info(it.opcode).immediate;
        if (k == 0)
            continue;
        word v;
        if (it.operand[0] == '@')
        {
            const auto l = labels.find(it.operand.substr(1));
            if (l == labels.end())
                throw AssemblyError("unknown label '" + it.operand + "'");
            v = l->second;
        }
        else
        {
            v = parse_number(it.operand);
        }
        if (k < 32 && (v >> (8 * k)) != 0)
            throw AssemblyError("immediate " + it.operand + " does not fit PUSH" +
                                std::to_string(k));
        const auto be = to_be_bytes(v);
        out.insert(out.end(), be.end() - k, be.end());
    }
    return out;
}

std::string disassemble(const Bytecode& b)
{
    std::ostringstream os;
    for (const auto& ins : b.instructions())
    {
        os << ins.pc << ": " << ins.meta().mnemonic;
        if (!ins.meta().defined)
            os << " (0x" << std::hex << int(ins.opcode) << std::dec << ")";
        if (ins.immediate && ins.meta().immediate > 0)
            os << ' ' << to_hex(*ins.immediate);
        os << '\n';
    }
    return os.str();
}

}  // namespace evmhorn::evm
