#include "evmhorn/absem/generate.hpp"

#include "evmhorn/pre/export.hpp"
#include "evmhorn/spec/parser.hpp"

#include <mutex>
#include <sstream>

namespace evmhorn::resources {
extern const std::string_view evm_base_hrt;
extern const std::string_view evm_calldata_hrt;
}  // namespace evmhorn::resources

namespace evmhorn::absem {

using spec::Scalar;
using spec::ScalarTuple;
using spec::sig;

std::string_view to_string(Mode m) noexcept
{
    return m == Mode::base ? "base" : "calldata";
}

UnsupportedInstruction::UnsupportedInstruction(std::uint8_t op, std::size_t pc_)
    : std::runtime_error(std::string(evm::info(op).mnemonic) + " at pc " + std::to_string(pc_) +
                         " is not supported"),
      opcode(op), pc(pc_)
{
}

ExtensionRequired::ExtensionRequired()
    : std::runtime_error("functional queries need the calldata extension")
{
}

std::string_view bundled_spec(Mode m)
{
    return m == Mode::base ? resources::evm_base_hrt : resources::evm_calldata_hrt;
}

namespace {

/// Extra MState arguments of a mode: the call data slot in extension mode.
std::string cd_var(Mode m)
{
    return m == Mode::calldata ? ", ?cdata: CallData" : "";
}

std::string cd_arg(Mode m)
{
    return m == Mode::calldata ? ", ?cdata" : "";
}

}  // namespace

std::string make_init(const Init& init, Mode m)
{
    if (init.kind == Init::Kind::custom)
        return init.custom_text;
    std::ostringstream out;
    if (init.kind == Init::Kind::prestorage)
        out << "sel preStorageForId: int -> [int*int];\n\n";
    out << "rule initOp :=\n"
        << "  for (!id: int) in ids()\n"
        << "  clause";
    if (m == Mode::calldata)
        out << " [?cdata: CallData]";
    out << "\n    true\n    => MState{!id, 0}(0, [@V(0)], [@V(0)],\n";
    if (init.kind == Init::Kind::prestorage)
        out << "                      for (!offset: int, !value: int) in preStorageForId(!id): "
               "x: array<AbsDom> -> store x !offset @V(!value), [@V(0)],\n";
    else
        out << "                      [@T],\n";
    out << "                      false" << cd_arg(m) << ");\n";
    return out.str();
}

std::string make_reentrancy_queries(Mode m)
{
    std::ostringstream out;
    out << "query reentrancyCall\n"
        << "  for (!op: int, !n: int) in callOps(),\n"
        << "      (!id: int) in ids(),\n"
        << "      (!pc: int) in pcsForIdAndOpcode(!id, !op)\n"
        << "    [?sa: array<AbsDom>, ?mem: array<AbsDom>, ?stor: array<AbsDom>, ?size: int"
        << cd_var(m) << "]\n"
        << "      MState{!id, !pc}(?size, ?sa, ?mem, ?stor, true" << cd_arg(m) << ");\n";
    return out.str();
}

std::string make_assertion_queries(Mode m)
{
    std::ostringstream out;
    out << "query assertionInvalid\n"
        << "  for (!id: int) in ids(),\n"
        << "      (!pc: int) in pcsForIdAndOpcode(!id, INVALID)\n"
        << "    [?sa: array<AbsDom>, ?mem: array<AbsDom>, ?stor: array<AbsDom>, ?size: int, "
           "?cl: bool"
        << cd_var(m) << "]\n"
        << "      MState{!id, !pc}(?size, ?sa, ?mem, ?stor, ?cl" << cd_arg(m) << ");\n";
    return out.str();
}

std::string make_vmtest_harness()
{
    return R"(sel preStorageForId: int -> [int*int];
sel postStorageForId: int -> [int*int];
sel emptyListIfNoPostConditionForId: int -> [bool];
sel dummyListIfNoPostConditionForId: int -> [bool];

rule initOp :=
  for (!id:int) in ids()
  clause
    true
    => MState{!id, 0}(0, [@V(0)], [@V(0)],
                      for (!offset: int, !value:int) in preStorageForId (!id): x: array<AbsDom> -> store x !offset @V(!value), [@V(0)],
                      false);

test correctValues expect SAT
    for (!id: int) in ids(),
        (!b: bool) in emptyListIfNoPostConditionForId(!id)
    [?stor: array<AbsDom>, ?i: int]
    for (!offset: int, !value:int) in postStorageForId(!id): && abseq(select ?stor !offset,@V(!value)),
    (for (!offset: int, !value:int) in postStorageForId(!id): || ?i = !offset) ? (true) : (abseq(select ?stor ?i,@V(0))),
    Halt{!id}(?stor, false);

test uniqueValues expect UNSAT
    for (!id: int) in ids(),
        (!b: bool) in emptyListIfNoPostConditionForId(!id)
    [?stor: array<AbsDom>]
    for (!offset: int, !value:int) in postStorageForId(!id): || absneq(select ?stor !offset,@V(!value)),
    Halt{!id}(?stor, false);

test irregularHalt expect UNSAT
    for (!id: int) in ids(),
        (!b: bool) in dummyListIfNoPostConditionForId(!id)
    [?stor: array<AbsDom>]
    Halt{!id}(?stor, false);
)";
}

std::string make_functional_queries(const FunctionalProperty& p, Mode m)
{
    if (m != Mode::calldata)
        throw ExtensionRequired();
    std::ostringstream params, args, vars, nonneg;
    std::string cd = "store [@T] 0 @V(" + std::to_string(p.selector) + ")";
    for (std::size_t i = 0; i < p.arity; ++i)
    {
        const std::string x = "x" + std::to_string(i);
        params << (i ? ", " : "") << x << ": int";
        args << (i ? ", " : "") << "?" << x;
        cd = "store (" + cd + ") " + std::to_string(i + 1) + " (@V(" + x + "))";
        vars << "?" << x << ": int, ";
        nonneg << "         ?" << x << " >= 0,\n         ?" << x << " < MAX,\n";
    }
    const std::string call = "call" + p.name + "(" + args.str() + ")";
    std::ostringstream out;
    out << "op call" << p.name << "(" << params.str() << "): CallData :=\n  @D("
        << 4 + 32 * p.arity << ", " << cd << ");\n\n";

    out << "test " << p.name << "FailureNoHalt expect UNSAT\n"
        << "    for (!id: int) in ids()\n"
        << "      [" << vars.str() << "?stor: array<AbsDom>, ?rdsize: AbsDom]\n"
        << nonneg.str() << "         " << p.failure_condition << ",\n"
        << "         Halt{!id}(?stor, ?rdsize, false, " << call << ");\n\n";

    out << "test " << p.name << "Correct expect SAT\n"
        << "    for (!id: int) in ids()\n"
        << "      [?res: AbsDom, " << vars.str() << "?rdsize: AbsDom, ?stor: array<AbsDom>]\n"
        << nonneg.str() << "         ~(" << p.failure_condition << "),\n"
        << "         ReturnData{!id}(0, ?res, false, " << call << "),\n"
        << "         Halt{!id}(?stor, ?rdsize, false, " << call << "),\n"
        << "         abseq(?rdsize, @V(32)),\n"
        << "         abseq(?res, @V(" << p.result << "));\n\n";

    out << "test " << p.name << "Halt expect UNSAT\n"
        << "    for (!id: int) in ids()\n"
        << "      [" << vars.str() << "?rdsize: AbsDom, ?stor: array<AbsDom>]\n"
        << nonneg.str() << "         ~(" << p.failure_condition << "),\n"
        << "         Halt{!id}(?stor, ?rdsize, false, " << call << "),\n"
        << "         ?rdsize != @V(32);\n\n";

    out << "test " << p.name << "Unique expect UNSAT\n"
        << "    for (!id: int) in ids()\n"
        << "      [?res: AbsDom, " << vars.str() << "?stor: array<AbsDom>]\n"
        << nonneg.str() << "         ~(" << p.failure_condition << "),\n"
        << "         ReturnData{!id}(0, ?res, false, " << call << "),\n"
        << "         ?res != @V(" << p.result << ");\n";
    return out.str();
}

namespace {

std::vector<ScalarTuple> storage_rows(const std::map<word, word>& s)
{
    std::vector<ScalarTuple> rows;
    for (const auto& [k, v] : s)
        rows.push_back({Scalar::of_int(bigint(k)), Scalar::of_int(bigint(v))});
    return rows;
}

}  // namespace

void add_prestorage_selector(spec::TableSelectorProvider& p, int id,
                             const std::map<word, word>& pre_storage)
{
    p.add_table("preStorageForId", sig("i", "ii"),
                {{{Scalar::of_int(id)}, storage_rows(pre_storage)}});
}

void add_vmtest_selectors(spec::TableSelectorProvider& p, int id,
                          const std::map<word, word>& pre_storage,
                          const std::optional<std::map<word, word>>& post_storage)
{
    const ScalarTuple sid{Scalar::of_int(id)};
    add_prestorage_selector(p, id, pre_storage);
    p.add_table("postStorageForId", sig("i", "ii"),
                {{sid, post_storage ? storage_rows(*post_storage) : std::vector<ScalarTuple>{}}});
    const std::vector<ScalarTuple> one{{Scalar::of_bool(true)}};
    p.add_table("emptyListIfNoPostConditionForId", sig("i", "b"),
                {{sid, post_storage ? one : std::vector<ScalarTuple>{}}});
    p.add_table("dummyListIfNoPostConditionForId", sig("i", "b"),
                {{sid, post_storage ? std::vector<ScalarTuple>{} : one}});
}

Prepared prepare_contract(const evm::Bytecode& b, int id)
{
    Prepared out;
    out.cfg = pre::reconstruct_cfg(b);
    out.facts = pre::best_facts(out.cfg, b);
    out.provider = pre::export_selector_facts(b, out.facts, out.cfg, id);
    return out;
}

void check_supported(const evm::Bytecode& b)
{
    for (const auto& in : b.instructions())
        if (in.opcode == evm::op::DELEGATECALL || in.opcode == evm::op::CALLCODE)
            throw UnsupportedInstruction(in.opcode, in.pc);
}

std::shared_ptr<const spec::TypedSpec> typed_spec(Mode m, const std::string& extra_text)
{
    static std::mutex mu;
    static std::map<std::pair<Mode, std::string>, std::shared_ptr<const spec::TypedSpec>> cache;
    std::lock_guard lock(mu);
    auto key = std::make_pair(m, extra_text);
    if (auto it = cache.find(key); it != cache.end())
        return it->second;
    auto ast = spec::parse_spec(bundled_spec(m));
    ast.merge(spec::parse_spec(extra_text));
    auto typed = std::make_shared<const spec::TypedSpec>(spec::typecheck(ast));
    if (cache.size() > 64)
        cache.clear();
    cache.emplace(std::move(key), typed);
    return typed;
}

chc::ClauseSet compile_clauses(std::shared_ptr<const spec::TypedSpec> spec,
                               std::shared_ptr<const spec::SelectorProvider> facts,
                               const chc::InstantiateOptions& opts, const StageHook& hook)
{
    auto bound = spec::bind_selectors(std::move(spec), std::move(facts));
    auto cs = chc::instantiate(bound, opts);
    if (hook)
        hook("instantiated", cs);
    cs = chc::fold_constants(cs);
    if (hook)
        hook("folded-constants", cs);
    cs = chc::fold_constants(chc::encode_values(cs));
    if (hook)
        hook("encoded", cs);
    return cs;
}

chc::ClauseSet generate_clauses(const evm::Bytecode& b,
                                std::shared_ptr<const spec::SelectorProvider> facts, Mode m,
                                const std::string& extra_text,
                                const chc::InstantiateOptions& opts, const StageHook& hook)
{
    check_supported(b);
    return compile_clauses(typed_spec(m, extra_text), std::move(facts), opts, hook);
}

}  // namespace evmhorn::absem
