#include "evmhorn/app/compile.hpp"

#include "evmhorn/app/pipeline.hpp"
#include "evmhorn/backend/smtlib.hpp"
#include "evmhorn/spec/parser.hpp"

namespace evmhorn::app {

using spec::Scalar;
using spec::ScalarTuple;

namespace {

Scalar scalar(const nlohmann::json& v, char kind)
{
    if (kind == 'b')
        return Scalar::of_bool(v.get<bool>());
    if (v.is_number_integer())
        return Scalar::of_int(v.get<long long>());
    return Scalar::of_int(bigint(v.get<std::string>()));
}

ScalarTuple tuple(const nlohmann::json& row, const std::string& kinds)
{
    if (!row.is_array() || row.size() != kinds.size())
        throw std::invalid_argument("selector row " + row.dump() + " does not match '" + kinds +
                                    "'");
    ScalarTuple out;
    for (std::size_t i = 0; i < kinds.size(); ++i)
        out.push_back(scalar(row[i], kinds[i]));
    return out;
}

std::vector<ScalarTuple> rows(const nlohmann::json& j, const std::string& kinds)
{
    std::vector<ScalarTuple> out;
    for (const auto& r : j)
        out.push_back(tuple(r, kinds));
    return out;
}

std::string goal_file_name(const chc::QueryGoal& g)
{
    chc::PredicateId id{g.name, g.params};
    return id.mangle() + ".smt2";
}

}  // namespace

void load_selector_facts(spec::TableSelectorProvider& p, const nlohmann::json& j)
{
    for (const auto& [name, def] : j.items())
    {
        const std::string in = def.value("in", "");
        const std::string out = def.value("out", "");
        const auto sig = spec::sig(in, out);
        if (def.contains("table"))
        {
            std::map<ScalarTuple, std::vector<ScalarTuple>> table;
            for (const auto& e : def.at("table"))
                table[tuple(e.at("args"), in)] = rows(e.at("rows"), out);
            p.add_table(name, sig, std::move(table));
        }
        else
            p.add_rows(name, sig, rows(def.value("rows", nlohmann::json::array()), out));
    }
}

CompileResult compile(const CompileRequest& req)
{
    std::shared_ptr<spec::TableSelectorProvider> provider;
    std::optional<evm::Bytecode> b;
    if (req.code)
    {
        b.emplace(*req.code);
        absem::check_supported(*b);
        provider = absem::prepare_contract(*b).provider;
    }
    else
        provider = std::make_shared<spec::TableSelectorProvider>();
    if (req.facts)
        load_selector_facts(*provider, *req.facts);

    std::string extra;
    const absem::Mode mode = req.bundled.value_or(absem::Mode::base);
    if (req.fresh_init)
        extra += absem::make_init(absem::Init::fresh(), mode);
    for (const auto& p : req.properties)
        extra += parse_property(p) == Property::reentrancy ? absem::make_reentrancy_queries(mode)
                                                           : absem::make_assertion_queries(mode);
    for (const auto& t : req.spec_texts)
        extra += "\n" + t;

    std::shared_ptr<const spec::TypedSpec> typed;
    if (req.bundled)
        typed = absem::typed_spec(*req.bundled, extra);
    else
        typed = std::make_shared<const spec::TypedSpec>(spec::typecheck(spec::parse_spec(extra)));

    int index = 0;
    absem::StageHook hook;
    if (!req.dump_ir_dir.empty())
        hook = [&](std::string_view name, const chc::ClauseSet& cs) {
            dump_stage(req.dump_ir_dir, ++index, name, cs);
        };
    CompileResult r;
    r.clauses = absem::compile_clauses(typed, provider, {}, hook);
    for (const auto& g : r.clauses.goals)
        r.scripts.push_back({goal_file_name(g), backend::emit_smtlib(r.clauses, g).text});
    return r;
}

}  // namespace evmhorn::app
