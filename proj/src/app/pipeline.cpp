#include "evmhorn/app/pipeline.hpp"

#include "evmhorn/backend/evaluator.hpp"
#include "evmhorn/backend/solver.hpp"
#include "evmhorn/chc/unfold.hpp"
#include "evmhorn/evm/keccak.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>

namespace evmhorn::app {

using backend::Verdict;
using Clock = std::chrono::steady_clock;

Folding parse_folding(const std::string& s)
{
    if (s == "none")
        return Folding::none;
    if (s == "linear")
        return Folding::linear;
    if (s == "exhaustive")
        return Folding::exhaustive;
    if (s == "all")
        return Folding::all;
    throw std::invalid_argument("unknown folding mode '" + s + "'");
}

Engine parse_engine(const std::string& s)
{
    if (s == "internal")
        return Engine::internal;
    if (s == "external")
        return Engine::external;
    throw std::invalid_argument("unknown engine '" + s + "'");
}

Property parse_property(const std::string& s)
{
    if (s == "reentrancy")
        return Property::reentrancy;
    if (s == "assertions" || s == "assertion")
        return Property::assertions;
    throw std::invalid_argument("unknown property '" + s + "'");
}

std::string to_string(Folding f)
{
    switch (f)
    {
    case Folding::none: return "none";
    case Folding::linear: return "linear";
    case Folding::exhaustive: return "exhaustive";
    case Folding::all: break;
    }
    return "all";
}

std::string to_string(Property p)
{
    return p == Property::reentrancy ? "reentrancy" : "assertions";
}

chc::ClauseSet apply_folding(const chc::ClauseSet& cs, Folding f)
{
    switch (f)
    {
    case Folding::none: return cs;
    case Folding::linear: return chc::fold_linear(cs);
    case Folding::exhaustive: return chc::fold_exhaustive(cs);
    case Folding::all: break;
    }
    throw std::invalid_argument("apply_folding takes a single folding mode");
}

namespace {

double since(Clock::time_point t)
{
    return std::chrono::duration<double>(Clock::now() - t).count();
}

std::vector<Verdict> solve_internal(const chc::ClauseSet& cs, const RunOptions& opts)
{
    const auto start = Clock::now();
    backend::EvalCaps caps;
    caps.deadline = start + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(opts.timeout_seconds));
    const auto store = backend::saturate(cs, caps);
    std::vector<Verdict> out;
    for (const auto& g : cs.goals)
    {
        auto v = backend::verdict_for(store, g);
        v.wall_seconds = since(start);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Verdict> solve_external(const chc::ClauseSet& cs, const RunOptions& opts)
{
    const std::string version = backend::solver_version(opts.solver);
    std::vector<std::function<Verdict()>> tasks;
    for (const auto& g : cs.goals)
        tasks.push_back([&cs, &g, &opts, version] {
            const auto start = Clock::now();
            Verdict v;
            try
            {
                v = backend::interpret(backend::run_solver(
                    backend::emit_smtlib(cs, g), opts.solver,
                    std::chrono::duration<double>(opts.timeout_seconds)));
            }
            catch (const backend::Timeout&)
            {
                v = Verdict::unknown("timeout");
            }
            catch (const backend::SolverCrash&)
            {
                v = Verdict::unknown("solver-crash");
            }
            v.engine = "external-solver";
            v.solver = opts.solver;
            v.solver_version = version;
            v.wall_seconds = since(start);
            return v;
        });
    return backend::run_pool(tasks, opts.jobs);
}

}  // namespace

std::vector<Verdict> solve_goals(const chc::ClauseSet& cs, Folding f, const RunOptions& opts)
{
    std::vector<Verdict> out;
    try
    {
        const auto start = Clock::now();
        const auto folded = apply_folding(cs, f);
        const double fold_time = since(start);
        out = opts.engine == Engine::internal ? solve_internal(folded, opts)
                                              : solve_external(folded, opts);
        for (auto& v : out)
            v.wall_seconds += fold_time;
    }
    catch (const chc::ClauseBlowup&)
    {
        out.assign(cs.goals.size(), Verdict::unknown("blowup"));
    }
    for (auto& v : out)
        v.folding = to_string(f);
    return out;
}

std::vector<Verdict> solve(const chc::ClauseSet& cs, const RunOptions& opts,
                           std::size_t* folded_size)
{
    if (opts.folding != Folding::all)
    {
        if (folded_size != nullptr)
        {
            try
            {
                *folded_size = apply_folding(cs, opts.folding).clauses.size();
            }
            catch (const chc::ClauseBlowup&)
            {
                *folded_size = 0;
            }
        }
        return solve_goals(cs, opts.folding, opts);
    }
    std::vector<Verdict> best(cs.goals.size(), Verdict::unknown("timeout"));
    for (auto f : {Folding::none, Folding::linear, Folding::exhaustive})
    {
        auto vs = solve_goals(cs, f, opts);
        for (std::size_t i = 0; i < vs.size(); ++i)
        {
            if (vs[i].status == Verdict::Status::Unknown)
                continue;
            if (best[i].status == Verdict::Status::Unknown ||
                vs[i].wall_seconds < best[i].wall_seconds)
                best[i] = vs[i];
        }
    }
    if (folded_size != nullptr)
        *folded_size = cs.clauses.size();
    return best;
}

void dump_stage(const std::string& dir, int index, std::string_view stage,
                const chc::ClauseSet& cs)
{
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) /
                      (std::to_string(index) + "-" + std::string(stage) + ".ir"));
    out << chc::dump(cs);
}

AnalysisReport analyze(const evm::Bytecode& b, Property p, const RunOptions& opts)
{
    AnalysisReport r;
    const auto digest = to_be_bytes(evm::keccak256(b.code()));
    r.code_hash = to_hex(bytes(digest.begin(), digest.end()));
    r.code_size = b.code().size();
    r.property = to_string(p);
    r.folding = to_string(opts.folding);
    r.engine = opts.engine == Engine::internal ? "internal" : "external";

    auto stage = Clock::now();
    auto lap = [&](const std::string& name) {
        r.timings.emplace_back(name, since(stage));
        stage = Clock::now();
    };

    const auto prep = absem::prepare_contract(b);
    r.cfg_status = prep.cfg.resolved() ? "Resolved" : "Unresolvable";
    r.cfg_blocks = prep.cfg.blocks.size();
    r.cfg_edges = prep.cfg.edges.size();
    r.unresolved_pc = prep.cfg.unresolved_pc;
    lap("preanalysis");

    try
    {
        absem::check_supported(b);
    }
    catch (const absem::UnsupportedInstruction& e)
    {
        r.classification = "out-of-scope";
        r.rejection = e.what();
        return r;
    }
    if (!prep.cfg.resolved())
    {
        r.classification = "out-of-scope";
        r.rejection = "unresolvable jump at pc " + std::to_string(*prep.cfg.unresolved_pc);
        return r;
    }

    std::string extra = absem::make_init(absem::Init::fresh(), opts.mode);
    extra += p == Property::reentrancy ? absem::make_reentrancy_queries(opts.mode)
                                       : absem::make_assertion_queries(opts.mode);
    int index = 0;
    absem::StageHook hook;
    if (!opts.dump_ir_dir.empty())
        hook = [&](std::string_view name, const chc::ClauseSet& cs) {
            dump_stage(opts.dump_ir_dir, ++index, name, cs);
        };
    const auto cs = absem::generate_clauses(b, prep.provider, opts.mode, extra, {}, hook);
    r.clauses = cs.clauses.size();
    lap("generate");
    if (hook && opts.folding != Folding::all)
        hook("folded-" + to_string(opts.folding), apply_folding(cs, opts.folding));

    const auto verdicts = solve(cs, opts, &r.folded_clauses);
    lap("solve");

    bool reachable = false, unknown = false;
    for (std::size_t i = 0; i < cs.goals.size(); ++i)
    {
        const auto& g = cs.goals[i];
        QueryResult q;
        q.kind = r.property;
        q.name = g.name;
        q.pc = g.params.empty() ? 0 : static_cast<std::size_t>(g.params.back().i);
        if (const auto* in = b.at(q.pc))
            q.opcode = std::string(in->meta().mnemonic);
        q.verdict = verdicts[i];
        reachable = reachable || q.verdict.status == Verdict::Status::Reachable;
        unknown = unknown || q.verdict.status == Verdict::Status::Unknown;
        r.queries.push_back(std::move(q));
    }
    r.classification = reachable ? "vulnerable" : unknown ? "unknown" : "safe";
    return r;
}

nlohmann::ordered_json to_json(const AnalysisReport& r)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["reportVersion"] = report_version;
    j["contract"] = {{"codeHash", r.code_hash}, {"size", r.code_size}};
    j["property"] = r.property;
    ordered_json cfg = {{"status", r.cfg_status}, {"blocks", r.cfg_blocks}, {"edges", r.cfg_edges}};
    if (r.unresolved_pc)
        cfg["unresolvedPc"] = *r.unresolved_pc;
    j["cfg"] = cfg;
    j["engine"] = r.engine;
    j["folding"] = r.folding;
    j["clauses"] = {{"generated", r.clauses}, {"folded", r.folded_clauses}};
    ordered_json timings = ordered_json::object();
    for (const auto& [k, v] : r.timings)
        timings[k] = v;
    j["timings"] = timings;
    ordered_json qs = ordered_json::array();
    for (const auto& q : r.queries)
    {
        const auto& v = q.verdict;
        ordered_json prov = {{"engine", v.engine}, {"folding", v.folding},
                             {"wallSeconds", v.wall_seconds}};
        if (v.engine == "internal-evaluator")
            prov["iterations"] = v.iterations;
        else
        {
            prov["solver"] = v.solver;
            prov["solverVersion"] = v.solver_version;
        }
        ordered_json e = {{"kind", q.kind},           {"name", q.name},
                          {"pc", q.pc},               {"opcode", q.opcode},
                          {"verdict", backend::to_string(v.status)},
                          {"label", backend::sat_label(v)},
                          {"exact", v.exact}};
        if (!v.reason.empty())
            e["reason"] = v.reason;
        e["provenance"] = prov;
        qs.push_back(std::move(e));
    }
    j["queries"] = qs;
    j["classification"] = r.classification;
    if (!r.rejection.empty())
        j["rejection"] = r.rejection;
    return j;
}

int exit_code(const AnalysisReport& r)
{
    if (r.classification == "out-of-scope")
        return 3;
    if (r.classification == "vulnerable")
        return 1;
    if (r.classification == "unknown")
        return 2;
    return 0;
}

}  // namespace evmhorn::app
