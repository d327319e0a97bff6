// Acceptance suite: one PASS/FAIL line per criterion. Arguments select criteria by number.

#include "corpus.hpp"
#include "random_program.hpp"

#include "evmhorn/absem/domain.hpp"
#include "evmhorn/absem/facts.hpp"
#include "evmhorn/absem/generate.hpp"
#include "evmhorn/app/pipeline.hpp"
#include "evmhorn/app/vmtest.hpp"
#include "evmhorn/backend/evaluator.hpp"
#include "evmhorn/chc/passes.hpp"
#include "evmhorn/chc/unfold.hpp"
#include "evmhorn/evm/opcodes.hpp"
#include "evmhorn/pre/cfg.hpp"
#include "evmhorn/spec/parser.hpp"
#include "evmhorn/spec/typecheck.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace evmhorn;
using namespace evmhorn::testkit;
using absem::AbsArray;
using absem::AbsValue;
using backend::Verdict;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& what)
    {
        if (pass)
            detail << "first failure: " << what << "; ";
        pass = false;
    }
};

double seconds_since(Clock::time_point t)
{
    return std::chrono::duration<double>(Clock::now() - t).count();
}

app::RunOptions internal_options(double timeout)
{
    app::RunOptions o;
    o.engine = app::Engine::internal;
    o.timeout_seconds = timeout;
    return o;
}

// ---------------------------------------------------------------------------
// 1. soundness differential

const char* const sample_init = R"(
sel sampleIds: unit -> [int];
sel preStorageForSample: int -> [int*int];

rule initOp :=
  for (!id: int) in ids(), (!s: int) in sampleIds()
  clause
    true
    => MState{!id, 0}(0, [@V(0)], [@V(0)],
                      for (!offset: int, !value: int) in preStorageForSample(!s): x: array<AbsDom> -> store x !offset @V(!value), [@V(0)],
                      false);
)";

void soundness(Outcome& o)
{
    constexpr std::size_t programs = 1000;
    constexpr std::size_t samples = 5;
    std::mt19937_64 rng(0x50a2d);
    const auto start = Clock::now();
    std::size_t checked = 0, discarded_programs = 0, runs = 0, discarded_runs = 0, states = 0;
    std::size_t longest = 0, perturbed = 0, rejected = 0;
    while (checked < programs)
    {
        const auto prog = random_program(rng);
        longest = std::max(longest, prog.instructions);
        if (prog.instructions > 40)
        {
            o.fail("generator produced " + std::to_string(prog.instructions) + " instructions");
            return;
        }
        const evm::Bytecode b(prog.code);
        auto prep = absem::prepare_contract(b);
        if (!prep.cfg.resolved())
        {
            ++discarded_programs;
            continue;
        }

        std::vector<RandomSample> ss;
        std::vector<spec::ScalarTuple> ids;
        std::map<spec::ScalarTuple, std::vector<spec::ScalarTuple>> stor;
        for (std::size_t i = 0; i < samples; ++i)
        {
            ss.push_back(random_sample(rng));
            const spec::ScalarTuple sid{spec::Scalar::of_int(static_cast<int>(i))};
            ids.push_back(sid);
            auto& rows = stor[sid];
            for (const auto& [k, v] : ss.back().storage)
                rows.push_back({spec::Scalar::of_int(bigint(k)), spec::Scalar::of_int(bigint(v))});
        }
        prep.provider->add_rows("sampleIds", spec::sig("", "i"), ids);
        prep.provider->add_table("preStorageForSample", spec::sig("i", "ii"), stor);
        const auto cs = absem::generate_clauses(b, prep.provider, absem::Mode::base,
                                                absem::make_init(absem::Init::custom(sample_init),
                                                                 absem::Mode::base));
        const auto store = backend::saturate(cs);
        if (!store.saturated)
        {
            o.fail("saturation stopped (" + store.stop_reason + ")\n" + prog.source);
            return;
        }
        const auto derived = absem::decode_facts(store);

        for (const auto& s : ss)
        {
            std::vector<evm::ConcreteState> trace;
            evm::ConcreteState final_state;
            try
            {
                final_state = evm::run_concrete(b, s.calldata, s.storage, 10000, s.env,
                                                [&](const evm::ConcreteState& st) { trace.push_back(st); });
            }
            catch (const evm::StepLimitExceeded&)
            {
                ++discarded_runs;
                continue;
            }
            ++runs;
            trace.push_back(final_state);
            for (const auto& st : trace)
            {
                ++states;
                const auto alpha = absem::alpha_state(st, false);
                if (!absem::leq(alpha, derived))
                {
                    o.fail("state " + absem::to_string(alpha.front()) + " not covered in\n" +
                           prog.source);
                    return;
                }
                // The comparison must be able to fail: a state with a changed stack top
                // is usually not covered.
                if (st.status == evm::Status::running && !st.stack.empty())
                {
                    auto changed = alpha;
                    auto& f = changed.front();
                    f.stack = f.stack.store(st.stack.size() - 1, AbsValue::of(st.stack.back() + 1));
                    ++perturbed;
                    rejected += !absem::leq(changed, derived);
                }
            }
        }
        ++checked;
    }
    const double secs = seconds_since(start);
    if (secs > 300)
        o.fail("took " + std::to_string(secs) + " s");
    if (rejected == 0)
        o.fail("no perturbed state was rejected");
    o.detail << checked << " programs (max " << longest << " instructions), " << runs
             << " runs, " << states << " states checked, 0 violations (" << rejected << " of "
             << perturbed << " perturbed states rejected); discarded "
             << discarded_programs << " programs and " << discarded_runs << " runs; " << secs
             << " s";
}

// ---------------------------------------------------------------------------
// 2. folding equivalence

void folding(Outcome& o)
{
    const auto start = Clock::now();
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(corpus_dir() / "contracts"))
        if (e.path().extension() == ".asm")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.size() < 50)
        o.fail("corpus has " + std::to_string(files.size()) + " contracts");

    std::size_t compared = 0, incomplete = 0, instances = 0;
    const auto opts = internal_options(60);
    for (const auto& f : files)
    {
        const evm::Bytecode b(evm::assemble(read_file(f)));
        const auto prep = absem::prepare_contract(b);
        if (!prep.cfg.resolved())
        {
            o.fail(f.filename().string() + " has an unresolvable CFG");
            continue;
        }
        for (const bool reentrancy : {true, false})
        {
            ++instances;
            std::string extra = absem::make_init(absem::Init::fresh(), absem::Mode::base);
            extra += reentrancy ? absem::make_reentrancy_queries(absem::Mode::base)
                                : absem::make_assertion_queries(absem::Mode::base);
            const auto cs = absem::generate_clauses(b, prep.provider, absem::Mode::base, extra);
            const auto lin = chc::fold_linear(cs);
            if (lin.clauses.size() > cs.clauses.size())
                o.fail(f.filename().string() + ": linear folding grew the clause set");

            std::vector<std::vector<Verdict>> per_mode;
            for (auto mode : {app::Folding::none, app::Folding::linear, app::Folding::exhaustive})
                per_mode.push_back(app::solve_goals(cs, mode, opts));
            for (std::size_t g = 0; g < cs.goals.size(); ++g)
            {
                std::set<Verdict::Status> seen;
                bool complete = true;
                for (const auto& vs : per_mode)
                {
                    complete = complete && vs[g].status != Verdict::Status::Unknown;
                    seen.insert(vs[g].status);
                }
                if (!complete)
                {
                    ++incomplete;
                    continue;
                }
                ++compared;
                if (seen.size() != 1)
                    o.fail(f.filename().string() + " goal " + cs.goals[g].name + " disagrees");
            }
        }
    }
    if (compared == 0)
        o.fail("no query completed under all modes");
    o.detail << files.size() << " contracts, " << instances << " instances, " << compared
             << " queries agree, " << incomplete << " incomplete; " << seconds_since(start)
             << " s";
}

// ---------------------------------------------------------------------------
// 3. reentrancy case pair

/// Classification through the pipeline, cross-checked goal by goal with the naive evaluator.
std::string classify(const evm::Bytecode& b, app::Property p, Outcome& o, const std::string& name)
{
    const auto report = app::analyze(b, p, internal_options(60));
    const auto prep = absem::prepare_contract(b);
    std::string extra = absem::make_init(absem::Init::fresh(), absem::Mode::base);
    extra += p == app::Property::reentrancy ? absem::make_reentrancy_queries(absem::Mode::base)
                                            : absem::make_assertion_queries(absem::Mode::base);
    const auto cs = absem::generate_clauses(b, prep.provider, absem::Mode::base, extra);
    bool reachable = false;
    for (const auto& g : cs.goals)
    {
        const auto v = backend::evaluate_naive(cs, g);
        if (v.status == Verdict::Status::Unknown)
            o.fail(name + ": naive evaluator gave Unknown");
        reachable = reachable || v.status == Verdict::Status::Reachable;
    }
    const std::string naive = reachable ? "vulnerable" : "safe";
    if (naive != report.classification)
        o.fail(name + ": pipeline says " + report.classification + ", naive evaluator " + naive);
    return report.classification;
}

void bank_pair(Outcome& o)
{
    const auto open = classify(corpus_asm("cases/bank_unlockable.asm"), app::Property::reentrancy,
                               o, "unlockable bank");
    const auto locked = classify(corpus_asm("cases/bank_locked.asm"), app::Property::reentrancy,
                                 o, "locked bank");
    if (open != "vulnerable")
        o.fail("unlockable bank classified " + open);
    if (locked != "safe")
        o.fail("locked bank classified " + locked);
    o.detail << "unlockable bank " << open << ", locked bank " << locked;
}

// ---------------------------------------------------------------------------
// 4. checked division

std::vector<Verdict> assertion_verdicts(const evm::Bytecode& b, const std::map<word, word>& pre,
                                        std::size_t& queries)
{
    auto prep = absem::prepare_contract(b);
    absem::add_prestorage_selector(*prep.provider, 0, pre);
    const auto cs = absem::generate_clauses(
        b, prep.provider, absem::Mode::base,
        absem::make_init(absem::Init::prestorage(), absem::Mode::base) +
            absem::make_assertion_queries(absem::Mode::base));
    queries = cs.goals.size();
    return app::solve(cs, internal_options(60));
}

void checked_div(Outcome& o)
{
    const auto guarded = corpus_asm("cases/checked_div.asm");
    const auto unguarded = corpus_asm("cases/checked_div_unguarded.asm");
    const word big = ~word(0);
    const std::vector<std::pair<word, word>> inputs{
        {7, 0}, {0, 0}, {7, 2}, {0, 5}, {100, 7}, {5, 100}, {big, 1}, {big, big}, {big, 3}, {1, big}};
    std::size_t checked = 0;
    for (const auto& [a, b] : inputs)
    {
        std::map<word, word> pre;
        if (a != 0)
            pre[0] = a;
        if (b != 0)
            pre[1] = b;
        std::size_t queries = 0;
        for (const auto& v : assertion_verdicts(guarded, pre, queries))
        {
            ++checked;
            if (v.status != Verdict::Status::Unreachable)
                o.fail("guarded INVALID " + backend::to_string(v.status) + " for a=" +
                       to_hex(a) + " b=" + to_hex(b));
        }
        if (queries == 0)
            o.fail("guarded contract has no INVALID query");
    }
    std::size_t queries = 0;
    const auto vs = assertion_verdicts(unguarded, {{0, 7}}, queries);
    const bool reachable = std::any_of(vs.begin(), vs.end(), [](const Verdict& v) {
        return v.status == Verdict::Status::Reachable;
    });
    if (!reachable)
        o.fail("unguarded INVALID not reachable with b = 0");
    const auto fresh = app::analyze(unguarded, app::Property::assertions, internal_options(60));
    if (fresh.classification != "vulnerable")
        o.fail("unguarded variant classified " + fresh.classification);
    o.detail << checked << " guarded INVALID queries over " << inputs.size()
             << " inputs Unreachable; unguarded variant Reachable (" << fresh.classification
             << ")";
}

// ---------------------------------------------------------------------------
// 5. CFG regression

void cfg_regression(Outcome& o)
{
    const auto b = corpus_asm("cases/cfg_blockhash_jump.asm");
    const auto cfg = pre::reconstruct_cfg(b);
    if (cfg.resolved())
        o.fail("CFG reported resolved");
    const std::vector<std::size_t> expected_nodes{0, 7, 12, 20, 22};
    if (cfg.nodes() != expected_nodes)
        o.fail("unexpected blocks " + pre::cfg_to_json(cfg));
    auto has = [&](std::size_t from, std::size_t to) {
        return std::any_of(cfg.edges.begin(), cfg.edges.end(),
                           [&](const pre::CfgEdge& e) { return e.from == from && e.to == to; });
    };
    for (auto [f, t] : {std::pair<std::size_t, std::size_t>{0, 7}, {7, 12}, {12, 7}})
        if (!has(f, t))
            o.fail("missing edge " + std::to_string(f) + "->" + std::to_string(t));
    for (auto p : {app::Property::reentrancy, app::Property::assertions})
    {
        const auto r = app::analyze(b, p, internal_options(10));
        if (r.classification != "out-of-scope" || app::exit_code(r) != 3)
            o.fail("classified " + r.classification);
    }
    o.detail << "status " << (cfg.resolved() ? "Resolved" : "Unresolvable") << " at pc "
             << cfg.unresolved_pc.value_or(0) << ", " << cfg.nodes().size()
             << " blocks, edges 0->7->12->7 present, out-of-scope";
}

// ---------------------------------------------------------------------------
// 6. memory model against byte arrays

word byte_read(const bytes& mem, std::size_t p)
{
    std::array<std::uint8_t, 32> w{};
    for (std::size_t i = 0; i < 32; ++i)
        if (p + i < mem.size())
            w[i] = mem[p + i];
    return from_be_bytes(w.data(), 32);
}

bytes byte_write(bytes mem, std::size_t p, const word& v)
{
    if (mem.size() < p + 32)
        mem.resize(p + 32, 0);
    const auto be = to_be_bytes(v);
    std::copy(be.begin(), be.end(), mem.begin() + static_cast<std::ptrdiff_t>(p));
    return mem;
}

bytes random_memory(std::mt19937_64& rng)
{
    bytes m(rng() % 200);
    for (auto& c : m)
        c = rng() % 3 == 0 ? 0 : static_cast<std::uint8_t>(rng());
    return m;
}

/// Both arrays agree on words 0..n and on the default.
bool same_words(const AbsArray& a, const AbsArray& b, std::size_t n)
{
    for (std::size_t i = 0; i <= n; ++i)
        if (!(a.select(i) == b.select(i)))
            return false;
    return a.select(1000000) == b.select(1000000);
}

void memory_model(Outcome& o)
{
    std::mt19937_64 rng(0x6e6d);
    std::size_t concrete = 0, top_cases = 0;
    for (int iter = 0; iter < 10000; ++iter)
    {
        const bytes mem = random_memory(rng);
        const std::size_t p = rng() % 260;
        const AbsArray m = absem::to_word_mem(mem);
        const std::size_t words = (std::max(mem.size(), p + 32) + 31) / 32 + 1;
        const std::string where = "offset " + std::to_string(p) + " size " + std::to_string(mem.size());
        switch (rng() % 5)
        {
        case 0:
        case 1: {
            ++concrete;
            if (!(absem::access_word(m, p) == AbsValue::of(byte_read(mem, p))))
                o.fail("access_word at " + where);
            break;
        }
        case 2: {
            ++concrete;
            const word v = interesting_word(rng);
            if (!same_words(absem::store_word(m, bigint(p), AbsValue::of(v)),
                            absem::to_word_mem(byte_write(mem, p, v)), words))
                o.fail("store_word at " + where);
            break;
        }
        case 3: {
            // A Top word overlapping the accessed bytes gives Top, others do not matter.
            ++top_cases;
            const std::size_t first = p / 32, last = (p + 31) / 32;
            const std::size_t t = rng() % (words + 1);
            const AbsArray mt = m.store(t, AbsValue::top());
            const AbsValue r = absem::access_word(mt, p);
            const bool overlaps = t >= first && t <= last;
            if (overlaps ? !r.is_top() : !(r == AbsValue::of(byte_read(mem, p))))
                o.fail("access_word with Top word " + std::to_string(t) + " at " + where);
            break;
        }
        default: {
            ++top_cases;
            if (rng() % 2 == 0)
            {
                const AbsArray r = absem::store_word(m, std::nullopt, AbsValue::of(1));
                for (std::size_t i = 0; i <= words; ++i)
                    if (!r.select(i).is_top())
                        o.fail("store_word at unknown offset left a known word");
                if (!r.select(1000000).is_top())
                    o.fail("store_word at unknown offset left a known default");
                break;
            }
            const AbsArray r = absem::store_word(m, bigint(p), AbsValue::top());
            const std::size_t first = p / 32, last = (p + 31) / 32;
            for (std::size_t i = 0; i <= words; ++i)
            {
                const bool overlaps = i >= first && i <= last;
                if (overlaps ? !r.select(i).is_top() : !(r.select(i) == m.select(i)))
                    o.fail("store_word of Top at " + where + " word " + std::to_string(i));
            }
            break;
        }
        }
    }
    o.detail << concrete << " concrete and " << top_cases << " Top cases, 0 mismatches";
}

// ---------------------------------------------------------------------------
// 7. monotonicity

/// A random value and one above it.
std::pair<AbsValue, AbsValue> ordered_pair(std::mt19937_64& rng)
{
    if (rng() % 6 == 0)
        return {AbsValue::top(), AbsValue::top()};
    const AbsValue a = AbsValue::of(interesting_word(rng));
    return {a, rng() % 2 == 0 ? a : AbsValue::top()};
}

void monotonicity(Outcome& o)
{
    std::mt19937_64 rng(0x3070);
    constexpr int pairs = 10000;
    std::size_t checks = 0;
    const std::vector<std::pair<std::uint8_t, const char*>> binops{
        {evm::op::ADD, "add"}, {evm::op::SUB, "sub"}, {evm::op::MUL, "mul"},
        {evm::op::DIV, "div"}, {evm::op::MOD, "mod"}};
    for (const auto& [code, name] : binops)
        for (int i = 0; i < pairs; ++i)
        {
            const auto [x, x2] = ordered_pair(rng);
            const auto [y, y2] = ordered_pair(rng);
            ++checks;
            if (!absem::leq(absem::abs_binop(code, x, y), absem::abs_binop(code, x2, y2)))
                o.fail(std::string("abs_binop ") + name + " on " + absem::to_string(x) + ", " +
                       absem::to_string(y));
        }
    const std::vector<std::pair<std::uint8_t, const char*>> comps{
        {evm::op::LT, "lt"}, {evm::op::GT, "gt"}, {evm::op::EQ, "eq"}};
    for (const auto& [code, name] : comps)
        for (int i = 0; i < pairs; ++i)
        {
            auto [x, x2] = ordered_pair(rng);
            auto [y, y2] = ordered_pair(rng);
            if (rng() % 4 == 0)
                y = x, y2 = rng() % 2 == 0 ? x : AbsValue::top();
            ++checks;
            // false below true
            if (absem::abs_comp(code, x, y) && !absem::abs_comp(code, x2, y2))
                o.fail(std::string("abs_comp ") + name + " on " + absem::to_string(x) + ", " +
                       absem::to_string(y));
        }
    for (int i = 0; i < pairs; ++i)
    {
        const bytes mem = random_memory(rng);
        const AbsArray m = absem::to_word_mem(mem);
        AbsArray m2 = m;
        for (int k = static_cast<int>(rng() % 3); k > 0; --k)
            m2 = m2.store(rng() % 8, AbsValue::top());
        if (rng() % 20 == 0)
            m2 = AbsArray::constant(AbsValue::top());
        const std::size_t p = rng() % 260;
        ++checks;
        if (!absem::leq(m, m2))
            o.fail("generated memory pair is not ordered");
        else if (!absem::leq(absem::access_word(m, p), absem::access_word(m2, p)))
            o.fail("access_word at " + std::to_string(p));
    }
    o.detail << checks << " ordered pairs over add, sub, mul, div, mod, lt, gt, eq, "
                          "access_word; 0 violations";
}

// ---------------------------------------------------------------------------
// 8. listings and the unfolding example

void listings(Outcome& o)
{
    std::size_t n = 0;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(corpus_dir() / "listings"))
        if (e.path().extension() == ".hrt")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files)
    {
        try
        {
            auto ast = spec::parse_spec(read_file(f));
            const auto prelude = corpus_dir() / "listings" / "preludes" / f.filename();
            if (fs::exists(prelude))
            {
                auto full = spec::parse_spec(read_file(prelude));
                full.merge(ast);
                ast = std::move(full);
            }
            (void)spec::typecheck(ast);
            ++n;
        }
        catch (const std::exception& e)
        {
            o.fail(f.filename().string() + ": " + e.what());
        }
    }
    if (n < 14)
        o.fail("only " + std::to_string(n) + " listings checked");

    const char* chain = R"(
pred P1: int;
pred P2: int;
pred P3: int;
rule first := clause [?x: int, ?y: int] P1(?x), ?y = ?x + 1 => P2(?y);
rule second := clause [?y: int, ?z: int] P2(?y), ?z = ?y * 3 => P3(?z);
)";
    const auto typed = std::make_shared<spec::TypedSpec>(spec::typecheck(spec::parse_spec(chain)));
    const auto cs = chc::instantiate(
        spec::bind_selectors(typed, std::make_shared<spec::TableSelectorProvider>()));
    const auto u = chc::unfold_predicate(cs, chc::PredicateId{"P2", {}});
    std::string folded;
    if (u.clauses.size() != 1)
        o.fail("unfolding gave " + std::to_string(u.clauses.size()) + " clauses");
    else
    {
        const auto& c = u.clauses.front();
        std::vector<std::string> parts;
        for (const auto& a : c.premises)
        {
            std::string s = a.pred.base + "(";
            for (std::size_t i = 0; i < a.args.size(); ++i)
                s += (i ? ", " : "") + spec::print_expr(a.args[i]);
            parts.push_back(s + ")");
        }
        for (const auto& e : c.constraints)
            parts.push_back(spec::print_expr(e));
        for (std::size_t i = 0; i < parts.size(); ++i)
            folded += (i ? " /\\ " : "") + parts[i];
        folded += " => ";
        if (c.head)
        {
            folded += c.head->pred.base + "(";
            for (std::size_t i = 0; i < c.head->args.size(); ++i)
                folded += (i ? ", " : "") + spec::print_expr(c.head->args[i]);
            folded += ")";
        }
        const std::string expected = "P1(?x) /\\ (?y = (?x + 1)) /\\ (?z = (?y * 3)) => P3(?z)";
        if (folded != expected)
            o.fail("unfolded clause is " + folded);
    }
    o.detail << n << " listings parse and typecheck; unfolded clause " << folded;
}

// ---------------------------------------------------------------------------
// 9. VM-test harness

void vmtests(Outcome& o)
{
    const auto cases = app::load_vmtests({(corpus_dir() / "vmtests").string()});
    if (cases.size() < 20)
        o.fail("only " + std::to_string(cases.size()) + " cases");
    // The expectations themselves are checked against the concrete interpreter.
    for (const auto& c : cases)
    {
        const evm::Bytecode b(c.code);
        const auto st = evm::run_concrete(b, {}, c.pre_storage, 100000);
        if (c.post_storage.has_value() != (st.status == evm::Status::stopped))
            o.fail(c.name + ": expected outcome disagrees with the interpreter");
        else if (c.post_storage && *c.post_storage != st.storage)
            o.fail(c.name + ": expected post-storage disagrees with the interpreter");
    }
    const auto s = app::run_vmtests(cases, internal_options(1));
    for (const auto& r : s.results)
        if (!r.precise)
            o.fail(r.name + " not solved precisely" + (r.error.empty() ? "" : ": " + r.error));
    o.detail << cases.size() << " cases, " << s.terminated << " terminated, " << s.correct
             << " correct, " << s.precise << " precise";
}

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"soundness differential", soundness},
        {"folding equivalence", folding},
        {"reentrancy case pair", bank_pair},
        {"checked division assertion", checked_div},
        {"cfg regression", cfg_regression},
        {"memory model oracle", memory_model},
        {"monotonicity", monotonicity},
        {"listing corpus and unfolding", listings},
        {"vm-test self corpus", vmtests},
    };
    std::set<std::size_t> selected;
    for (int i = 1; i < argc; ++i)
        selected.insert(std::stoul(argv[i]));
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        if (!selected.empty() && !selected.count(i + 1))
            continue;
        Outcome o;
        try
        {
            criteria[i].second(o);
        }
        catch (const std::exception& e)
        {
            o.fail(std::string("exception: ") + e.what());
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " ("
                  << criteria[i].first << "): " << o.detail.str() << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
