#include "corpus.hpp"
#include "random_program.hpp"

#include "evmhorn/absem/domain.hpp"
#include "evmhorn/absem/facts.hpp"
#include "evmhorn/absem/generate.hpp"
#include "evmhorn/backend/evaluator.hpp"
#include "evmhorn/evm/arith.hpp"
#include "evmhorn/evm/opcodes.hpp"

#include <gtest/gtest.h>

using namespace evmhorn;
using absem::AbsArray;
using absem::AbsValue;
using backend::Verdict;
using spec::Scalar;

namespace {

const AbsValue T = AbsValue::top();

AbsValue V(word w)
{
    return AbsValue::of(w);
}

}  // namespace

TEST(Domain, BinopsWrapAndPropagateTop)
{
    EXPECT_EQ(absem::abs_binop(evm::op::ADD, V(~word(0)), V(2)), V(1));
    EXPECT_EQ(absem::abs_binop(evm::op::SUB, V(0), V(1)), V(~word(0)));
    EXPECT_EQ(absem::abs_binop(evm::op::DIV, V(7), V(0)), V(0));
    EXPECT_EQ(absem::abs_binop(evm::op::MOD, V(7), V(0)), V(0));
    EXPECT_EQ(absem::abs_binop(evm::op::LT, V(1), V(2)), V(1));
    EXPECT_TRUE(absem::abs_binop(evm::op::MUL, T, V(0)).is_top());
}

TEST(Domain, ComparisonsMayHoldUnderTop)
{
    EXPECT_TRUE(absem::abs_comp(evm::op::LT, V(1), V(2)));
    EXPECT_FALSE(absem::abs_comp(evm::op::GT, V(1), V(2)));
    EXPECT_TRUE(absem::abs_comp(evm::op::EQ, T, V(2)));
    EXPECT_TRUE(absem::abs_comp(evm::op::SLT, V(~word(0)), V(0)));
}

// The concrete binop of the domain agrees with the interpreter's arithmetic.
TEST(Domain, BinopsAgreeWithInterpreterArithmetic)
{
    std::mt19937_64 rng(3);
    for (auto op : {evm::op::ADD, evm::op::MUL, evm::op::SUB, evm::op::DIV, evm::op::MOD,
                    evm::op::LT, evm::op::GT, evm::op::SLT, evm::op::SGT, evm::op::EQ})
        for (int i = 0; i < 500; ++i)
        {
            const word x = testkit::interesting_word(rng), y = testkit::interesting_word(rng);
            // eval_pure takes the top of the stack first
            const std::vector<word> args{x, y};
            EXPECT_EQ(absem::abs_binop(op, V(x), V(y)), V(*evm::eval_pure(op, args)));
        }
}

TEST(Domain, ExtractAndConcat)
{
    const word v = 0x1122;
    EXPECT_EQ(absem::extract(V(v), 30, 31), V(0x1122));
    EXPECT_EQ(absem::extract(V(v), 31, 31), V(0x22));
    EXPECT_TRUE(absem::extract(V(v), 5, 4).is_top());
    EXPECT_EQ(absem::concat(V(0x11), V(0x22), 1), V(0x1122));
    EXPECT_TRUE(absem::concat(T, V(1), 1).is_top());
}

TEST(Domain, ArrayOrder)
{
    const AbsArray z = AbsArray::constant(V(0));
    const AbsArray a = z.store(2, V(5));
    EXPECT_TRUE(absem::leq(a, a.store(2, T)));
    EXPECT_FALSE(absem::leq(a.store(2, T), a));
    EXPECT_TRUE(absem::leq(a, AbsArray::constant(T)));
    EXPECT_FALSE(absem::leq(z, a));
    EXPECT_TRUE(absem::leq_prefix(z, a, 2));
}

TEST(Domain, AlphaOfRunningState)
{
    evm::ConcreteState s;
    s.pc = 4;
    s.stack = {1, 2};
    s.storage = {{3, 9}};
    const auto f = absem::alpha_state(s, true).front();
    EXPECT_EQ(f.kind, absem::AbsFact::Kind::MState);
    EXPECT_EQ(f.size, bigint(2));
    EXPECT_EQ(f.stack.select(1), V(2));
    EXPECT_EQ(f.stack.select(7), V(0));
    EXPECT_EQ(f.stor.select(3), V(9));
    EXPECT_EQ(f.cl, true);
}

// Route two for the binary-operation semantics: the bundled spec's binOp evaluated by
// the clause engine must agree with the C++ domain.
TEST(Semantics, SpecBinopMatchesDomain)
{
    const std::string extra = R"(
pred BinOut{int}: AbsDom;
sel binCases: unit -> [int * int * int * int];
rule binCheck := for (!k: int, !c: int, !x: int, !y: int) in binCases()
  clause true => BinOut{!k}(binOp{!c}(@V(!x), @V(!y)));
)";
    std::mt19937_64 rng(5);
    const evm::Bytecode b(evm::assemble("STOP"));
    auto prep = absem::prepare_contract(b);
    std::vector<spec::ScalarTuple> rows;
    std::vector<AbsValue> expected;
    for (auto op : {evm::op::ADD, evm::op::MUL, evm::op::SUB, evm::op::DIV, evm::op::MOD,
                    evm::op::LT, evm::op::GT, evm::op::SLT, evm::op::SGT, evm::op::EQ})
        for (int i = 0; i < 30; ++i)
        {
            const word x = testkit::interesting_word(rng), y = testkit::interesting_word(rng);
            rows.push_back({Scalar::of_int(static_cast<int>(rows.size())), Scalar::of_int(op),
                            Scalar::of_int(bigint(x)), Scalar::of_int(bigint(y))});
            expected.push_back(absem::abs_binop(op, V(x), V(y)));
        }
    prep.provider->add_rows("binCases", spec::sig("", "iiii"), rows);
    const auto cs = absem::generate_clauses(b, prep.provider, absem::Mode::base, extra);
    const auto store = backend::saturate(cs);
    for (std::size_t k = 0; k < expected.size(); ++k)
    {
        const auto& facts = store.facts.at(chc::PredicateId{"BinOut", {Scalar::of_int(static_cast<int>(k))}});
        ASSERT_EQ(facts.size(), 1u);
        const auto& v = facts[0].values;
        ASSERT_EQ(v.size(), 2u);
        const AbsValue got = v[0].kind == backend::Value::Kind::Bool && v[0].b
                                 ? V(to_word(v[1].i))
                                 : T;
        EXPECT_EQ(got, expected[k]) << "case " << k;
    }
}

TEST(Generate, UnsupportedInstructionsAreRejected)
{
    const evm::Bytecode b(evm::assemble("PUSH1 0 DUP1 DUP1 DUP1 DUP1 DUP1 DELEGATECALL STOP"));
    EXPECT_THROW(absem::check_supported(b), absem::UnsupportedInstruction);
    EXPECT_NO_THROW(absem::check_supported(evm::Bytecode(evm::assemble("CALLER SLOAD STOP"))));
}

TEST(Generate, QueriesFollowTheOpcodes)
{
    const auto b = testkit::corpus_asm("cases/bank_unlockable.asm");
    const auto prep = absem::prepare_contract(b);
    const auto mode = absem::Mode::base;
    const auto re = absem::generate_clauses(b, prep.provider, mode,
                                            absem::make_init(absem::Init::fresh(), mode) +
                                                absem::make_reentrancy_queries(mode));
    EXPECT_EQ(re.goals.size(), 1u);  // one CALL
    const auto as = absem::generate_clauses(b, prep.provider, mode,
                                            absem::make_init(absem::Init::fresh(), mode) +
                                                absem::make_assertion_queries(mode));
    EXPECT_TRUE(as.goals.empty());
    EXPECT_TRUE(re.encoded);
}

TEST(Generate, CalldataModeCompiles)
{
    const auto b = testkit::corpus_asm("cases/bank_unlockable.asm");
    const auto prep = absem::prepare_contract(b);
    const auto mode = absem::Mode::calldata;
    const auto cs = absem::generate_clauses(b, prep.provider, mode,
                                            absem::make_init(absem::Init::fresh(), mode) +
                                                absem::make_reentrancy_queries(mode));
    EXPECT_EQ(cs.goals.size(), 1u);
}

TEST(Generate, PrestorageInitSeedsStorage)
{
    const evm::Bytecode b(evm::assemble("PUSH1 1 SLOAD PUSH1 2 SSTORE STOP"));
    auto prep = absem::prepare_contract(b);
    absem::add_prestorage_selector(*prep.provider, 0, {{1, 41}});
    const auto cs = absem::generate_clauses(
        b, prep.provider, absem::Mode::base,
        absem::make_init(absem::Init::prestorage(), absem::Mode::base));
    const auto facts = absem::decode_facts(backend::saturate(cs));
    bool halted = false;
    for (const auto& f : facts)
        if (f.kind == absem::AbsFact::Kind::Halt)
        {
            halted = true;
            EXPECT_EQ(f.stor.select(2), V(41));
            EXPECT_EQ(f.stor.select(1), V(41));
            EXPECT_EQ(f.stor.select(0), V(0));
        }
    EXPECT_TRUE(halted);
}

// Every state of a concrete run of the corpus contracts is covered by the derived facts.
TEST(Generate, CorpusRunsAreCovered)
{
    for (const auto* name : {"cases/bank_unlockable.asm", "cases/checked_div.asm"})
    {
        const auto b = testkit::corpus_asm(name);
        auto prep = absem::prepare_contract(b);
        const std::map<word, word> pre{{0, 17}, {1, 5}};
        absem::add_prestorage_selector(*prep.provider, 0, pre);
        const auto cs = absem::generate_clauses(
            b, prep.provider, absem::Mode::base,
            absem::make_init(absem::Init::prestorage(), absem::Mode::base));
        const auto derived = absem::decode_facts(backend::saturate(cs));
        bytes calldata(36, 0);
        std::vector<evm::ConcreteState> states;
        states.push_back(evm::run_concrete(b, calldata, pre, 1000, {},
                                           [&](const evm::ConcreteState& s) { states.push_back(s); }));
        for (const auto& s : states)
            EXPECT_TRUE(absem::leq(absem::alpha_state(s, false), derived)) << name << " pc " << s.pc;
    }
}
