#pragma once

#include "evmhorn/chc/passes.hpp"
#include "evmhorn/evm/bytecode.hpp"
#include "evmhorn/pre/cfg.hpp"
#include "evmhorn/spec/selectors.hpp"

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace evmhorn::absem {

enum class Mode { base, calldata };

std::string_view to_string(Mode m) noexcept;

/// The contract uses DELEGATECALL or CALLCODE, which the analysis does not model.
struct UnsupportedInstruction : std::runtime_error {
    std::uint8_t opcode;
    std::size_t pc;
    UnsupportedInstruction(std::uint8_t op, std::size_t pc_);
};

struct ExtensionRequired : std::runtime_error {
    ExtensionRequired();
};

/// Text of evm-base.hrt or evm-calldata.hrt.
std::string_view bundled_spec(Mode m);

struct Init {
    enum class Kind { fresh, prestorage, custom };

    Kind kind = Kind::fresh;
    std::string custom_text;  ///< rules axiomatizing the initial facts, for Kind::custom

    static Init fresh() { return {}; }
    static Init prestorage() { return Init{Kind::prestorage, {}}; }
    static Init custom(std::string text) { return Init{Kind::custom, std::move(text)}; }
};

/// Initialization rule text. Prestorage seeds storage from the `preStorageForId` selector.
std::string make_init(const Init& init, Mode m);

/// One query per call-like pc asking for MState at call level true. Goal params are
/// (opcode, pops, id, pc).
std::string make_reentrancy_queries(Mode m);

/// One query per INVALID pc with all arguments free. Goal params are (id, pc).
std::string make_assertion_queries(Mode m);

/// correctValues, uniqueValues and irregularHalt tests plus the prestorage init.
/// Needs the selectors added by add_vmtest_selectors.
std::string make_vmtest_harness();

/// Call of a function taking `arity` word arguments, checked against an expected result.
/// Expressions may use ?x0 .. ?x{arity-1} and the spec constants.
struct FunctionalProperty {
    std::string name;              ///< used for the calldata op and the test names
    std::uint32_t selector = 0;    ///< first four calldata bytes
    std::size_t arity = 0;
    std::string failure_condition; ///< inputs under which the call must not halt regularly
    std::string result;            ///< expected single-word return value otherwise
};

/// The four functional-correctness tests: no halt on the failure condition (UNSAT),
/// correct value returnable (SAT), regular halt returns one word (UNSAT otherwise) and
/// no other value returned (UNSAT).
std::string make_functional_queries(const FunctionalProperty& p, Mode m);

/// Adds `preStorageForId` rows for `id`.
void add_prestorage_selector(spec::TableSelectorProvider& p, int id,
                             const std::map<word, word>& pre_storage);

/// Adds the prestorage and post-condition selectors used by the VM-test harness.
/// An absent post-condition means the test expects an exceptional halt.
void add_vmtest_selectors(spec::TableSelectorProvider& p, int id,
                          const std::map<word, word>& pre_storage,
                          const std::optional<std::map<word, word>>& post_storage);

/// CFG, constants and selector tables of one contract.
struct Prepared {
    pre::Cfg cfg;
    pre::ConstFacts facts;
    std::shared_ptr<spec::TableSelectorProvider> provider;
};

Prepared prepare_contract(const evm::Bytecode& b, int id = 0);

/// Throws UnsupportedInstruction on DELEGATECALL/CALLCODE.
void check_supported(const evm::Bytecode& b);

/// Receives the clause set after each pipeline stage ("instantiated", "folded-constants",
/// "encoded").
using StageHook = std::function<void(std::string_view stage, const chc::ClauseSet&)>;

/// Instantiates the bundled spec plus `extra_text` (init rules, queries) against the
/// selectors and returns the value-encoded clause set.
chc::ClauseSet generate_clauses(const evm::Bytecode& b,
                                std::shared_ptr<const spec::SelectorProvider> facts, Mode m,
                                const std::string& extra_text,
                                const chc::InstantiateOptions& opts = {},
                                const StageHook& hook = {});

/// The same pipeline for an arbitrary typed spec.
chc::ClauseSet compile_clauses(std::shared_ptr<const spec::TypedSpec> spec,
                               std::shared_ptr<const spec::SelectorProvider> facts,
                               const chc::InstantiateOptions& opts = {},
                               const StageHook& hook = {});

/// Parsed and typechecked bundled spec plus `extra_text`; results are cached by text.
std::shared_ptr<const spec::TypedSpec> typed_spec(Mode m, const std::string& extra_text);

}  // namespace evmhorn::absem
