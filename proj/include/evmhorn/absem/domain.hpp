#pragma once

#include "evmhorn/evm/interpreter.hpp"

#include <map>
#include <optional>
#include <vector>

namespace evmhorn::absem {

/// Element of the abstract domain: a word or Top.
struct AbsValue {
    std::optional<word> value;

    static AbsValue top() { return {}; }
    static AbsValue of(word v) { return AbsValue{v}; }
    bool is_top() const noexcept { return !value; }

    friend bool operator==(const AbsValue&, const AbsValue&) = default;
};

/// a ≤ b iff b is Top or a = b.
bool leq(const AbsValue& a, const AbsValue& b);

std::string to_string(const AbsValue& v);

/// Abstract ADD, SUB, MUL, DIV, MOD, LT, GT, SLT, SGT, EQ; Top when any operand is Top.
AbsValue abs_binop(std::uint8_t opcode, const AbsValue& x, const AbsValue& y);

/// Whether the comparison LT, GT, SLT, SGT or EQ may hold; true when any operand is Top.
bool abs_comp(std::uint8_t opcode, const AbsValue& x, const AbsValue& y);

/// Bytes l..r of v (byte 0 most significant); Top when l > r or v is Top.
AbsValue extract(const AbsValue& v, int l, int r);

/// v above the n low-order bytes holding w.
AbsValue concat(const AbsValue& v, const AbsValue& w, int n);

/// Total map from naturals to abstract values: a default plus finitely many exceptions.
struct AbsArray {
    AbsValue dflt;
    std::map<bigint, AbsValue> ex;

    static AbsArray constant(AbsValue v) { return AbsArray{std::move(v), {}}; }

    AbsValue select(const bigint& i) const;
    AbsArray store(const bigint& i, AbsValue v) const;

    friend bool operator==(const AbsArray&, const AbsArray&) = default;
};

/// Pointwise order.
bool leq(const AbsArray& a, const AbsArray& b);
/// Pointwise order restricted to indices below `n`.
bool leq_prefix(const AbsArray& a, const AbsArray& b, const bigint& n);

/// Word at byte offset p of a word-indexed memory.
AbsValue access_word(const AbsArray& m, const bigint& p);

/// Writes v at byte offset p; an unknown offset yields the everywhere-Top memory.
AbsArray store_word(const AbsArray& m, const std::optional<bigint>& p, const AbsValue& v);

/// Stack with the bottom element at index 0, zero elsewhere.
AbsArray stack_to_array(const std::vector<word>& stack);

/// Word-indexed view of a byte memory, zero beyond its end.
AbsArray to_word_mem(const bytes& memory);

AbsArray storage_to_array(const std::map<word, word>& storage);

/// Instance of MState, Exc or Halt. Optional fields are Top in facts decoded from the
/// evaluator; facts built by alpha_state always set them.
struct AbsFact {
    enum class Kind { MState, Exc, Halt };

    Kind kind = Kind::MState;
    std::size_t pc = 0;  ///< MState only
    std::optional<bigint> size;
    AbsArray stack;
    AbsArray mem;
    AbsArray stor;
    std::optional<bool> cl;
};

using OrderedFactSet = std::vector<AbsFact>;

/// Same predicate, and every argument of a below the one of b. Stack cells are compared
/// below the stack size only.
bool leq(const AbsFact& a, const AbsFact& b);

/// Every fact of a lies below some fact of b.
bool leq(const OrderedFactSet& a, const OrderedFactSet& b);

std::string to_string(const AbsFact& f);

/// Abstraction of an oracle state: running → MState, exception → Exc, halt → Halt.
OrderedFactSet alpha_state(const evm::ConcreteState& state, bool cl);

}  // namespace evmhorn::absem
