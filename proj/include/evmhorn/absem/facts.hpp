#pragma once

#include "evmhorn/absem/domain.hpp"
#include "evmhorn/backend/evaluator.hpp"

namespace evmhorn::absem {

/// Reads MState, Exc and Halt facts of contract `id` back from an evaluator store over
/// the value-encoded base-mode clause set.
OrderedFactSet decode_facts(const backend::FactStore& store, int id = 0);

/// Decodes an encoded AbsDom array from its discriminant and payload arrays.
AbsArray decode_array(const backend::Value& disc, const backend::Value& payload);

}  // namespace evmhorn::absem
