#include "evmhorn/absem/facts.hpp"

#include <set>

namespace evmhorn::absem {

using backend::Value;

namespace {

AbsValue decode_value(const Value& d, const Value& p)
{
    if (d.kind != Value::Kind::Bool || !d.b)
        return AbsValue::top();
    if (p.kind != Value::Kind::Int)
        return AbsValue::top();
    return AbsValue::of(to_word(p.i));
}

std::optional<bool> decode_bool(const Value& v)
{
    if (v.kind == Value::Kind::Bool)
        return v.b;
    return std::nullopt;
}

}  // namespace

AbsArray decode_array(const Value& disc, const Value& payload)
{
    if (disc.kind != Value::Kind::Array)
        return AbsArray::constant(AbsValue::top());
    const Value top = Value::top();
    const Value& pd = payload.kind == Value::Kind::Array ? payload.arr->dflt : top;
    AbsArray out = AbsArray::constant(decode_value(disc.arr->dflt, pd));
    std::set<bigint> keys;
    for (const auto& [k, v] : disc.arr->ex)
        keys.insert(k);
    if (payload.kind == Value::Kind::Array)
        for (const auto& [k, v] : payload.arr->ex)
            keys.insert(k);
    for (const auto& k : keys)
    {
        const Value idx = Value::of_int(k);
        out = out.store(k, decode_value(backend::select(disc, idx), backend::select(payload, idx)));
    }
    return out;
}

OrderedFactSet decode_facts(const backend::FactStore& store, int id)
{
    OrderedFactSet out;
    for (const auto& [pred, facts] : store.facts)
    {
        if (pred.params.empty() || pred.params[0].i != id)
            continue;
        for (const auto& f : facts)
        {
            const auto& v = f.values;
            AbsFact a;
            if (pred.base == "MState" && pred.params.size() == 2 && v.size() == 8)
            {
                a.kind = AbsFact::Kind::MState;
                a.pc = static_cast<std::size_t>(pred.params[1].i);
                if (v[0].kind == Value::Kind::Int)
                    a.size = v[0].i;
                a.stack = decode_array(v[1], v[2]);
                a.mem = decode_array(v[3], v[4]);
                a.stor = decode_array(v[5], v[6]);
                a.cl = decode_bool(v[7]);
            }
            else if (pred.base == "Halt" && v.size() == 3)
            {
                a.kind = AbsFact::Kind::Halt;
                a.stor = decode_array(v[0], v[1]);
                a.cl = decode_bool(v[2]);
            }
            else if (pred.base == "Exc" && v.size() == 1)
            {
                a.kind = AbsFact::Kind::Exc;
                a.cl = decode_bool(v[0]);
            }
            else
                continue;
            out.push_back(std::move(a));
        }
    }
    return out;
}

}  // namespace evmhorn::absem
