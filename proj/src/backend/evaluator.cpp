#include "evmhorn/backend/evaluator.hpp"

#include "evmhorn/chc/passes.hpp"

#include <algorithm>

namespace evmhorn::backend {

namespace {

using spec::BinOp;
using spec::Expr;
using spec::ExprP;
using spec::UnOp;
using Kind = Expr::Kind;
using Env = std::map<std::string, Value>;
using spec::TypedName;

constexpr std::size_t max_witness_combos = 4096;

struct Unbound {
    std::string name;
};

Tri tri(const Value& v)
{
    if (v.kind != Value::Kind::Bool)
        return Tri::Unknown;
    return v.b ? Tri::True : Tri::False;
}

Value of_tri(Tri t)
{
    return t == Tri::Unknown ? Value::top() : Value::of_bool(t == Tri::True);
}

Tri tri_not(Tri t)
{
    return t == Tri::Unknown ? t : t == Tri::True ? Tri::False : Tri::True;
}

Tri tri_and(Tri a, Tri b)
{
    if (a == Tri::False || b == Tri::False)
        return Tri::False;
    if (a == Tri::Unknown || b == Tri::Unknown)
        return Tri::Unknown;
    return Tri::True;
}

Tri eq3(const Value& a, const Value& b)
{
    if (a.is_top() || b.is_top())
        return Tri::Unknown;
    if (a.kind != b.kind)
        return Tri::False;
    switch (a.kind)
    {
    case Value::Kind::Int: return a.i == b.i ? Tri::True : Tri::False;
    case Value::Kind::Bool: return a.b == b.b ? Tri::True : Tri::False;
    case Value::Kind::Array: break;
    case Value::Kind::Top: return Tri::Unknown;
    }
    if (a.arr == b.arr)
        return Tri::True;
    Tri r = eq3(a.arr->dflt, b.arr->dflt);
    if (r == Tri::False)
        return r;
    auto visit = [&](const std::map<bigint, Value>& keys) {
        for (const auto& [k, v] : keys)
        {
            const Value ik = Value::of_int(k);
            r = tri_and(r, eq3(select(a, ik), select(b, ik)));
            if (r == Tri::False)
                return;
        }
    };
    visit(a.arr->ex);
    if (r != Tri::False)
        visit(b.arr->ex);
    return r;
}

Value store(const Value& arr, const Value& idx, const Value& v)
{
    if (arr.is_top() || idx.is_top() || arr.kind != Value::Kind::Array)
        return Value::top();
    auto ex = arr.arr->ex;
    ex[idx.i] = v;
    return Value::array(arr.arr->dflt, std::move(ex));
}

Value arith(BinOp op, const Value& a, const Value& b)
{
    if (a.kind != Value::Kind::Int || b.kind != Value::Kind::Int)
        return Value::top();
    switch (op)
    {
    case BinOp::Add: return Value::of_int(a.i + b.i);
    case BinOp::Sub: return Value::of_int(a.i - b.i);
    case BinOp::Mul: return Value::of_int(a.i * b.i);
    case BinOp::Div: return b.i == 0 ? Value::top() : Value::of_int(chc::int_div(a.i, b.i));
    case BinOp::Mod: return b.i == 0 ? Value::top() : Value::of_int(chc::int_mod(a.i, b.i));
    case BinOp::Lt: return Value::of_bool(a.i < b.i);
    case BinOp::Le: return Value::of_bool(a.i <= b.i);
    case BinOp::Gt: return Value::of_bool(a.i > b.i);
    case BinOp::Ge: return Value::of_bool(a.i >= b.i);
    default: break;
    }
    return Value::top();
}

Value eval_in(const ExprP& e, const Env& env)
{
    switch (e->kind)
    {
    case Kind::Int: return Value::of_int(e->ival);
    case Kind::Bool: return Value::of_bool(e->bval);
    case Kind::Var:
    {
        const auto it = env.find(e->name);
        if (it == env.end())
            throw Unbound{e->name};
        return it->second;
    }
    case Kind::Unary:
    {
        const Value a = eval_in(e->args[0], env);
        if (e->uop == UnOp::Neg)
            return a.kind == Value::Kind::Int ? Value::of_int(-a.i) : Value::top();
        return of_tri(tri_not(tri(a)));
    }
    case Kind::Binary:
    {
        const BinOp op = e->bop;
        if (op == BinOp::And || op == BinOp::Or)
        {
            const Tri stop = op == BinOp::And ? Tri::False : Tri::True;
            const Tri a = tri(eval_in(e->args[0], env));
            if (a == stop)
                return of_tri(stop);
            const Tri b = tri(eval_in(e->args[1], env));
            if (b == stop)
                return of_tri(stop);
            if (a == Tri::Unknown || b == Tri::Unknown)
                return Value::top();
            return of_tri(tri_not(stop));
        }
        const Value a = eval_in(e->args[0], env);
        const Value b = eval_in(e->args[1], env);
        if (op == BinOp::Eq)
            return of_tri(eq3(a, b));
        if (op == BinOp::Ne)
            return of_tri(tri_not(eq3(a, b)));
        return arith(op, a, b);
    }
    case Kind::Ite:
    {
        const Tri c = tri(eval_in(e->args[0], env));
        if (c != Tri::Unknown)
            return eval_in(e->args[c == Tri::True ? 1 : 2], env);
        const Value t = eval_in(e->args[1], env);
        const Value f = eval_in(e->args[2], env);
        return t == f ? t : Value::top();
    }
    case Kind::Select: return select(eval_in(e->args[0], env), eval_in(e->args[1], env));
    case Kind::Store:
        return store(eval_in(e->args[0], env), eval_in(e->args[1], env),
                     eval_in(e->args[2], env));
    case Kind::ConstArray: return Value::array(eval_in(e->args[0], env));
    default: break;
    }
    throw std::logic_error("evaluator: expression is not value-encoded");
}

struct PredFacts {
    std::vector<Fact> list;
    std::map<Tuple, std::size_t> index;
    std::vector<std::set<Value>> distinct;
};

struct Stopped {
    std::string reason;
};

class Engine {
public:
    Engine(const chc::ClauseSet& cs, const EvalCaps& caps) : cs_(cs), caps_(caps) {}

    FactStore run()
    {
        try
        {
            loop();
            store_.saturated = true;
        }
        catch (const Stopped& s)
        {
            store_.stop_reason = s.reason;
        }
        for (auto& [p, pf] : preds_)
            store_.facts[p] = std::move(pf.list);
        return std::move(store_);
    }

private:
    using Delta = std::map<chc::PredicateId, std::vector<std::size_t>>;

    void loop()
    {
        for (const auto& c : cs_.clauses)
            if (c.premises.empty())
                fire_all(c, {});
        while (!delta_.empty())
        {
            if (++store_.iterations > caps_.max_iterations)
                throw Stopped{"blowup"};
            check_deadline();
            Delta cur;
            std::swap(cur, delta_);
            std::map<chc::PredicateId, std::size_t> sizes;
            for (const auto& [p, pf] : preds_)
                sizes[p] = pf.list.size();
            for (const auto& c : cs_.clauses)
                for (std::size_t i = 0; i < c.premises.size(); ++i)
                {
                    const auto it = cur.find(c.premises[i].pred);
                    if (it == cur.end())
                        continue;
                    std::vector<std::vector<std::size_t>> choice(c.premises.size());
                    bool empty = false;
                    for (std::size_t k = 0; k < c.premises.size() && !empty; ++k)
                    {
                        if (k == i)
                            choice[k] = it->second;
                        else
                        {
                            const auto s = sizes.find(c.premises[k].pred);
                            const std::size_t n = s == sizes.end() ? 0 : s->second;
                            choice[k].resize(n);
                            for (std::size_t x = 0; x < n; ++x)
                                choice[k][x] = x;
                        }
                        empty = choice[k].empty();
                    }
                    if (!empty)
                        fire_all(c, choice);
                }
        }
    }

    void fire_all(const chc::GroundClause& c, const std::vector<std::vector<std::size_t>>& choice)
    {
        Env env;
        std::vector<std::pair<ExprP, Value>> deferred;
        join(c, choice, 0, env, true, deferred);
    }

    void check_deadline() const
    {
        if (caps_.deadline && std::chrono::steady_clock::now() > *caps_.deadline)
            throw Stopped{"timeout"};
    }

    void tick()
    {
        if ((++ticks_ & 0x3ff) == 0)
            check_deadline();
    }

    void join(const chc::GroundClause& c, const std::vector<std::vector<std::size_t>>& choice,
              std::size_t k, Env& env, bool exact, std::vector<std::pair<ExprP, Value>>& deferred)
    {
        if (k == c.premises.size())
        {
            finish(c, env, exact, deferred);
            return;
        }
        const auto& atom = c.premises[k];
        auto& pf = preds_[atom.pred];
        for (const std::size_t idx : choice[k])
        {
            tick();
            const Fact f = pf.list[idx];
            Env inner = env;
            auto def = deferred;
            bool ok = true;
            bool ex = exact && f.exact;
            for (std::size_t j = 0; j < atom.args.size() && ok; ++j)
            {
                const auto& a = atom.args[j];
                if (a->kind == Kind::Var && inner.count(a->name) == 0)
                {
                    inner.emplace(a->name, f.values[j]);
                    continue;
                }
                try
                {
                    const Tri t = eq3(eval_in(a, inner), f.values[j]);
                    ok = t != Tri::False;
                    ex = ex && t == Tri::True;
                }
                catch (const Unbound&)
                {
                    def.emplace_back(a, f.values[j]);
                }
            }
            if (ok)
                join(c, choice, k + 1, inner, ex, def);
        }
    }

    /// Binds remaining variables through equalities, checks constraints and derives the head.
    void finish(const chc::GroundClause& c, Env& env, bool exact,
                std::vector<std::pair<ExprP, Value>>& deferred)
    {
        const Env before = env;
        std::vector<TypedName> free;
        auto r = check(c, env, deferred, &free);
        if (r == Tri::Unknown && !c.head && !free.empty())
            r = witness(c, before, deferred, free);
        if (r == Tri::False)
            return;
        exact = exact && r == Tri::True;
        if (!c.head)
        {
            goal_ = std::max(goal_, exact ? 2 : 1);
            return;
        }
        Tuple t;
        t.reserve(c.head->args.size());
        for (const auto& a : c.head->args)
            t.push_back(eval_in(a, env));
        insert(c.head->pred, std::move(t), exact);
    }

    void insert(const chc::PredicateId& p, Tuple t, bool exact)
    {
        auto& pf = preds_[p];
        if (pf.distinct.size() < t.size())
            pf.distinct.resize(t.size());
        auto& wid = store_.widened[p];
        for (std::size_t k = 0; k < t.size(); ++k)
        {
            if (wid.count(k) != 0)
            {
                exact = exact && t[k].is_top();
                t[k] = Value::top();
                continue;
            }
            pf.distinct[k].insert(t[k]);
            if (pf.distinct[k].size() > caps_.max_values_per_position)
            {
                wid.insert(k);
                pf.distinct[k].clear();
                t[k] = Value::top();
                exact = false;
            }
        }
        if (wid.empty())
            store_.widened.erase(p);
        const auto it = pf.index.find(t);
        if (it != pf.index.end())
        {
            auto& f = pf.list[it->second];
            if (exact && !f.exact)
            {
                f.exact = true;
                delta_[p].push_back(it->second);
            }
            return;
        }
        if (++total_ > caps_.max_facts)
            throw Stopped{"blowup"};
        pf.index.emplace(t, pf.list.size());
        delta_[p].push_back(pf.list.size());
        pf.list.push_back(Fact{std::move(t), exact});
    }

public:
    static Tri check(const chc::GroundClause& c, Env& env,
                     const std::vector<std::pair<ExprP, Value>>& deferred,
                     std::vector<TypedName>* free = nullptr)
    {
        auto settle = [&] {
            bool progress = true;
            while (progress)
            {
                progress = false;
                for (const auto& [e, v] : deferred)
                    if (e->kind == Kind::Var && env.count(e->name) == 0)
                    {
                        env.emplace(e->name, v);
                        progress = true;
                    }
                for (const auto& k : c.constraints)
                    progress = bind_from(k, env) || progress;
            }
        };
        settle();
        // Disjunctions already satisfied leave the variables of their other branches
        // unconstrained; such slots (inactive constructor payloads) get default values.
        bool defaulted = false;
        for (const auto& k : c.constraints)
            defaulted = bind_defaults(k, env) || defaulted;
        if (defaulted)
            settle();
        for (const auto& v : c.vars)
            if (env.emplace(v.name, Value::top()).second && free != nullptr)
                free->push_back(v);
        Tri r = Tri::True;
        for (const auto& [e, v] : deferred)
        {
            r = tri_and(r, eq3(eval_in(e, env), v));
            if (r == Tri::False)
                return r;
        }
        for (const auto& k : c.constraints)
        {
            r = tri_and(r, tri(eval_in(k, env)));
            if (r == Tri::False)
                return r;
        }
        return r;
    }

    static Tri try_tri(const ExprP& e, const Env& env, bool& unbound)
    {
        try
        {
            return tri(eval_in(e, env));
        }
        catch (const Unbound&)
        {
            unbound = true;
            return Tri::Unknown;
        }
    }

    static void disjuncts(const ExprP& e, std::vector<ExprP>& out)
    {
        if (e->kind == Kind::Binary && e->bop == BinOp::Or)
        {
            disjuncts(e->args[0], out);
            disjuncts(e->args[1], out);
        }
        else
            out.push_back(e);
    }

    /// Binds unbound variables defined by `k`: equalities, conjunctions of them, and
    /// disjunctions where every other branch is false.
    static bool bind_from(const ExprP& k, Env& env)
    {
        // A bare boolean variable, or its negation, fixes the variable.
        if (k->kind == Kind::Var && env.count(k->name) == 0)
        {
            env.emplace(k->name, Value::of_bool(true));
            return true;
        }
        if (k->kind == Kind::Unary && k->uop == spec::UnOp::Not && k->args[0]->kind == Kind::Var &&
            env.count(k->args[0]->name) == 0)
        {
            env.emplace(k->args[0]->name, Value::of_bool(false));
            return true;
        }
        if (k->kind != Kind::Binary)
            return false;
        if (k->bop == BinOp::And)
        {
            const bool a = bind_from(k->args[0], env);
            return bind_from(k->args[1], env) || a;
        }
        if (k->bop == BinOp::Eq)
        {
            bool progress = false;
            for (int side = 0; side < 2; ++side)
            {
                const auto& x = k->args[side];
                if (x->kind != Kind::Var || env.count(x->name) != 0)
                    continue;
                try
                {
                    env.emplace(x->name, eval_in(k->args[1 - side], env));
                    progress = true;
                }
                catch (const Unbound&)
                {}
            }
            return progress;
        }
        if (k->bop != BinOp::Or)
            return false;
        std::vector<ExprP> ds;
        disjuncts(k, ds);
        const ExprP* open = nullptr;
        for (const auto& d : ds)
        {
            bool unbound = false;
            const Tri t = try_tri(d, env, unbound);
            if (t == Tri::True)
                return false;
            if (t == Tri::False)
                continue;
            if (!unbound || open != nullptr)
                return false;
            open = &d;
        }
        return open != nullptr && bind_from(*open, env);
    }

    static Value default_of(const spec::TypeP& t)
    {
        switch (t->kind)
        {
        case spec::Type::Kind::Int: return Value::of_int(0);
        case spec::Type::Kind::Bool: return Value::of_bool(false);
        case spec::Type::Kind::Array: return Value::array(default_of(t->elem));
        default: return Value::top();
        }
    }

    /// Encoded constructor payload components are named `var.Ctor.i`.
    static bool is_payload_slot(const std::string& name)
    {
        const auto dot = name.find('.');
        return dot != std::string::npos && name.compare(dot, 3, ".d.") != 0 &&
               name.substr(dot) != ".d";
    }

    static bool bind_unbound_eqs(const ExprP& e, Env& env)
    {
        if (e->kind != Kind::Binary)
            return false;
        if (e->bop == BinOp::And || e->bop == BinOp::Or)
        {
            const bool a = bind_unbound_eqs(e->args[0], env);
            return bind_unbound_eqs(e->args[1], env) || a;
        }
        if (e->bop != BinOp::Eq)
            return false;
        bool any = false;
        for (const auto& x : e->args)
            if (x->kind == Kind::Var && env.count(x->name) == 0 && x->type &&
                is_payload_slot(x->name))
            {
                env.emplace(x->name, default_of(x->type));
                any = true;
            }
        return any;
    }

    static bool bind_defaults(const ExprP& k, Env& env)
    {
        if (k->kind != Kind::Binary)
            return false;
        if (k->bop == BinOp::And)
        {
            const bool a = bind_defaults(k->args[0], env);
            return bind_defaults(k->args[1], env) || a;
        }
        if (k->bop != BinOp::Or)
            return false;
        std::vector<ExprP> ds;
        disjuncts(k, ds);
        bool satisfied = false;
        for (const auto& d : ds)
        {
            bool unbound = false;
            satisfied = satisfied || try_tri(d, env, unbound) == Tri::True;
        }
        if (!satisfied)
            return false;
        bool any = false;
        for (const auto& d : ds)
            any = bind_unbound_eqs(d, env) || any;
        return any;
    }

    /// Searches small candidate values for goal variables left unbound by premises and
    /// equalities. A witness making every constraint true proves the goal exactly.
    static Tri witness(const chc::GroundClause& c, const Env& base,
                       const std::vector<std::pair<ExprP, Value>>& deferred,
                       const std::vector<TypedName>& free)
    {
        std::set<bigint> lits = {-1, 0, 1};
        for (const auto& k : c.constraints)
            collect_literals(k, lits);
        const bigint beyond = *lits.rbegin() + 1;
        lits.insert(beyond);
        std::vector<std::vector<Value>> cands;
        std::size_t combos = 1;
        for (const auto& v : free)
        {
            std::vector<Value> vs;
            if (v.type->kind == spec::Type::Kind::Int)
                for (const auto& l : lits)
                    vs.push_back(Value::of_int(l));
            else if (v.type->kind == spec::Type::Kind::Bool)
                vs = {Value::of_bool(false), Value::of_bool(true)};
            else
                vs = {Value::top()};
            combos *= vs.size();
            if (combos > max_witness_combos)
                return Tri::Unknown;
            cands.push_back(std::move(vs));
        }
        std::vector<std::size_t> pick(free.size(), 0);
        while (true)
        {
            Env env = base;
            for (std::size_t i = 0; i < free.size(); ++i)
                env.insert_or_assign(free[i].name, cands[i][pick[i]]);
            if (check(c, env, deferred) == Tri::True)
                return Tri::True;
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == cands[i].size())
                pick[i++] = 0;
            if (i == pick.size())
                return Tri::Unknown;
        }
    }

    static void collect_literals(const ExprP& e, std::set<bigint>& out)
    {
        if (e->kind == Kind::Int)
            out.insert(e->ival);
        for (const auto& a : e->args)
            collect_literals(a, out);
    }

    /// Fires a goal clause against the full fact lists: 0 no, 1 inexact, 2 exact.
    int goal(const chc::GroundClause& g)
    {
        goal_ = 0;
        std::vector<std::vector<std::size_t>> choice;
        for (const auto& a : g.premises)
        {
            const auto it = preds_.find(a.pred);
            std::vector<std::size_t> all(it == preds_.end() ? 0 : it->second.list.size());
            for (std::size_t x = 0; x < all.size(); ++x)
                all[x] = x;
            choice.push_back(std::move(all));
        }
        fire_all(g, choice);
        return goal_;
    }

    void load(const FactStore& s)
    {
        for (const auto& [p, fs] : s.facts)
            preds_[p].list = fs;
    }

private:
    const chc::ClauseSet& cs_;
    EvalCaps caps_;
    FactStore store_;
    std::map<chc::PredicateId, PredFacts> preds_;
    Delta delta_;
    std::size_t total_ = 0;
    std::size_t ticks_ = 0;
    int goal_ = 0;
};

int compare(const Value& a, const Value& b);

int compare_maps(const std::map<bigint, Value>& a, const std::map<bigint, Value>& b)
{
    auto i = a.begin();
    auto j = b.begin();
    for (; i != a.end() && j != b.end(); ++i, ++j)
    {
        if (i->first != j->first)
            return i->first < j->first ? -1 : 1;
        if (const int c = compare(i->second, j->second))
            return c;
    }
    if (i == a.end() && j == b.end())
        return 0;
    return i == a.end() ? -1 : 1;
}

int compare(const Value& a, const Value& b)
{
    if (a.kind != b.kind)
        return a.kind < b.kind ? -1 : 1;
    switch (a.kind)
    {
    case Value::Kind::Top: return 0;
    case Value::Kind::Int: return a.i == b.i ? 0 : a.i < b.i ? -1 : 1;
    case Value::Kind::Bool: return a.b == b.b ? 0 : a.b ? 1 : -1;
    case Value::Kind::Array: break;
    }
    if (a.arr == b.arr)
        return 0;
    if (const int c = compare(a.arr->dflt, b.arr->dflt))
        return c;
    return compare_maps(a.arr->ex, b.arr->ex);
}

}  // namespace

Value Value::of_int(bigint v)
{
    Value x;
    x.kind = Kind::Int;
    x.i = std::move(v);
    return x;
}

Value Value::of_bool(bool v)
{
    Value x;
    x.kind = Kind::Bool;
    x.b = v;
    return x;
}

Value Value::array(Value dflt, std::map<bigint, Value> ex)
{
    for (auto it = ex.begin(); it != ex.end();)
        it = it->second == dflt ? ex.erase(it) : std::next(it);
    Value x;
    x.kind = Kind::Array;
    x.arr = std::make_shared<const ArrayValue>(ArrayValue{std::move(dflt), std::move(ex)});
    return x;
}

bool operator==(const Value& a, const Value& b)
{
    return compare(a, b) == 0;
}

bool operator<(const Value& a, const Value& b)
{
    return compare(a, b) < 0;
}

Value select(const Value& arr, const Value& idx)
{
    if (arr.kind != Value::Kind::Array)
        return Value::top();
    if (idx.is_top() || idx.kind != Value::Kind::Int)
        return arr.arr->ex.empty() ? arr.arr->dflt : Value::top();
    const auto it = arr.arr->ex.find(idx.i);
    return it == arr.arr->ex.end() ? arr.arr->dflt : it->second;
}

bool leq(const Value& a, const Value& b)
{
    if (b.is_top())
        return true;
    if (a.is_top() || a.kind != b.kind)
        return false;
    if (a.kind != Value::Kind::Array)
        return a == b;
    if (!leq(a.arr->dflt, b.arr->dflt))
        return false;
    for (const auto* m : {&a.arr->ex, &b.arr->ex})
        for (const auto& [k, v] : *m)
        {
            const Value ik = Value::of_int(k);
            if (!leq(select(a, ik), select(b, ik)))
                return false;
        }
    return true;
}

std::string to_string(const Value& v)
{
    switch (v.kind)
    {
    case Value::Kind::Top: return "T";
    case Value::Kind::Int: return v.i.str();
    case Value::Kind::Bool: return v.b ? "true" : "false";
    case Value::Kind::Array: break;
    }
    std::string out = "[" + to_string(v.arr->dflt);
    for (const auto& [k, x] : v.arr->ex)
        out += ", " + k.str() + ": " + to_string(x);
    return out + "]";
}

std::size_t FactStore::size() const
{
    std::size_t n = 0;
    for (const auto& [p, fs] : facts)
        n += fs.size();
    return n;
}

bool FactStore::covers(const chc::PredicateId& p, const Tuple& t) const
{
    const auto it = facts.find(p);
    if (it == facts.end())
        return false;
    for (const auto& f : it->second)
    {
        bool all = f.values.size() == t.size();
        for (std::size_t k = 0; k < t.size() && all; ++k)
            all = leq(t[k], f.values[k]);
        if (all)
            return true;
    }
    return false;
}

FactStore saturate(const chc::ClauseSet& cs, const EvalCaps& caps)
{
    if (!cs.encoded)
        throw std::logic_error("saturate needs a value-encoded clause set");
    return Engine(cs, caps).run();
}

Tri goal_holds(const FactStore& store, const chc::QueryGoal& goal)
{
    chc::ClauseSet empty;
    Engine e(empty, EvalCaps{});
    e.load(store);
    switch (e.goal(goal.clause))
    {
    case 2: return Tri::True;
    case 1: return Tri::Unknown;
    default: return Tri::False;
    }
}

Verdict verdict_for(const FactStore& store, const chc::QueryGoal& goal)
{
    Verdict v;
    v.engine = "internal-evaluator";
    v.iterations = store.iterations;
    const Tri t = goal_holds(store, goal);
    if (t != Tri::False)
    {
        v.status = Verdict::Status::Reachable;
        v.exact = t == Tri::True;
        return v;
    }
    if (store.saturated)
    {
        v.status = Verdict::Status::Unreachable;
        return v;
    }
    v.status = Verdict::Status::Unknown;
    v.reason = store.stop_reason;
    return v;
}

Verdict evaluate_naive(const chc::ClauseSet& cs, const chc::QueryGoal& goal, const EvalCaps& caps)
{
    const auto start = std::chrono::steady_clock::now();
    auto v = verdict_for(saturate(cs, caps), goal);
    v.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return v;
}

Value eval(const spec::ExprP& e, const std::map<std::string, Value>& env)
{
    try
    {
        return eval_in(e, env);
    }
    catch (const Unbound& u)
    {
        throw std::invalid_argument("unbound variable " + u.name);
    }
}

}  // namespace evmhorn::backend
