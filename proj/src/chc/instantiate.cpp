#include "evmhorn/chc/passes.hpp"

#include "evmhorn/spec/parser.hpp"

#include <functional>

namespace evmhorn::chc {

namespace {

using spec::BinOp;
using spec::Expr;
using spec::Pattern;
using spec::PatternP;
using Kind = Expr::Kind;

struct Env {
    std::map<std::string, Scalar> params;
    std::map<std::string, ExprP> locals;
};

ExprP literal(const Scalar& s)
{
    return s.is_bool ? spec::mk_bool(s.b) : spec::mk_int(s.i);
}

class Instantiator {
public:
    Instantiator(const spec::BoundSpec& b, const InstantiateOptions& o) : bs_(b), opts_(o) {}

    ClauseSet run()
    {
        ClauseSet out;
        out.spec = bs_.spec;
        const auto& ast = bs_.spec->ast;
        if (opts_.include_rules)
            for (const auto& r : ast.rules)
                enumerate(r.bindings, r.name, [&](const Env& env, const ScalarTuple&) {
                    for (const auto& c : r.clauses)
                        out.clauses.push_back(clause(c.vars, c.premises, c.conclusion, env,
                                                     r.name, out));
                });
        if (opts_.include_queries)
            for (const auto& q : ast.queries)
                enumerate(q.bindings, q.name, [&](const Env& env, const ScalarTuple& vals) {
                    QueryGoal g;
                    g.name = q.name;
                    g.is_test = q.is_test;
                    g.expect_sat = q.expect_sat;
                    g.params = vals;
                    g.clause = clause(q.vars, q.premises, nullptr, env, q.name, out);
                    out.goals.push_back(std::move(g));
                });
        return out;
    }

private:
    using Visit = std::function<void(const Env&, const ScalarTuple&)>;

    void enumerate(const std::vector<spec::Binding>& bs, const std::string& where, const Visit& f)
    {
        std::size_t count = 0;
        Env env;
        ScalarTuple vals;
        enumerate_from(bs, 0, env, vals, where, count, f);
    }

    void enumerate_from(const std::vector<spec::Binding>& bs, std::size_t i, Env& env,
                        ScalarTuple& vals, const std::string& where, std::size_t& count,
                        const Visit& f)
    {
        if (i == bs.size())
        {
            if (++count > opts_.selector_cap)
                throw SelectorDivergence(where + " expands to more than " +
                                         std::to_string(opts_.selector_cap) + " instances");
            f(env, vals);
            return;
        }
        const auto& b = bs[i];
        for (const auto& row : rows(b, env, where))
        {
            Env inner = env;
            for (std::size_t k = 0; k < b.params.size(); ++k)
                inner.params[b.params[k].name] = row[k];
            const std::size_t mark = vals.size();
            vals.insert(vals.end(), row.begin(), row.end());
            enumerate_from(bs, i + 1, inner, vals, where, count, f);
            vals.resize(mark);
        }
    }

    std::vector<ScalarTuple> rows(const spec::Binding& b, const Env& env, const std::string& where)
    {
        ScalarTuple args;
        for (const auto& a : b.args)
            args.push_back(constant(a, env, "selector argument"));
        auto rs = bs_.call(b.selector, args);
        if (rs.size() > opts_.selector_cap)
            throw SelectorDivergence(where + ": selector " + b.selector + " returned " +
                                     std::to_string(rs.size()) + " rows");
        return rs;
    }

    Scalar constant(const ExprP& e, const Env& env, const char* what)
    {
        const auto v = as_scalar(simplify(inst(e, env)));
        if (!v)
            throw std::runtime_error(std::string(what) + " is not a compile-time constant: " +
                                     spec::print_expr(e));
        return *v;
    }

    Atom atom(const ExprP& app, const Env& env, ClauseSet& out)
    {
        const spec::PredDecl* d = bs_.spec->pred(app->name);
        Atom a;
        a.pred.base = app->name;
        for (const auto& p : app->params)
            a.pred.params.push_back(constant(p, env, "predicate parameter"));
        for (const auto& x : app->args)
            a.args.push_back(inst(x, env));
        out.signatures.emplace(a.pred, d->args);
        return a;
    }

    GroundClause clause(const std::vector<TypedName>& vars, const std::vector<ExprP>& premises,
                        const ExprP& conclusion, const Env& env, const std::string& origin,
                        ClauseSet& out)
    {
        GroundClause c;
        c.vars = vars;
        c.origin = origin;
        for (const auto& p : premises)
        {
            if (p->kind == Kind::App && bs_.spec->pred(p->name) != nullptr)
                c.premises.push_back(atom(p, env, out));
            else
                c.constraints.push_back(inst(p, env));
        }
        if (conclusion)
            c.head = atom(conclusion, env, out);
        return c;
    }

    std::string fresh(const std::string& base) { return base + "'" + std::to_string(next_++); }

    PatternP rename(const PatternP& p, Env& env)
    {
        if (p->kind == Pattern::Kind::Wild)
            return p;
        auto n = std::make_shared<Pattern>(*p);
        if (p->kind == Pattern::Kind::Bind)
        {
            n->name = fresh(p->name);
            env.locals[p->name] = spec::mk_local(n->name);
            return n;
        }
        for (auto& s : n->subs)
            s = rename(s, env);
        return n;
    }

    /// Types of bound locals, recorded so renamed binders keep their type.
    void type_binders(const PatternP& p, const TypeP& t, Env& env)
    {
        switch (p->kind)
        {
        case Pattern::Kind::Wild: return;
        case Pattern::Kind::Bind:
        {
            auto l = std::make_shared<Expr>(*env.locals.at(p->name));
            l->type = t;
            env.locals[p->name] = l;
            return;
        }
        case Pattern::Kind::Tuple: return;
        case Pattern::Kind::Ctor:
        {
            const auto ref = bs_.spec->ctor(p->name);
            const auto& fields = ref->data->ctors[ref->index].fields;
            for (std::size_t i = 0; i < p->subs.size(); ++i)
                type_binders(p->subs[i], fields[i], env);
            return;
        }
        }
    }

    ExprP inst(const ExprP& e, const Env& env)
    {
        switch (e->kind)
        {
        case Kind::Int:
        case Kind::Bool:
        case Kind::Var: return e;
        case Kind::Param:
        {
            const auto it = env.params.find(e->name);
            if (it == env.params.end())
                throw std::runtime_error("unbound parameter !" + e->name);
            return literal(it->second);
        }
        case Kind::Local:
        {
            const auto it = env.locals.find(e->name);
            if (it != env.locals.end())
                return it->second;
            if (const auto* c = bs_.spec->constant(e->name))
                return const_value(*c);
            throw std::runtime_error("unbound identifier " + e->name);
        }
        case Kind::App: return call(e, env);
        case Kind::Sum: return sum(e, env);
        case Kind::Fold: return fold(e, env);
        case Kind::Match:
        {
            auto n = std::make_shared<Expr>(*e);
            for (auto& a : n->args)
                a = inst(a, env);
            for (auto& arm : n->arms)
            {
                Env inner = env;
                for (std::size_t k = 0; k < arm.pats.size(); ++k)
                {
                    arm.pats[k] = rename(arm.pats[k], inner);
                    type_binders(e->arms[&arm - n->arms.data()].pats[k], n->args[k]->type, inner);
                }
                arm.body = inst(arm.body, inner);
            }
            return n;
        }
        case Kind::MacroRef: throw std::runtime_error("unexpanded macro #" + e->name);
        default:
        {
            std::vector<ExprP> args;
            args.reserve(e->args.size());
            bool changed = false;
            for (const auto& a : e->args)
            {
                args.push_back(inst(a, env));
                changed |= args.back() != a;
            }
            return changed ? spec::with_args(*e, std::move(args)) : e;
        }
        }
    }

    ExprP const_value(const spec::ConstDecl& c)
    {
        auto it = consts_.find(c.name);
        if (it == consts_.end())
            it = consts_.emplace(c.name, simplify(inst(c.value, Env{}))).first;
        return it->second;
    }

    ExprP call(const ExprP& e, const Env& env)
    {
        const spec::OpDecl* o = bs_.spec->op(e->name);
        if (o == nullptr)
            throw std::runtime_error("unknown operation " + e->name);
        Env inner;
        for (std::size_t i = 0; i < o->params.size(); ++i)
            inner.params[o->params[i].name] = constant(e->params[i], env, "op parameter");
        for (std::size_t i = 0; i < o->args.size(); ++i)
            inner.locals[o->args[i].name] = inst(e->args[i], env);
        return inst(o->body, inner);
    }

    std::vector<Env> loop_envs(const ExprP& e, const Env& env)
    {
        const auto& b = *e->binding;
        std::vector<Env> out;
        for (const auto& row : rows(b, env, "for-expression over " + b.selector))
        {
            Env inner = env;
            for (std::size_t k = 0; k < b.params.size(); ++k)
                inner.params[b.params[k].name] = row[k];
            out.push_back(std::move(inner));
        }
        return out;
    }

    ExprP sum(const ExprP& e, const Env& env)
    {
        const BinOp op = e->bop;
        std::vector<ExprP> terms;
        for (const auto& inner : loop_envs(e, env))
            terms.push_back(inst(e->args[0], inner));
        if (op == BinOp::And)
            return spec::mk_and(std::move(terms));
        if (op == BinOp::Or)
            return spec::mk_or(std::move(terms));
        if (terms.empty())
            return spec::mk_int(op == BinOp::Mul ? 1 : 0);
        ExprP acc = terms[0];
        for (std::size_t i = 1; i < terms.size(); ++i)
            acc = spec::mk_binary(op, acc, terms[i], spec::Type::int_());
        return acc;
    }

    ExprP fold(const ExprP& e, const Env& env)
    {
        ExprP acc = inst(e->args[1], env);
        for (auto inner : loop_envs(e, env))
        {
            inner.locals[e->name] = acc;
            acc = inst(e->args[0], inner);
        }
        return acc;
    }

    const spec::BoundSpec& bs_;
    const InstantiateOptions& opts_;
    std::map<std::string, ExprP> consts_;
    std::size_t next_ = 0;
};

}  // namespace

ClauseSet instantiate(const spec::BoundSpec& spec, const InstantiateOptions& opts)
{
    return Instantiator(spec, opts).run();
}

}  // namespace evmhorn::chc
