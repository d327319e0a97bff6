#include "evmhorn/spec/typecheck.hpp"

#include <functional>
#include <set>

namespace evmhorn::spec {

std::string_view to_string(TypeErrorKind k) noexcept
{
    switch (k)
    {
    case TypeErrorKind::unknown_identifier: return "unknown identifier";
    case TypeErrorKind::arity_mismatch: return "arity mismatch";
    case TypeErrorKind::constructor_misuse: return "constructor misuse";
    case TypeErrorKind::recursive_op: return "recursive op";
    case TypeErrorKind::non_primitive_selector_type: return "non-primitive selector type";
    case TypeErrorKind::type_mismatch: return "type mismatch";
    case TypeErrorKind::non_exhaustive_match: return "non-exhaustive match";
    case TypeErrorKind::duplicate_declaration: return "duplicate declaration";
    case TypeErrorKind::recursive_datatype: return "recursive datatype";
    case TypeErrorKind::invalid_conclusion: return "invalid conclusion";
    }
    return "type error";
}

TypeError::TypeError(TypeErrorKind k, std::string decl_, SourceLoc l, const std::string& detail)
  : std::runtime_error(std::string(to_string(k)) + " in '" + decl_ + "' at " + to_string(l) +
                       ": " + detail),
    kind(k),
    decl(std::move(decl_)),
    loc(l)
{}

namespace {

template <typename T>
const T* lookup(const std::map<std::string, std::size_t>& m, const std::vector<T>& v,
                const std::string& name)
{
    const auto it = m.find(name);
    return it == m.end() ? nullptr : &v[it->second];
}

}  // namespace

const DataDecl* TypedSpec::datatype(const std::string& n) const
{
    return lookup(datatypes_, ast.datatypes, n);
}
const PredDecl* TypedSpec::pred(const std::string& n) const
{
    return lookup(preds_, ast.preds, n);
}
const OpDecl* TypedSpec::op(const std::string& n) const
{
    return lookup(ops_, ast.ops, n);
}
const SelDecl* TypedSpec::sel(const std::string& n) const
{
    return lookup(sels_, ast.sels, n);
}
const ConstDecl* TypedSpec::constant(const std::string& n) const
{
    return lookup(consts_, ast.consts, n);
}

std::optional<CtorRef> TypedSpec::ctor(const std::string& n) const
{
    const auto it = ctors_.find(n);
    if (it == ctors_.end())
        return std::nullopt;
    return CtorRef{&ast.datatypes[it->second.first], it->second.second};
}

void TypedSpec::index()
{
    datatypes_.clear();
    preds_.clear();
    ops_.clear();
    sels_.clear();
    consts_.clear();
    ctors_.clear();
    for (std::size_t i = 0; i < ast.datatypes.size(); ++i)
    {
        datatypes_.emplace(ast.datatypes[i].name, i);
        for (std::size_t j = 0; j < ast.datatypes[i].ctors.size(); ++j)
            ctors_.emplace(ast.datatypes[i].ctors[j].name, std::make_pair(i, j));
    }
    for (std::size_t i = 0; i < ast.preds.size(); ++i)
        preds_.emplace(ast.preds[i].name, i);
    for (std::size_t i = 0; i < ast.ops.size(); ++i)
        ops_.emplace(ast.ops[i].name, i);
    for (std::size_t i = 0; i < ast.sels.size(); ++i)
        sels_.emplace(ast.sels[i].name, i);
    for (std::size_t i = 0; i < ast.consts.size(); ++i)
        consts_.emplace(ast.consts[i].name, i);
}

namespace {

using Kind = Expr::Kind;
using Env = std::map<std::string, TypeP>;

struct Scope {
    Env vars;
    Env params;
    Env locals;
    bool in_op = false;
};

class Checker {
public:
    explicit Checker(TypedSpec& ts) : ts_(ts) {}

    void run()
    {
        declarations();
        for (auto& c : ts_.ast.consts)
        {
            decl_ = c.name;
            Scope s;
            c.value = expect_type(check(c.value, s), c.type);
        }
        for (auto& o : ts_.ast.ops)
        {
            decl_ = o.name;
            Scope s;
            s.in_op = true;
            for (const auto& p : o.params)
            {
                require_primitive(p.type, o.loc, "op parameter !" + p.name);
                s.params[p.name] = p.type;
            }
            for (const auto& a : o.args)
            {
                known_type(a.type, o.loc);
                s.locals[a.name] = a.type;
            }
            known_type(o.result, o.loc);
            o.body = expect_type(check(o.body, s), o.result);
        }
        op_recursion();
        for (auto& r : ts_.ast.rules)
            rule(r);
        for (auto& q : ts_.ast.queries)
            query(q);
    }

private:
    [[noreturn]] void error(TypeErrorKind k, SourceLoc l, const std::string& detail) const
    {
        throw TypeError(k, decl_, l, detail);
    }

    void known_type(const TypeP& t, SourceLoc l) const
    {
        if (t->kind == Type::Kind::Array)
            known_type(t->elem, l);
        else if (t->kind == Type::Kind::Data && ts_.datatype(t->name) == nullptr)
            error(TypeErrorKind::unknown_identifier, l, "unknown type " + t->name);
    }

    void require_primitive(const TypeP& t, SourceLoc l, const std::string& what) const
    {
        if (!t->is_primitive())
            error(TypeErrorKind::non_primitive_selector_type, l,
                  what + " has non-primitive type " + to_string(t));
    }

    void declarations()
    {
        auto& a = ts_.ast;
        std::set<std::string> seen;
        auto unique = [&](const std::string& kind, const std::string& name, SourceLoc l) {
            decl_ = name;
            if (!seen.insert(kind + ":" + name).second)
                error(TypeErrorKind::duplicate_declaration, l, kind + " " + name);
        };
        for (const auto& d : a.datatypes)
        {
            unique("type", d.name, d.loc);
            for (const auto& c : d.ctors)
                unique("ctor", c.name, d.loc);
        }
        for (const auto& p : a.preds)
            unique("pred", p.name, p.loc);
        for (const auto& o : a.ops)
            unique("fun", o.name, o.loc);
        for (const auto& s : a.sels)
            unique("fun", s.name, s.loc);
        for (const auto& c : a.consts)
            unique("const", c.name, c.loc);
        for (const auto& r : a.rules)
            unique("rule", r.name, r.loc);
        for (const auto& q : a.queries)
            unique("query", q.name, q.loc);
        ts_.index();

        for (const auto& d : a.datatypes)
        {
            decl_ = d.name;
            for (const auto& c : d.ctors)
                for (const auto& f : c.fields)
                    known_type(f, d.loc);
        }
        // Non-recursive datatypes: no datatype may reach itself through its fields.
        std::function<void(const std::string&, const TypeP&, std::set<std::string>&)> reach =
            [&](const std::string& root, const TypeP& t, std::set<std::string>& visited) {
                if (t->kind == Type::Kind::Array)
                    return reach(root, t->elem, visited);
                if (t->kind != Type::Kind::Data)
                    return;
                if (t->name == root)
                    error(TypeErrorKind::recursive_datatype, ts_.datatype(root)->loc,
                          "datatype " + root + " refers to itself");
                if (!visited.insert(t->name).second)
                    return;
                for (const auto& c : ts_.datatype(t->name)->ctors)
                    for (const auto& f : c.fields)
                        reach(root, f, visited);
            };
        for (const auto& d : a.datatypes)
        {
            decl_ = d.name;
            std::set<std::string> visited;
            for (const auto& c : d.ctors)
                for (const auto& f : c.fields)
                    reach(d.name, f, visited);
        }
        for (const auto& p : a.preds)
        {
            decl_ = p.name;
            for (const auto& t : p.params)
                require_primitive(t, p.loc, "predicate parameter");
            for (const auto& t : p.args)
                known_type(t, p.loc);
        }
        for (const auto& s : a.sels)
        {
            decl_ = s.name;
            for (const auto& t : s.inputs)
                require_primitive(t, s.loc, "selector input");
            for (const auto& t : s.outputs)
                require_primitive(t, s.loc, "selector output");
        }
        for (const auto& c : a.consts)
        {
            decl_ = c.name;
            require_primitive(c.type, c.loc, "constant");
        }
    }

    void op_recursion()
    {
        std::map<std::string, std::set<std::string>> calls;
        std::function<void(const ExprP&, std::set<std::string>&)> collect =
            [&](const ExprP& e, std::set<std::string>& out) {
                if (e->kind == Kind::App && ts_.op(e->name) != nullptr)
                    out.insert(e->name);
                for (const auto& c : e->args)
                    collect(c, out);
                for (const auto& c : e->params)
                    collect(c, out);
                for (const auto& arm : e->arms)
                    collect(arm.body, out);
                if (e->binding)
                    for (const auto& c : e->binding->args)
                        collect(c, out);
            };
        for (const auto& o : ts_.ast.ops)
            collect(o.body, calls[o.name]);

        std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
        std::function<void(const std::string&)> dfs = [&](const std::string& n) {
            state[n] = 1;
            for (const auto& m : calls[n])
            {
                if (state[m] == 1)
                {
                    decl_ = m;
                    error(TypeErrorKind::recursive_op, ts_.op(m)->loc,
                          "op " + m + " is (mutually) recursive");
                }
                if (state[m] == 0)
                    dfs(m);
            }
            state[n] = 2;
        };
        for (const auto& o : ts_.ast.ops)
            if (state[o.name] == 0)
                dfs(o.name);
    }

    void bindings(std::vector<Binding>& bs, Scope& s)
    {
        for (auto& b : bs)
            binding(b, s);
    }

    void binding(Binding& b, Scope& s)
    {
        const SelDecl* sel = ts_.sel(b.selector);
        if (sel == nullptr)
            error(TypeErrorKind::unknown_identifier, b.loc, "unknown selector " + b.selector);
        if (b.args.size() != sel->inputs.size())
            error(TypeErrorKind::arity_mismatch, b.loc,
                  "selector " + b.selector + " expects " + std::to_string(sel->inputs.size()) +
                      " arguments");
        for (std::size_t i = 0; i < b.args.size(); ++i)
            b.args[i] = expect_type(check(b.args[i], s), sel->inputs[i]);
        if (b.params.size() != sel->outputs.size())
            error(TypeErrorKind::arity_mismatch, b.loc,
                  "selector " + b.selector + " yields " + std::to_string(sel->outputs.size()) +
                      "-tuples");
        for (std::size_t i = 0; i < b.params.size(); ++i)
        {
            if (!same_type(b.params[i].type, sel->outputs[i]))
                error(TypeErrorKind::type_mismatch, b.loc,
                      "parameter !" + b.params[i].name + " declared " +
                          to_string(b.params[i].type) + " but selector yields " +
                          to_string(sel->outputs[i]));
            s.params[b.params[i].name] = b.params[i].type;
        }
    }

    void var_block(const std::vector<TypedName>& vars, Scope& s, SourceLoc l)
    {
        for (const auto& v : vars)
        {
            known_type(v.type, l);
            if (!s.vars.emplace(v.name, v.type).second)
                error(TypeErrorKind::duplicate_declaration, l, "variable ?" + v.name);
        }
    }

    std::vector<ExprP> premises(const std::vector<ExprP>& ps, Scope& s,
                                const std::vector<MacroDecl>* macros)
    {
        std::vector<ExprP> out;
        for (const auto& p : ps)
        {
            if (p->kind == Kind::MacroRef)
            {
                const MacroDecl* m = nullptr;
                if (macros != nullptr)
                    for (const auto& cand : *macros)
                        if (cand.name == p->name)
                            m = &cand;
                if (m == nullptr)
                    error(TypeErrorKind::unknown_identifier, p->loc, "unknown macro #" + p->name);
                auto expanded = premises(m->premises, s, nullptr);
                out.insert(out.end(), expanded.begin(), expanded.end());
                continue;
            }
            if (p->kind == Kind::App && ts_.pred(p->name) != nullptr)
                out.push_back(pred_app(p, s));
            else
                out.push_back(expect_type(check(p, s), Type::bool_()));
        }
        return out;
    }

    ExprP pred_app(const ExprP& e, Scope& s)
    {
        const PredDecl* p = ts_.pred(e->name);
        if (e->params.size() != p->params.size() || e->args.size() != p->args.size())
            error(TypeErrorKind::arity_mismatch, e->loc,
                  "predicate " + p->name + " takes " + std::to_string(p->params.size()) +
                      " parameters and " + std::to_string(p->args.size()) + " arguments");
        auto n = std::make_shared<Expr>(*e);
        for (std::size_t i = 0; i < e->params.size(); ++i)
            n->params[i] = expect_type(check(e->params[i], s), p->params[i]);
        for (std::size_t i = 0; i < e->args.size(); ++i)
            n->args[i] = expect_type(check(e->args[i], s), p->args[i]);
        n->type = Type::bool_();
        return n;
    }

    void rule(RuleDecl& r)
    {
        decl_ = r.name;
        Scope base;
        bindings(r.bindings, base);
        for (auto& c : r.clauses)
        {
            Scope s = base;
            var_block(c.vars, s, c.loc);
            c.premises = premises(c.premises, s, &r.macros);
            if (c.conclusion->kind != Kind::App || ts_.pred(c.conclusion->name) == nullptr)
                error(TypeErrorKind::invalid_conclusion, c.conclusion->loc,
                      "conclusion must be a single predicate application");
            c.conclusion = pred_app(c.conclusion, s);
        }
    }

    void query(QueryDecl& q)
    {
        decl_ = q.name;
        Scope s;
        bindings(q.bindings, s);
        var_block(q.vars, s, q.loc);
        q.premises = premises(q.premises, s, nullptr);
    }

    ExprP expect_type(const ExprP& e, const TypeP& t) const
    {
        if (!same_type(e->type, t))
            error(TypeErrorKind::type_mismatch, e->loc,
                  "expected " + to_string(t) + ", got " + to_string(e->type));
        return e;
    }

    static ExprP typed(const Expr& e, std::vector<ExprP> args, TypeP t)
    {
        auto n = std::make_shared<Expr>(e);
        n->args = std::move(args);
        n->type = std::move(t);
        return n;
    }

    bool is_int(const ExprP& e) const { return e->type->kind == Type::Kind::Int; }

    ExprP check(const ExprP& e, Scope& s)
    {
        switch (e->kind)
        {
        case Kind::Int: return typed(*e, {}, Type::int_());
        case Kind::Bool: return typed(*e, {}, Type::bool_());
        case Kind::Var:
        {
            const auto it = s.vars.find(e->name);
            if (it == s.vars.end())
                error(TypeErrorKind::unknown_identifier, e->loc, "undeclared variable ?" + e->name);
            return typed(*e, {}, it->second);
        }
        case Kind::Param:
        {
            const auto it = s.params.find(e->name);
            if (it == s.params.end())
                error(TypeErrorKind::unknown_identifier, e->loc, "unbound parameter !" + e->name);
            return typed(*e, {}, it->second);
        }
        case Kind::Local:
        {
            const auto it = s.locals.find(e->name);
            if (it != s.locals.end())
                return typed(*e, {}, it->second);
            if (const ConstDecl* c = ts_.constant(e->name))
                return typed(*e, {}, c->type);
            error(TypeErrorKind::unknown_identifier, e->loc, "unknown identifier " + e->name);
        }
        case Kind::MacroRef:
            error(TypeErrorKind::unknown_identifier, e->loc,
                  "macro #" + e->name + " used outside a premise list");
        case Kind::Unary:
        {
            auto a = check(e->args[0], s);
            auto n = std::const_pointer_cast<Expr>(typed(*e, {a}, a->type));
            if (a->type->kind == Type::Kind::Bool)
                n->uop = UnOp::Not;
            else if (a->type->kind == Type::Kind::Int)
                n->uop = UnOp::Neg;
            else
                error(TypeErrorKind::type_mismatch, e->loc,
                      "'~' applies to int or bool, got " + to_string(a->type));
            return n;
        }
        case Kind::Binary:
        {
            auto a = check(e->args[0], s);
            auto b = check(e->args[1], s);
            switch (e->bop)
            {
            case BinOp::Add:
            case BinOp::Sub:
            case BinOp::Mul:
            case BinOp::Div:
            case BinOp::Mod:
                expect_type(a, Type::int_());
                expect_type(b, Type::int_());
                return typed(*e, {a, b}, Type::int_());
            case BinOp::Lt:
            case BinOp::Le:
            case BinOp::Gt:
            case BinOp::Ge:
                expect_type(a, Type::int_());
                expect_type(b, Type::int_());
                return typed(*e, {a, b}, Type::bool_());
            case BinOp::And:
            case BinOp::Or:
                expect_type(a, Type::bool_());
                expect_type(b, Type::bool_());
                return typed(*e, {a, b}, Type::bool_());
            case BinOp::Eq:
            case BinOp::Ne:
                expect_type(b, a->type);
                return typed(*e, {a, b}, Type::bool_());
            }
            break;
        }
        case Kind::Ite:
        {
            auto c = expect_type(check(e->args[0], s), Type::bool_());
            auto t = check(e->args[1], s);
            auto el = expect_type(check(e->args[2], s), t->type);
            return typed(*e, {c, t, el}, t->type);
        }
        case Kind::Select:
        {
            auto a = check(e->args[0], s);
            if (a->type->kind != Type::Kind::Array)
                error(TypeErrorKind::type_mismatch, e->loc,
                      "select on non-array " + to_string(a->type));
            auto i = expect_type(check(e->args[1], s), Type::int_());
            return typed(*e, {a, i}, a->type->elem);
        }
        case Kind::Store:
        {
            auto a = check(e->args[0], s);
            if (a->type->kind != Type::Kind::Array)
                error(TypeErrorKind::type_mismatch, e->loc,
                      "store on non-array " + to_string(a->type));
            auto i = expect_type(check(e->args[1], s), Type::int_());
            auto v = expect_type(check(e->args[2], s), a->type->elem);
            return typed(*e, {a, i, v}, a->type);
        }
        case Kind::ConstArray:
        {
            auto v = check(e->args[0], s);
            return typed(*e, {v}, Type::array(v->type));
        }
        case Kind::Ctor:
        {
            const auto ref = ts_.ctor(e->name);
            if (!ref)
                error(TypeErrorKind::constructor_misuse, e->loc, "unknown constructor @" + e->name);
            const auto& c = ref->data->ctors[ref->index];
            if (c.fields.size() != e->args.size())
                error(TypeErrorKind::arity_mismatch, e->loc,
                      "constructor @" + e->name + " takes " + std::to_string(c.fields.size()) +
                          " arguments");
            std::vector<ExprP> args;
            for (std::size_t i = 0; i < e->args.size(); ++i)
                args.push_back(expect_type(check(e->args[i], s), c.fields[i]));
            return typed(*e, std::move(args), Type::data(ref->data->name));
        }
        case Kind::App: return app(e, s);
        case Kind::Match: return match(e, s);
        case Kind::Sum:
        case Kind::Fold: return sum(e, s);
        }
        error(TypeErrorKind::type_mismatch, e->loc, "malformed expression");
    }

    ExprP app(const ExprP& e, Scope& s)
    {
        if (ts_.pred(e->name) != nullptr)
            error(TypeErrorKind::type_mismatch, e->loc,
                  "predicate " + e->name + " used inside an expression");
        if (ts_.sel(e->name) != nullptr)
            error(TypeErrorKind::type_mismatch, e->loc,
                  "selector " + e->name + " used outside a binding");
        const OpDecl* o = ts_.op(e->name);
        if (o == nullptr)
            error(TypeErrorKind::unknown_identifier, e->loc, "unknown operation " + e->name);
        if (e->params.size() != o->params.size() || e->args.size() != o->args.size())
            error(TypeErrorKind::arity_mismatch, e->loc,
                  "op " + o->name + " takes " + std::to_string(o->params.size()) +
                      " parameters and " + std::to_string(o->args.size()) + " arguments");
        auto n = std::make_shared<Expr>(*e);
        for (std::size_t i = 0; i < e->params.size(); ++i)
            n->params[i] = expect_type(check(e->params[i], s), o->params[i].type);
        for (std::size_t i = 0; i < e->args.size(); ++i)
            n->args[i] = expect_type(check(e->args[i], s), o->args[i].type);
        n->type = o->result;
        return n;
    }

    void bind_pattern(const PatternP& p, const TypeP& t, Env& binders, SourceLoc l)
    {
        switch (p->kind)
        {
        case Pattern::Kind::Wild: return;
        case Pattern::Kind::Bind: binders[p->name] = t; return;
        case Pattern::Kind::Tuple:
            error(TypeErrorKind::constructor_misuse, l, "nested tuple pattern");
        case Pattern::Kind::Ctor:
        {
            const auto ref = ts_.ctor(p->name);
            if (!ref)
                error(TypeErrorKind::constructor_misuse, l, "unknown constructor @" + p->name);
            if (t->kind != Type::Kind::Data || t->name != ref->data->name)
                error(TypeErrorKind::constructor_misuse, l,
                      "constructor @" + p->name + " does not belong to type " + to_string(t));
            const auto& c = ref->data->ctors[ref->index];
            if (!p->subs.empty() && p->subs.size() != c.fields.size())
                error(TypeErrorKind::arity_mismatch, l,
                      "pattern @" + p->name + " binds " + std::to_string(p->subs.size()) +
                          " of " + std::to_string(c.fields.size()) + " fields");
            for (std::size_t i = 0; i < p->subs.size(); ++i)
                bind_pattern(p->subs[i], c.fields[i], binders, l);
            return;
        }
        }
    }

    static bool irrefutable(const PatternP& p)
    {
        return p->kind == Pattern::Kind::Wild || p->kind == Pattern::Kind::Bind;
    }

    /// Pattern covers every value built with constructor `ctor` (or every value when empty).
    static bool covers(const PatternP& p, const std::string& ctor)
    {
        if (irrefutable(p))
            return true;
        if (p->kind != Pattern::Kind::Ctor || p->name != ctor)
            return false;
        for (const auto& sp : p->subs)
            if (!irrefutable(sp))
                return false;
        return true;
    }

    void exhaustive(const Expr& e, const std::vector<TypeP>& types)
    {
        // Enumerate constructor combinations over the data-typed scrutinees.
        std::vector<std::vector<std::string>> choices;
        for (const auto& t : types)
        {
            std::vector<std::string> cs;
            if (t->kind == Type::Kind::Data)
                for (const auto& c : ts_.datatype(t->name)->ctors)
                    cs.push_back(c.name);
            else
                cs.push_back("");
            choices.push_back(std::move(cs));
        }
        std::vector<std::size_t> idx(types.size(), 0);
        while (true)
        {
            bool covered = false;
            for (const auto& arm : e.arms)
            {
                bool all = true;
                for (std::size_t k = 0; k < types.size() && all; ++k)
                    all = covers(arm.pats[k], choices[k][idx[k]]);
                if (all)
                {
                    covered = true;
                    break;
                }
            }
            if (!covered)
            {
                std::string what;
                for (std::size_t k = 0; k < types.size(); ++k)
                    what += (k ? ", " : "") +
                            (choices[k][idx[k]].empty() ? "_" : "@" + choices[k][idx[k]]);
                error(TypeErrorKind::non_exhaustive_match, e.loc, "case (" + what + ") not covered");
            }
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == choices[k].size())
                idx[k++] = 0;
            if (k == idx.size())
                break;
        }
    }

    ExprP match(const ExprP& e, Scope& s)
    {
        auto n = std::make_shared<Expr>(*e);
        std::vector<TypeP> types;
        for (auto& a : n->args)
        {
            a = check(a, s);
            types.push_back(a->type);
        }
        TypeP result;
        for (auto& arm : n->arms)
        {
            if (arm.pats.size() != types.size())
                error(TypeErrorKind::arity_mismatch, e->loc, "pattern tuple size mismatch");
            Env binders;
            for (std::size_t k = 0; k < types.size(); ++k)
                bind_pattern(arm.pats[k], types[k], binders, e->loc);
            Scope inner = s;
            for (const auto& [name, t] : binders)
                inner.locals[name] = t;
            arm.body = check(arm.body, inner);
            if (!result)
                result = arm.body->type;
            else
                expect_type(arm.body, result);
        }
        if (n->arms.empty())
            error(TypeErrorKind::non_exhaustive_match, e->loc, "match without arms");
        exhaustive(*n, types);
        n->type = result;
        return n;
    }

    ExprP sum(const ExprP& e, Scope& s)
    {
        auto n = std::make_shared<Expr>(*e);
        Scope inner = s;
        binding(*n->binding, inner);
        if (n->kind == Kind::Sum)
        {
            const bool boolean = n->bop == BinOp::And || n->bop == BinOp::Or;
            const TypeP t = boolean ? Type::bool_() : Type::int_();
            n->args[0] = expect_type(check(n->args[0], inner), t);
            n->type = t;
            return n;
        }
        known_type(n->acc_type, e->loc);
        // The seed is evaluated outside the loop scope.
        n->args[1] = expect_type(check(n->args[1], s), n->acc_type);
        inner.locals[n->name] = n->acc_type;
        n->args[0] = expect_type(check(n->args[0], inner), n->acc_type);
        n->type = n->acc_type;
        return n;
    }

    TypedSpec& ts_;
    std::string decl_;
};

}  // namespace

TypedSpec typecheck(const SpecAst& ast)
{
    TypedSpec ts;
    ts.ast = ast;
    ts.index();
    Checker(ts).run();
    ts.index();
    return ts;
}

}  // namespace evmhorn::spec
