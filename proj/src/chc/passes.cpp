#include "evmhorn/chc/passes.hpp"

#include <unordered_map>

namespace evmhorn::chc {

namespace {

using spec::BinOp;
using spec::Expr;
using spec::Pattern;
using spec::PatternP;
using spec::Type;
using spec::UnOp;
using Kind = Expr::Kind;

bool is_int_lit(const ExprP& e)
{
    return e->kind == Kind::Int;
}

bool is_bool_lit(const ExprP& e)
{
    return e->kind == Kind::Bool;
}

ExprP rebuild(const ExprP& e, std::vector<ExprP> args)
{
    bool same = args.size() == e->args.size();
    for (std::size_t i = 0; same && i < args.size(); ++i)
        same = args[i] == e->args[i];
    return same ? e : spec::with_args(*e, std::move(args));
}

enum class Fit { Yes, No, Unknown };

Fit fit(const PatternP& p, const ExprP& s, std::map<std::string, ExprP>& binds)
{
    switch (p->kind)
    {
    case Pattern::Kind::Wild: return Fit::Yes;
    case Pattern::Kind::Bind: binds[p->name] = s; return Fit::Yes;
    case Pattern::Kind::Tuple: return Fit::Unknown;
    case Pattern::Kind::Ctor: break;
    }
    if (s->kind != Kind::Ctor)
        return Fit::Unknown;
    if (s->name != p->name)
        return Fit::No;
    Fit r = Fit::Yes;
    for (std::size_t i = 0; i < p->subs.size(); ++i)
    {
        const Fit f = fit(p->subs[i], s->args[i], binds);
        if (f == Fit::No)
            return Fit::No;
        if (f == Fit::Unknown)
            r = Fit::Unknown;
    }
    return r;
}

class Simplifier {
public:
    ExprP run(const ExprP& e)
    {
        const auto it = memo_.find(e.get());
        if (it != memo_.end())
            return it->second;
        auto r = step(e);
        memo_.emplace(e.get(), r);
        keep_.push_back(e);
        return r;
    }

private:
    ExprP step(const ExprP& e)
    {
        switch (e->kind)
        {
        case Kind::Unary: return unary(e);
        case Kind::Binary: return binary(e);
        case Kind::Ite: return ite(e);
        case Kind::Select: return select(e);
        case Kind::Match: return match(e);
        case Kind::Store:
        case Kind::ConstArray:
        case Kind::Ctor:
        {
            std::vector<ExprP> args;
            for (const auto& a : e->args)
                args.push_back(run(a));
            return rebuild(e, std::move(args));
        }
        default: return e;
        }
    }

    ExprP unary(const ExprP& e)
    {
        auto a = run(e->args[0]);
        if (e->uop == UnOp::Not)
        {
            if (is_bool_lit(a))
                return spec::mk_bool(!a->bval);
            if (a->kind == Kind::Unary && a->uop == UnOp::Not)
                return a->args[0];
        }
        else if (e->uop == UnOp::Neg)
        {
            if (is_int_lit(a))
                return spec::mk_int(-a->ival);
            if (a->kind == Kind::Unary && a->uop == UnOp::Neg)
                return a->args[0];
        }
        return rebuild(e, {a});
    }

    static std::optional<bool> compare(BinOp op, const bigint& x, const bigint& y)
    {
        switch (op)
        {
        case BinOp::Eq: return x == y;
        case BinOp::Ne: return x != y;
        case BinOp::Lt: return x < y;
        case BinOp::Le: return x <= y;
        case BinOp::Gt: return x > y;
        case BinOp::Ge: return x >= y;
        default: return std::nullopt;
        }
    }

    ExprP equality(const ExprP& e, const ExprP& a, const ExprP& b, bool negate)
    {
        auto wrap = [&](ExprP r) { return negate ? run(spec::mk_not(r)) : r; };
        if (spec::equal(a, b))
            return spec::mk_bool(!negate);
        if (is_int_lit(a) && is_int_lit(b))
            return spec::mk_bool((a->ival == b->ival) != negate);
        if (is_bool_lit(a) && is_bool_lit(b))
            return spec::mk_bool((a->bval == b->bval) != negate);
        if (is_bool_lit(a) || is_bool_lit(b))
        {
            const ExprP& lit = is_bool_lit(a) ? a : b;
            const ExprP& other = is_bool_lit(a) ? b : a;
            return lit->bval != negate ? other : run(spec::mk_not(other));
        }
        if (a->kind == Kind::Ctor && b->kind == Kind::Ctor)
        {
            if (a->name != b->name)
                return spec::mk_bool(negate);
            std::vector<ExprP> parts;
            for (std::size_t i = 0; i < a->args.size(); ++i)
                parts.push_back(run(spec::mk_eq(a->args[i], b->args[i])));
            return wrap(spec::mk_and(std::move(parts)));
        }
        return rebuild(e, {a, b});
    }

    ExprP binary(const ExprP& e)
    {
        const BinOp op = e->bop;
        auto a = run(e->args[0]);
        if (op == BinOp::And && is_false(a))
            return a;
        if (op == BinOp::Or && is_true(a))
            return a;
        auto b = run(e->args[1]);
        switch (op)
        {
        case BinOp::And:
            if (is_true(a))
                return b;
            if (is_true(b) || is_false(b))
                return is_true(b) ? a : b;
            return rebuild(e, {a, b});
        case BinOp::Or:
            if (is_false(a))
                return b;
            if (is_true(b) || is_false(b))
                return is_false(b) ? a : b;
            return rebuild(e, {a, b});
        case BinOp::Eq: return equality(e, a, b, false);
        case BinOp::Ne: return equality(e, a, b, true);
        default: break;
        }
        if (is_int_lit(a) && is_int_lit(b))
        {
            const bigint& x = a->ival;
            const bigint& y = b->ival;
            if (const auto c = compare(op, x, y))
                return spec::mk_bool(*c);
            switch (op)
            {
            case BinOp::Add: return spec::mk_int(x + y);
            case BinOp::Sub: return spec::mk_int(x - y);
            case BinOp::Mul: return spec::mk_int(x * y);
            case BinOp::Div:
                if (y != 0)
                    return spec::mk_int(int_div(x, y));
                break;
            case BinOp::Mod:
                if (y != 0)
                    return spec::mk_int(int_mod(x, y));
                break;
            default: break;
            }
            return rebuild(e, {a, b});
        }
        auto zero = [](const ExprP& x) { return is_int_lit(x) && x->ival == 0; };
        auto one = [](const ExprP& x) { return is_int_lit(x) && x->ival == 1; };
        switch (op)
        {
        case BinOp::Add:
            if (zero(a))
                return b;
            if (zero(b))
                return a;
            break;
        case BinOp::Sub:
            if (zero(b))
                return a;
            break;
        case BinOp::Mul:
            if (one(a))
                return b;
            if (one(b))
                return a;
            if (zero(a) || zero(b))
                return spec::mk_int(0);
            break;
        case BinOp::Div:
            if (one(b))
                return a;
            break;
        case BinOp::Le:
        case BinOp::Ge:
            if (spec::equal(a, b))
                return spec::mk_bool(true);
            break;
        case BinOp::Lt:
        case BinOp::Gt:
            if (spec::equal(a, b))
                return spec::mk_bool(false);
            break;
        default: break;
        }
        return rebuild(e, {a, b});
    }

    ExprP ite(const ExprP& e)
    {
        auto c = run(e->args[0]);
        if (is_bool_lit(c))
            return run(e->args[c->bval ? 1 : 2]);
        auto t = run(e->args[1]);
        auto f = run(e->args[2]);
        if (spec::equal(t, f))
            return t;
        if (is_true(t) && is_false(f))
            return c;
        if (is_false(t) && is_true(f))
            return run(spec::mk_not(c));
        return rebuild(e, {c, t, f});
    }

    ExprP select(const ExprP& e)
    {
        auto a = run(e->args[0]);
        auto i = run(e->args[1]);
        while (true)
        {
            if (a->kind == Kind::ConstArray)
                return a->args[0];
            if (a->kind != Kind::Store)
                break;
            if (spec::equal(a->args[1], i))
                return a->args[2];
            if (is_int_lit(a->args[1]) && is_int_lit(i))
            {
                a = a->args[0];
                continue;
            }
            break;
        }
        return rebuild(e, {a, i});
    }

    ExprP match(const ExprP& e)
    {
        std::vector<ExprP> scrut;
        for (const auto& a : e->args)
            scrut.push_back(run(a));
        std::vector<spec::MatchArm> arms;
        for (const auto& arm : e->arms)
        {
            std::map<std::string, ExprP> binds;
            Fit all = Fit::Yes;
            for (std::size_t k = 0; k < scrut.size() && all != Fit::No; ++k)
            {
                const Fit f = fit(arm.pats[k], scrut[k], binds);
                if (f != Fit::Yes)
                    all = f;
            }
            if (all == Fit::No)
                continue;
            if (all == Fit::Yes && arms.empty())
                return run(substitute_locals(arm.body, binds));
            arms.push_back(spec::MatchArm{arm.pats, run(arm.body)});
        }
        auto n = std::make_shared<Expr>(*e);
        n->args = std::move(scrut);
        n->arms = std::move(arms);
        return n;
    }

    std::unordered_map<const Expr*, ExprP> memo_;
    std::vector<ExprP> keep_;  // pins memo keys
};

void flatten_and(const ExprP& e, std::vector<ExprP>& out)
{
    if (e->kind == Kind::Binary && e->bop == BinOp::And)
    {
        flatten_and(e->args[0], out);
        flatten_and(e->args[1], out);
        return;
    }
    if (!is_true(e))
        out.push_back(e);
}

/// Simplifies a clause in place; false when a constraint folds to false.
bool fold_clause(GroundClause& c, Simplifier& s)
{
    std::vector<ExprP> ks;
    for (const auto& k : c.constraints)
        flatten_and(s.run(k), ks);
    for (const auto& k : ks)
        if (is_false(k))
        {
            c.constraints = {k};
            return false;
        }
    c.constraints = std::move(ks);
    for (auto& p : c.premises)
        for (auto& a : p.args)
            a = s.run(a);
    if (c.head)
        for (auto& a : c.head->args)
            a = s.run(a);
    return true;
}

}  // namespace

bigint int_mod(const bigint& a, const bigint& b)
{
    bigint r = a % b;
    if (r < 0)
        r += b < 0 ? bigint(-b) : b;
    return r;
}

bigint int_div(const bigint& a, const bigint& b)
{
    return (a - int_mod(a, b)) / b;
}

ExprP simplify(const ExprP& e)
{
    return Simplifier().run(e);
}

std::optional<Scalar> as_scalar(const ExprP& e)
{
    if (e->kind == Kind::Int)
        return Scalar::of_int(e->ival);
    if (e->kind == Kind::Bool)
        return Scalar::of_bool(e->bval);
    return std::nullopt;
}

ClauseSet fold_constants(const ClauseSet& cs)
{
    ClauseSet out;
    out.spec = cs.spec;
    out.signatures = cs.signatures;
    out.encoded = cs.encoded;
    Simplifier s;
    for (auto c : cs.clauses)
        if (fold_clause(c, s))
            out.clauses.push_back(std::move(c));
    for (auto g : cs.goals)
    {
        fold_clause(g.clause, s);
        out.goals.push_back(std::move(g));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Value encoding

namespace {

struct Comp {
    std::string suffix;
    TypeP type;
};

class Encoder {
public:
    explicit Encoder(const spec::TypedSpec& s) : spec_(s) {}

    std::vector<Comp> comps(const TypeP& t) const
    {
        switch (t->kind)
        {
        case Type::Kind::Int:
        case Type::Kind::Bool: return {Comp{"", t}};
        case Type::Kind::Array:
        {
            std::vector<Comp> out;
            for (auto& c : comps(t->elem))
                out.push_back(Comp{c.suffix, Type::array(c.type)});
            return out;
        }
        case Type::Kind::Data: break;
        }
        const auto* d = data(t);
        std::vector<Comp> out{Comp{".d", disc_type(*d)}};
        for (const auto& c : d->ctors)
            for (std::size_t i = 0; i < c.fields.size(); ++i)
                for (auto& sub : comps(c.fields[i]))
                    out.push_back(
                        Comp{"." + c.name + "." + std::to_string(i) + sub.suffix, sub.type});
        return out;
    }

    std::size_t width(const TypeP& t) const { return comps(t).size(); }

    GroundClause clause(const GroundClause& c)
    {
        memo_.clear();
        binders_.clear();
        GroundClause out;
        out.origin = c.origin;
        for (const auto& v : c.vars)
            for (const auto& k : comps(v.type))
                out.vars.push_back(TypedName{v.name + k.suffix, k.type});
        for (const auto& k : c.constraints)
            out.constraints.push_back(one(k));
        for (const auto& p : c.premises)
            out.premises.push_back(atom(p));
        if (c.head)
            out.head = atom(*c.head);
        return out;
    }

private:
    const spec::DataDecl* data(const TypeP& t) const
    {
        const auto* d = spec_.datatype(t->name);
        if (d == nullptr)
            throw std::runtime_error("unknown datatype " + t->name);
        return d;
    }

    static TypeP disc_type(const spec::DataDecl& d)
    {
        return d.ctors.size() == 2 ? Type::bool_() : Type::int_();
    }

    static ExprP disc_value(const spec::DataDecl& d, std::size_t idx)
    {
        if (d.ctors.size() == 2)
            return spec::mk_bool(idx != 0);
        return spec::mk_int(static_cast<long>(idx));
    }

    static ExprP disc_is(const spec::DataDecl& d, const ExprP& disc, std::size_t idx)
    {
        if (d.ctors.size() == 2)
            return idx == 0 ? spec::mk_not(disc) : disc;
        return spec::mk_eq(disc, spec::mk_int(static_cast<long>(idx)));
    }

    static ExprP default_value(const TypeP& t)
    {
        if (t->kind == Type::Kind::Bool)
            return spec::mk_bool(false);
        if (t->kind == Type::Kind::Array)
            return spec::mk_const_array(default_value(t->elem), t);
        return spec::mk_int(0);
    }

    /// Offset of constructor `idx`'s first field inside the encoding of `d`.
    std::size_t field_offset(const spec::DataDecl& d, std::size_t idx, std::size_t field) const
    {
        std::size_t off = 1;
        for (std::size_t j = 0; j < d.ctors.size(); ++j)
            for (std::size_t i = 0; i < d.ctors[j].fields.size(); ++i)
            {
                if (j == idx && i == field)
                    return off;
                off += width(d.ctors[j].fields[i]);
            }
        return off;
    }

    Atom atom(const Atom& a)
    {
        Atom out{a.pred, {}};
        for (const auto& x : a.args)
        {
            auto cs = enc(x);
            out.args.insert(out.args.end(), cs.begin(), cs.end());
        }
        return out;
    }

    ExprP one(const ExprP& e)
    {
        auto cs = enc(e);
        if (cs.size() != 1)
            throw std::logic_error("expected a primitive expression");
        return cs[0];
    }

    static std::vector<ExprP> slice(const std::vector<ExprP>& v, std::size_t off, std::size_t n)
    {
        return {v.begin() + static_cast<long>(off), v.begin() + static_cast<long>(off + n)};
    }

    ExprP equal_values(const std::vector<ExprP>& a, const std::vector<ExprP>& b, const TypeP& t)
    {
        if (t->kind != Type::Kind::Data)
        {
            std::vector<ExprP> parts;
            for (std::size_t k = 0; k < a.size(); ++k)
                parts.push_back(spec::mk_eq(a[k], b[k]));
            return spec::mk_and(std::move(parts));
        }
        const auto* d = data(t);
        std::vector<ExprP> parts{spec::mk_eq(a[0], b[0])};
        for (std::size_t j = 0; j < d->ctors.size(); ++j)
        {
            const auto& c = d->ctors[j];
            if (c.fields.empty())
                continue;
            std::vector<ExprP> fields;
            for (std::size_t i = 0; i < c.fields.size(); ++i)
            {
                const std::size_t off = field_offset(*d, j, i);
                const std::size_t n = width(c.fields[i]);
                fields.push_back(equal_values(slice(a, off, n), slice(b, off, n), c.fields[i]));
            }
            parts.push_back(spec::mk_or({spec::mk_not(disc_is(*d, a[0], j)),
                                         spec::mk_and(std::move(fields))}));
        }
        return spec::mk_and(std::move(parts));
    }

    ExprP guard(const PatternP& p, const std::vector<ExprP>& v, const TypeP& t)
    {
        switch (p->kind)
        {
        case Pattern::Kind::Wild: return spec::mk_bool(true);
        case Pattern::Kind::Bind: binders_[p->name] = v; return spec::mk_bool(true);
        case Pattern::Kind::Tuple: throw std::logic_error("tuple pattern below top level");
        case Pattern::Kind::Ctor: break;
        }
        const auto* d = data(t);
        const auto ref = spec_.ctor(p->name);
        const auto& c = d->ctors[ref->index];
        std::vector<ExprP> parts{disc_is(*d, v[0], ref->index)};
        for (std::size_t i = 0; i < p->subs.size(); ++i)
        {
            const std::size_t off = field_offset(*d, ref->index, i);
            parts.push_back(guard(p->subs[i], slice(v, off, width(c.fields[i])), c.fields[i]));
        }
        return spec::mk_and(std::move(parts));
    }

    std::vector<ExprP> enc(const ExprP& e)
    {
        const auto it = memo_.find(e.get());
        if (it != memo_.end())
            return it->second;
        auto r = enc_step(e);
        memo_.emplace(e.get(), r);
        keep_.push_back(e);
        return r;
    }

    std::vector<ExprP> enc_step(const ExprP& e)
    {
        switch (e->kind)
        {
        case Kind::Int:
        case Kind::Bool: return {e};
        case Kind::Var:
        {
            if (e->type->is_primitive())
                return {e};
            std::vector<ExprP> out;
            for (const auto& c : comps(e->type))
                out.push_back(spec::mk_var(e->name + c.suffix, c.type));
            return out;
        }
        case Kind::Local:
        {
            const auto it = binders_.find(e->name);
            if (it == binders_.end())
                throw std::logic_error("unbound local " + e->name + " during encoding");
            return it->second;
        }
        case Kind::Unary: return {spec::mk_unary(e->uop, one(e->args[0]), e->type)};
        case Kind::Binary:
        {
            const TypeP& t = e->args[0]->type;
            if ((e->bop == BinOp::Eq || e->bop == BinOp::Ne) && !t->is_primitive())
            {
                auto eq = equal_values(enc(e->args[0]), enc(e->args[1]), t);
                return {e->bop == BinOp::Eq ? eq : spec::mk_not(eq)};
            }
            return {spec::mk_binary(e->bop, one(e->args[0]), one(e->args[1]), e->type)};
        }
        case Kind::Ite:
        {
            auto c = one(e->args[0]);
            auto a = enc(e->args[1]);
            auto b = enc(e->args[2]);
            std::vector<ExprP> out;
            for (std::size_t k = 0; k < a.size(); ++k)
                out.push_back(spec::mk_ite(c, a[k], b[k], a[k]->type));
            return out;
        }
        case Kind::Select:
        {
            auto a = enc(e->args[0]);
            auto i = one(e->args[1]);
            std::vector<ExprP> out;
            for (const auto& x : a)
                out.push_back(spec::mk_select(x, i, x->type->elem));
            return out;
        }
        case Kind::Store:
        {
            auto a = enc(e->args[0]);
            auto i = one(e->args[1]);
            auto v = enc(e->args[2]);
            std::vector<ExprP> out;
            for (std::size_t k = 0; k < a.size(); ++k)
                out.push_back(spec::mk_store(a[k], i, v[k], a[k]->type));
            return out;
        }
        case Kind::ConstArray:
        {
            std::vector<ExprP> out;
            for (const auto& v : enc(e->args[0]))
                out.push_back(spec::mk_const_array(v, Type::array(v->type)));
            return out;
        }
        case Kind::Ctor:
        {
            const auto ref = spec_.ctor(e->name);
            const auto& d = *ref->data;
            std::vector<ExprP> out{disc_value(d, ref->index)};
            for (std::size_t j = 0; j < d.ctors.size(); ++j)
                for (std::size_t i = 0; i < d.ctors[j].fields.size(); ++i)
                {
                    if (j == ref->index)
                    {
                        auto v = enc(e->args[i]);
                        out.insert(out.end(), v.begin(), v.end());
                    }
                    else
                        for (const auto& c : comps(d.ctors[j].fields[i]))
                            out.push_back(default_value(c.type));
                }
            return out;
        }
        case Kind::Match: return match(e);
        default: break;
        }
        throw std::logic_error("expression kind not expected after instantiation");
    }

    std::vector<ExprP> match(const ExprP& e)
    {
        std::vector<std::vector<ExprP>> scrut;
        for (const auto& a : e->args)
            scrut.push_back(enc(a));
        std::vector<ExprP> guards;
        std::vector<std::vector<ExprP>> bodies;
        for (const auto& arm : e->arms)
        {
            std::vector<ExprP> g;
            for (std::size_t k = 0; k < scrut.size(); ++k)
                g.push_back(guard(arm.pats[k], scrut[k], e->args[k]->type));
            guards.push_back(spec::mk_and(std::move(g)));
            bodies.push_back(enc(arm.body));
        }
        auto out = bodies.back();
        for (std::size_t a = bodies.size() - 1; a-- > 0;)
            for (std::size_t k = 0; k < out.size(); ++k)
                out[k] = spec::mk_ite(guards[a], bodies[a][k], out[k], out[k]->type);
        return out;
    }

    const spec::TypedSpec& spec_;
    std::unordered_map<const Expr*, std::vector<ExprP>> memo_;
    std::vector<ExprP> keep_;
    std::map<std::string, std::vector<ExprP>> binders_;
};

}  // namespace

std::vector<TypeP> encoded_types(const spec::TypedSpec& spec, const TypeP& t)
{
    std::vector<TypeP> out;
    for (const auto& c : Encoder(spec).comps(t))
        out.push_back(c.type);
    return out;
}

ClauseSet encode_values(const ClauseSet& cs)
{
    if (cs.encoded)
        return cs;
    if (!cs.spec)
        throw std::logic_error("encode_values needs the datatype declarations");
    Encoder enc(*cs.spec);
    ClauseSet out;
    out.spec = cs.spec;
    out.encoded = true;
    for (const auto& [p, types] : cs.signatures)
    {
        auto& v = out.signatures[p];
        for (const auto& t : types)
        {
            auto ts = encoded_types(*cs.spec, t);
            v.insert(v.end(), ts.begin(), ts.end());
        }
    }
    for (const auto& c : cs.clauses)
        out.clauses.push_back(enc.clause(c));
    for (const auto& g : cs.goals)
    {
        QueryGoal n = g;
        n.clause = enc.clause(g.clause);
        out.goals.push_back(std::move(n));
    }
    return out;
}

}  // namespace evmhorn::chc
