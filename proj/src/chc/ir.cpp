#include "evmhorn/chc/ir.hpp"

#include "evmhorn/spec/parser.hpp"

#include <cctype>
#include <sstream>

namespace evmhorn::chc {

using Kind = spec::Expr::Kind;

std::string PredicateId::mangle() const
{
    std::string out;
    for (char c : base)
        out += std::isalnum(static_cast<unsigned char>(c)) != 0 ? c : '_';
    for (const auto& p : params)
    {
        out += '_';
        if (p.is_bool)
            out += p.b ? "true" : "false";
        else if (p.i < 0)
            out += "m" + bigint(-p.i).str();
        else
            out += p.i.str();
    }
    return out;
}

std::string to_string(const PredicateId& p)
{
    std::string out = p.base + "{";
    for (std::size_t i = 0; i < p.params.size(); ++i)
        out += (i ? "," : "") + spec::to_string(p.params[i]);
    return out + "}";
}

std::size_t ClauseSet::producers(const PredicateId& p) const
{
    std::size_t n = 0;
    for (const auto& c : clauses)
        if (c.head && c.head->pred == p)
            ++n;
    return n;
}

SelectorDivergence::SelectorDivergence(const std::string& what)
  : std::runtime_error("selector divergence: " + what)
{}

RecursivePredicate::RecursivePredicate(PredicateId p)
  : std::runtime_error("cannot unfold self-recursive predicate " + to_string(p)),
    pred(std::move(p))
{}

ClauseBlowup::ClauseBlowup(std::size_t n)
  : std::runtime_error("clause count exceeded cap (" + std::to_string(n) + ")")
{}

namespace {

std::string atom_text(const Atom& a)
{
    std::string out = a.pred.mangle() + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i)
        out += (i ? ", " : "") + spec::print_expr(a.args[i]);
    return out + ")";
}

}  // namespace

std::string dump(const GroundClause& c)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c.vars.size(); ++i)
        os << (i ? ", " : "") << c.vars[i].name << ": " << spec::to_string(c.vars[i].type);
    os << "]";
    bool first = true;
    for (const auto& p : c.premises)
    {
        os << (first ? " " : ", ") << atom_text(p);
        first = false;
    }
    for (const auto& k : c.constraints)
    {
        os << (first ? " " : ", ") << spec::print_expr(k);
        first = false;
    }
    if (first)
        os << " true";
    os << " => " << (c.head ? atom_text(*c.head) : "false");
    return os.str();
}

std::string dump(const ClauseSet& cs)
{
    std::ostringstream os;
    for (const auto& [p, types] : cs.signatures)
    {
        os << "pred " << p.mangle() << "(";
        for (std::size_t i = 0; i < types.size(); ++i)
            os << (i ? ", " : "") << spec::to_string(types[i]);
        os << ")\n";
    }
    for (const auto& c : cs.clauses)
        os << "clause " << c.origin << " " << dump(c) << "\n";
    for (const auto& g : cs.goals)
    {
        os << (g.is_test ? "test " : "query ") << g.name;
        if (g.is_test)
            os << " expect " << (g.expect_sat ? "SAT" : "UNSAT");
        os << " {";
        for (std::size_t i = 0; i < g.params.size(); ++i)
            os << (i ? "," : "") << spec::to_string(g.params[i]);
        os << "} " << dump(g.clause) << "\n";
    }
    return os.str();
}

void free_vars(const ExprP& e, std::map<std::string, TypeP>& out)
{
    if (e->kind == Kind::Var)
    {
        out.emplace(e->name, e->type);
        return;
    }
    for (const auto& a : e->args)
        free_vars(a, out);
    for (const auto& a : e->params)
        free_vars(a, out);
    for (const auto& arm : e->arms)
        free_vars(arm.body, out);
}

namespace {

ExprP subst(const ExprP& e, const std::map<std::string, ExprP>& sub, Kind kind)
{
    if (e->kind == kind)
    {
        const auto it = sub.find(e->name);
        return it == sub.end() ? e : it->second;
    }
    if (e->args.empty() && e->params.empty() && e->arms.empty())
        return e;
    bool changed = false;
    auto n = std::make_shared<spec::Expr>(*e);
    for (auto& a : n->args)
    {
        auto r = subst(a, sub, kind);
        changed |= r != a;
        a = r;
    }
    for (auto& a : n->params)
    {
        auto r = subst(a, sub, kind);
        changed |= r != a;
        a = r;
    }
    for (auto& arm : n->arms)
    {
        auto r = subst(arm.body, sub, kind);
        changed |= r != arm.body;
        arm.body = r;
    }
    return changed ? n : e;
}

}  // namespace

ExprP substitute(const ExprP& e, const std::map<std::string, ExprP>& sub)
{
    if (sub.empty())
        return e;
    return subst(e, sub, Kind::Var);
}

ExprP substitute_locals(const ExprP& e, const std::map<std::string, ExprP>& sub)
{
    if (sub.empty())
        return e;
    return subst(e, sub, Kind::Local);
}

}  // namespace evmhorn::chc
