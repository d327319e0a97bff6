#include "evmhorn/backend/smtlib.hpp"

#include <cctype>
#include <sstream>

namespace evmhorn::backend {

namespace {

using chc::bigint;
using spec::BinOp;
using spec::Expr;
using spec::Type;
using spec::TypeP;
using spec::UnOp;
using Kind = Expr::Kind;

std::string sort(const TypeP& t)
{
    switch (t->kind)
    {
    case Type::Kind::Int: return "Int";
    case Type::Kind::Bool: return "Bool";
    case Type::Kind::Array: return "(Array Int " + sort(t->elem) + ")";
    case Type::Kind::Data: break;
    }
    throw NonPrimitiveType("datatype " + t->name + " reached smt-lib emission; run encode_values");
}

std::string int_lit(const bigint& v)
{
    return v < 0 ? "(- " + bigint(-v).str() + ")" : v.str();
}

std::string op_name(BinOp op)
{
    switch (op)
    {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "div";
    case BinOp::Mod: return "mod";
    case BinOp::Eq: return "=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::And: return "and";
    case BinOp::Or: return "or";
    case BinOp::Ne: break;
    }
    return "distinct";
}

void render(std::ostream& os, const spec::ExprP& e)
{
    switch (e->kind)
    {
    case Kind::Int: os << int_lit(e->ival); return;
    case Kind::Bool: os << (e->bval ? "true" : "false"); return;
    case Kind::Var: os << smt_symbol(e->name); return;
    case Kind::Unary:
        os << (e->uop == UnOp::Neg ? "(- " : "(not ");
        render(os, e->args[0]);
        os << ")";
        return;
    case Kind::Binary:
        os << "(" << op_name(e->bop) << " ";
        render(os, e->args[0]);
        os << " ";
        render(os, e->args[1]);
        os << ")";
        return;
    case Kind::Ite:
    case Kind::Select:
    case Kind::Store:
        os << (e->kind == Kind::Ite ? "(ite" : e->kind == Kind::Select ? "(select" : "(store");
        for (const auto& a : e->args)
        {
            os << " ";
            render(os, a);
        }
        os << ")";
        return;
    case Kind::ConstArray:
        os << "((as const " << sort(e->type) << ") ";
        render(os, e->args[0]);
        os << ")";
        return;
    default: break;
    }
    throw NonPrimitiveType("expression not expressible in smt-lib: " + to_string(e->type));
}

void clause(std::ostream& os, const chc::GroundClause& c)
{
    std::vector<std::string> parts;
    for (const auto& k : c.constraints)
        parts.push_back(smt_expr(k));
    for (const auto& a : c.premises)
    {
        std::string s = a.args.empty() ? smt_symbol(a.pred.mangle())
                                       : "(" + smt_symbol(a.pred.mangle());
        for (const auto& x : a.args)
            s += " " + smt_expr(x);
        parts.push_back(a.args.empty() ? s : s + ")");
    }
    std::string body;
    if (parts.empty())
        body = "true";
    else if (parts.size() == 1)
        body = parts[0];
    else
    {
        body = "(and";
        for (const auto& p : parts)
            body += " " + p;
        body += ")";
    }
    std::string head = "false";
    if (c.head)
    {
        head = c.head->args.empty() ? smt_symbol(c.head->pred.mangle())
                                    : "(" + smt_symbol(c.head->pred.mangle());
        for (const auto& x : c.head->args)
            head += " " + smt_expr(x);
        if (!c.head->args.empty())
            head += ")";
    }
    const std::string impl = body == "true" ? head : "(=> " + body + " " + head + ")";
    if (c.vars.empty())
    {
        os << "(assert " << impl << ")\n";
        return;
    }
    os << "(assert (forall (";
    for (std::size_t i = 0; i < c.vars.size(); ++i)
        os << (i ? " " : "") << "(" << smt_symbol(c.vars[i].name) << " " << sort(c.vars[i].type)
           << ")";
    os << ") " << impl << "))\n";
}

}  // namespace

std::string smt_symbol(const std::string& s)
{
    static const std::string extra = "~!@$%^&*_-+=<>.?/";
    bool simple = !s.empty() && !std::isdigit(static_cast<unsigned char>(s[0]));
    for (char ch : s)
        simple = simple && (std::isalnum(static_cast<unsigned char>(ch)) != 0 ||
                            extra.find(ch) != std::string::npos);
    return simple ? s : "|" + s + "|";
}

std::string smt_expr(const spec::ExprP& e)
{
    std::ostringstream os;
    render(os, e);
    return os.str();
}

SmtScript emit_smtlib(const chc::ClauseSet& cs, const chc::QueryGoal& goal)
{
    std::ostringstream os;
    os << "(set-logic HORN)\n";
    for (const auto& [p, types] : cs.signatures)
    {
        os << "(declare-fun " << smt_symbol(p.mangle()) << " (";
        for (std::size_t i = 0; i < types.size(); ++i)
            os << (i ? " " : "") << sort(types[i]);
        os << ") Bool)\n";
    }
    for (const auto& c : cs.clauses)
        clause(os, c);
    os << "; goal " << goal.name << "\n";
    clause(os, goal.clause);
    os << "(check-sat)\n";
    return SmtScript{os.str()};
}

}  // namespace evmhorn::backend
