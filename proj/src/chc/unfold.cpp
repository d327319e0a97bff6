#include "evmhorn/chc/unfold.hpp"

#include "evmhorn/chc/passes.hpp"

#include <algorithm>
#include <functional>

namespace evmhorn::chc {

namespace {

using spec::Expr;
using Kind = Expr::Kind;

void add_constraint(GroundClause& c, const ExprP& k, bool& dead)
{
    const auto s = simplify(k);
    if (spec::is_true(s))
        return;
    if (spec::is_false(s))
        dead = true;
    c.constraints.push_back(s);
}

/// Resolves premise `pos` of `c` against producer `d`. Returns nullopt when a
/// constraint folds to false.
std::optional<GroundClause> resolve(const GroundClause& c, std::size_t pos, const GroundClause& d)
{
    std::set<std::string> taken;
    for (const auto& v : c.vars)
        taken.insert(v.name);

    // Rename clashing producer variables.
    std::map<std::string, ExprP> rename;
    std::vector<TypedName> dvars;
    std::size_t counter = 0;
    for (const auto& v : d.vars)
    {
        TypedName n = v;
        if (taken.count(n.name) != 0)
        {
            do
                n.name = v.name + "_" + std::to_string(++counter);
            while (taken.count(n.name) != 0);
            rename[v.name] = spec::mk_var(n.name, v.type);
        }
        taken.insert(n.name);
        dvars.push_back(std::move(n));
    }

    const Atom& use = c.premises[pos];
    std::map<std::string, ExprP> sub;
    std::vector<std::pair<ExprP, ExprP>> eqs;
    for (std::size_t j = 0; j < use.args.size(); ++j)
    {
        auto h = substitute(substitute(d.head->args[j], rename), sub);
        const bool own = h->kind == Kind::Var &&
                         std::any_of(dvars.begin(), dvars.end(),
                                     [&](const TypedName& v) { return v.name == h->name; });
        if (own && sub.count(h->name) == 0)
            sub[h->name] = use.args[j];
        else
            eqs.emplace_back(use.args[j], h);
    }

    GroundClause out;
    out.origin = c.origin;
    out.vars = c.vars;
    for (const auto& v : dvars)
        if (sub.count(v.name) == 0)
            out.vars.push_back(v);
    bool dead = false;
    auto full = [&](const ExprP& e) { return substitute(substitute(e, rename), sub); };
    for (const auto& k : d.constraints)
        add_constraint(out, full(k), dead);
    for (const auto& [a, h] : eqs)
        add_constraint(out, spec::mk_eq(a, substitute(h, sub)), dead);
    for (const auto& k : c.constraints)
        add_constraint(out, k, dead);
    if (dead)
        return std::nullopt;
    for (std::size_t i = 0; i < c.premises.size(); ++i)
    {
        if (i != pos)
        {
            out.premises.push_back(c.premises[i]);
            continue;
        }
        for (const auto& p : d.premises)
        {
            Atom a{p.pred, {}};
            for (const auto& x : p.args)
                a.args.push_back(full(x));
            out.premises.push_back(std::move(a));
        }
    }
    out.head = c.head;
    return out;
}

bool uses(const GroundClause& c, const PredicateId& p)
{
    return std::any_of(c.premises.begin(), c.premises.end(),
                       [&](const Atom& a) { return a.pred == p; });
}

/// All resolvents of `c` with every occurrence of `p` expanded.
void expand(const GroundClause& c, const PredicateId& p, const std::vector<const GroundClause*>& ds,
            std::vector<GroundClause>& out)
{
    std::size_t pos = 0;
    while (pos < c.premises.size() && !(c.premises[pos].pred == p))
        ++pos;
    if (pos == c.premises.size())
    {
        out.push_back(c);
        return;
    }
    for (const auto* d : ds)
        if (auto r = resolve(c, pos, *d))
            expand(*r, p, ds, out);
}

void prune_signatures(ClauseSet& cs)
{
    std::set<PredicateId> live;
    for (const auto& c : cs.clauses)
    {
        if (c.head)
            live.insert(c.head->pred);
        for (const auto& a : c.premises)
            live.insert(a.pred);
    }
    for (const auto& g : cs.goals)
        for (const auto& a : g.clause.premises)
            live.insert(a.pred);
    for (auto it = cs.signatures.begin(); it != cs.signatures.end();)
        it = live.count(it->first) != 0 ? std::next(it) : cs.signatures.erase(it);
}

}  // namespace

ClauseSet unfold_predicate(const ClauseSet& cs, const PredicateId& p)
{
    std::vector<const GroundClause*> ds;
    for (const auto& c : cs.clauses)
        if (c.head && c.head->pred == p)
        {
            if (uses(c, p))
                throw RecursivePredicate(p);
            ds.push_back(&c);
        }
    ClauseSet out;
    out.spec = cs.spec;
    out.encoded = cs.encoded;
    out.signatures = cs.signatures;
    out.signatures.erase(p);
    for (const auto& c : cs.clauses)
    {
        if (c.head && c.head->pred == p)
            continue;
        expand(c, p, ds, out.clauses);
    }
    for (const auto& g : cs.goals)
    {
        std::vector<GroundClause> rs;
        expand(g.clause, p, ds, rs);
        if (rs.empty())
        {
            // No derivation reaches the goal any more.
            QueryGoal n = g;
            n.clause.premises.clear();
            n.clause.constraints = {spec::mk_bool(false)};
            out.goals.push_back(std::move(n));
            continue;
        }
        for (auto& r : rs)
        {
            QueryGoal n = g;
            n.clause = std::move(r);
            out.goals.push_back(std::move(n));
        }
    }
    return out;
}

std::set<PredicateId> protected_predicates(const ClauseSet& cs)
{
    std::set<PredicateId> out;
    for (const auto& g : cs.goals)
        for (const auto& a : g.clause.premises)
            out.insert(a.pred);
    for (const auto& c : cs.clauses)
        if (c.head && c.premises.empty())
            out.insert(c.head->pred);
    return out;
}

ClauseSet fold_linear(const ClauseSet& cs, const std::set<PredicateId>& extra_protected)
{
    auto prot = protected_predicates(cs);
    prot.insert(extra_protected.begin(), extra_protected.end());

    std::vector<std::optional<GroundClause>> cl(cs.clauses.begin(), cs.clauses.end());
    std::map<PredicateId, std::vector<std::size_t>> producers;
    std::map<PredicateId, std::size_t> use_count;
    std::map<PredicateId, std::size_t> user;
    for (std::size_t i = 0; i < cl.size(); ++i)
    {
        if (cl[i]->head)
            producers[cl[i]->head->pred].push_back(i);
        for (const auto& a : cl[i]->premises)
        {
            ++use_count[a.pred];
            user[a.pred] = i;
        }
    }
    for (const auto& g : cs.goals)
        for (const auto& a : g.clause.premises)
            use_count[a.pred] += 2;  // goal uses are never folded

    for (const auto& [p, n] : use_count)
    {
        if (n != 1 || prot.count(p) != 0)
            continue;
        const auto pit = producers.find(p);
        if (pit == producers.end() || pit->second.size() != 1)
            continue;
        const std::size_t d = pit->second[0];
        const std::size_t c = user.at(p);
        if (d == c || !cl[d] || !cl[c])
            continue;
        std::size_t pos = 0;
        while (!(cl[c]->premises[pos].pred == p))
            ++pos;
        auto r = resolve(*cl[c], pos, *cl[d]);
        for (const auto& a : cl[d]->premises)
            user[a.pred] = c;
        cl[d].reset();
        if (r)
            cl[c] = std::move(*r);
        else
            cl[c].reset();
    }

    ClauseSet out;
    out.spec = cs.spec;
    out.encoded = cs.encoded;
    out.signatures = cs.signatures;
    out.goals = cs.goals;
    for (auto& c : cl)
        if (c)
            out.clauses.push_back(std::move(*c));
    prune_signatures(out);
    return out;
}

namespace {

/// Predicates lying on a dependency cycle (including self-loops).
std::set<PredicateId> cyclic_predicates(const ClauseSet& cs)
{
    std::map<PredicateId, std::set<PredicateId>> succ;
    std::set<PredicateId> nodes;
    for (const auto& c : cs.clauses)
    {
        if (!c.head)
            continue;
        nodes.insert(c.head->pred);
        for (const auto& a : c.premises)
        {
            succ[a.pred].insert(c.head->pred);
            nodes.insert(a.pred);
        }
    }
    // Tarjan's algorithm, iterative over an explicit stack.
    std::map<PredicateId, int> index, low;
    std::set<PredicateId> on_stack;
    std::vector<PredicateId> stack;
    std::set<PredicateId> out;
    int next = 0;
    for (const auto& root : nodes)
    {
        if (index.count(root) != 0)
            continue;
        struct Frame {
            PredicateId v;
            std::vector<PredicateId> todo;
        };
        std::vector<Frame> frames;
        auto push = [&](const PredicateId& v) {
            index[v] = low[v] = next++;
            stack.push_back(v);
            on_stack.insert(v);
            const auto& s = succ[v];
            frames.push_back(Frame{v, {s.begin(), s.end()}});
        };
        push(root);
        while (!frames.empty())
        {
            auto& f = frames.back();
            if (!f.todo.empty())
            {
                const PredicateId w = f.todo.back();
                f.todo.pop_back();
                if (index.count(w) == 0)
                    push(w);
                else if (on_stack.count(w) != 0)
                    low[f.v] = std::min(low[f.v], index[w]);
                continue;
            }
            const PredicateId v = f.v;
            frames.pop_back();
            if (!frames.empty())
                low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            if (low[v] != index[v])
                continue;
            std::vector<PredicateId> comp;
            while (true)
            {
                PredicateId w = stack.back();
                stack.pop_back();
                on_stack.erase(w);
                comp.push_back(w);
                if (w == v)
                    break;
            }
            if (comp.size() > 1 || succ[v].count(v) != 0)
                out.insert(comp.begin(), comp.end());
        }
    }
    return out;
}

}  // namespace

ClauseSet fold_exhaustive(const ClauseSet& cs, std::size_t cap,
                          const std::set<PredicateId>& extra_protected)
{
    ClauseSet cur = fold_linear(cs, extra_protected);
    auto prot = protected_predicates(cur);
    prot.insert(extra_protected.begin(), extra_protected.end());
    const auto cyclic = cyclic_predicates(cur);
    std::set<PredicateId> skipped;
    while (true)
    {
        std::map<PredicateId, std::size_t> fan_in, fan_out;
        for (const auto& c : cur.clauses)
        {
            if (c.head)
                ++fan_in[c.head->pred];
            for (const auto& a : c.premises)
                ++fan_out[a.pred];
        }
        std::optional<PredicateId> best;
        std::size_t best_cost = 0;
        auto consider = [&](const PredicateId& p) {
            if (prot.count(p) != 0 || cyclic.count(p) != 0 || skipped.count(p) != 0)
                return;
            const std::size_t cost = fan_in[p] * fan_out[p];
            if (!best || cost < best_cost)
            {
                best = p;
                best_cost = cost;
            }
        };
        for (const auto& [p, n] : fan_in)
            consider(p);
        for (const auto& [p, n] : fan_out)
            consider(p);
        if (!best)
            break;
        try
        {
            cur = unfold_predicate(cur, *best);
        }
        catch (const RecursivePredicate&)
        {
            skipped.insert(*best);
            continue;
        }
        if (cur.clauses.size() > cap)
            throw ClauseBlowup(cur.clauses.size());
    }
    prune_signatures(cur);
    return cur;
}

}  // namespace evmhorn::chc
