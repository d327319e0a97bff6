#include "evmhorn/spec/selectors.hpp"

namespace evmhorn::spec {

void TableSelectorProvider::add(std::string name, SelectorSignature s, Fn fn)
{
    entries_[std::move(name)] = Entry{std::move(s), std::move(fn)};
}

void TableSelectorProvider::add_rows(std::string name, SelectorSignature s,
                                     std::vector<ScalarTuple> rows)
{
    add(std::move(name), std::move(s), [rows = std::move(rows)](const ScalarTuple&) {
        return rows;
    });
}

void TableSelectorProvider::add_table(std::string name, SelectorSignature s,
                                      std::map<ScalarTuple, std::vector<ScalarTuple>> table)
{
    add(std::move(name), std::move(s), [table = std::move(table)](const ScalarTuple& in) {
        const auto it = table.find(in);
        return it == table.end() ? std::vector<ScalarTuple>{} : it->second;
    });
}

std::optional<SelectorSignature> TableSelectorProvider::signature(const std::string& name) const
{
    const auto it = entries_.find(name);
    if (it == entries_.end())
        return std::nullopt;
    return it->second.sig;
}

std::vector<ScalarTuple> TableSelectorProvider::call(const std::string& name,
                                                     const ScalarTuple& args) const
{
    const auto it = entries_.find(name);
    if (it == entries_.end())
        throw MissingSelector(name);
    return it->second.fn(args);
}

std::vector<std::string> TableSelectorProvider::names() const
{
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_)
        out.push_back(k);
    return out;
}

MissingSelector::MissingSelector(std::string n)
  : std::runtime_error("missing selector implementation: " + n), name(std::move(n))
{}

SignatureMismatch::SignatureMismatch(std::string n, const std::string& detail)
  : std::runtime_error("selector " + n + " signature mismatch: " + detail), name(std::move(n))
{}

namespace {

std::string render(const std::vector<TypeP>& ts)
{
    std::string out = "(";
    for (std::size_t i = 0; i < ts.size(); ++i)
        out += (i ? "," : "") + to_string(ts[i]);
    return out + ")";
}

bool same(const std::vector<TypeP>& a, const std::vector<TypeP>& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!same_type(a[i], b[i]))
            return false;
    return true;
}

bool fits(const ScalarTuple& row, const std::vector<TypeP>& types)
{
    if (row.size() != types.size())
        return false;
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i].is_bool != (types[i]->kind == Type::Kind::Bool))
            return false;
    return true;
}

}  // namespace

std::vector<ScalarTuple> BoundSpec::call(const std::string& name, const ScalarTuple& args) const
{
    const SelDecl* d = spec->sel(name);
    if (d == nullptr)
        throw MissingSelector(name);
    if (!fits(args, d->inputs))
        throw SignatureMismatch(name, "arguments do not match " + render(d->inputs));
    auto rows = provider->call(name, args);
    for (const auto& r : rows)
        if (!fits(r, d->outputs))
            throw SignatureMismatch(name, "returned tuple does not match " + render(d->outputs));
    return rows;
}

BoundSpec bind_selectors(std::shared_ptr<const TypedSpec> spec,
                         std::shared_ptr<const SelectorProvider> provider)
{
    for (const auto& d : spec->ast.sels)
    {
        const auto s = provider->signature(d.name);
        if (!s)
            throw MissingSelector(d.name);
        if (!same(s->inputs, d.inputs) || !same(s->outputs, d.outputs))
            throw SignatureMismatch(d.name, "declared " + render(d.inputs) + " -> [" +
                                                render(d.outputs) + "], provided " +
                                                render(s->inputs) + " -> [" +
                                                render(s->outputs) + "]");
    }
    return BoundSpec{std::move(spec), std::move(provider)};
}

SelectorSignature sig(std::string_view inputs, std::string_view outputs)
{
    auto conv = [](std::string_view s) {
        std::vector<TypeP> out;
        for (char c : s)
            out.push_back(c == 'b' ? Type::bool_() : Type::int_());
        return out;
    };
    return SelectorSignature{conv(inputs), conv(outputs)};
}

}  // namespace evmhorn::spec
