#include "evmhorn/app/vmtest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace evmhorn::app {

namespace fs = std::filesystem;
using backend::Verdict;

namespace {

word parse_word(const nlohmann::json& v)
{
    if (v.is_number_unsigned())
        return word(v.get<std::uint64_t>());
    if (!v.is_string())
        throw std::invalid_argument("storage entries must be strings or numbers");
    const auto s = v.get<std::string>();
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0)
    {
        const std::string digits = s.substr(2);
        return digits.empty() ? word(0) : word("0x" + digits);
    }
    return word(s);
}

std::map<word, word> parse_storage(const nlohmann::json& j)
{
    std::map<word, word> out;
    for (const auto& [k, v] : j.items())
    {
        const word val = parse_word(v);
        if (val != 0)
            out[parse_word(nlohmann::json(k))] = val;
    }
    return out;
}

nlohmann::json read_json(const fs::path& p)
{
    std::ifstream in(p);
    if (!in)
        throw std::runtime_error("cannot read " + p.string());
    return nlohmann::json::parse(in);
}

bool is_case(const nlohmann::json& j)
{
    return j.is_object() && (j.contains("code") || j.contains("asm"));
}

}  // namespace

VmTestCase parse_vmtest(const nlohmann::json& j, const std::string& fallback_name)
{
    VmTestCase c;
    c.name = j.value("name", fallback_name);
    if (j.contains("code"))
        c.code = evm::parse_hex(j.at("code").get<std::string>());
    else
        c.code = evm::assemble(j.at("asm").get<std::string>());
    if (j.contains("preStorage"))
        c.pre_storage = parse_storage(j.at("preStorage"));
    if (j.contains("postStorage") && !j.at("postStorage").is_null())
        c.post_storage = parse_storage(j.at("postStorage"));
    if (j.contains("lastPc"))
        c.last_pc = j.at("lastPc").get<std::size_t>();
    return c;
}

std::vector<VmTestCase> load_vmtests(const std::vector<std::string>& inputs)
{
    std::vector<VmTestCase> out;
    for (const auto& in : inputs)
    {
        const fs::path p(in);
        if (fs::is_directory(p))
        {
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(p))
                if (e.path().extension() == ".json")
                    files.push_back(e.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files)
                out.push_back(parse_vmtest(read_json(f), f.stem().string()));
            continue;
        }
        const auto j = read_json(p);
        if (is_case(j))
        {
            out.push_back(parse_vmtest(j, p.stem().string()));
            continue;
        }
        const auto& list = j.is_object() ? j.at("cases") : j;
        if (!list.is_array())
            throw std::invalid_argument("malformed manifest " + in);
        std::vector<std::string> nested;
        for (const auto& e : list)
        {
            if (is_case(e))
                out.push_back(parse_vmtest(e, p.stem().string() + "#" + std::to_string(out.size())));
            else
                nested.push_back((p.parent_path() / e.get<std::string>()).string());
        }
        auto more = load_vmtests(nested);
        out.insert(out.end(), more.begin(), more.end());
    }
    return out;
}

VmTestResult run_vmtest(const VmTestCase& c, const RunOptions& opts)
{
    VmTestResult r;
    r.name = c.name;
    try
    {
        const evm::Bytecode b(c.code);
        auto prep = absem::prepare_contract(b);
        if (!prep.cfg.resolved())
        {
            r.error = "unresolvable jump at pc " + std::to_string(*prep.cfg.unresolved_pc);
            return r;
        }
        absem::add_vmtest_selectors(*prep.provider, 0, c.pre_storage, c.post_storage);
        const auto cs = absem::generate_clauses(b, prep.provider, absem::Mode::base,
                                                absem::make_vmtest_harness());
        const auto vs = solve(cs, opts);
        for (std::size_t i = 0; i < cs.goals.size(); ++i)
            r.verdicts[cs.goals[i].name] = vs[i];
    }
    catch (const std::exception& e)
    {
        r.error = e.what();
        return r;
    }
    r.terminated = std::none_of(r.verdicts.begin(), r.verdicts.end(), [](const auto& kv) {
        return kv.second.status == Verdict::Status::Unknown;
    });
    if (!r.terminated)
        return r;
    if (c.post_storage)
    {
        // An inexact Reachable does not count as a successful SAT test.
        const auto& cv = r.verdicts.at("correctValues");
        const auto& uv = r.verdicts.at("uniqueValues");
        r.correct = cv.status == Verdict::Status::Reachable && cv.exact;
        r.precise = r.correct && uv.status == Verdict::Status::Unreachable;
    }
    else
    {
        r.correct = true;
        r.precise = r.verdicts.at("irregularHalt").status == Verdict::Status::Unreachable;
    }
    return r;
}

VmTestSummary run_vmtests(const std::vector<VmTestCase>& cases, const RunOptions& opts)
{
    VmTestSummary s;
    for (const auto& c : cases)
    {
        auto r = run_vmtest(c, opts);
        s.terminated += r.terminated;
        s.correct += r.correct;
        s.precise += r.precise;
        s.results.push_back(std::move(r));
    }
    return s;
}

nlohmann::ordered_json to_json(const VmTestSummary& s)
{
    using nlohmann::ordered_json;
    ordered_json cases = ordered_json::array();
    for (const auto& r : s.results)
    {
        ordered_json tests = ordered_json::object();
        for (const auto& [name, v] : r.verdicts)
            tests[name] = {{"verdict", backend::to_string(v.status)},
                           {"label", backend::sat_label(v)},
                           {"exact", v.exact},
                           {"wallSeconds", v.wall_seconds}};
        ordered_json c = {{"name", r.name},
                          {"terminated", r.terminated},
                          {"correct", r.correct},
                          {"precise", r.precise},
                          {"tests", tests}};
        if (!r.error.empty())
            c["error"] = r.error;
        cases.push_back(std::move(c));
    }
    return ordered_json{{"reportVersion", report_version},
                        {"summary",
                         {{"total", s.results.size()},
                          {"terminated", s.terminated},
                          {"correct", s.correct},
                          {"precise", s.precise}}},
                        {"cases", cases}};
}

int exit_code(const VmTestSummary& s)
{
    bool unterminated = false;
    for (const auto& r : s.results)
    {
        if (r.terminated && !r.correct)
            return 1;
        unterminated = unterminated || !r.terminated;
    }
    return unterminated ? 2 : 0;
}

}  // namespace evmhorn::app
