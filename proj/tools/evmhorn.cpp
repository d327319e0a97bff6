// Command-line driver: analyze, compile, vmtest, cfg and fetch.

#include "evmhorn/app/compile.hpp"
#include "evmhorn/app/fetch.hpp"
#include "evmhorn/app/pipeline.hpp"
#include "evmhorn/app/vmtest.hpp"
#include "evmhorn/pre/cfg.hpp"
#include "evmhorn/spec/parser.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace evmhorn;
namespace fs = std::filesystem;

namespace {

constexpr int exit_rejected = 3;
constexpr int exit_internal = 4;

std::string read_text(const std::string& path)
{
    if (path == "-")
    {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// A hex literal, or a file holding hex text or assembly (*.asm, or when `as_asm` is set).
bytes load_code(const std::string& arg, bool as_asm)
{
    const bool is_file = arg == "-" || fs::is_regular_file(arg);
    const std::string text = is_file ? read_text(arg) : arg;
    if (as_asm || (is_file && fs::path(arg).extension() == ".asm"))
        return evm::assemble(text);
    return evm::parse_hex(text);
}

struct Common {
    std::string solver = "z3";
    double timeout = 60;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string folding = "none";
    std::string engine = "external";
    std::string dump_ir;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--solver", solver, "Horn solver command")->envname("EVMHORN_SOLVER");
        cmd->add_option("--timeout", timeout, "Seconds per query")
            ->envname("EVMHORN_TIMEOUT")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--jobs", jobs, "Queries solved in parallel")
            ->envname("EVMHORN_JOBS")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--folding", folding, "Clause folding mode")
            ->envname("EVMHORN_FOLDING")
            ->check(CLI::IsMember({"none", "linear", "exhaustive", "all"}));
        cmd->add_option("--engine", engine, "external solver or internal evaluator")
            ->envname("EVMHORN_ENGINE")
            ->check(CLI::IsMember({"external", "internal"}));
        cmd->add_option("--dump-ir", dump_ir, "Directory for clause-set snapshots per stage");
    }

    app::RunOptions options() const
    {
        app::RunOptions o;
        o.solver = solver;
        o.timeout_seconds = timeout;
        o.jobs = jobs;
        o.folding = app::parse_folding(folding);
        o.engine = app::parse_engine(engine);
        o.dump_ir_dir = dump_ir;
        return o;
    }
};

void write_scripts(const app::CompileResult& r, const std::string& out_dir)
{
    if (out_dir.empty())
    {
        for (const auto& s : r.scripts)
            std::cout << "; " << s.file_name << "\n" << s.text;
        if (r.scripts.empty())
            std::cout << chc::dump(r.clauses);
        return;
    }
    fs::create_directories(out_dir);
    for (const auto& s : r.scripts)
        std::ofstream(fs::path(out_dir) / s.file_name) << s.text;
    std::cerr << r.scripts.size() << " script(s) written to " << out_dir << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App cli{"Horn-clause based static analyzer for EVM bytecode"};
    cli.require_subcommand(1);

    Common analyze_opts;
    std::string analyze_input, property = "reentrancy";
    bool analyze_asm = false, calldata = false;
    auto* analyze = cli.add_subcommand("analyze", "Check reentrancy or assertion queries");
    analyze->add_option("input", analyze_input, "Hex code, or a file with hex or assembly")
        ->required();
    analyze->add_option("--property", property, "reentrancy or assertions")
        ->check(CLI::IsMember({"reentrancy", "assertions"}));
    analyze->add_flag("--asm", analyze_asm, "Input is assembly");
    analyze->add_flag("--calldata", calldata, "Use the call-data extension of the semantics");
    analyze_opts.attach(analyze);

    app::CompileRequest creq;
    std::vector<std::string> spec_files, properties;
    std::string bundled, code_arg, facts_file, out_dir, init;
    bool compile_asm = false;
    auto* compile = cli.add_subcommand("compile", "Compile a specification to smt-lib scripts");
    compile->add_option("specs", spec_files, "Specification files");
    compile->add_option("--bundled", bundled, "Prepend a bundled specification")
        ->check(CLI::IsMember({"base", "calldata"}));
    compile->add_option("--code", code_arg, "Contract feeding the pre-analysis selectors");
    compile->add_flag("--asm", compile_asm, "Contract is assembly");
    compile->add_option("--facts", facts_file, "JSON selector tables");
    compile->add_option("--init", init, "Add an initialization rule")
        ->check(CLI::IsMember({"fresh"}));
    compile->add_option("--property", properties, "Add reentrancy or assertions queries")
        ->check(CLI::IsMember({"reentrancy", "assertions"}));
    compile->add_option("-o,--out", out_dir, "Output directory (stdout when absent)");
    compile->add_option("--dump-ir", creq.dump_ir_dir, "Directory for stage snapshots");

    Common vm_opts;
    vm_opts.engine = "internal";
    vm_opts.timeout = 1;
    std::vector<std::string> vm_inputs;
    auto* vmtest = cli.add_subcommand("vmtest", "Run pre/post storage test cases");
    vmtest->add_option("inputs", vm_inputs, "Case files, manifests or directories");
    vm_opts.attach(vmtest);

    std::string cfg_input;
    bool cfg_asm = false;
    auto* cfg = cli.add_subcommand("cfg", "Print the reconstructed control flow graph");
    cfg->add_option("input", cfg_input, "Hex code, or a file with hex or assembly")->required();
    cfg->add_flag("--asm", cfg_asm, "Input is assembly");

    std::string address, fetch_out, host = "api.etherscan.io";
    auto* fetch = cli.add_subcommand("fetch", "Download deployed bytecode from Etherscan");
    fetch->add_option("address", address, "Contract address")->required();
    fetch->add_option("-o,--out", fetch_out, "Write the hex code to this file");
    fetch->add_option("--host", host, "API host");

    CLI11_PARSE(cli, argc, argv);

    try
    {
        if (analyze->parsed())
        {
            auto opts = analyze_opts.options();
            opts.mode = calldata ? absem::Mode::calldata : absem::Mode::base;
            const evm::Bytecode b(load_code(analyze_input, analyze_asm));
            const auto report = app::analyze(b, app::parse_property(property), opts);
            std::cout << app::to_json(report).dump(2) << "\n";
            return app::exit_code(report);
        }
        if (compile->parsed())
        {
            for (const auto& f : spec_files)
                creq.spec_texts.push_back(read_text(f));
            if (!bundled.empty())
                creq.bundled = bundled == "base" ? absem::Mode::base : absem::Mode::calldata;
            if (!code_arg.empty())
                creq.code = load_code(code_arg, compile_asm);
            if (!facts_file.empty())
                creq.facts = nlohmann::json::parse(read_text(facts_file));
            creq.fresh_init = init == "fresh";
            creq.properties = properties;
            write_scripts(app::compile(creq), out_dir);
            return 0;
        }
        if (vmtest->parsed())
        {
            const auto summary = app::run_vmtests(app::load_vmtests(vm_inputs), vm_opts.options());
            std::cout << app::to_json(summary).dump(2) << "\n";
            return app::exit_code(summary);
        }
        if (cfg->parsed())
        {
            const evm::Bytecode b(load_code(cfg_input, cfg_asm));
            std::cout << pre::cfg_to_json(pre::reconstruct_cfg(b)) << "\n";
            return 0;
        }
        if (fetch->parsed())
        {
            const auto code = app::fetch_code(address, "", host);
            if (fetch_out.empty())
                std::cout << code << "\n";
            else
                std::ofstream(fetch_out) << code << "\n";
            return 0;
        }
    }
    catch (const spec::MissingSelector& e)
    {
        std::cerr << "MissingSelector: " << e.what() << "\n";
        return exit_rejected;
    }
    catch (const absem::UnsupportedInstruction& e)
    {
        std::cerr << "rejected: " << e.what() << "\n";
        return exit_rejected;
    }
    catch (const spec::ParseError& e)
    {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_rejected;
    }
    catch (const spec::TypeError& e)
    {
        std::cerr << "type error: " << e.what() << "\n";
        return exit_rejected;
    }
    catch (const spec::SignatureMismatch& e)
    {
        std::cerr << "selector signature mismatch: " << e.what() << "\n";
        return exit_rejected;
    }
    catch (const evm::MalformedHex& e)
    {
        std::cerr << "malformed input: " << e.what() << "\n";
        return exit_rejected;
    }
    catch (const evm::AssemblyError& e)
    {
        std::cerr << "assembly error: " << e.what() << "\n";
        return exit_rejected;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_internal;
}
