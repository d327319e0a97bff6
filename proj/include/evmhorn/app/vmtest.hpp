#pragma once

#include "evmhorn/app/pipeline.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace evmhorn::app {

/// Pre/post storage test case. `post_storage` absent means an exceptional halt is expected.
struct VmTestCase {
    std::string name;
    bytes code;
    std::map<word, word> pre_storage;
    std::optional<std::map<word, word>> post_storage;
    std::optional<std::size_t> last_pc;  ///< accepted for compatibility, not used by the harness
};

/// Reads {code | asm, preStorage, postStorage?, lastPc?, name?}. Storage keys and values are
/// hex or decimal strings, or numbers.
VmTestCase parse_vmtest(const nlohmann::json& j, const std::string& fallback_name = "");

/// Expands directories (every *.json, sorted), manifest files (an array of paths, or
/// {"cases": [...]}) and single case files.
std::vector<VmTestCase> load_vmtests(const std::vector<std::string>& inputs);

struct VmTestResult {
    std::string name;
    bool terminated = false;
    bool correct = false;
    bool precise = false;
    std::map<std::string, backend::Verdict> verdicts;  ///< by test name
    std::string error;
};

VmTestResult run_vmtest(const VmTestCase& c, const RunOptions& opts);

struct VmTestSummary {
    std::vector<VmTestResult> results;
    std::size_t terminated = 0;
    std::size_t correct = 0;
    std::size_t precise = 0;
};

VmTestSummary run_vmtests(const std::vector<VmTestCase>& cases, const RunOptions& opts);

nlohmann::ordered_json to_json(const VmTestSummary& s);

/// 0 when every case is correct, 1 when a terminated case is incorrect, 2 otherwise.
int exit_code(const VmTestSummary& s);

}  // namespace evmhorn::app
