#pragma once

#include <string>

namespace evmhorn::app {

/// Request path of the Etherscan proxy call returning the deployed code of `address`.
std::string etherscan_code_path(const std::string& address, const std::string& api_key);

/// Extracts the hex code from an eth_getCode proxy response.
std::string parse_code_response(const std::string& body);

/// Downloads deployed bytecode. Needs ETHERSCAN_API_KEY unless `api_key` is given.
std::string fetch_code(const std::string& address, std::string api_key = "",
                       const std::string& host = "api.etherscan.io");

}  // namespace evmhorn::app
