#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "evmhorn/app/fetch.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>
#include <stdexcept>

namespace evmhorn::app {

std::string etherscan_code_path(const std::string& address, const std::string& api_key)
{
    return "/api?module=proxy&action=eth_getCode&address=" + address +
           "&tag=latest&apikey=" + api_key;
}

std::string parse_code_response(const std::string& body)
{
    const auto j = nlohmann::json::parse(body);
    if (j.contains("error"))
        throw std::runtime_error("etherscan error: " + j.at("error").dump());
    const auto& r = j.at("result");
    if (!r.is_string() || r.get<std::string>().rfind("0x", 0) != 0)
        throw std::runtime_error("unexpected etherscan response: " + r.dump());
    return r.get<std::string>();
}

std::string fetch_code(const std::string& address, std::string api_key, const std::string& host)
{
    if (api_key.empty())
    {
        const char* env = std::getenv("ETHERSCAN_API_KEY");
        if (env == nullptr || *env == '\0')
            throw std::runtime_error("ETHERSCAN_API_KEY is not set");
        api_key = env;
    }
    httplib::SSLClient cli(host);
    cli.set_connection_timeout(10);
    cli.set_read_timeout(30);
    auto res = cli.Get(etherscan_code_path(address, api_key));
    if (!res)
        throw std::runtime_error("request to " + host + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw std::runtime_error("etherscan returned HTTP " + std::to_string(res->status));
    return parse_code_response(res->body);
}

}  // namespace evmhorn::app
