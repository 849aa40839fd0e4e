// smdyn: JSON-RPC block fetcher (Ethereum eth_getBlockByNumber)
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/rpc.hpp>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <cctype>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace smdyn {
namespace {

using nlohmann::json;

[[noreturn]] void fail_block(long block_number, const std::string& msg)
{
    throw std::runtime_error("block " + std::to_string(block_number) + ": " + msg);
}

std::string hex_tag(long block_number)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "0x%lx", block_number);
    return buf;
}

// Splits "http://host:port/path" into the client base and the request path.
std::pair<std::string, std::string> split_endpoint(const std::string& url)
{
    const std::string scheme_sep = "://";
    const size_t scheme_end = url.find(scheme_sep);
    if (scheme_end == std::string::npos)
        throw std::runtime_error("endpoint must be an http:// URL: " + url);
    const std::string scheme = url.substr(0, scheme_end);
    if (scheme != "http")
        throw std::runtime_error("only plain http endpoints are supported, got scheme \"" +
                                 scheme + "\"");
    const size_t path_start = url.find('/', scheme_end + scheme_sep.size());
    if (path_start == std::string::npos)
        return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

// One JSON-RPC round trip; returns the "result" member.
json rpc_call(httplib::Client& client, const std::string& path, const std::string& method,
              json params, int id)
{
    const json request{{"jsonrpc", "2.0"}, {"id", id}, {"method", method},
                       {"params", std::move(params)}};
    const httplib::Result res = client.Post(path, request.dump(), "application/json");
    if (!res)
        throw std::runtime_error("transport failure calling " + method + ": " +
                                 httplib::to_string(res.error()));
    if (res->status != 200)
        throw std::runtime_error("HTTP " + std::to_string(res->status) + " calling " + method);
    const json body = json::parse(res->body, nullptr, false);
    if (body.is_discarded() || !body.is_object())
        throw std::runtime_error("malformed JSON-RPC response to " + method);
    if (body.contains("error") && !body["error"].is_null())
    {
        std::string detail = body["error"].dump();
        if (body["error"].is_object() && body["error"].contains("message") &&
            body["error"]["message"].is_string())
            detail = body["error"]["message"].get<std::string>();
        throw std::runtime_error("RPC error from " + method + ": " + detail);
    }
    if (!body.contains("result"))
        throw std::runtime_error("JSON-RPC response to " + method + " has no result");
    return body["result"];
}

// Reads a required hex-quantity member of a transaction object.
Rational tx_hex_field(const json& tx, const char* field, long block_number)
{
    if (!tx.contains(field) || !tx[field].is_string())
        fail_block(block_number, std::string("transaction field \"") + field +
                                     "\" must be a hex string");
    try
    {
        return rat_from_hex_quantity(tx[field].get<std::string>());
    }
    catch (const std::invalid_argument& e)
    {
        fail_block(block_number, std::string("bad \"") + field + "\": " + e.what());
    }
}

BidBatch batch_from_block(const json& block, long block_number, long first_tag)
{
    if (!block.is_object())
        fail_block(block_number, "block result is not an object");
    if (!block.contains("transactions") || !block["transactions"].is_array())
        fail_block(block_number, "response missing transactions array");

    BidBatch batch;
    batch.block_id = block_number;
    long tag = first_tag;
    for (const auto& tx : block["transactions"])
    {
        if (!tx.is_object())
            fail_block(block_number, "transaction entry is not an object; fetch blocks "
                                     "with full transaction objects");
        BidAtom atom;
        atom.quantity = tx_hex_field(tx, "gas", block_number);
        if (!(atom.quantity > 0))
            fail_block(block_number, "transaction has zero gas");
        const bool has_max_fee = tx.contains("maxFeePerGas") && !tx["maxFeePerGas"].is_null();
        atom.price = tx_hex_field(tx, has_max_fee ? "maxFeePerGas" : "gasPrice", block_number);
        atom.arrival_tag = tag++;
        batch.bids.push_back(std::move(atom));
    }
    return batch;
}

}  // namespace

Rational rat_from_hex_quantity(const std::string& hex)
{
    if (hex.size() < 3 || hex[0] != '0' || (hex[1] != 'x' && hex[1] != 'X'))
        throw std::invalid_argument("not a 0x hex quantity: " + hex);
    for (size_t i = 2; i < hex.size(); ++i)
        if (std::isxdigit(static_cast<unsigned char>(hex[i])) == 0)
            throw std::invalid_argument("not a 0x hex quantity: " + hex);
    const mpz_class magnitude(hex.substr(2), 16);
    return Rational(magnitude);
}

BidBatch batch_from_block_json(const std::string& block_json, long block_number,
                               long first_tag)
{
    const json block = json::parse(block_json, nullptr, false);
    if (block.is_discarded())
        fail_block(block_number, "block result is not valid JSON");
    return batch_from_block(block, block_number, first_tag);
}

long fetch_block_number(const std::string& endpoint_url)
{
    const auto [base, path] = split_endpoint(endpoint_url);
    httplib::Client client(base);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    const json result = rpc_call(client, path, "eth_blockNumber", json::array(), 1);
    if (!result.is_string())
        throw std::runtime_error("eth_blockNumber result is not a hex string");
    const Rational n = rat_from_hex_quantity(result.get<std::string>());
    const mpz_class num = n.get_num();
    if (!num.fits_slong_p())
        throw std::runtime_error("eth_blockNumber result out of range");
    return num.get_si();
}

std::vector<BidBatch> fetch_blocks(const std::string& endpoint_url, long first_block,
                                   long last_block)
{
    if (first_block < 0 || last_block < first_block)
        throw std::invalid_argument("fetch_blocks: need 0 <= first_block <= last_block");
    const auto [base, path] = split_endpoint(endpoint_url);
    httplib::Client client(base);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);

    std::vector<BidBatch> batches;
    batches.reserve(static_cast<size_t>(last_block - first_block + 1));
    long tag = 0;
    int id = 0;
    for (long n = first_block; n <= last_block; ++n)
    {
        json result;
        try
        {
            result = rpc_call(client, path, "eth_getBlockByNumber",
                              json::array({hex_tag(n), true}), ++id);
        }
        catch (const std::runtime_error& e)
        {
            fail_block(n, e.what());
        }
        if (result.is_null())
            fail_block(n, "not found on this endpoint");
        BidBatch batch = batch_from_block(result, n, tag);
        tag += static_cast<long>(batch.bids.size());
        batches.push_back(std::move(batch));
    }
    return batches;
}

}  // namespace smdyn
