// smdyn: JSON-RPC block fetcher (Ethereum eth_getBlockByNumber)
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#ifndef SMDYN_RPC_HPP
#define SMDYN_RPC_HPP

#include <smdyn/ingest.hpp>

#include <string>
#include <vector>

namespace smdyn {

// Decodes an Ethereum hex quantity ("0x5208" -> 21000) into an exact value.
// Throws std::invalid_argument unless the string is 0x followed by hex digits.
Rational rat_from_hex_quantity(const std::string& hex);

// Converts one eth_getBlockByNumber result object (serialized JSON, fetched
// with full transaction objects) into a BidBatch: per transaction the
// quantity is the "gas" field and the unit price is "maxFeePerGas" when
// present, else "gasPrice". A block with zero transactions yields an empty
// batch. block_number labels errors and becomes the batch id; arrival tags
// count up from first_tag. Throws std::runtime_error naming the block on a
// missing "transactions" array or malformed transaction fields.
BidBatch batch_from_block_json(const std::string& block_json, long block_number,
                               long first_tag);

// Asks the endpoint for its latest block number (eth_blockNumber).
// Throws std::runtime_error on transport or protocol failure.
long fetch_block_number(const std::string& endpoint_url);

// Fetches blocks first_block..last_block (inclusive) with full transaction
// objects and converts each to a BidBatch, ordered by block number with
// globally increasing arrival tags. All-or-nothing: any transport failure,
// RPC error, or malformed block throws std::runtime_error naming the block;
// partial results are never returned. Only plain http:// endpoints are
// supported.
std::vector<BidBatch> fetch_blocks(const std::string& endpoint_url, long first_block,
                                   long last_block);

}  // namespace smdyn

#endif  // SMDYN_RPC_HPP
