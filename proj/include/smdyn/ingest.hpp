// smdyn: empirical block-bid ingestion and replay
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <smdyn/curve.hpp>
#include <smdyn/dynamics.hpp>

#include <string>
#include <utility>
#include <vector>

namespace smdyn {

enum class BlockFormat { jsonl, csv };

// One block's worth of bids, in source order. Parsing assigns each bid a
// globally unique arrival_tag increasing through the file, so ascending
// tags encode block order and in-block order at once.
struct BidBatch
{
    long block_id = 0;
    std::vector<BidAtom> bids;
};

// Reads per-block bids from a file.
//   jsonl: one `{"block": <int>, "bids": [[<price>, <qty>], ...]}` object
//          per line; prices and quantities may be JSON numbers or decimal
//          strings (strings and integers parse exactly).
//   csv:   `block,price,quantity` rows, optional header, sorted by block;
//          consecutive rows of one block form its batch.
// Block ids must be strictly increasing (jsonl) or sorted (csv); every
// quantity must be positive. Malformed input throws std::runtime_error
// naming the file and line; an empty file throws as well.
std::vector<BidBatch> parse_blocks(const std::string& path, BlockFormat format);

struct BlockOutcome
{
    long block_id = 0;
    Rational serial_price;
    Rational serial_quantity;
    Rational serial_revenue;
};

struct ReplayReport
{
    std::vector<BlockOutcome> per_block;
    Rational serial_revenue;    // sums of the per-block entries
    Rational serial_welfare;    // served bid values over all blocks
    Rational baseline_revenue;  // zero until attach_baseline runs
    Rational baseline_welfare;
    Rational revenue_ratio;  // serial / baseline (0 when baseline is 0)
    Rational welfare_ratio;
    Rational pent_remaining;  // unserved quantity left after the last block
    std::vector<std::string> caveats;
};

// Replays the daily monopoly pricing over the blocks. Each block's fresh
// demand is its atoms plus everything unserved from earlier blocks; the
// price maximizes p * min(s, demand at p), which for step demand is
// always attained at an atom price (ties resolve to the largest). When
// demand at the chosen price exceeds s, exactly s units are served in
// ascending arrival_tag order with the marginal atom split fractionally,
// and each such rationing event is noted in the caveats.
//
// The trace carries one record per block: welfare_delta is the served
// bid value and breakpoints the number of atoms left pent-up. Pent-up
// bids are point masses, which the piecewise-linear MarketState cannot
// hold, so final_state tracks only t and the supply; the quantity still
// waiting is report.pent_remaining.
std::pair<Trace<Rational>, ReplayReport> replay(const std::vector<BidBatch>& batches,
                                                const Rational& s);

// Revenue and welfare of the as-paid baseline: per block in isolation,
// bids at or above that block's paid price are served up to s under the
// same arrival-order rationing; revenue counts the paid price, welfare
// the bid values. Throws std::invalid_argument unless there is exactly
// one paid price per block.
std::pair<Rational, Rational> baseline_metrics(const std::vector<BidBatch>& batches,
                                               const std::vector<Rational>& paid_prices,
                                               const Rational& s);

// Market-clearing price of one block in isolation: the bid price of the
// marginal unit when s units sell from the highest bid down, or zero
// when the supply covers every bid.
Rational clearing_price(const BidBatch& batch, const Rational& s);

// Computes the baseline for the given paid prices, stores it in the
// report and fills the serial/baseline ratios (a zero-revenue or
// zero-welfare baseline leaves its ratio at 0 and adds a caveat).
void attach_baseline(ReplayReport& report, const std::vector<BidBatch>& batches,
                     const std::vector<Rational>& paid_prices, const Rational& s);

// The report as JSON: per_block, totals, ratios, pent_remaining and
// caveats, all numbers as exact rational strings.
std::string replay_report_json(const ReplayReport& report);

// Serializes batches to the JSONL block format parse_blocks reads:
// one {"block": n, "bids": [["price", "qty"], ...]} object per line,
// values as exact rational strings. Round-trips without loss.
std::string batches_jsonl(const std::vector<BidBatch>& batches);

}  // namespace smdyn
