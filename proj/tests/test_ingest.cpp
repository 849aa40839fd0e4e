// smdyn: block-bid ingestion and replay tests
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/ingest.hpp>

#include <doctest.h>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

using namespace smdyn;

namespace {

Rational rq(long num, long den)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string data_path(const char* name)
{
    return std::string(SMDYN_TEST_DATA_DIR) + "/" + name;
}

// Writes content to a throwaway file and parses it; removes the file.
struct TempFile
{
    std::string path;
    explicit TempFile(const std::string& content)
    {
        static int counter = 0;
        path = "ingest_tmp_" + std::to_string(counter++) + ".txt";
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

BidBatch batch_of(long block_id, std::vector<std::pair<Rational, Rational>> bids, long first_tag)
{
    BidBatch b;
    b.block_id = block_id;
    long tag = first_tag;
    for (auto& [p, q] : bids)
        b.bids.push_back({std::move(p), std::move(q), tag++});
    return b;
}

// The documented three-atom block: (10,3), (5,4), (2,5).
std::vector<BidBatch> three_atoms()
{
    return {batch_of(1, {{Rational(10), Rational(3)}, {Rational(5), Rational(4)},
                         {Rational(2), Rational(5)}}, 0)};
}

}  // namespace

TEST_CASE("atom curves evaluate as right-continuous step demand")
{
    AtomCurve c;
    c.atoms = {{Rational(5), Rational(2), 0}, {Rational(5), Rational(3), 1},
               {Rational(10), Rational(1), 2}};
    CHECK(eval(c, Rational(0)) == 6);
    CHECK(eval(c, Rational(5)) == 6);  // duplicate price atoms both count
    CHECK(eval(c, Rational(6)) == 1);
    CHECK(eval(c, Rational(10)) == 1);
    CHECK(eval(c, Rational(11)) == 0);
    CHECK(total_quantity(c) == 6);
    CHECK_NOTHROW(validate_atoms(c));

    AtomCurve zero_qty = c;
    zero_qty.atoms[1].quantity = 0;
    CHECK_THROWS_AS(validate_atoms(zero_qty), std::domain_error);
    AtomCurve dup_tag = c;
    dup_tag.atoms[1].arrival_tag = 0;
    CHECK_THROWS_AS(validate_atoms(dup_tag), std::domain_error);
    CHECK_NOTHROW(validate_atoms(AtomCurve{}));
    CHECK(eval(AtomCurve{}, Rational(1)) == 0);
}

TEST_CASE("parse_blocks reads JSONL blocks with exact numbers")
{
    const TempFile f("{\"block\": 1, \"bids\": [[10, 3], [5, 4]]}\n"
                     "{\"block\": 4, \"bids\": [[\"2.5\", \"0.1\"], [0.5, 2]]}\n"
                     "{\"block\": 9, \"bids\": []}\n");
    const auto batches = parse_blocks(f.path, BlockFormat::jsonl);
    REQUIRE(batches.size() == 3);
    CHECK(batches[0].block_id == 1);
    REQUIRE(batches[0].bids.size() == 2);
    CHECK(batches[0].bids[0] == BidAtom{Rational(10), Rational(3), 0});
    CHECK(batches[0].bids[1] == BidAtom{Rational(5), Rational(4), 1});
    CHECK(batches[1].block_id == 4);
    CHECK(batches[1].bids[0].price == rq(5, 2));    // "2.5" parses exactly
    CHECK(batches[1].bids[0].quantity == rq(1, 10));  // "0.1" too
    CHECK(batches[1].bids[1].price == rq(1, 2));    // 0.5 is an exact double
    CHECK(batches[1].bids[1].arrival_tag == 3);     // tags run through the file
    CHECK(batches[2].bids.empty());                 // a block may have no bids
}

TEST_CASE("parse_blocks JSONL rejects malformed input naming the line")
{
    const auto parse_one = [](const std::string& content) {
        const TempFile f(content);
        return parse_blocks(f.path, BlockFormat::jsonl);
    };
    const auto check_error = [&](const std::string& content, const char* needle) {
        try
        {
            parse_one(content);
            FAIL_CHECK("expected a parse error for: " << content);
        }
        catch (const std::runtime_error& e)
        {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    const std::string good = "{\"block\": 1, \"bids\": [[10, 3]]}\n";
    check_error(good + "not json\n", ":2:");
    check_error(good + "{\"bids\": []}\n", "block");
    check_error(good + "{\"block\": 2}\n", "bids");
    check_error(good + "{\"block\": 2, \"bids\": [[1]]}\n", "pair");
    check_error(good + "{\"block\": 2, \"bids\": [[1, 0]]}\n", "positive");
    check_error(good + "{\"block\": 2, \"bids\": [[-1, 1]]}\n", "negative price");
    check_error(good + "{\"block\": 1, \"bids\": []}\n", "increasing");
    check_error(good + "{\"block\": 2, \"bids\": [[\"x\", 1]]}\n", ":2:");
    check_error("", "no blocks");
    check_error("\n\n", "no blocks");
    CHECK_THROWS_AS(parse_blocks("does_not_exist.jsonl", BlockFormat::jsonl),
                    std::runtime_error);
}

TEST_CASE("parse_blocks reads CSV and matches the JSONL form")
{
    const TempFile f("block,price,quantity\n"
                     "1,10,3\n"
                     "1,5,4\n"
                     "2,0.25,1.5\n");
    const auto batches = parse_blocks(f.path, BlockFormat::csv);
    REQUIRE(batches.size() == 2);
    CHECK(batches[0].block_id == 1);
    REQUIRE(batches[0].bids.size() == 2);
    CHECK(batches[0].bids[0].price == 10);
    CHECK(batches[0].bids[1].quantity == 4);
    CHECK(batches[1].bids[0].price == rq(1, 4));
    CHECK(batches[1].bids[0].quantity == rq(3, 2));

    // The committed fixtures hold the same block in both formats.
    const auto js = parse_blocks(data_path("blocks3.jsonl"), BlockFormat::jsonl);
    const auto cs = parse_blocks(data_path("blocks3.csv"), BlockFormat::csv);
    REQUIRE(js.size() == 1);
    REQUIRE(cs.size() == 1);
    CHECK(js[0].block_id == cs[0].block_id);
    REQUIRE(js[0].bids.size() == 3);
    REQUIRE(cs[0].bids.size() == 3);
    for (size_t i = 0; i < 3; ++i)
    {
        CHECK(js[0].bids[i].price == cs[0].bids[i].price);
        CHECK(js[0].bids[i].quantity == cs[0].bids[i].quantity);
    }

    const auto check_error = [](const std::string& content, const char* needle) {
        const TempFile bad(content);
        try
        {
            parse_blocks(bad.path, BlockFormat::csv);
            FAIL_CHECK("expected a parse error for: " << content);
        }
        catch (const std::runtime_error& e)
        {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    check_error("1,10\n", "block,price,quantity");
    check_error("1,10,3\n2,x,1\n", ":2:");
    check_error("2,10,3\n1,5,4\n", "sorted");
    check_error("1,10,0\n", "positive");
    check_error("block,price,quantity\n", "no blocks");
}

TEST_CASE("replay picks the revenue-best atom price, ties to the largest")
{
    // rev(10) = 30, rev(5) = 5*min(6,7) = 30, rev(2) = 2*min(6,12) = 12.
    const auto [trace, report] = replay(three_atoms(), Rational(6));
    REQUIRE(report.per_block.size() == 1);
    CHECK(report.per_block[0].block_id == 1);
    CHECK(report.per_block[0].serial_price == 10);
    CHECK(report.per_block[0].serial_quantity == 3);
    CHECK(report.per_block[0].serial_revenue == 30);
    CHECK(report.serial_revenue == 30);
    CHECK(report.serial_welfare == 30);       // the three 10-bids are served
    CHECK(report.pent_remaining == 9);        // (5,4) and (2,5) wait
    CHECK(trace.records.size() == 1);
    CHECK(trace.records[0].price == 10);
    CHECK(trace.records[0].quantity == 3);
    CHECK(trace.records[0].breakpoints == 2);  // two pent atoms
    CHECK(trace.mode == RunMode::exact);
}

TEST_CASE("replay clears exactly when each block bids the supply at one price")
{
    std::vector<BidBatch> batches;
    batches.push_back(batch_of(1, {{Rational(7), Rational(2)}}, 0));
    batches.push_back(batch_of(2, {{Rational(3), Rational(2)}}, 1));
    batches.push_back(batch_of(3, {{Rational(11), Rational(2)}}, 2));
    const auto [trace, report] = replay(batches, Rational(2));
    CHECK(report.per_block[0].serial_price == 7);
    CHECK(report.per_block[1].serial_price == 3);
    CHECK(report.per_block[2].serial_price == 11);
    for (const auto& b : report.per_block)
        CHECK(b.serial_quantity == 2);
    CHECK(report.pent_remaining == 0);
    CHECK(report.caveats.empty());
}

TEST_CASE("replay rations the marginal atom and carries the remainder")
{
    std::vector<BidBatch> batches;
    batches.push_back(batch_of(1, {{Rational(10), Rational(3)}}, 0));
    batches.push_back(batch_of(2, {{Rational(4), Rational(10)}}, 1));
    const auto [trace, report] = replay(batches, Rational(6));

    CHECK(report.per_block[0].serial_price == 10);
    CHECK(report.per_block[0].serial_quantity == 3);
    CHECK(report.per_block[1].serial_price == 4);
    CHECK(report.per_block[1].serial_quantity == 6);
    CHECK(report.per_block[1].serial_revenue == 24);
    CHECK(report.pent_remaining == 4);  // 10 bid, 6 served
    CHECK(report.serial_revenue == 54);
    CHECK(report.serial_welfare == Rational(30 + 24));
    REQUIRE(report.caveats.size() == 1);
    CHECK(report.caveats[0].find("block 2") != std::string::npos);
    CHECK(trace.records[1].breakpoints == 1);  // the split remainder atom

    // Earlier arrivals are served first, regardless of bid height.
    std::vector<BidBatch> priority;
    priority.push_back(batch_of(1, {{Rational(4), Rational(5)}, {Rational(9), Rational(1)}}, 0));
    priority.push_back(batch_of(2, {{Rational(4), Rational(5)}}, 2));
    // Block 1: rev(9) = 9 < rev(4) = 4*min(3,6) = 12, so p=4 and 3 of the
    // 6 standing units are served; tag 0 (the (4,5) atom) supplies all 3.
    const auto [t2, r2] = replay(priority, Rational(3));
    CHECK(r2.per_block[0].serial_price == 4);
    CHECK(r2.per_block[0].serial_quantity == 3);
    // tag 0 atom (4,5) served 3 units, tag 1 atom (9,1) untouched.
    CHECK(r2.per_block[1].serial_price == 4);
    CHECK(r2.per_block[1].serial_quantity == 3);
    // Day 2 serves the rest of tag 0 (2 units) then tag 1 (1 unit) before
    // touching the fresh tag 2 atom.
    CHECK(r2.pent_remaining == 5);
    CHECK(r2.serial_welfare == Rational(4 * 3 + (4 * 2 + 9 * 1) + 0));
}

TEST_CASE("replay conserves bid mass over every prefix")
{
    const auto batches = parse_blocks(data_path("blocks50.jsonl"), BlockFormat::jsonl);
    REQUIRE(batches.size() == 50);
    const Rational s(5);

    Rational inflow(0);
    std::vector<BidBatch> prefix;
    for (const auto& batch : batches)
    {
        prefix.push_back(batch);
        for (const auto& atom : batch.bids)
            inflow += atom.quantity;
        const auto [trace, report] = replay(prefix, s);
        Rational served(0);
        for (const auto& b : report.per_block)
            served += b.serial_quantity;
        CHECK(Rational(served + report.pent_remaining) == inflow);
    }
}

TEST_CASE("no atom price beats the replayed price: dense grid oracle")
{
    std::mt19937_64 rng(20260819);
    for (int instance = 0; instance < 50; ++instance)
    {
        std::vector<std::pair<Rational, Rational>> bids;
        const int n = 1 + static_cast<int>(rng() % 10);
        for (int i = 0; i < n; ++i)
        {
            const long pn = 1 + static_cast<long>(rng() % 28);
            const long qn = 1 + static_cast<long>(rng() % 20);
            bids.emplace_back(rq(pn, 7), rq(qn, 5));
        }
        const Rational s = rq(1 + static_cast<long>(rng() % 30), 5);
        const std::vector<BidBatch> batches{batch_of(1, bids, 0)};
        const auto [trace, report] = replay(batches, s);

        AtomCurve curve;
        for (const auto& atom : batches[0].bids)
            curve.atoms.push_back(atom);
        const Rational chosen = report.per_block[0].serial_revenue;
        CHECK(Rational(report.per_block[0].serial_price *
                       std::min(s, eval(curve, report.per_block[0].serial_price))) == chosen);
        for (const auto& atom : curve.atoms)
        {
            const Rational rev = Rational(atom.price * std::min(s, eval(curve, atom.price)));
            CHECK(rev <= chosen);
            if (rev == chosen)
                CHECK(atom.price <= report.per_block[0].serial_price);
        }
        for (long k = 0; k <= 1000; ++k)
        {
            const Rational p = rq(k, 200);  // 0 .. 5 covers every bid price
            CHECK(Rational(p * std::min(s, eval(curve, p))) <= chosen);
        }
    }
}

TEST_CASE("discretized smooth demand converges to the continuous engine")
{
    const DemandCurve uniform{{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
    const auto exact = run(uniform, Rational(1), 4);

    const auto max_error = [&](long n) {
        std::vector<BidBatch> batches;
        long tag = 0;
        for (long block = 1; block <= 4; ++block)
        {
            BidBatch b;
            b.block_id = block;
            for (long k = 1; k <= n; ++k)
                b.bids.push_back({rq(k, n), rq(1, n), tag++});
            batches.push_back(std::move(b));
        }
        const auto [trace, report] = replay(batches, Rational(1));
        Rational worst(0);
        for (size_t i = 0; i < 4; ++i)
        {
            const Rational err =
                abs(Rational(trace.records[i].price - exact.records[i].price));
            worst = std::max(worst, err);
        }
        return worst;
    };

    const Rational e8 = max_error(8);
    const Rational e32 = max_error(32);
    const Rational e128 = max_error(128);
    CHECK(e32 < e8);
    CHECK(e128 < e32);
    CHECK(e128 <= rq(1, 32));
}

TEST_CASE("baseline_metrics serves bids at or above the paid price")
{
    const std::vector<BidBatch> batches{
        batch_of(1, {{Rational(10), Rational(3)}, {Rational(5), Rational(4)}}, 0)};
    const Rational s(6);

    const auto [rev, wel] = baseline_metrics(batches, {Rational(5)}, s);
    CHECK(rev == 30);  // 6 units at the paid price 5
    CHECK(wel == 45);  // 10*3 + 5*3 by arrival priority

    const auto [rev_hi, wel_hi] = baseline_metrics(batches, {Rational(11)}, s);
    CHECK(rev_hi == 0);
    CHECK(wel_hi == 0);

    const auto [rev_0, wel_0] = baseline_metrics(batches, {Rational(0)}, Rational(100));
    CHECK(rev_0 == 0);
    CHECK(wel_0 == 50);  // every unit served at its bid value

    CHECK_THROWS_AS(baseline_metrics(batches, {}, s), std::invalid_argument);
    CHECK_THROWS_AS(baseline_metrics(batches, {Rational(1), Rational(2)}, s),
                    std::invalid_argument);
}

TEST_CASE("clearing_price finds the marginal bid")
{
    const auto batch =
        batch_of(1, {{Rational(10), Rational(3)}, {Rational(5), Rational(4)}}, 0);
    CHECK(clearing_price(batch, Rational(6)) == 5);
    CHECK(clearing_price(batch, Rational(3)) == 10);
    CHECK(clearing_price(batch, Rational(2)) == 10);
    CHECK(clearing_price(batch, Rational(7)) == 0);   // supply covers all bids
    CHECK(clearing_price(batch, Rational(100)) == 0);
    CHECK_THROWS_AS(clearing_price(batch, Rational(0)), std::domain_error);
}

TEST_CASE("serial replay out-earns the per-block clearing baseline")
{
    const auto batches = parse_blocks(data_path("blocks50.jsonl"), BlockFormat::jsonl);
    const Rational s(5);
    auto [trace, report] = replay(batches, s);

    std::vector<Rational> paid;
    paid.reserve(batches.size());
    for (const auto& batch : batches)
        paid.push_back(clearing_price(batch, s));
    attach_baseline(report, batches, paid, s);

    CHECK(report.baseline_revenue > 0);
    CHECK(report.serial_revenue >= report.baseline_revenue);
    CHECK(report.revenue_ratio >= 1);
    CHECK(report.welfare_ratio > 0);

    // Totals are the sums of the per-block entries.
    Rational rev_sum(0);
    for (const auto& b : report.per_block)
        rev_sum += b.serial_revenue;
    CHECK(rev_sum == report.serial_revenue);
}

TEST_CASE("replay reports are deterministic and JSON-complete")
{
    const auto batches = parse_blocks(data_path("blocks50.jsonl"), BlockFormat::jsonl);
    const Rational s(5);
    auto [t1, r1] = replay(batches, s);
    auto [t2, r2] = replay(batches, s);
    std::vector<Rational> paid;
    for (const auto& batch : batches)
        paid.push_back(clearing_price(batch, s));
    attach_baseline(r1, batches, paid, s);
    attach_baseline(r2, batches, paid, s);
    const std::string j1 = replay_report_json(r1);
    CHECK(j1 == replay_report_json(r2));
    CHECK(j1.find("\"per_block\"") != std::string::npos);
    CHECK(j1.find("\"serial_revenue\"") != std::string::npos);
    CHECK(j1.find("\"revenue_ratio\"") != std::string::npos);
    CHECK(j1.find("\"pent_remaining\"") != std::string::npos);
    CHECK(j1.find("\"caveats\"") != std::string::npos);

    CHECK_THROWS_AS(replay(batches, Rational(0)), std::domain_error);
    std::vector<BidBatch> unsorted{batch_of(3, {{Rational(1), Rational(1)}}, 0),
                                   batch_of(2, {{Rational(1), Rational(1)}}, 1)};
    CHECK_THROWS_AS(replay(unsorted, Rational(1)), std::invalid_argument);
}
