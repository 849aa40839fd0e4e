// smdyn: empirical block-bid ingestion and replay
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/ingest.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace smdyn {
namespace {

using nlohmann::json;

[[noreturn]] void fail_at(const std::string& path, long line_no, const std::string& msg)
{
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + msg);
}

Rational rational_from_json(const json& v)
{
    if (v.is_string())
        return rat_from_string(v.get<std::string>());
    if (v.is_number_integer())
        return Rational(static_cast<long>(v.get<std::int64_t>()));
    if (v.is_number_unsigned())
        return Rational(static_cast<unsigned long>(v.get<std::uint64_t>()));
    if (v.is_number_float())
        return rat_from_double(v.get<double>());
    throw std::invalid_argument("expected a number or numeric string");
}

bool blank(const std::string& line)
{
    return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::string trimmed(const std::string& s)
{
    const size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long parse_block_id(const std::string& field)
{
    long id = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), id);
    if (ec != std::errc() || ptr != field.data() + field.size() || id < 0)
        throw std::invalid_argument("bad block id: " + field);
    return id;
}

std::vector<BidBatch> parse_jsonl(const std::string& path, std::istream& in)
{
    std::vector<BidBatch> batches;
    long tag = 0;
    long line_no = 0;
    std::string line;
    while (std::getline(in, line))
    {
        ++line_no;
        if (blank(line))
            continue;
        const json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            fail_at(path, line_no, "not a JSON object");
        if (!j.contains("block") || !j["block"].is_number_integer())
            fail_at(path, line_no, "missing integer field \"block\"");
        if (!j.contains("bids") || !j["bids"].is_array())
            fail_at(path, line_no, "missing array field \"bids\"");

        BidBatch batch;
        batch.block_id = j["block"].get<long>();
        if (batch.block_id < 0)
            fail_at(path, line_no, "negative block id");
        if (!batches.empty() && batches.back().block_id >= batch.block_id)
            fail_at(path, line_no, "block ids must be strictly increasing");
        for (const auto& bid : j["bids"])
        {
            if (!bid.is_array() || bid.size() != 2)
                fail_at(path, line_no, "each bid must be a [price, quantity] pair");
            BidAtom atom;
            try
            {
                atom.price = rational_from_json(bid[0]);
                atom.quantity = rational_from_json(bid[1]);
            }
            catch (const std::invalid_argument& e)
            {
                fail_at(path, line_no, e.what());
            }
            if (atom.price < 0)
                fail_at(path, line_no, "negative price");
            if (!(atom.quantity > 0))
                fail_at(path, line_no, "quantity must be positive");
            atom.arrival_tag = tag++;
            batch.bids.push_back(std::move(atom));
        }
        batches.push_back(std::move(batch));
    }
    if (batches.empty())
        throw std::runtime_error(path + ": no blocks found");
    return batches;
}

std::vector<BidBatch> parse_csv(const std::string& path, std::istream& in)
{
    std::vector<BidBatch> batches;
    long tag = 0;
    long line_no = 0;
    std::string line;
    while (std::getline(in, line))
    {
        ++line_no;
        if (blank(line))
            continue;

        std::vector<std::string> fields;
        std::stringstream row(line);
        std::string field;
        while (std::getline(row, field, ','))
            fields.push_back(trimmed(field));
        if (line_no == 1 && fields.size() == 3 && fields[0] == "block")
            continue;  // optional header
        if (fields.size() != 3)
            fail_at(path, line_no, "expected block,price,quantity");

        BidAtom atom;
        long block_id = 0;
        try
        {
            block_id = parse_block_id(fields[0]);
            atom.price = rat_from_string(fields[1]);
            atom.quantity = rat_from_string(fields[2]);
        }
        catch (const std::invalid_argument& e)
        {
            fail_at(path, line_no, e.what());
        }
        if (atom.price < 0)
            fail_at(path, line_no, "negative price");
        if (!(atom.quantity > 0))
            fail_at(path, line_no, "quantity must be positive");
        atom.arrival_tag = tag++;

        if (batches.empty() || batches.back().block_id != block_id)
        {
            if (!batches.empty() && batches.back().block_id > block_id)
                fail_at(path, line_no, "rows must be sorted by block");
            batches.push_back({block_id, {}});
        }
        batches.back().bids.push_back(std::move(atom));
    }
    if (batches.empty())
        throw std::runtime_error(path + ": no blocks found");
    return batches;
}

void validate_batches(const std::vector<BidBatch>& batches)
{
    long prev_block = -1;
    long prev_tag = -1;
    for (const auto& batch : batches)
    {
        if (batch.block_id <= prev_block)
            throw std::invalid_argument("replay: block ids must be strictly increasing");
        prev_block = batch.block_id;
        for (const auto& atom : batch.bids)
        {
            if (!(atom.quantity > 0))
                throw std::invalid_argument("replay: bid quantities must be positive");
            if (atom.price < 0)
                throw std::invalid_argument("replay: bid prices must be nonnegative");
            if (atom.arrival_tag <= prev_tag)
                throw std::invalid_argument("replay: arrival tags must increase through the input");
            prev_tag = atom.arrival_tag;
        }
    }
}

// Revenue-maximizing atom price over the pool: max p * min(s, demand(p)),
// ties to the largest price. The pool's step demand makes atom prices the
// only candidates. Zero everything when the pool is empty.
RevenuePoint<Rational> best_atom_price(const std::vector<BidAtom>& pool, const Rational& s)
{
    RevenuePoint<Rational> best{Rational(0), Rational(0), Rational(0)};
    if (pool.empty())
        return best;

    std::vector<std::pair<Rational, Rational>> by_price;  // (price, quantity)
    by_price.reserve(pool.size());
    for (const auto& atom : pool)
        by_price.emplace_back(atom.price, atom.quantity);
    std::sort(by_price.begin(), by_price.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    bool first = true;
    Rational cumulative(0);
    for (size_t i = 0; i < by_price.size(); ++i)
    {
        cumulative += by_price[i].second;
        if (i + 1 < by_price.size() && by_price[i + 1].first == by_price[i].first)
            continue;  // same candidate price, keep accumulating
        const Rational& p = by_price[i].first;
        const Rational q = std::min(s, cumulative);
        const Rational revenue = Rational(p * q);
        // Descending prices: a revenue tie keeps the earlier (larger) price.
        if (first || revenue > best.revenue)
        {
            best = {p, q, revenue};
            first = false;
        }
    }
    return best;
}

}  // namespace

std::vector<BidBatch> parse_blocks(const std::string& path, BlockFormat format)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return format == BlockFormat::jsonl ? parse_jsonl(path, in) : parse_csv(path, in);
}

std::pair<Trace<Rational>, ReplayReport> replay(const std::vector<BidBatch>& batches,
                                                const Rational& s)
{
    if (!(s > 0))
        throw std::domain_error("replay: supply must be positive");
    validate_batches(batches);

    Trace<Rational> trace;
    trace.mode = RunMode::exact;
    trace.monopoly_premium = false;
    trace.records.reserve(batches.size());

    ReplayReport report;
    report.serial_revenue = 0;
    report.serial_welfare = 0;
    report.baseline_revenue = 0;
    report.baseline_welfare = 0;
    report.revenue_ratio = 0;
    report.welfare_ratio = 0;

    std::vector<BidAtom> pool;  // pent-up bids, ascending arrival_tag
    long t = 0;
    for (const auto& batch : batches)
    {
        ++t;
        pool.insert(pool.end(), batch.bids.begin(), batch.bids.end());

        const RevenuePoint<Rational> best = best_atom_price(pool, s);
        const Rational standing = [&] {
            Rational d(0);
            for (const auto& atom : pool)
                if (atom.price >= best.price)
                    d += atom.quantity;
            return d;
        }();
        if (standing > best.quantity)
            report.caveats.push_back("block " + std::to_string(batch.block_id) + ": rationed, " +
                                     rat_str(best.quantity) + " of " + rat_str(standing) +
                                     " units served at the posted price");

        // Serve in arrival order, splitting the marginal atom.
        Rational remaining = best.quantity;
        Rational welfare(0);
        std::vector<BidAtom> next_pool;
        next_pool.reserve(pool.size());
        for (const auto& atom : pool)
        {
            if (atom.price >= best.price && remaining > 0)
            {
                const Rational take = std::min(atom.quantity, remaining);
                welfare += take * atom.price;
                remaining -= take;
                if (atom.quantity > take)
                    next_pool.push_back({atom.price, Rational(atom.quantity - take),
                                         atom.arrival_tag});
            }
            else
            {
                next_pool.push_back(atom);
            }
        }
        pool = std::move(next_pool);

        StepRecord<Rational> rec;
        rec.t = t;
        rec.price = best.price;
        rec.quantity = best.quantity;
        rec.revenue = best.revenue;
        rec.welfare_delta = welfare;
        rec.breakpoints = pool.size();
        trace.records.push_back(rec);

        report.per_block.push_back({batch.block_id, best.price, best.quantity, best.revenue});
        report.serial_revenue += best.revenue;
        report.serial_welfare += welfare;
    }

    report.pent_remaining = 0;
    for (const auto& atom : pool)
        report.pent_remaining += atom.quantity;

    trace.final_state.t = t;
    trace.final_state.supply = s;
    return {std::move(trace), std::move(report)};
}

std::pair<Rational, Rational> baseline_metrics(const std::vector<BidBatch>& batches,
                                               const std::vector<Rational>& paid_prices,
                                               const Rational& s)
{
    if (batches.size() != paid_prices.size())
        throw std::invalid_argument("baseline_metrics: one paid price per block required");
    if (!(s > 0))
        throw std::domain_error("baseline_metrics: supply must be positive");
    validate_batches(batches);

    Rational revenue(0);
    Rational welfare(0);
    for (size_t i = 0; i < batches.size(); ++i)
    {
        Rational remaining = s;
        for (const auto& atom : batches[i].bids)
        {
            if (atom.price >= paid_prices[i] && remaining > 0)
            {
                const Rational take = std::min(atom.quantity, remaining);
                revenue += take * paid_prices[i];
                welfare += take * atom.price;
                remaining -= take;
            }
        }
    }
    return {std::move(revenue), std::move(welfare)};
}

Rational clearing_price(const BidBatch& batch, const Rational& s)
{
    if (!(s > 0))
        throw std::domain_error("clearing_price: supply must be positive");
    Rational total(0);
    for (const auto& atom : batch.bids)
        total += atom.quantity;
    if (total <= s)
        return Rational(0);

    std::vector<std::pair<Rational, Rational>> by_price;
    by_price.reserve(batch.bids.size());
    for (const auto& atom : batch.bids)
        by_price.emplace_back(atom.price, atom.quantity);
    std::sort(by_price.begin(), by_price.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    Rational cumulative(0);
    for (const auto& [price, quantity] : by_price)
    {
        cumulative += quantity;
        if (cumulative >= s)
            return price;
    }
    return Rational(0);  // unreachable: total > s
}

void attach_baseline(ReplayReport& report, const std::vector<BidBatch>& batches,
                     const std::vector<Rational>& paid_prices, const Rational& s)
{
    const auto [revenue, welfare] = baseline_metrics(batches, paid_prices, s);
    report.baseline_revenue = revenue;
    report.baseline_welfare = welfare;
    if (revenue > 0)
        report.revenue_ratio = Rational(report.serial_revenue / revenue);
    else
        report.caveats.push_back("baseline revenue is zero; revenue ratio not defined");
    if (welfare > 0)
        report.welfare_ratio = Rational(report.serial_welfare / welfare);
    else
        report.caveats.push_back("baseline welfare is zero; welfare ratio not defined");
}

std::string batches_jsonl(const std::vector<BidBatch>& batches)
{
    std::string out;
    for (const auto& batch : batches)
    {
        json bids = json::array();
        for (const auto& atom : batch.bids)
            bids.push_back({rat_str(atom.price), rat_str(atom.quantity)});
        const json line{{"block", batch.block_id}, {"bids", std::move(bids)}};
        out += line.dump();
        out += '\n';
    }
    return out;
}

std::string replay_report_json(const ReplayReport& report)
{
    json blocks = json::array();
    for (const auto& b : report.per_block)
        blocks.push_back({{"block", b.block_id},
                          {"price", rat_str(b.serial_price)},
                          {"quantity", rat_str(b.serial_quantity)},
                          {"revenue", rat_str(b.serial_revenue)}});
    json j{{"per_block", std::move(blocks)},
           {"totals",
            {{"serial_revenue", rat_str(report.serial_revenue)},
             {"serial_welfare", rat_str(report.serial_welfare)},
             {"baseline_revenue", rat_str(report.baseline_revenue)},
             {"baseline_welfare", rat_str(report.baseline_welfare)}}},
           {"ratios",
            {{"revenue_ratio", rat_str(report.revenue_ratio)},
             {"welfare_ratio", rat_str(report.welfare_ratio)}}},
           {"pent_remaining", rat_str(report.pent_remaining)},
           {"caveats", report.caveats}};
    return j.dump(2) + "\n";
}

}  // namespace smdyn
