// smdyn: command-line front end
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/cli.hpp>

#include <smdyn/analytics.hpp>
#include <smdyn/config.hpp>
#include <smdyn/curve_io.hpp>
#include <smdyn/dynamics.hpp>
#include <smdyn/families.hpp>
#include <smdyn/ingest.hpp>
#include <smdyn/rpc.hpp>
#include <smdyn/strategic.hpp>
#include <smdyn/trace_io.hpp>
#include <smdyn/verify.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace smdyn {
namespace {

using nlohmann::json;

// A bad invocation that CLI11 cannot catch itself (exit code 2).
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

json num_json(const Rational& v)
{
    return json{{"exact", rat_str(v)}, {"decimal", rat_decimal(v, 17)}};
}

Rational frac(long num, long den)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string output_path(const std::string& dir, const std::string& name)
{
    if (dir.empty())
        return name;
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

// ---------------------------------------------------------------------
// Shared market flags (demand spec, supply, run parameters).

struct MarketArgs
{
    std::string config_path;
    std::string family;
    std::string params_csv;
    std::string breakpoints_csv;
    std::string curve_file;
    std::string supply_str;
    long horizon = 0;
    std::string mode_str;
    long seed = 0;
    std::string output_dir;
};

void add_demand_options(CLI::App& sub, MarketArgs& args)
{
    sub.add_option("--config", args.config_path,
                   "config file, key=value lines or JSON");
    sub.add_option("--demand", args.family,
                   "demand family: uniform, equal-revenue, stepped");
    sub.add_option("--params", args.params_csv,
                   "comma-separated family parameters (exact rationals)");
    sub.add_option("--breakpoints", args.breakpoints_csv,
                   "inline demand curve as price:quantity,price:quantity,...");
    sub.add_option("--curve-file", args.curve_file, "demand curve JSON file");
    sub.add_option("--supply", args.supply_str, "daily supply (exact rational)");
}

void add_run_options(CLI::App& sub, MarketArgs& args)
{
    sub.add_option("--horizon", args.horizon, "number of days to simulate");
    sub.add_option("--mode", args.mode_str, "arithmetic mode")
        ->check(CLI::IsMember({"exact", "float"}));
    sub.add_option("--seed", args.seed, "seed for randomized sweeps");
    sub.add_option("--output-dir", args.output_dir, "directory for emitted files");
}

std::vector<Rational> parse_params_csv(const std::string& text)
{
    std::vector<Rational> params;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        const size_t b = item.find_first_not_of(" \t");
        if (b == std::string::npos)
            continue;
        const size_t e = item.find_last_not_of(" \t");
        params.push_back(rat_from_string(item.substr(b, e - b + 1)));
    }
    return params;
}

std::vector<std::pair<Rational, Rational>> parse_breakpoints(const std::string& text)
{
    std::vector<std::pair<Rational, Rational>> points;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        const size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw UsageError("--breakpoints expects price:quantity pairs, got \"" + item +
                             "\"");
        points.emplace_back(rat_from_string(item.substr(0, colon)),
                            rat_from_string(item.substr(colon + 1)));
    }
    if (points.empty())
        throw UsageError("--breakpoints is empty");
    return points;
}

// File config first, then explicit flags on top.
RunConfig build_config(const CLI::App& sub, const MarketArgs& args)
{
    RunConfig config;
    if (sub.count("--config") > 0)
        config = load_config(args.config_path);
    if (sub.count("--demand") > 0)
        config.demand_family = args.family;
    if (sub.count("--params") > 0)
        config.demand_params = parse_params_csv(args.params_csv);
    if (sub.count("--breakpoints") > 0)
        config.demand_breakpoints = parse_breakpoints(args.breakpoints_csv);
    if (sub.count("--curve-file") > 0)
        config.demand_file = args.curve_file;
    if (sub.count("--supply") > 0)
        config.supply = rat_from_string(args.supply_str);
    if (sub.get_option_no_throw("--horizon") != nullptr && sub.count("--horizon") > 0)
        config.horizon = args.horizon;
    if (sub.get_option_no_throw("--mode") != nullptr && sub.count("--mode") > 0)
        config.mode = args.mode_str == "float" ? RunMode::floating : RunMode::exact;
    if (sub.get_option_no_throw("--seed") != nullptr && sub.count("--seed") > 0)
        config.seed = args.seed;
    if (sub.get_option_no_throw("--output-dir") != nullptr &&
        sub.count("--output-dir") > 0)
        config.output_dir = args.output_dir;
    validate_config(config);
    return config;
}

// ---------------------------------------------------------------------
// analyze: characteristic market points as JSON.

int cmd_analyze(const CLI::App& sub, const MarketArgs& args)
{
    const RunConfig config = build_config(sub, args);
    const DemandCurve Q = resolve_demand(config);
    const MarketPoints pts = market_points(Q, config.supply);

    json j{{"p_eq", num_json(pts.p_eq)},    {"q_eq", num_json(pts.q_eq)},
           {"p_mon", num_json(pts.p_mon)},  {"q_mon", num_json(pts.q_mon)},
           {"p_ser", num_json(pts.p_ser)},  {"q_ser", num_json(pts.q_ser)},
           {"SW_eq", num_json(pts.SW_eq)},  {"SW_mon", num_json(pts.SW_mon)},
           {"SW_ser", num_json(pts.SW_ser)}, {"REV_eq", num_json(pts.REV_eq)},
           {"REV_mon", num_json(pts.REV_mon)},
           {"monopoly_premium", has_monopoly_premium(pts)}};
    j["H"] = json{{"finite", pts.H_finite}};
    if (pts.H_finite)
    {
        j["H"]["exact"] = rat_str(pts.H);
        j["H"]["decimal"] = rat_decimal(pts.H, 17);
    }
    if (pts.SW_eq > 0)
        j["welfare_ratio"] = num_json(welfare_ratio(pts));

    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!config.output_dir.empty())
        write_text(output_path(config.output_dir, "analyze.json"), text);
    return 0;
}

// ---------------------------------------------------------------------
// simulate: run the dynamics, emit the trace CSV.

int cmd_simulate(const CLI::App& sub, const MarketArgs& args)
{
    const RunConfig config = build_config(sub, args);
    const DemandCurve Q = resolve_demand(config);

    if (config.mode == RunMode::exact)
    {
        const Trace<Rational> trace = run(Q, config.supply, config.horizon);
        std::cout << trace_exact_csv(trace);
        if (!config.output_dir.empty())
            write_trace_csv(trace, output_path(config.output_dir, "trace.csv"));
    }
    else
    {
        const Trace<double> trace =
            run(to_float(Q), config.supply.get_d(), config.horizon);
        std::cout << trace_csv(trace);
        if (!config.output_dir.empty())
            write_trace_csv(trace, output_path(config.output_dir, "trace.csv"));
    }
    return 0;
}

// ---------------------------------------------------------------------
// verify: run the dynamics and every applicable law check.

int cmd_verify(const CLI::App& sub, const MarketArgs& args)
{
    const RunConfig config = build_config(sub, args);
    const DemandCurve Q = resolve_demand(config);
    const VerifyReport report =
        run_verification(Q, config.supply, config.horizon, config.mode);
    const std::string text = report_json(report);
    std::cout << text;
    if (!config.output_dir.empty())
        write_text(output_path(config.output_dir, "verify.json"), text);
    return report.ok() ? 0 : 1;
}

// ---------------------------------------------------------------------
// strategic: manipulated equilibrium trace plus a regret table.

struct StrategicArgs
{
    std::string clamp_str;
    bool identity = false;
    long grid = 101;
};

int cmd_strategic(const CLI::App& sub, const MarketArgs& args, const StrategicArgs& sargs)
{
    const RunConfig config = build_config(sub, args);
    const DemandCurve Q = resolve_demand(config);

    ManipulationFn m;
    std::string label;
    if (sargs.identity)
    {
        m = identity_fn();
        label = "identity";
    }
    else if (sub.count("--clamp") > 0)
    {
        const Rational cap = rat_from_string(sargs.clamp_str);
        m = clamp_fn(cap);
        label = "clamp(" + rat_str(cap) + ")";
    }
    else
    {
        const Rational p_eq = market_points(Q, config.supply).p_eq;
        m = clamp_fn(p_eq);
        label = "clamp(p_eq=" + rat_str(p_eq) + ")";
    }

    if (sargs.grid < 2)
        throw UsageError("--grid needs at least 2 values");
    const Rational end = support_end(Q);
    std::vector<Rational> values;
    values.reserve(static_cast<size_t>(sargs.grid));
    for (long k = 0; k < sargs.grid; ++k)
        values.push_back(Rational(end * frac(k, sargs.grid - 1)));

    const Trace<Rational> trace = run_strategic(Q, config.supply, m, config.horizon);
    const std::vector<RegretRow> rows =
        regret_table(Q, config.supply, m, config.horizon, values);
    const Rational gap =
        equilibrium_gap(Q, config.supply, config.horizon, values, &m);

    const std::string trace_path = output_path(config.output_dir, "strategic_trace.csv");
    write_trace_csv(trace, trace_path);
    const std::string regret_path = output_path(config.output_dir, "regret.csv");
    write_text(regret_path, regret_csv(rows));
    const std::string regret_exact_path = exact_sibling_path(regret_path);
    write_text(regret_exact_path, regret_exact_csv(rows));

    const json j{{"manipulation", label},
                 {"horizon", config.horizon},
                 {"grid_values", sargs.grid},
                 {"max_regret", num_json(max_regret(rows))},
                 {"equilibrium_gap", num_json(gap)},
                 {"files",
                  {{"trace", trace_path},
                   {"trace_exact", exact_sibling_path(trace_path)},
                   {"regret", regret_path},
                   {"regret_exact", regret_exact_path}}}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------
// replay: serial dynamics over recorded block bids.

struct ReplayArgs
{
    std::string blocks_path;
    std::string format;
    std::string supply_str;
    std::string paid_path;
    bool clearing_baseline = false;
    std::string output_dir;
};

std::vector<Rational> read_paid_prices(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open paid-price file " + path);
    std::vector<Rational> paid;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos)
            continue;
        const size_t e = line.find_last_not_of(" \t\r");
        try
        {
            paid.push_back(rat_from_string(line.substr(b, e - b + 1)));
        }
        catch (const std::invalid_argument& err)
        {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " +
                                     err.what());
        }
    }
    return paid;
}

int cmd_replay(const CLI::App& sub, const ReplayArgs& rargs)
{
    BlockFormat format = BlockFormat::jsonl;
    if (sub.count("--format") > 0)
        format = rargs.format == "csv" ? BlockFormat::csv : BlockFormat::jsonl;
    else if (rargs.blocks_path.size() >= 4 &&
             rargs.blocks_path.substr(rargs.blocks_path.size() - 4) == ".csv")
        format = BlockFormat::csv;

    const Rational s = rat_from_string(rargs.supply_str);
    const std::vector<BidBatch> batches = parse_blocks(rargs.blocks_path, format);
    auto [trace, report] = replay(batches, s);

    if (rargs.clearing_baseline)
    {
        std::vector<Rational> paid;
        paid.reserve(batches.size());
        for (const auto& batch : batches)
            paid.push_back(clearing_price(batch, s));
        attach_baseline(report, batches, paid, s);
    }
    else if (sub.count("--paid") > 0)
    {
        attach_baseline(report, batches, read_paid_prices(rargs.paid_path), s);
    }

    const std::string text = replay_report_json(report);
    std::cout << text;
    if (!rargs.output_dir.empty())
    {
        write_text(output_path(rargs.output_dir, "replay.json"), text);
        write_trace_csv(trace, output_path(rargs.output_dir, "replay_trace.csv"));
    }
    return 0;
}

// ---------------------------------------------------------------------
// fetch: pull block bids over JSON-RPC and write them as JSONL.

struct FetchArgs
{
    std::string endpoint;
    long first = -1;
    long last = -1;
    long latest = 0;
    std::string out_path;
};

int cmd_fetch(const CLI::App& sub, const FetchArgs& fargs)
{
    if (fargs.endpoint.empty())
        throw UsageError("no endpoint: pass --endpoint or set SM_RPC_URL");

    long first = fargs.first;
    long last = fargs.last;
    if (sub.count("--latest") > 0)
    {
        if (sub.count("--first") > 0 || sub.count("--last") > 0)
            throw UsageError("--latest excludes --first/--last");
        if (fargs.latest < 1)
            throw UsageError("--latest needs a positive block count");
        last = fetch_block_number(fargs.endpoint);
        first = std::max(0L, last - fargs.latest + 1);
    }
    else
    {
        if (sub.count("--first") == 0)
            throw UsageError("pass --first (with optional --last) or --latest");
        if (sub.count("--last") == 0)
            last = first;
    }

    const std::vector<BidBatch> batches = fetch_blocks(fargs.endpoint, first, last);
    const std::string jsonl = batches_jsonl(batches);
    if (fargs.out_path.empty())
    {
        std::cout << jsonl;
        return 0;
    }
    write_text(fargs.out_path, jsonl);
    size_t bids = 0;
    for (const auto& batch : batches)
        bids += batch.bids.size();
    const json j{{"blocks", batches.size()}, {"bids", bids}, {"path", fargs.out_path}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------
// repro: the fixed battery of worked examples, pass/fail per line.

struct ReproCheck
{
    std::string name;
    std::function<bool()> check;
};

bool repro_uniform_price_path()
{
    const DemandCurve Q{{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
    const auto trace = run(Q, Rational(1), 4);
    const std::vector<Rational> prices{Rational(1, 2), Rational(3, 8), Rational(7, 24),
                                       Rational(1, 2)};
    const std::vector<Rational> quantities{Rational(1, 2), Rational(3, 4), Rational(7, 8),
                                           Rational(1, 2)};
    const std::vector<Rational> welfare{Rational(3, 8), Rational(31, 64),
                                        Rational(197, 384), Rational(3, 8)};
    const std::vector<size_t> breakpoints{2, 2, 2, 3};
    if (trace.records.size() != 4)
        return false;
    for (size_t i = 0; i < 4; ++i)
    {
        const auto& r = trace.records[i];
        if (r.price != prices[i] || r.quantity != quantities[i] ||
            r.welfare_delta != welfare[i] || r.breakpoints != breakpoints[i])
            return false;
    }
    return true;
}

bool repro_uniform_market_points()
{
    const DemandCurve Q{{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
    const auto pts = market_points(Q, Rational(1));
    return pts.p_eq == 0 && pts.q_eq == 1 && pts.p_mon == Rational(1, 2) &&
           pts.q_mon == Rational(1, 2) && pts.p_ser == Rational(1, 4) &&
           pts.q_ser == Rational(3, 4) && pts.SW_eq == Rational(1, 2) &&
           pts.SW_mon == Rational(3, 8) && pts.SW_ser == Rational(15, 32) &&
           pts.REV_eq == 0 && pts.REV_mon == Rational(1, 4);
}

bool repro_uniform_welfare_ratio()
{
    const DemandCurve Q{{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
    return welfare_ratio(market_points(Q, Rational(1))) == Rational(15, 16);
}

bool repro_uniform_long_run_laws()
{
    const DemandCurve Q{{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
    return run_verification(Q, Rational(1), 300, RunMode::exact).ok();
}

bool repro_stepped_market_ratio()
{
    const auto Q = approximate_pl(stepped_family(Rational(100), rat_from_string("1e-6")), 2);
    const Rational ratio = welfare_ratio(market_points(Q, Rational(100)));
    const Rational gap = Rational(ratio - Rational(101, 200));
    const Rational mag = gap < 0 ? Rational(-gap) : gap;
    return mag <= Rational(1, 1000);
}

bool repro_equal_revenue_ratio()
{
    const Rational H = rat_from_double(std::exp(2.0));
    const auto Q = approximate_pl(equal_revenue_family(H), 10000);
    const auto pts = market_points(Q, Rational(1));
    if (pts.REV_eq != 1 || pts.REV_mon < 1)
        return false;
    if (Rational(pts.REV_mon - pts.REV_eq) > Rational(1, 1000))
        return false;  // revenue boundary example: premium only from chords
    return welfare_ratio(pts) >= Rational(99, 100);
}

bool repro_clamp_equilibrium()
{
    const DemandCurve Q{{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
    const Rational s(3, 4);
    const auto trace = run_strategic(Q, s, clamp_fn(Rational(1, 4)), 200);
    for (const auto& rec : trace.records)
        if (rec.price != Rational(1, 4) || rec.quantity != s)
            return false;
    std::vector<Rational> grid;
    for (long k = 0; k <= 100; ++k)
        grid.push_back(frac(k, 100));
    return equilibrium_gap(Q, s, 200, grid) == 0;
}

bool repro_patience_witness()
{
    const DemandCurve Q{{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
    const auto rows =
        regret_table(Q, Rational(1), identity_fn(), 4, {Rational(9, 20)});
    if (rows.size() != 1)
        return false;
    const auto& r = rows[0];
    return r.equilibrium_bid == Rational(9, 20) &&
           r.equilibrium_utility == Rational(3, 40) && r.best_bid == Rational(7, 24) &&
           r.best_utility == Rational(19, 120) && r.regret == Rational(1, 12);
}

bool repro_replay_tie_break()
{
    std::vector<BidBatch> batches(1);
    batches[0].block_id = 1;
    batches[0].bids = {{Rational(10), Rational(3), 0},
                       {Rational(5), Rational(4), 1},
                       {Rational(2), Rational(5), 2}};
    const auto [trace, report] = replay(batches, Rational(6));
    return report.per_block.size() == 1 && report.per_block[0].serial_price == 10 &&
           report.per_block[0].serial_quantity == 3 &&
           report.per_block[0].serial_revenue == 30;
}

bool repro_replay_rationing()
{
    std::vector<BidBatch> batches(2);
    batches[0].block_id = 1;
    batches[0].bids = {{Rational(10), Rational(3), 0}};
    batches[1].block_id = 2;
    batches[1].bids = {{Rational(4), Rational(10), 1}};
    const auto [trace, report] = replay(batches, Rational(6));
    return report.per_block[1].serial_price == 4 &&
           report.per_block[1].serial_quantity == 6 && report.pent_remaining == 4 &&
           report.serial_revenue == 54;
}

bool repro_baseline_paid_price()
{
    std::vector<BidBatch> batches(1);
    batches[0].block_id = 1;
    batches[0].bids = {{Rational(10), Rational(3), 0}, {Rational(5), Rational(4), 1}};
    const auto [rev, wel] = baseline_metrics(batches, {Rational(5)}, Rational(6));
    return rev == 30 && wel == 45;
}

bool repro_curve_roundtrip()
{
    const DemandCurve Q{{{Rational(0), Rational(1)}, {Rational(1, 2), Rational(3, 4)},
                         {Rational(1), Rational(0)}}};
    return curve_from_json(curve_to_json(Q), true) == Q;
}

int cmd_repro()
{
    const std::vector<ReproCheck> checks{
        {"uniform-price-path", repro_uniform_price_path},
        {"uniform-market-points", repro_uniform_market_points},
        {"uniform-welfare-ratio", repro_uniform_welfare_ratio},
        {"uniform-long-run-laws", repro_uniform_long_run_laws},
        {"stepped-market-ratio", repro_stepped_market_ratio},
        {"equal-revenue-ratio", repro_equal_revenue_ratio},
        {"clamp-equilibrium", repro_clamp_equilibrium},
        {"patience-witness", repro_patience_witness},
        {"replay-tie-break", repro_replay_tie_break},
        {"replay-rationing", repro_replay_rationing},
        {"baseline-paid-price", repro_baseline_paid_price},
        {"curve-roundtrip", repro_curve_roundtrip},
    };

    std::ostringstream out;
    int failed = 0;
    for (const auto& c : checks)
    {
        bool ok = false;
        try
        {
            ok = c.check();
        }
        catch (const std::exception&)
        {
            ok = false;
        }
        if (!ok)
            ++failed;
        out << std::left << std::setw(28) << c.name << (ok ? "pass" : "FAIL") << "\n";
    }
    out << checks.size() << " checks: " << (checks.size() - failed) << " passed, "
        << failed << " failed\n";
    std::cout << out.str();
    return failed == 0 ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv)
{
    CLI::App app{"serial-monopoly pricing dynamics toolkit"};
    app.require_subcommand(1);

    MarketArgs analyze_args;
    CLI::App* analyze = app.add_subcommand("analyze", "characteristic market points");
    add_demand_options(*analyze, analyze_args);
    analyze->add_option("--output-dir", analyze_args.output_dir,
                        "directory for analyze.json");

    MarketArgs simulate_args;
    CLI::App* simulate = app.add_subcommand("simulate", "run the dynamics, emit CSV");
    add_demand_options(*simulate, simulate_args);
    add_run_options(*simulate, simulate_args);

    MarketArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "run the dynamics and check the laws");
    add_demand_options(*verify, verify_args);
    add_run_options(*verify, verify_args);

    MarketArgs strategic_market;
    StrategicArgs strategic_args;
    CLI::App* strategic =
        app.add_subcommand("strategic", "manipulated bidding equilibrium and regret");
    add_demand_options(*strategic, strategic_market);
    add_run_options(*strategic, strategic_market);
    strategic->add_option("--clamp", strategic_args.clamp_str,
                          "cap all bids at this value");
    strategic->add_flag("--identity", strategic_args.identity, "truthful bidding");
    strategic->add_option("--grid", strategic_args.grid,
                          "number of values in the regret grid");

    ReplayArgs replay_args;
    CLI::App* replay_cmd =
        app.add_subcommand("replay", "serial dynamics over recorded block bids");
    replay_cmd->add_option("--blocks", replay_args.blocks_path, "bid batches file")
        ->required();
    replay_cmd->add_option("--format", replay_args.format, "jsonl or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    replay_cmd->add_option("--supply", replay_args.supply_str, "per-block supply")
        ->required();
    replay_cmd->add_option("--paid", replay_args.paid_path,
                           "file with one paid price per block (baseline)");
    replay_cmd->add_flag("--clearing-baseline", replay_args.clearing_baseline,
                         "use each block's clearing price as the baseline");
    replay_cmd->add_option("--output-dir", replay_args.output_dir,
                           "directory for replay.json and the trace CSV");

    FetchArgs fetch_args;
    CLI::App* fetch = app.add_subcommand("fetch", "pull block bids over JSON-RPC");
    fetch->add_option("--endpoint", fetch_args.endpoint, "JSON-RPC endpoint URL")
        ->envname("SM_RPC_URL");
    fetch->add_option("--first", fetch_args.first, "first block number");
    fetch->add_option("--last", fetch_args.last, "last block number (default: first)");
    fetch->add_option("--latest", fetch_args.latest, "fetch the newest N blocks");
    fetch->add_option("--out", fetch_args.out_path, "output JSONL path (default stdout)");

    app.add_subcommand("repro", "run the worked-example battery, print pass/fail");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (analyze->parsed())
            return cmd_analyze(*analyze, analyze_args);
        if (simulate->parsed())
            return cmd_simulate(*simulate, simulate_args);
        if (verify->parsed())
            return cmd_verify(*verify, verify_args);
        if (strategic->parsed())
            return cmd_strategic(*strategic, strategic_market, strategic_args);
        if (replay_cmd->parsed())
            return cmd_replay(*replay_cmd, replay_args);
        if (fetch->parsed())
            return cmd_fetch(*fetch, fetch_args);
        return cmd_repro();
    }
    catch (const UsageError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace smdyn
