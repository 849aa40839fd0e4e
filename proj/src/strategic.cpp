// smdyn: strategic bidding layer
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/strategic.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace smdyn {

ManipulationFn identity_fn()
{
    return {};
}

ManipulationFn clamp_fn(Rational threshold)
{
    if (threshold < 0)
        throw std::invalid_argument("clamp_fn: threshold must be nonnegative");
    ManipulationFn m;
    m.kind = ManipulationFn::Kind::clamp;
    m.threshold = std::move(threshold);
    return m;
}

ManipulationFn table_fn(std::vector<std::pair<Rational, Rational>> samples)
{
    if (samples.empty())
        throw std::invalid_argument("table_fn: at least one (value, bid) sample required");
    for (size_t i = 0; i < samples.size(); ++i)
    {
        const auto& [value, bid] = samples[i];
        if (value < 0 || bid < 0)
            throw std::invalid_argument("table_fn: values and bids must be nonnegative");
        if (bid > value)
            throw std::invalid_argument("table_fn: bids must not exceed the value");
        if (i > 0)
        {
            if (samples[i - 1].first >= value)
                throw std::invalid_argument("table_fn: values must be strictly increasing");
            if (samples[i - 1].second > bid)
                throw std::invalid_argument("table_fn: bids must be weakly increasing");
        }
    }
    ManipulationFn m;
    m.kind = ManipulationFn::Kind::table;
    m.samples = std::move(samples);
    return m;
}

Rational apply(const ManipulationFn& m, const Rational& value)
{
    if (value < 0)
        throw std::invalid_argument("apply: value must be nonnegative");
    switch (m.kind)
    {
    case ManipulationFn::Kind::identity:
        return value;
    case ManipulationFn::Kind::clamp:
        return std::min(value, m.threshold);
    case ManipulationFn::Kind::table:
        break;
    }
    const auto& samples = m.samples;
    if (value <= samples.front().first)
        return std::min(value, samples.front().second);
    if (value >= samples.back().first)
        return samples.back().second;
    for (size_t i = 1; i < samples.size(); ++i)
    {
        if (value <= samples[i].first)
        {
            const auto& [v0, b0] = samples[i - 1];
            const auto& [v1, b1] = samples[i];
            return Rational(b0 + (b1 - b0) * (value - v0) / (v1 - v0));
        }
    }
    return samples.back().second;  // unreachable
}

DemandCurve induced_demand(const DemandCurve& Q, const ManipulationFn& m)
{
    if (m.kind == ManipulationFn::Kind::identity || Q.is_zero())
        return Q;

    const Rational end = support_end(Q);

    if (m.kind == ManipulationFn::Kind::clamp)
    {
        const Rational& c = m.threshold;
        if (c >= end)
            return Q;
        DemandCurve out;
        for (const auto& [p, q] : Q.points)
        {
            if (p < c)
                out.points.emplace_back(p, q);
        }
        // Everyone with value >= c pools into a point mass at the cap.
        out.points.emplace_back(c, eval(Q, c));
        return canonicalize(out);
    }

    // Table: sample the declared curve at every value where either the map
    // or the true curve changes slope, then reject interior pooling. A flat
    // stretch of m carrying positive true mass would put a point mass at
    // its bid; that is representable only when no declared bid lies above
    // it (the mass sits at the top of the declared curve).
    std::vector<Rational> grid;
    grid.push_back(Rational(0));
    for (const auto& [p, q] : Q.points)
    {
        if (p <= end)
            grid.push_back(p);
    }
    for (const auto& [value, bid] : m.samples)
    {
        if (value >= 0 && value <= end)
            grid.push_back(value);
    }
    // Below the first sample the map is min(v, first bid), which kinks at
    // the bid value itself.
    if (m.samples.front().second <= end)
        grid.push_back(m.samples.front().second);
    grid.push_back(end);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const Rational top_bid = apply(m, end);
    for (size_t i = 1; i < grid.size(); ++i)
    {
        const Rational& a = grid[i - 1];
        const Rational& b = grid[i];
        if (apply(m, a) == apply(m, b) && eval(Q, a) > eval(Q, b) && top_bid > apply(m, b))
            throw std::domain_error(
                "induced_demand: manipulation pools an interior point mass (flat bid "
                "stretch with declared bids above it)");
    }

    DemandCurve out;
    for (const Rational& v : grid)
    {
        const Rational bid = apply(m, v);
        if (!out.points.empty() && out.points.back().first == bid)
            continue;  // keep the first (largest) quantity at a pooled bid
        out.points.emplace_back(bid, eval(Q, v));
    }
    return canonicalize(out);
}

Trace<Rational> run_strategic(const DemandCurve& Q, const Rational& s, const ManipulationFn& m,
                              long horizon)
{
    const DemandCurve declared = induced_demand(Q, m);
    RunOptions<Rational> opt;
    opt.true_daily = &Q;
    opt.clearing_fallback = true;
    return run(declared, s, horizon, opt);
}

PriceTrajectory trajectory_of(const Trace<Rational>& trace)
{
    PriceTrajectory traj;
    traj.prices.reserve(trace.records.size());
    for (const auto& rec : trace.records)
        traj.prices.emplace_back(rec.t, rec.price);
    return traj;
}

namespace {

// First trajectory index at or after birth_t; throws when none exists.
size_t suffix_begin(const PriceTrajectory& trajectory, long birth_t)
{
    size_t i = 0;
    while (i < trajectory.prices.size() && trajectory.prices[i].first < birth_t)
        ++i;
    if (i == trajectory.prices.size())
        throw std::domain_error("trajectory does not cover birth_t");
    return i;
}

}  // namespace

Rational bid_utility(const PriceTrajectory& trajectory, long birth_t, const Rational& value,
                     const Rational& bid)
{
    for (size_t i = suffix_begin(trajectory, birth_t); i < trajectory.prices.size(); ++i)
    {
        const Rational& p = trajectory.prices[i].second;
        if (p <= bid)
            return Rational(value - p);
    }
    return Rational(0);
}

BidOutcome best_response(const PriceTrajectory& trajectory, long birth_t, const Rational& value)
{
    size_t i = suffix_begin(trajectory, birth_t);
    Rational lowest = trajectory.prices[i].second;
    for (++i; i < trajectory.prices.size(); ++i)
        lowest = std::min(lowest, trajectory.prices[i].second);
    if (lowest < value)
        return {lowest, Rational(value - lowest)};
    // No future price is worth paying; the cheapest winning bid is not
    // profitable, so stay out (ties resolve toward the lower bid).
    return {Rational(0), Rational(0)};
}

std::vector<RegretRow> regret_table(const DemandCurve& Q, const Rational& s,
                                    const ManipulationFn& m, long horizon,
                                    const std::vector<Rational>& value_grid)
{
    const Trace<Rational> trace = run_strategic(Q, s, m, horizon);
    const PriceTrajectory traj = trajectory_of(trace);
    std::vector<RegretRow> rows;
    rows.reserve(value_grid.size());
    for (const Rational& value : value_grid)
    {
        RegretRow row;
        row.value = value;
        row.equilibrium_bid = apply(m, value);
        row.equilibrium_utility = bid_utility(traj, 1, value, row.equilibrium_bid);
        const BidOutcome best = best_response(traj, 1, value);
        row.best_bid = best.bid;
        row.best_utility = best.utility;
        row.regret = Rational(best.utility - row.equilibrium_utility);
        rows.push_back(std::move(row));
    }
    return rows;
}

Rational max_regret(const std::vector<RegretRow>& rows)
{
    Rational worst(0);
    for (const auto& row : rows)
        worst = std::max(worst, row.regret);
    return worst;
}

Rational equilibrium_gap(const DemandCurve& Q, const Rational& s, long horizon,
                         const std::vector<Rational>& value_grid, const ManipulationFn* m_override)
{
    const ManipulationFn m =
        m_override != nullptr ? *m_override : clamp_fn(market_points(Q, s).p_eq);
    return max_regret(regret_table(Q, s, m, horizon, value_grid));
}

namespace {

std::string regret_csv_impl(const std::vector<RegretRow>& rows, std::string (*fmt)(const Rational&))
{
    std::string out = "value,equilibrium_bid,equilibrium_utility,best_bid,best_utility,regret\n";
    for (const auto& row : rows)
    {
        out += fmt(row.value);
        out += ',';
        out += fmt(row.equilibrium_bid);
        out += ',';
        out += fmt(row.equilibrium_utility);
        out += ',';
        out += fmt(row.best_bid);
        out += ',';
        out += fmt(row.best_utility);
        out += ',';
        out += fmt(row.regret);
        out += '\n';
    }
    return out;
}

}  // namespace

std::string regret_csv(const std::vector<RegretRow>& rows)
{
    return regret_csv_impl(rows, [](const Rational& v) { return rat_decimal(v, 17); });
}

std::string regret_exact_csv(const std::vector<RegretRow>& rows)
{
    return regret_csv_impl(rows, [](const Rational& v) { return rat_str(v); });
}

}  // namespace smdyn
