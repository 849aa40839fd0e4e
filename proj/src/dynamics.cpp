// smdyn: serial monopoly pricing engine
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/dynamics.hpp>

#include <stdexcept>
#include <type_traits>

namespace smdyn {

const char* to_string(RunMode mode)
{
    return mode == RunMode::exact ? "exact" : "float";
}

namespace {

// REV_mon > REV_eq, computed directly so the check works in both modes.
// Degenerate demand (no positive revenue anywhere) counts as no premium.
template <typename T>
bool premium_holds(const BasicDemandCurve<T>& daily, const T& supply)
{
    try
    {
        const T rev_mon = revenue_maximizer(daily, supply).revenue;
        const T q0 = daily.is_zero() ? T(0) : eval(daily, T(0));
        const T p_eq = q0 < supply ? T(0) : inverse(daily, supply);
        return rev_mon > p_eq * supply;
    }
    catch (const std::domain_error&)
    {
        return false;
    }
}

}  // namespace

template <typename T>
InitResult<T> init(BasicDemandCurve<T> daily, T supply, bool strict)
{
    validate_curve(daily, strict);
    if (!(supply > T(0)))
        throw std::domain_error("init: supply must be positive");
    InitResult<T> r;
    r.state.t = 0;
    r.state.daily = std::move(daily);
    r.state.supply = std::move(supply);
    r.monopoly_premium = premium_holds(r.state.daily, r.state.supply);
    return r;
}

template <typename T>
std::pair<MarketState<T>, StepRecord<T>> step(const MarketState<T>& state, const RunOptions<T>& opt)
{
    const BasicDemandCurve<T> demand = add(state.pent, state.daily);

    RevenuePoint<T> best;
    BasicDemandCurve<T> next_pent;
    if (opt.clearing_fallback && support_end(demand) == T(0))
    {
        // Every price earns zero revenue: all declared mass sits at price
        // zero. Clear the market there instead of serving nobody.
        const T mass = demand.is_zero() ? T(0) : eval(demand, T(0));
        best.price = T(0);
        best.quantity = mass < state.supply ? mass : state.supply;
        best.revenue = T(0);
        if (mass > best.quantity)
            next_pent.points.push_back({T(0), mass - best.quantity});
    }
    else
    {
        best = revenue_maximizer(demand, state.supply, opt.tie_tol);
        next_pent = residual_after_sale(demand, best.price, best.quantity);
    }
    if (opt.prune_tol > 0)
        next_pent = canonicalize(next_pent, T(opt.prune_tol));

    StepRecord<T> rec;
    rec.t = state.t + 1;
    rec.price = best.price;
    rec.quantity = best.quantity;
    rec.revenue = best.revenue;
    const T gone = welfare_above_price(next_pent, T(0));
    if (opt.true_daily != nullptr)
        rec.welfare_delta = welfare_above_price(state.pent, T(0)) +
                            welfare_above_price(*opt.true_daily, T(0)) - gone;
    else
        rec.welfare_delta = welfare_above_price(demand, T(0)) - gone;
    rec.breakpoints = next_pent.size();

    MarketState<T> next;
    next.t = state.t + 1;
    next.pent = std::move(next_pent);
    next.daily = state.daily;
    next.supply = state.supply;
    return {std::move(next), std::move(rec)};
}

template <typename T>
Trace<T> run(const BasicDemandCurve<T>& daily, const T& supply, long horizon,
             const RunOptions<T>& opt)
{
    if (horizon < 1)
        throw std::domain_error("run: horizon must be at least 1");
    auto start = init(daily, supply);
    Trace<T> trace;
    trace.mode = std::is_same_v<T, double> ? RunMode::floating : RunMode::exact;
    trace.monopoly_premium = start.monopoly_premium;
    trace.records.reserve(static_cast<std::size_t>(horizon));
    MarketState<T> state = std::move(start.state);
    for (long t = 0; t < horizon; ++t)
    {
        auto [next, rec] = step(state, opt);
        state = std::move(next);
        trace.records.push_back(std::move(rec));
    }
    trace.final_state = std::move(state);
    return trace;
}

template <typename T>
T demand_at(const MarketState<T>& state, const T& p)
{
    return eval(add(state.pent, state.daily), p);
}

template InitResult<Rational> init(DemandCurve, Rational, bool);
template InitResult<double> init(DemandCurveF, double, bool);
template std::pair<MarketState<Rational>, StepRecord<Rational>> step(
    const MarketState<Rational>&, const RunOptions<Rational>&);
template std::pair<MarketState<double>, StepRecord<double>> step(
    const MarketState<double>&, const RunOptions<double>&);
template Trace<Rational> run(const DemandCurve&, const Rational&, long, const RunOptions<Rational>&);
template Trace<double> run(const DemandCurveF&, const double&, long, const RunOptions<double>&);
template Rational demand_at(const MarketState<Rational>&, const Rational&);
template double demand_at(const MarketState<double>&, const double&);

}  // namespace smdyn
