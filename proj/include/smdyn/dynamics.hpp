// smdyn: serial monopoly pricing engine
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <smdyn/curve.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace smdyn {

enum class RunMode { exact, floating };

const char* to_string(RunMode mode);  // "exact" / "float"

// Relative tolerance under which the float engine merges near-collinear
// pent-up breakpoints after each step. Without it the breakpoint count
// (and so the cost per step) grows with the horizon.
template <typename T>
inline constexpr double default_prune_tol = 0.0;
template <>
inline constexpr double default_prune_tol<double> = 1e-12;

// Day index t plus everything the next step needs: the pent-up curve
// carried over from previous days, the fixed daily inflow and the supply.
template <typename T>
struct MarketState
{
    long t = 0;
    BasicDemandCurve<T> pent;   // unsatisfied demand carried forward
    BasicDemandCurve<T> daily;  // fresh demand arriving every day
    T supply{};
};

template <typename T>
struct StepRecord
{
    long t = 0;
    T price{};
    T quantity{};
    T revenue{};        // price * quantity
    T welfare_delta{};  // value cleared this step, at true willingness-to-pay
    std::size_t breakpoints = 0;  // node count of the pent-up curve after the step
};

template <typename T>
struct Trace
{
    std::vector<StepRecord<T>> records;
    MarketState<T> final_state;
    RunMode mode = RunMode::exact;
    bool monopoly_premium = true;  // init's warning flag (see InitResult)
};

template <typename T>
struct RunOptions
{
    double tie_tol = default_tie_tol<T>;
    double prune_tol = default_prune_tol<T>;
    // When set, per-step welfare is accounted with this curve's
    // willingness-to-pay instead of the daily curve's own. Used when the
    // engine runs on declared bids but welfare must count true values.
    const BasicDemandCurve<T>* true_daily = nullptr;
    // Serve at the market-clearing price when no price earns positive
    // revenue (all declared mass at price zero). Off by default: the
    // maximizer then rejects such curves as degenerate.
    bool clearing_fallback = false;
};

template <typename T>
struct InitResult
{
    MarketState<T> state;
    // False warns that the static monopolist does not strictly out-earn
    // the equilibrium; the run proceeds but the price-bound guarantees
    // (and their checks) do not apply.
    bool monopoly_premium = true;
};

// Day 0: no pent-up demand. With strict=true the daily curve must be
// strictly decreasing (throws std::domain_error otherwise).
template <typename T>
InitResult<T> init(BasicDemandCurve<T> daily, T supply, bool strict = false);

// One day: total demand = pent + daily, the leader picks the revenue
// maximizing price, sells, and the unserved remainder becomes pent-up.
template <typename T>
std::pair<MarketState<T>, StepRecord<T>> step(const MarketState<T>& state,
                                              const RunOptions<T>& opt = {});

// horizon sequential steps from init. Requires horizon >= 1.
template <typename T>
Trace<T> run(const BasicDemandCurve<T>& daily, const T& supply, long horizon,
             const RunOptions<T>& opt = {});

// Total demand the next step would face, evaluated at p.
template <typename T>
T demand_at(const MarketState<T>& state, const T& p);

}  // namespace smdyn
