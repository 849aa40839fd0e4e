// smdyn: executable checks of the pricing laws over traces
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <smdyn/analytics.hpp>
#include <smdyn/dynamics.hpp>

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace smdyn {

enum class CheckStatus { pass, fail, skipped };

const char* to_string(CheckStatus status);

struct CheckResult
{
    std::string name;
    CheckStatus status = CheckStatus::pass;
    long witness_t = 0;   // step of the first violation, 0 when none
    std::string witness;  // the offending values, printed
    bool ok() const noexcept { return status != CheckStatus::fail; }
};

struct VerifyReport
{
    std::vector<CheckResult> checks;
    long horizon = 0;
    RunMode mode = RunMode::exact;
    bool ok() const noexcept;
};

// Every price must sit in [p_ser, p_mon]. Skipped when the market lacks a
// monopoly premium (the bound is only guaranteed under it). Exact traces
// compare exactly; float traces allow rel_tol slack at both ends.
CheckResult check_sandwich(const Trace<Rational>& trace, const MarketPoints& points);
CheckResult check_sandwich(const Trace<double>& trace, const MarketPoints& points,
                           double rel_tol = 1e-9);

// From day 2 on, each price either returns to p_mon or strictly drops.
CheckResult check_descent_or_jump(const Trace<Rational>& trace, const MarketPoints& points);
CheckResult check_descent_or_jump(const Trace<double>& trace, const MarketPoints& points,
                                  double rel_tol = 1e-9);

// Replays the trace's market and checks, at every step and every sampled
// price p <= p_ser: (sold so far) = t*Q(p) - D^t(p), and for p < p_ser
// the pent-up gap identity D^t(p) - D^t(p_ser) = t*(Q(p) - Q(p_ser)).
// Exact traces only. Throws std::domain_error if a sample exceeds p_ser.
CheckResult check_conservation(const Trace<Rational>& trace,
                               const std::vector<Rational>& p_samples);

// SW_ser >= SW_eq/2, SW_ser >= SW_mon and SW_ser >= SW_eq - REV_mon.
CheckResult check_welfare_bound(const MarketPoints& points);

// Min and max price over the trailing window (at least one record).
template <typename T>
std::pair<T, T> estimate_extremes(const Trace<T>& trace, double window_fraction);

// Gap statistics for visits at or below a threshold price. max_gap counts
// only completed intervals (hit to hit, and start to first hit); the
// unfinished tail is reported separately.
struct EmpiricalDelta
{
    long max_gap = 0;
    long trailing_gap = 0;
    bool any_hit = false;
};

template <typename T>
EmpiricalDelta empirical_delta(const Trace<T>& trace, const T& p_threshold);

// Steps whose price equals p_mon (float: within rel_tol of it).
long count_jumps(const Trace<Rational>& trace, const MarketPoints& points);
long count_jumps(const Trace<double>& trace, const MarketPoints& points, double rel_tol = 1e-9);

// Random strictly decreasing piecewise-linear curve with 3..10 nodes and
// small rational coordinates, plus a supply that gives the market a
// monopoly premium. Deterministic in the generator state.
DemandCurve random_market(std::mt19937_64& rng);
Rational random_supply(std::mt19937_64& rng, const DemandCurve& Q);

// Runs the market for `horizon` steps in the given mode and applies every
// applicable check (conservation is exact-only and reported skipped in
// float mode, sampling ten prices below p_ser otherwise).
VerifyReport run_verification(const DemandCurve& Q, const Rational& s, long horizon,
                              RunMode mode);

std::string report_json(const VerifyReport& report);

}  // namespace smdyn
