// smdyn: strategic bidding layer
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <smdyn/analytics.hpp>
#include <smdyn/dynamics.hpp>

#include <string>
#include <utility>
#include <vector>

namespace smdyn {

// A time-invariant map from a bidder's true value to the declared bid:
// weakly monotone and never above the value. Bidders place the bid once,
// when they enter, and never revise it.
struct ManipulationFn
{
    enum class Kind { identity, clamp, table };
    Kind kind = Kind::identity;
    Rational threshold;  // clamp: bid = min(value, threshold)
    // table: linear interpolation through (value, bid) samples; bids hold
    // at the last sample above it and follow min(value, first bid) below
    // the first, so the map stays monotone and never overbids.
    std::vector<std::pair<Rational, Rational>> samples;
};

ManipulationFn identity_fn();
ManipulationFn clamp_fn(Rational threshold);
// Validates the samples: values strictly increasing, bids weakly
// increasing, never negative, never above the value.
ManipulationFn table_fn(std::vector<std::pair<Rational, Rational>> samples);

Rational apply(const ManipulationFn& m, const Rational& value);

// The demand curve declared by a population of true demand Q all bidding
// through m: mass at declared price p is the true mass with m(value) >= p.
// Bids pooled at one price form a point mass; that is representable only
// at the top of the declared curve, so a manipulation that pools an
// interior band (a flat stretch with declared bids above it) throws
// std::domain_error.
DemandCurve induced_demand(const DemandCurve& Q, const ManipulationFn& m);

// The daily pricing dynamics driven by the declared curve, with welfare
// accounted against the true values and the market-clearing fallback on
// (an all-at-zero declared pool is served rather than priced out).
Trace<Rational> run_strategic(const DemandCurve& Q, const Rational& s,
                              const ManipulationFn& m, long horizon);

struct PriceTrajectory
{
    std::vector<std::pair<long, Rational>> prices;  // (t, price), t increasing
};

PriceTrajectory trajectory_of(const Trace<Rational>& trace);

// Utility of submitting `bid` at birth_t: a bidder is served by the first
// price at or below the bid and pays that price; unserved pays nothing.
// The bid itself never moves prices (infinitesimal bidder). Throws
// std::domain_error when the trajectory does not cover birth_t.
Rational bid_utility(const PriceTrajectory& trajectory, long birth_t, const Rational& value,
                     const Rational& bid);

struct BidOutcome
{
    Rational bid;
    Rational utility;
};

// The bid maximizing utility against the trajectory: the lowest future
// price when it is below the value, else the zero bid that stays out of
// the market. Ties resolve toward the lower bid.
BidOutcome best_response(const PriceTrajectory& trajectory, long birth_t, const Rational& value);

struct RegretRow
{
    Rational value;
    Rational equilibrium_bid;
    Rational equilibrium_utility;
    Rational best_bid;
    Rational best_utility;
    Rational regret;
};

// Runs the dynamics under m and scores every grid value's declared bid
// against its best response (bidders born at t=1; utilities past the
// horizon count as unserved).
std::vector<RegretRow> regret_table(const DemandCurve& Q, const Rational& s,
                                    const ManipulationFn& m, long horizon,
                                    const std::vector<Rational>& value_grid);

Rational max_regret(const std::vector<RegretRow>& rows);

// Largest shortfall anyone suffers by bidding min(value, p_eq) when
// everyone else does: zero exactly when that cap is a mutual best reply.
// m_override swaps in a different shared manipulation (e.g. identity, to
// show truthful bidding is not an equilibrium) while keeping the scoring.
Rational equilibrium_gap(const DemandCurve& Q, const Rational& s, long horizon,
                         const std::vector<Rational>& value_grid,
                         const ManipulationFn* m_override = nullptr);

// value,equilibrium_bid,equilibrium_utility,best_bid,best_utility,regret
std::string regret_csv(const std::vector<RegretRow>& rows);
std::string regret_exact_csv(const std::vector<RegretRow>& rows);

}  // namespace smdyn
