// smdyn: characteristic market points and welfare bounds
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <smdyn/curve.hpp>

namespace smdyn {

// The three (price, quantity) pairs that organize everything: the market
// equilibrium (supply meets demand), the static monopoly optimum, and the
// serial point p_ser = p_mon*q_mon/s where selling the full supply earns
// the monopoly revenue. H is the value gap between the most and least
// valuable supplied units; it is infinite when the marginal unit is free.
struct MarketPoints
{
    Rational p_eq, q_eq;
    Rational p_mon, q_mon;
    Rational p_ser, q_ser;
    Rational SW_eq, SW_mon, SW_ser;
    Rational REV_eq, REV_mon;
    bool H_finite = false;
    Rational H;  // meaningful only when H_finite
};

// Computes all points exactly. p_eq is the largest price clearing the
// market (0 when demand never reaches the supply cap); p_ser is raised to
// the largest price with the same demand, which matters only on flat
// stretches. Throws std::domain_error for degenerate demand or s <= 0.
MarketPoints market_points(const DemandCurve& Q, const Rational& s);

// Whether the static monopolist strictly out-earns the equilibrium. The
// long-run price descent results assume this; at the boundary the serial
// point collapses onto the equilibrium.
bool has_monopoly_premium(const MarketPoints& points);

// SW_ser / SW_eq. Throws std::domain_error when SW_eq is zero.
Rational welfare_ratio(const MarketPoints& points);

// Smallest integer step gap Delta guaranteed (by the recurrence argument)
// to bring the price back to p_mon from any price at or above p_star:
// with p = (p_star + p_ser)/2 and Delta0 = s/(Q(p) - Q(p_star)), returns
// the least Delta with ln Delta > ln(1 + Delta0)
//   + 2 (Q(p_ser) - Q(p_mon)) p_mon / (s (p_star - p_ser)).
// Requires p_star > p_ser; throws std::domain_error otherwise.
Rational theoretical_delta_bound(const DemandCurve& Q, const Rational& s, const Rational& p_star);

}  // namespace smdyn
