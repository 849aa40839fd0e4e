// smdyn: piecewise-linear demand curve algebra
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <smdyn/rational.hpp>

#include <utility>
#include <vector>

namespace smdyn {

// A weakly decreasing, non-negative, finitely supported demand curve.
//
// `points` holds (price, quantity) nodes with strictly increasing prices.
// The curve is the linear interpolation between nodes, constant at the
// first quantity below the first price, and zero above the last price.
// A positive final quantity encodes a point mass sitting exactly at the
// final price: the curve keeps that value at the last node and drops to
// zero just above it. The empty list is the zero curve.
//
// Values are immutable in spirit: every operation returns a new curve.
template <typename T>
struct BasicDemandCurve
{
    std::vector<std::pair<T, T>> points;

    bool is_zero() const noexcept { return points.empty(); }
    size_t size() const noexcept { return points.size(); }

    bool operator==(const BasicDemandCurve&) const = default;
};

using DemandCurve = BasicDemandCurve<Rational>;   // exact mode
using DemandCurveF = BasicDemandCurve<double>;    // float mode

template <typename T>
struct RevenuePoint
{
    T price;
    T quantity;  // min(supply, curve(price))
    T revenue;   // price * quantity
};

// Relative revenue slack under which the float maximizer treats two
// candidates as tied. Exact revenue ties are common in these dynamics
// (a descent price and an up-jump price often earn the same revenue) and
// both modes must resolve them the same way, so the float mode widens
// "equal" by this much before applying the largest-price rule.
template <typename T>
inline constexpr double default_tie_tol = 0.0;
template <>
inline constexpr double default_tie_tol<double> = 1e-12;

// Interpolated quantity at price p (see the extension rules above).
template <typename T>
T eval(const BasicDemandCurve<T>& curve, const T& p);

// Largest price whose quantity is still >= q. Requires
// 0 <= q <= eval(curve, first price); throws std::domain_error otherwise.
template <typename T>
T inverse(const BasicDemandCurve<T>& curve, const T& q);

// Pointwise sum on the merged breakpoint grid. Throws std::logic_error if
// one operand carries a point mass strictly inside the other's support
// (the sum would jump mid-curve, which this representation cannot hold).
template <typename T>
BasicDemandCurve<T> add(const BasicDemandCurve<T>& a, const BasicDemandCurve<T>& b);

// Demand left after selling q_t at price p_t: curve(p) - q_t below p_t,
// zero above p_t. Selling less than curve(p_t) is allowed only when p_t
// is the final node (a point mass there can be rationed; its unserved
// remainder stays at p_t). Any other shortfall, or overselling, breaks
// continuous clearing and throws std::logic_error in exact mode.
template <typename T>
BasicDemandCurve<T> residual_after_sale(
    const BasicDemandCurve<T>& curve, const T& p_t, const T& q_t);

// Total value of the demand units with willingness-to-pay >= p:
// p * eval(curve, p) plus the exact area under the curve right of p.
template <typename T>
T welfare_above_price(const BasicDemandCurve<T>& curve, const T& p);

// Global maximizer of p * min(s, curve(p)). Candidates are the nodes, the
// price where the curve crosses the supply cap, and each segment's interior
// quadratic vertex; revenue ties (within tie_tol, relative) resolve to the
// largest price. Throws std::domain_error when no positive revenue exists
// (all-zero curve or support confined to price 0) or when s <= 0.
template <typename T>
RevenuePoint<T> revenue_maximizer(
    const BasicDemandCurve<T>& curve, const T& s, double tie_tol = default_tie_tol<T>);

// Minimal representation of the same function: drops repeated leading
// quantities, nodes after the first zero, and interior nodes within
// quantity_tol of the line through their neighbours (0 = exactly
// collinear; the float engine passes a small relative tolerance).
template <typename T>
BasicDemandCurve<T> canonicalize(const BasicDemandCurve<T>& curve, const T& quantity_tol = T(0));

// Largest price carrying positive demand; 0 for the zero curve.
template <typename T>
T support_end(const BasicDemandCurve<T>& curve);

// Structural checks: finite values, strictly increasing non-negative
// prices, non-negative weakly decreasing quantities. With
// require_strictly_decreasing (daily demand), quantities must fall
// strictly until they reach zero and the curve must end at zero.
// Throws std::domain_error with a description of the first violation.
template <typename T>
void validate_curve(const BasicDemandCurve<T>& curve, bool require_strictly_decreasing = false);

// Lossy but monotone conversion helpers between the two modes.
DemandCurveF to_float(const DemandCurve& curve);

// One empirical bid: quantity demanded at a single unit price.
// arrival_tag records source order and drives rationing priority.
struct BidAtom
{
    Rational price;
    Rational quantity;
    long arrival_tag = 0;

    bool operator==(const BidAtom&) const = default;
};

// Step demand built from a multiset of bid atoms. Demand at price p is
// the total quantity of atoms bidding at least p, a right-continuous
// step function. Unlike BasicDemandCurve it may hold point masses at any
// price; over-demand handling lives with the replay pipeline.
struct AtomCurve
{
    std::vector<BidAtom> atoms;

    bool is_zero() const noexcept { return atoms.empty(); }
    size_t size() const noexcept { return atoms.size(); }

    bool operator==(const AtomCurve&) const = default;
};

// Total quantity of atoms with price >= p.
Rational eval(const AtomCurve& curve, const Rational& p);

// Sum of all atom quantities.
Rational total_quantity(const AtomCurve& curve);

// Checks every quantity is strictly positive, prices are nonnegative and
// arrival tags are unique. Throws std::domain_error on violation.
void validate_atoms(const AtomCurve& curve);

}  // namespace smdyn
