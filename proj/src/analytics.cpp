// smdyn: characteristic market points and welfare bounds
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/analytics.hpp>

#include <cmath>
#include <stdexcept>

namespace smdyn {

MarketPoints market_points(const DemandCurve& Q, const Rational& s)
{
    MarketPoints out;
    const RevenuePoint<Rational> mon = revenue_maximizer(Q, s);
    out.p_mon = mon.price;
    out.q_mon = mon.quantity;
    out.REV_mon = mon.revenue;

    const Rational q0 = eval(Q, Rational(0));
    out.p_eq = q0 < s ? Rational(0) : inverse(Q, s);
    out.q_eq = eval(Q, out.p_eq);
    if (out.q_eq > s)
        out.q_eq = s;
    out.REV_eq = Rational(out.p_eq * s);

    // raise the serial price across any flat stretch it lands on
    const Rational p_ser_raw = Rational(out.REV_mon / s);
    out.p_ser = inverse(Q, eval(Q, p_ser_raw));
    out.q_ser = eval(Q, out.p_ser);

    out.SW_eq = welfare_above_price(Q, out.p_eq);
    out.SW_mon = welfare_above_price(Q, out.p_mon);
    out.SW_ser = welfare_above_price(Q, out.p_ser);

    const Rational marginal_value = s > q0 ? Rational(0) : inverse(Q, s);
    out.H_finite = marginal_value > 0;
    if (out.H_finite)
        out.H = Rational(inverse(Q, Rational(0)) / marginal_value);
    return out;
}

bool has_monopoly_premium(const MarketPoints& points)
{
    return points.REV_mon > points.REV_eq;
}

Rational welfare_ratio(const MarketPoints& points)
{
    if (!(points.SW_eq > 0))
        throw std::domain_error("welfare_ratio: equilibrium welfare is zero");
    return Rational(points.SW_ser / points.SW_eq);
}

Rational theoretical_delta_bound(const DemandCurve& Q, const Rational& s, const Rational& p_star)
{
    const MarketPoints pts = market_points(Q, s);
    if (!(p_star > pts.p_ser))
        throw std::domain_error("theoretical_delta_bound: p_star must exceed the serial price");
    const Rational p = Rational(p_star + pts.p_ser) / 2;
    const Rational drop = Rational(eval(Q, p) - eval(Q, p_star));
    if (!(drop > 0))
        throw std::domain_error("theoretical_delta_bound: demand is flat on [p, p_star]");
    const Rational delta0 = Rational(s / drop);
    const Rational x =
        Rational(2 * (pts.q_ser - pts.q_mon) * pts.p_mon) / Rational(s * (p_star - pts.p_ser));

    const long double bound = (1.0L + static_cast<long double>(rat_double(delta0))) *
                              std::exp(static_cast<long double>(rat_double(x)));
    if (!std::isfinite(bound) || bound >= 1e300L)
        throw std::overflow_error("theoretical_delta_bound: bound exceeds double range");
    mpz_class fl(static_cast<double>(std::floor(bound)));
    fl += 1;
    return Rational(fl);
}

}  // namespace smdyn
