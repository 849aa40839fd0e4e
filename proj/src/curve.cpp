// smdyn: piecewise-linear demand curve algebra
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/curve.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace smdyn {
namespace {

template <typename T>
bool finite_value(const T& x)
{
    if constexpr (std::is_same_v<T, double>)
        return std::isfinite(x);
    else
    {
        (void)x;
        return true;
    }
}

template <typename T>
T t_abs(const T& x)
{
    return x < T(0) ? T(-x) : x;
}

}  // namespace

template <typename T>
T eval(const BasicDemandCurve<T>& curve, const T& p)
{
    const auto& pts = curve.points;
    if (pts.empty())
        return T(0);
    if (p <= pts.front().first)
        return pts.front().second;
    if (p > pts.back().first)
        return T(0);
    const auto it = std::lower_bound(pts.begin(), pts.end(), p,
        [](const std::pair<T, T>& node, const T& x) { return node.first < x; });
    if (it->first == p)
        return it->second;
    const auto& lo = *(it - 1);
    const auto& hi = *it;
    const T t = T(p - lo.first) / T(hi.first - lo.first);
    return T(lo.second + (hi.second - lo.second) * t);
}

template <typename T>
T inverse(const BasicDemandCurve<T>& curve, const T& q)
{
    const auto& pts = curve.points;
    if (q < T(0))
        throw std::domain_error("inverse: negative quantity");
    if (pts.empty())
    {
        if (q == T(0))
            return T(0);
        throw std::domain_error("inverse: quantity above maximum demand");
    }
    if (q > pts.front().second)
        throw std::domain_error("inverse: quantity above maximum demand");
    if (q <= pts.back().second)
        return pts.back().first;
    // first node whose quantity already fell below q
    const auto it = std::partition_point(pts.begin(), pts.end(),
        [&](const std::pair<T, T>& node) { return node.second >= q; });
    const auto& lo = *(it - 1);
    const auto& hi = *it;
    // lo.second >= q > hi.second, so this segment falls strictly
    return T(lo.first + (lo.second - q) * (hi.first - lo.first) / (lo.second - hi.second));
}

template <typename T>
BasicDemandCurve<T> add(const BasicDemandCurve<T>& a, const BasicDemandCurve<T>& b)
{
    const BasicDemandCurve<T> ca = canonicalize(a);
    const BasicDemandCurve<T> cb = canonicalize(b);
    if (ca.is_zero())
        return cb;
    if (cb.is_zero())
        return ca;
    const T& a_end = ca.points.back().first;
    const T& b_end = cb.points.back().first;
    const bool a_mass = ca.points.back().second > T(0);
    const bool b_mass = cb.points.back().second > T(0);
    if ((a_mass && a_end < b_end) || (b_mass && b_end < a_end))
        throw std::logic_error("add: point mass strictly inside the other support");

    std::vector<T> grid;
    grid.reserve(ca.size() + cb.size());
    for (const auto& [p, q] : ca.points)
        grid.push_back(p);
    for (const auto& [p, q] : cb.points)
        grid.push_back(p);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    BasicDemandCurve<T> out;
    out.points.reserve(grid.size());
    for (const T& p : grid)
        out.points.emplace_back(p, T(eval(ca, p) + eval(cb, p)));
    return canonicalize(out);
}

template <typename T>
BasicDemandCurve<T> residual_after_sale(
    const BasicDemandCurve<T>& curve, const T& p_t, const T& q_t)
{
    const T here = eval(curve, p_t);
    T leftover = T(here - q_t);
    const bool at_final = !curve.points.empty() && p_t == curve.points.back().first;
    if constexpr (!std::is_same_v<T, double>)
    {
        if (q_t > here)
            throw std::logic_error("residual_after_sale: sale exceeds demand at p_t");
        // Selling less than demand is possible only by rationing a point
        // mass at the final price; everywhere else the sale must clear.
        if (leftover != T(0) && !at_final)
            throw std::logic_error("residual_after_sale: sale does not clear the curve at p_t");
    }
    else
    {
        if (leftover < 0 || !at_final)
            leftover = 0;  // rounding dust, or no atom to hold a remainder
    }
    BasicDemandCurve<T> out;
    for (const auto& [p, q] : curve.points)
    {
        if (p >= p_t)
            break;
        T left = T(q - q_t);
        if constexpr (std::is_same_v<T, double>)
            left = std::max(0.0, left);  // guard rounding dust
        out.points.emplace_back(p, left);
    }
    out.points.emplace_back(p_t, leftover);
    return canonicalize(out);
}

template <typename T>
T welfare_above_price(const BasicDemandCurve<T>& curve, const T& p)
{
    const auto& pts = curve.points;
    T cur_q = eval(curve, p);
    T total = T(p * cur_q);
    if (pts.empty() || p >= pts.back().first)
        return total;
    T cur_p = p;
    auto it = std::upper_bound(pts.begin(), pts.end(), p,
        [](const T& x, const std::pair<T, T>& node) { return x < node.first; });
    for (; it != pts.end(); ++it)
    {
        const T seg = T((cur_q + it->second) * (it->first - cur_p)) / T(2);
        total = T(total + seg);
        cur_p = it->first;
        cur_q = it->second;
    }
    return total;
}

template <typename T>
RevenuePoint<T> revenue_maximizer(const BasicDemandCurve<T>& curve, const T& s, double tie_tol)
{
    if (!(s > T(0)))
        throw std::domain_error("revenue_maximizer: supply must be positive");
    const BasicDemandCurve<T> c = canonicalize(curve);
    const auto& pts = c.points;
    if (pts.empty() || !(pts.front().second > T(0)) || !(pts.back().first > T(0)))
        throw std::domain_error("revenue_maximizer: no positive revenue available");

    std::vector<T> cands;
    cands.reserve(2 * pts.size() + 1);
    for (const auto& [p, q] : pts)
        cands.push_back(p);
    if (eval(c, T(0)) > s)
        cands.push_back(inverse(c, s));  // cap crossing: p*s rises until here
    for (size_t i = 0; i + 1 < pts.size(); ++i)
    {
        const T& p1 = pts[i].first;
        const T& q1 = pts[i].second;
        const T& p2 = pts[i + 1].first;
        const T& q2 = pts[i + 1].second;
        if (q1 == q2)
            continue;  // flat segment: revenue grows toward the right endpoint
        const T m = T(q2 - q1) / T(p2 - p1);
        const T vertex = T(m * p1 - q1) / T(2 * m);
        if (p1 < vertex && vertex < p2)
            cands.push_back(vertex);
    }

    std::vector<T> revs;
    revs.reserve(cands.size());
    T best_rev(-1);
    for (const T& p : cands)
    {
        T q = eval(c, p);
        if (q > s)
            q = s;
        T rev = T(p * q);
        if (rev > best_rev)
            best_rev = rev;
        revs.push_back(std::move(rev));
    }
    if (!(best_rev > T(0)))
        throw std::domain_error("revenue_maximizer: no positive revenue available");

    const T threshold = T(best_rev - best_rev * T(tie_tol));
    size_t pick = cands.size();
    for (size_t i = 0; i < cands.size(); ++i)
        if (revs[i] >= threshold && (pick == cands.size() || cands[i] > cands[pick]))
            pick = i;

    T q = eval(c, cands[pick]);
    if (q > s)
        q = s;
    return {cands[pick], q, T(cands[pick] * q)};
}

template <typename T>
BasicDemandCurve<T> canonicalize(const BasicDemandCurve<T>& curve, const T& quantity_tol)
{
    const auto& in = curve.points;
    BasicDemandCurve<T> out;
    if (in.empty())
        return out;

    size_t end = in.size();
    for (size_t i = 0; i < in.size(); ++i)
        if (!(in[i].second > T(0)))
        {
            end = i + 1;  // keep the first zero, drop the tail
            break;
        }
    size_t begin = 0;
    while (begin + 1 < end && in[begin].second == in[begin + 1].second)
        ++begin;  // a flat head repeats the constant below-support extension
    if (!(in[begin].second > T(0)))
        return out;  // the whole curve is zero

    auto& o = out.points;
    o.reserve(end - begin);
    const T& scale = in[begin].second;  // largest quantity on the curve
    for (size_t i = begin; i < end; ++i)
    {
        const auto& next = in[i];
        while (o.size() >= 2)
        {
            const auto& a = o[o.size() - 2];
            const auto& mid = o.back();
            const T t = T(mid.first - a.first) / T(next.first - a.first);
            const T on_chord = T(a.second + (next.second - a.second) * t);
            const T dev = t_abs(T(mid.second - on_chord));
            if (dev <= T(quantity_tol * scale))
                o.pop_back();
            else
                break;
        }
        o.push_back(next);
    }
    return out;
}

template <typename T>
T support_end(const BasicDemandCurve<T>& curve)
{
    const BasicDemandCurve<T> c = canonicalize(curve);
    if (c.is_zero())
        return T(0);
    return c.points.back().first;
}

template <typename T>
void validate_curve(const BasicDemandCurve<T>& curve, bool require_strictly_decreasing)
{
    const auto& pts = curve.points;
    for (size_t i = 0; i < pts.size(); ++i)
    {
        if (!finite_value(pts[i].first) || !finite_value(pts[i].second))
            throw std::domain_error("curve: non-finite value");
        if (pts[i].first < T(0))
            throw std::domain_error("curve: negative price");
        if (pts[i].second < T(0))
            throw std::domain_error("curve: negative quantity");
        if (i > 0 && !(pts[i - 1].first < pts[i].first))
            throw std::domain_error("curve: prices must be strictly increasing");
        if (i > 0 && pts[i].second > pts[i - 1].second)
            throw std::domain_error("curve: quantities must be weakly decreasing");
    }
    if (require_strictly_decreasing)
    {
        if (pts.empty() || !(pts.front().second > T(0)))
            throw std::domain_error("curve: daily demand must be non-trivial");
        if (pts.back().second != T(0))
            throw std::domain_error("curve: daily demand must end at zero quantity");
        for (size_t i = 0; i + 1 < pts.size(); ++i)
            if (pts[i].second <= pts[i + 1].second)
                throw std::domain_error("curve: daily demand must be strictly decreasing");
    }
}

DemandCurveF to_float(const DemandCurve& curve)
{
    DemandCurveF out;
    out.points.reserve(curve.size());
    for (const auto& [p, q] : curve.points)
        out.points.emplace_back(rat_double(p), rat_double(q));
    return out;
}

Rational eval(const AtomCurve& curve, const Rational& p)
{
    Rational total(0);
    for (const auto& atom : curve.atoms)
        if (atom.price >= p)
            total += atom.quantity;
    return total;
}

Rational total_quantity(const AtomCurve& curve)
{
    Rational total(0);
    for (const auto& atom : curve.atoms)
        total += atom.quantity;
    return total;
}

void validate_atoms(const AtomCurve& curve)
{
    std::vector<long> tags;
    tags.reserve(curve.atoms.size());
    for (const auto& atom : curve.atoms)
    {
        if (!(atom.quantity > 0))
            throw std::domain_error("atom curve: quantities must be strictly positive");
        if (atom.price < 0)
            throw std::domain_error("atom curve: prices must be nonnegative");
        tags.push_back(atom.arrival_tag);
    }
    std::sort(tags.begin(), tags.end());
    if (std::adjacent_find(tags.begin(), tags.end()) != tags.end())
        throw std::domain_error("atom curve: arrival tags must be unique");
}

template Rational eval(const DemandCurve&, const Rational&);
template double eval(const DemandCurveF&, const double&);
template Rational inverse(const DemandCurve&, const Rational&);
template double inverse(const DemandCurveF&, const double&);
template DemandCurve add(const DemandCurve&, const DemandCurve&);
template DemandCurveF add(const DemandCurveF&, const DemandCurveF&);
template DemandCurve residual_after_sale(const DemandCurve&, const Rational&, const Rational&);
template DemandCurveF residual_after_sale(const DemandCurveF&, const double&, const double&);
template Rational welfare_above_price(const DemandCurve&, const Rational&);
template double welfare_above_price(const DemandCurveF&, const double&);
template RevenuePoint<Rational> revenue_maximizer(const DemandCurve&, const Rational&, double);
template RevenuePoint<double> revenue_maximizer(const DemandCurveF&, const double&, double);
template DemandCurve canonicalize(const DemandCurve&, const Rational&);
template DemandCurveF canonicalize(const DemandCurveF&, const double&);
template Rational support_end(const DemandCurve&);
template double support_end(const DemandCurveF&);
template void validate_curve(const DemandCurve&, bool);
template void validate_curve(const DemandCurveF&, bool);

}  // namespace smdyn
