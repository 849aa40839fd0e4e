// smdyn: executable checks of the pricing laws over traces
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/verify.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace smdyn {

const char* to_string(CheckStatus status)
{
    switch (status)
    {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::fail:
        return "fail";
    default:
        return "skipped";
    }
}

bool VerifyReport::ok() const noexcept
{
    for (const auto& c : checks)
        if (!c.ok())
            return false;
    return true;
}

namespace {

CheckResult passed(std::string name)
{
    return {std::move(name), CheckStatus::pass, 0, {}};
}

CheckResult skipped(std::string name, std::string why)
{
    return {std::move(name), CheckStatus::skipped, 0, std::move(why)};
}

CheckResult failed(std::string name, long t, std::string witness)
{
    return {std::move(name), CheckStatus::fail, t, std::move(witness)};
}

}  // namespace

CheckResult check_sandwich(const Trace<Rational>& trace, const MarketPoints& points)
{
    if (!has_monopoly_premium(points))
        return skipped("sandwich", "no monopoly premium: price bounds not guaranteed");
    for (const auto& r : trace.records)
        if (r.price < points.p_ser || r.price > points.p_mon)
            return failed("sandwich", r.t,
                          "price " + rat_str(r.price) + " outside [" + rat_str(points.p_ser) +
                              ", " + rat_str(points.p_mon) + "]");
    return passed("sandwich");
}

CheckResult check_sandwich(const Trace<double>& trace, const MarketPoints& points, double rel_tol)
{
    if (!has_monopoly_premium(points))
        return skipped("sandwich", "no monopoly premium: price bounds not guaranteed");
    const double lo = rat_double(points.p_ser);
    const double hi = rat_double(points.p_mon);
    const double slack_lo = rel_tol * (lo > 0 ? lo : 1.0);
    const double slack_hi = rel_tol * hi;
    for (const auto& r : trace.records)
        if (r.price < lo - slack_lo || r.price > hi + slack_hi)
            return failed("sandwich", r.t,
                          "price " + std::to_string(r.price) + " outside [" + std::to_string(lo) +
                              ", " + std::to_string(hi) + "]");
    return passed("sandwich");
}

CheckResult check_descent_or_jump(const Trace<Rational>& trace, const MarketPoints& points)
{
    for (std::size_t i = 1; i < trace.records.size(); ++i)
    {
        const auto& r = trace.records[i];
        if (r.price != points.p_mon && !(r.price < trace.records[i - 1].price))
            return failed("descent_or_jump", r.t,
                          "price " + rat_str(r.price) + " after " +
                              rat_str(trace.records[i - 1].price) + " is neither p_mon " +
                              rat_str(points.p_mon) + " nor a strict drop");
    }
    return passed("descent_or_jump");
}

CheckResult check_descent_or_jump(const Trace<double>& trace, const MarketPoints& points,
                                  double rel_tol)
{
    const double p_mon = rat_double(points.p_mon);
    for (std::size_t i = 1; i < trace.records.size(); ++i)
    {
        const auto& r = trace.records[i];
        const bool jump = std::fabs(r.price - p_mon) <= rel_tol * p_mon;
        if (!jump && !(r.price < trace.records[i - 1].price))
            return failed("descent_or_jump", r.t,
                          "price " + std::to_string(r.price) + " after " +
                              std::to_string(trace.records[i - 1].price) +
                              " is neither p_mon nor a strict drop");
    }
    return passed("descent_or_jump");
}

CheckResult check_conservation(const Trace<Rational>& trace,
                               const std::vector<Rational>& p_samples)
{
    const DemandCurve& daily = trace.final_state.daily;
    const Rational& supply = trace.final_state.supply;
    const MarketPoints points = market_points(daily, supply);
    for (const auto& p : p_samples)
        if (p > points.p_ser)
            throw std::domain_error("check_conservation: sampled price above p_ser");

    const Rational q_ser = eval(daily, points.p_ser);
    MarketState<Rational> state = init(daily, supply).state;
    Rational sold(0);
    for (std::size_t i = 0; i < trace.records.size(); ++i)
    {
        const long t = static_cast<long>(i) + 1;
        for (const auto& p : p_samples)
        {
            const Rational here = demand_at(state, p);
            const Rational rhs = Rational(t) * eval(daily, p) - here;
            if (sold != rhs)
                return failed("conservation", t,
                              "sold " + rat_str(sold) + " but t*Q(p) - D^t(p) = " + rat_str(rhs) +
                                  " at p = " + rat_str(p));
            if (p < points.p_ser)
            {
                const Rational gap = here - demand_at(state, points.p_ser);
                const Rational want = Rational(t) * (eval(daily, p) - q_ser);
                if (gap != want)
                    return failed("conservation", t,
                                  "pent-up gap " + rat_str(gap) + " != " + rat_str(want) +
                                      " at p = " + rat_str(p));
            }
        }
        sold += trace.records[i].quantity;
        state = step(state).first;
    }
    return passed("conservation");
}

CheckResult check_welfare_bound(const MarketPoints& points)
{
    if (2 * points.SW_ser < points.SW_eq)
        return failed("welfare_bound", 0,
                      "SW_ser " + rat_str(points.SW_ser) + " < half of SW_eq " +
                          rat_str(points.SW_eq));
    if (points.SW_ser < points.SW_mon)
        return failed("welfare_bound", 0,
                      "SW_ser " + rat_str(points.SW_ser) + " < SW_mon " + rat_str(points.SW_mon));
    if (points.SW_ser < points.SW_eq - points.REV_mon)
        return failed("welfare_bound", 0,
                      "SW_ser " + rat_str(points.SW_ser) + " < SW_eq - REV_mon = " +
                          rat_str(points.SW_eq - points.REV_mon));
    return passed("welfare_bound");
}

template <typename T>
std::pair<T, T> estimate_extremes(const Trace<T>& trace, double window_fraction)
{
    if (trace.records.empty())
        throw std::domain_error("estimate_extremes: empty trace");
    const auto n = trace.records.size();
    auto window = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * window_fraction));
    if (window < 1)
        window = 1;
    if (window > n)
        window = n;
    T lo = trace.records[n - window].price;
    T hi = lo;
    for (std::size_t i = n - window; i < n; ++i)
    {
        const T& p = trace.records[i].price;
        if (p < lo)
            lo = p;
        if (p > hi)
            hi = p;
    }
    return {lo, hi};
}

template std::pair<Rational, Rational> estimate_extremes(const Trace<Rational>&, double);
template std::pair<double, double> estimate_extremes(const Trace<double>&, double);

template <typename T>
EmpiricalDelta empirical_delta(const Trace<T>& trace, const T& p_threshold)
{
    EmpiricalDelta d;
    long gap = 0;
    for (const auto& r : trace.records)
    {
        ++gap;
        if (!(r.price > p_threshold))
        {
            d.any_hit = true;
            if (gap > d.max_gap)
                d.max_gap = gap;
            gap = 0;
        }
    }
    d.trailing_gap = gap;
    return d;
}

template EmpiricalDelta empirical_delta(const Trace<Rational>&, const Rational&);
template EmpiricalDelta empirical_delta(const Trace<double>&, const double&);

long count_jumps(const Trace<Rational>& trace, const MarketPoints& points)
{
    long n = 0;
    for (const auto& r : trace.records)
        if (r.price == points.p_mon)
            ++n;
    return n;
}

long count_jumps(const Trace<double>& trace, const MarketPoints& points, double rel_tol)
{
    const double p_mon = rat_double(points.p_mon);
    long n = 0;
    for (const auto& r : trace.records)
        if (std::fabs(r.price - p_mon) <= rel_tol * p_mon)
            ++n;
    return n;
}

DemandCurve random_market(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> node_count(3, 10);
    std::uniform_int_distribution<long> price_step(1, 6);
    std::uniform_int_distribution<long> qty_step(1, 8);
    const int n = node_count(rng);
    DemandCurve c;
    c.points.reserve(static_cast<std::size_t>(n));
    long price_num = 0;
    long qty_num = 0;
    std::vector<long> drops(static_cast<std::size_t>(n));
    for (auto& d : drops)
    {
        d = qty_step(rng);
        qty_num += d;
    }
    for (int i = 0; i < n; ++i)
    {
        price_num += price_step(rng);
        Rational price(price_num, 16);
        price.canonicalize();
        Rational qty(i + 1 == n ? 0 : qty_num - drops[static_cast<std::size_t>(i)], 12);
        qty.canonicalize();
        qty_num -= drops[static_cast<std::size_t>(i)];
        c.points.push_back({price, qty});
    }
    c = canonicalize(c);
    validate_curve(c, true);
    return c;
}

Rational random_supply(std::mt19937_64& rng, const DemandCurve& Q)
{
    const Rational q0 = eval(Q, Rational(0));
    std::uniform_int_distribution<long> num(1, 18);
    for (int attempt = 0; attempt < 200; ++attempt)
    {
        Rational s = q0 * Rational(num(rng)) / 12;
        if (s <= 0)
            continue;
        if (has_monopoly_premium(market_points(Q, s)))
            return s;
    }
    // A supply beyond peak demand always leaves the equilibrium revenue at
    // zero, so the premium is automatic.
    return q0 * 2;
}

VerifyReport run_verification(const DemandCurve& Q, const Rational& s, long horizon, RunMode mode)
{
    VerifyReport report;
    report.horizon = horizon;
    report.mode = mode;
    const MarketPoints points = market_points(Q, s);

    std::vector<Rational> samples;
    for (int k = 0; k < 10; ++k)
        samples.push_back(points.p_ser * Rational(k) / 10);

    if (mode == RunMode::exact)
    {
        const auto trace = run(Q, s, horizon);
        report.checks.push_back(check_sandwich(trace, points));
        report.checks.push_back(check_descent_or_jump(trace, points));
        report.checks.push_back(check_conservation(trace, samples));
    }
    else
    {
        const auto trace = run(to_float(Q), rat_double(s), horizon);
        report.checks.push_back(check_sandwich(trace, points));
        report.checks.push_back(check_descent_or_jump(trace, points));
        report.checks.push_back(
            skipped("conservation", "exact arithmetic only; run in exact mode"));
    }
    report.checks.push_back(check_welfare_bound(points));
    return report;
}

std::string report_json(const VerifyReport& report)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks)
    {
        nlohmann::json item{{"name", c.name}, {"status", to_string(c.status)}};
        if (c.status == CheckStatus::fail)
            item["witness"] = {{"t", c.witness_t}, {"detail", c.witness}};
        else if (!c.witness.empty())
            item["note"] = c.witness;
        checks.push_back(std::move(item));
    }
    nlohmann::json j{{"horizon", report.horizon},
                     {"mode", to_string(report.mode)},
                     {"ok", report.ok()},
                     {"checks", std::move(checks)}};
    return j.dump(2) + "\n";
}

}  // namespace smdyn
