// smdyn: pricing engine tests
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/analytics.hpp>
#include <smdyn/dynamics.hpp>

#include <doctest.h>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

using namespace smdyn;

namespace {

Rational rq(long num, long den)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

const DemandCurve uniform{{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};

}  // namespace

TEST_CASE("init starts with no pent-up demand")
{
    const auto r = init(uniform, Rational(1));
    CHECK(r.state.t == 0);
    CHECK(r.state.pent.is_zero());
    CHECK(r.monopoly_premium);

    const auto r34 = init(uniform, rq(3, 4));
    CHECK(r34.monopoly_premium);  // 1/4 > 3/16

    // Highest single price clears the whole supply: no premium, warn only.
    const DemandCurve two_minus_p{{{Rational(0), Rational(2)}, {Rational(2), Rational(0)}}};
    const auto boundary = init(two_minus_p, Rational(1));
    CHECK_FALSE(boundary.monopoly_premium);
    CHECK(boundary.state.pent.is_zero());

    CHECK_THROWS_AS(init(uniform, Rational(0)), std::domain_error);
    const DemandCurve shelf{{{Rational(0), Rational(1)},
                             {rq(1, 2), Rational(1)},
                             {Rational(1), Rational(0)}}};
    CHECK_THROWS_AS(init(shelf, Rational(1), true), std::domain_error);
    CHECK_NOTHROW(init(shelf, Rational(1)));
}

TEST_CASE("four exact steps of the uniform market")
{
    const auto trace = run(uniform, Rational(1), 4);
    REQUIRE(trace.records.size() == 4);
    CHECK(trace.mode == RunMode::exact);
    CHECK(trace.monopoly_premium);

    const Rational prices[] = {rq(1, 2), rq(3, 8), rq(7, 24), rq(1, 2)};
    const Rational quantities[] = {rq(1, 2), rq(3, 4), rq(7, 8), rq(1, 2)};
    const Rational welfare[] = {rq(3, 8), rq(31, 64), rq(197, 384), rq(3, 8)};
    for (int i = 0; i < 4; ++i)
    {
        const auto& r = trace.records[i];
        CHECK(r.t == i + 1);
        CHECK(r.price == prices[i]);
        CHECK(r.quantity == quantities[i]);
        CHECK(r.revenue == prices[i] * quantities[i]);
        CHECK(r.welfare_delta == welfare[i]);
    }
    CHECK(trace.records[2].breakpoints == 2);
    CHECK(trace.records[3].breakpoints == 3);

    // Day 5 faces the pent-up curve left by the price jump.
    CHECK(trace.final_state.t == 4);
    CHECK(demand_at(trace.final_state, rq(1, 4)) ==
          eval(trace.final_state.pent, rq(1, 4)) + rq(3, 4));
}

TEST_CASE("single step equals the static monopoly")
{
    const auto trace = run(uniform, Rational(1), 1);
    REQUIRE(trace.records.size() == 1);
    CHECK(trace.records[0].price == rq(1, 2));
    CHECK(trace.records[0].quantity == rq(1, 2));
    CHECK(trace.records[0].revenue == rq(1, 4));
}

TEST_CASE("total demand probes match the hand-computed curves")
{
    auto state = init(uniform, Rational(1)).state;
    CHECK(demand_at(state, rq(1, 3)) == rq(2, 3));  // day 1 sees Q itself

    state = step(state).first;
    state = step(state).first;
    // After two sales the market faces 7/4 - 3p below the last cut.
    CHECK(demand_at(state, rq(1, 4)) == Rational(1));
    CHECK(demand_at(state, rq(1, 10)) == rq(29, 20));
}

TEST_CASE("run rejects an empty horizon")
{
    CHECK_THROWS_AS(run(uniform, Rational(1), 0), std::domain_error);
}

TEST_CASE("exact run satisfies the structural laws")
{
    const long horizon = 200;
    const auto points = market_points(uniform, Rational(1));
    auto state = init(uniform, Rational(1)).state;

    Rational sold(0);
    Rational cleared(0);
    Rational prev_price(-1);
    const Rational probes[] = {Rational(0), rq(1, 10), rq(1, 5), points.p_ser};
    for (long t = 1; t <= horizon; ++t)
    {
        auto [next, rec] = step(state);

        CHECK(rec.revenue == rec.price * rec.quantity);
        CHECK(rec.quantity >= 0);
        CHECK(rec.quantity <= Rational(1));
        CHECK(rec.revenue >= points.REV_mon);  // the leader never earns less
        CHECK(rec.price >= points.p_ser);
        CHECK(rec.price <= points.p_mon);
        if (t > 1)
            CHECK((rec.price == points.p_mon || rec.price < prev_price));
        CHECK(rec.breakpoints <= static_cast<std::size_t>(t) + 2);

        prev_price = rec.price;
        sold += rec.quantity;
        cleared += rec.welfare_delta;
        state = std::move(next);

        for (const auto& p : probes)
        {
            // Everything priced at or below p_ser is conserved: T days of
            // inflow minus what still queues equals what was ever sold.
            const Rational lhs = sold;
            const Rational rhs = Rational(t + 1) * eval(uniform, p) - demand_at(state, p);
            CHECK(lhs == rhs);
            if (p < points.p_ser)
                CHECK(demand_at(state, p) - demand_at(state, points.p_ser) ==
                      Rational(t + 1) * (eval(uniform, p) - eval(uniform, points.p_ser)));
        }
    }

    // Welfare bookkeeping telescopes: cleared value plus value still
    // pending equals the total value that ever arrived.
    CHECK(cleared + welfare_above_price(state.pent, Rational(0)) ==
          Rational(horizon) * welfare_above_price(uniform, Rational(0)));
}

TEST_CASE("float run tracks the exact run")
{
    const auto exact = run(uniform, Rational(1), 60);
    const DemandCurveF uf = to_float(uniform);
    const auto approx = run(uf, 1.0, 60);
    CHECK(approx.mode == RunMode::floating);
    REQUIRE(approx.records.size() == 60);
    for (int t = 0; t < 60; ++t)
    {
        const double want = rat_double(exact.records[t].price);
        CHECK(std::fabs(approx.records[t].price - want) <= 1e-9);
        const double want_q = rat_double(exact.records[t].quantity);
        CHECK(std::fabs(approx.records[t].quantity - want_q) <= 1e-9);
    }
}

TEST_CASE("runs are deterministic")
{
    const auto a = run(uniform, Rational(1), 50);
    const auto b = run(uniform, Rational(1), 50);
    REQUIRE(a.records.size() == b.records.size());
    for (size_t i = 0; i < a.records.size(); ++i)
    {
        CHECK(a.records[i].price == b.records[i].price);
        CHECK(a.records[i].welfare_delta == b.records[i].welfare_delta);
    }
    CHECK(a.final_state.pent == b.final_state.pent);

    const DemandCurveF uf = to_float(uniform);
    const auto fa = run(uf, 1.0, 2000);
    const auto fb = run(uf, 1.0, 2000);
    for (size_t i = 0; i < fa.records.size(); ++i)
    {
        CHECK(fa.records[i].price == fb.records[i].price);
        CHECK(fa.records[i].quantity == fb.records[i].quantity);
    }
}

TEST_CASE("float pruning keeps the pent-up curve small")
{
    const DemandCurveF uf = to_float(uniform);
    const auto trace = run(uf, 1.0, 5000);
    std::size_t widest = 0;
    for (const auto& r : trace.records)
        widest = std::max(widest, r.breakpoints);
    CHECK(widest <= 64);

    // Long-run shape: prices keep revisiting the monopoly price and the
    // low excursions approach the serial price from above.
    double low = 1.0;
    int jumps = 0;
    for (size_t i = trace.records.size() / 2; i < trace.records.size(); ++i)
    {
        low = std::min(low, trace.records[i].price);
        if (std::fabs(trace.records[i].price - 0.5) <= 1e-9)
            ++jumps;
    }
    CHECK(jumps >= 10);
    CHECK(low >= 0.25 - 1e-9);
    CHECK(low <= 0.25 * 1.05);
}

TEST_CASE("market clearing fallback serves the zero revenue pool")
{
    DemandCurve pool;
    pool.points = {{Rational(0), Rational(1)}};  // every bid at price zero

    CHECK_THROWS_AS(run(pool, rq(3, 4), 1), std::domain_error);

    RunOptions<Rational> opt;
    opt.clearing_fallback = true;
    const auto trace = run(pool, rq(3, 4), 3, opt);
    for (const auto& r : trace.records)
    {
        CHECK(r.price == 0);
        CHECK(r.quantity == rq(3, 4));
        CHECK(r.revenue == 0);
    }
    CHECK_FALSE(trace.monopoly_premium);
    // Unserved zero-price mass queues up: 1/4 per day.
    CHECK(eval(trace.final_state.pent, Rational(0)) == rq(3, 4));
}

TEST_CASE("true value accounting replaces the declared inflow welfare")
{
    // Declared demand pools everything worth >= 1/4 at exactly 1/4.
    DemandCurve declared;
    declared.points = {{Rational(0), Rational(1)}, {rq(1, 4), rq(3, 4)}};

    RunOptions<Rational> opt;
    opt.true_daily = &uniform;
    auto state = init(declared, rq(3, 4)).state;
    auto [next, rec] = step(state, opt);
    CHECK(rec.price == rq(1, 4));
    CHECK(rec.quantity == rq(3, 4));
    // Units worth at least 1/4 carry 15/32 of value, not the declared 3/16.
    CHECK(rec.welfare_delta == rq(15, 32));

    auto [next2, rec2] = step(next, opt);
    CHECK(rec2.price == rq(1, 4));
    CHECK(rec2.welfare_delta == rq(15, 32));
}
