// smdyn: parametric demand families
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <smdyn/curve.hpp>

namespace smdyn {

// The three demand shapes used throughout: a linear (uniform-value) curve,
// the reciprocal equal-revenue curve, and a two-level step softened by an
// epsilon mass so it stays strictly decreasing.
struct DemandFamilySpec
{
    enum class Kind
    {
        uniform,        // quantity a - b*p on [0, a/b]
        equal_revenue,  // quantity 1/p on [1, H], constant 1 below
        stepped,        // M units valued ~1 plus one unit valued ~M+1
    };

    Kind kind = Kind::uniform;
    Rational a{1};
    Rational b{1};
    Rational H{0};
    Rational M{0};
    Rational eps{0};
};

DemandFamilySpec uniform_family(const Rational& a = Rational(1), const Rational& b = Rational(1));
DemandFamilySpec equal_revenue_family(const Rational& H);
DemandFamilySpec stepped_family(const Rational& M, const Rational& eps);

// Exact piecewise-linear member of the family. Linear and stepped shapes
// are reproduced exactly whatever `nodes` says; the reciprocal family is
// interpolated at `nodes` geometrically spaced prices whose quantities are
// exact rational reciprocals, so every interpolation node earns revenue
// exactly 1. Throws std::domain_error on bad parameters or nodes < 2.
DemandCurve approximate_pl(const DemandFamilySpec& family, int nodes);

}  // namespace smdyn
