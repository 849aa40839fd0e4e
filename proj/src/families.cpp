// smdyn: parametric demand families
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/families.hpp>

#include <cmath>
#include <stdexcept>

namespace smdyn {

DemandFamilySpec uniform_family(const Rational& a, const Rational& b)
{
    DemandFamilySpec f;
    f.kind = DemandFamilySpec::Kind::uniform;
    f.a = a;
    f.b = b;
    return f;
}

DemandFamilySpec equal_revenue_family(const Rational& H)
{
    DemandFamilySpec f;
    f.kind = DemandFamilySpec::Kind::equal_revenue;
    f.H = H;
    return f;
}

DemandFamilySpec stepped_family(const Rational& M, const Rational& eps)
{
    DemandFamilySpec f;
    f.kind = DemandFamilySpec::Kind::stepped;
    f.M = M;
    f.eps = eps;
    return f;
}

DemandCurve approximate_pl(const DemandFamilySpec& family, int nodes)
{
    if (nodes < 2)
        throw std::domain_error("approximate_pl: need at least 2 nodes");
    DemandCurve c;
    switch (family.kind)
    {
    case DemandFamilySpec::Kind::uniform:
    {
        if (!(family.a > 0) || !(family.b > 0))
            throw std::domain_error("approximate_pl: uniform family needs a > 0 and b > 0");
        c.points = {{Rational(0), family.a}, {Rational(family.a / family.b), Rational(0)}};
        break;
    }
    case DemandFamilySpec::Kind::equal_revenue:
    {
        if (!(family.H > 1))
            throw std::domain_error("approximate_pl: equal_revenue family needs H > 1");
        const double hd = rat_double(family.H);
        c.points.emplace_back(Rational(1), Rational(1));
        for (int i = 1; i < nodes; ++i)
        {
            const Rational x = rat_from_double(std::pow(hd, static_cast<double>(i) / nodes));
            if (x <= c.points.back().first || x >= family.H)
                continue;  // rounding landed on a neighbour; skip the node
            c.points.emplace_back(x, Rational(1 / x));
        }
        c.points.emplace_back(family.H, Rational(0));
        break;
    }
    case DemandFamilySpec::Kind::stepped:
    {
        if (!(family.M >= 2))
            throw std::domain_error("approximate_pl: stepped family needs M >= 2");
        if (!(family.eps > 0) || !(family.eps < 1))
            throw std::domain_error("approximate_pl: stepped family needs 0 < eps < 1");
        const Rational& m = family.M;
        const Rational& e = family.eps;
        c.points = {{Rational(0), Rational(m + e)}, {Rational(1), m},
            {Rational(1 + e), Rational(1)}, {Rational(m + 1), Rational(1 - e)},
            {Rational(m + 1 + e), Rational(0)}};
        break;
    }
    }
    validate_curve(c, true);
    return canonicalize(c);
}

}  // namespace smdyn
