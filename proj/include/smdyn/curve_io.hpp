// smdyn: demand curve serialization
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <smdyn/curve.hpp>

#include <string>

namespace smdyn {

// Curves travel as a JSON array of [price, quantity] pairs with exact
// string rationals, e.g. [["0","1"],["1","0"]]. Output is compact and
// canonical, so save/load round-trips are byte-stable.
std::string curve_to_json(const DemandCurve& curve);

// Accepts string rationals ("7/24", "0.375"), integers, or floating
// numbers (converted by exact binary expansion). The result is validated
// and canonicalized; pass strict for daily demand, which must be strictly
// decreasing down to zero.
DemandCurve curve_from_json(const std::string& text, bool strict = false);

void save_curve(const std::string& path, const DemandCurve& curve);
DemandCurve load_curve(const std::string& path, bool strict = false);

}  // namespace smdyn
