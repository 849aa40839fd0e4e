// smdyn: exact rational scalar helpers
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>
#include <string>
#include <string_view>

namespace smdyn {

// All exact arithmetic runs on GMP rationals. Values stay canonical
// (reduced, positive denominator) as long as they are built through the
// helpers below or gmpxx arithmetic.
using Rational = mpq_class;

// Parses "7/24", "-3", "0.375" or "2.5e-3" without precision loss.
// Throws std::invalid_argument on malformed input or a zero denominator.
Rational rat_from_string(std::string_view text);

// Exact binary expansion of a finite double.
// Throws std::invalid_argument for NaN or infinity.
Rational rat_from_double(double value);

double rat_double(const Rational& value);

// Canonical exact form: "7/24", "-3", "0".
std::string rat_str(const Rational& value);

// Fixed number of significant digits, rounded half away from zero.
// Layout follows printf %g (scientific once the decimal exponent leaves
// [-4, digits)) except trailing zeros are kept, so the width is stable.
std::string rat_decimal(const Rational& value, int digits = 17);

}  // namespace smdyn
