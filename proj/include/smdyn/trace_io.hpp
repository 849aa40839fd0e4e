// smdyn: trace CSV emission
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <smdyn/dynamics.hpp>

#include <string>

namespace smdyn {

// CSV with header t,price,quantity,revenue,welfare_delta,breakpoints and
// all numbers as 17-significant-digit decimals.
std::string trace_csv(const Trace<Rational>& trace);
std::string trace_csv(const Trace<double>& trace);

// Same rows with exact rational strings instead of decimals.
std::string trace_exact_csv(const Trace<Rational>& trace);

// Writes the decimal CSV to path. An exact trace also gets a sibling
// file with the exact rows: "runs/t.csv" -> "runs/t.exact.csv".
void write_trace_csv(const Trace<Rational>& trace, const std::string& path);
void write_trace_csv(const Trace<double>& trace, const std::string& path);

std::string exact_sibling_path(const std::string& path);

}  // namespace smdyn
