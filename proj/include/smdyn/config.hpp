// smdyn: run configuration loading and demand resolution
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#ifndef SMDYN_CONFIG_HPP
#define SMDYN_CONFIG_HPP

#include <smdyn/dynamics.hpp>
#include <smdyn/families.hpp>

#include <string>
#include <utility>
#include <vector>

namespace smdyn {

// Everything a run needs. The demand side resolves, in priority order,
// from a curve file, inline breakpoints, or a named family with
// positional parameters:
//   uniform [a [b]]        quantity a - b*p       (defaults 1, 1)
//   equal-revenue H [n]    revenue-1 reciprocal, n interpolation nodes
//   stepped M [eps]        M cheap units plus one dear unit
struct RunConfig
{
    std::string demand_family = "uniform";
    std::vector<Rational> demand_params;
    std::vector<std::pair<Rational, Rational>> demand_breakpoints;
    std::string demand_file;
    Rational supply{1};
    long horizon = 100;
    RunMode mode = RunMode::exact;
    long seed = 0;
    std::string output_dir;
};

// Reads a config file: either JSON ({"demand": {"family": ..., "params":
// [...]}, "supply": ..., "horizon": ..., "mode": ..., "seed": ...,
// "output_dir": ...}) or line-based key=value with the dotted keys
// demand.family, demand.params (comma-separated), supply, horizon, mode,
// seed, output_dir. '#' starts a comment. Unknown keys and type
// mismatches throw std::runtime_error naming the key. Values not given
// keep the defaults above; validation is left to validate_config so
// command-line overrides can apply first.
RunConfig load_config(const std::string& path);

// Enforces the invariants: horizon >= 1, supply > 0, a known demand
// family. Throws std::runtime_error describing the first violation.
void validate_config(const RunConfig& config);

// Builds the demand curve the config describes (file wins over inline
// breakpoints, which win over the family). Throws on unknown families,
// wrong parameter counts, or invalid curves.
DemandCurve resolve_demand(const RunConfig& config);

}  // namespace smdyn

#endif  // SMDYN_CONFIG_HPP
