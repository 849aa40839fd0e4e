// smdyn: command-line front end
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#ifndef SMDYN_CLI_HPP
#define SMDYN_CLI_HPP

namespace smdyn {

// Dispatches the subcommands: analyze, simulate, verify, strategic,
// replay, fetch, repro. Returns the process exit code: 0 on success,
// 1 on failed checks or runtime errors, 2 on usage errors.
int run_cli(int argc, const char* const* argv);

}  // namespace smdyn

#endif  // SMDYN_CLI_HPP
