// smdyn: command-line entry point
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/cli.hpp>

int main(int argc, char** argv)
{
    return smdyn::run_cli(argc, argv);
}
