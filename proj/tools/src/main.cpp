// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cornerem/cli/run.hpp"

int main(int argc, char** argv) { return cornerem::cli::main_entry(argc, argv); }
