/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Seeded property suites behind the `verify` CLI subcommand. Each suite runs
// the randomized invariants of one module and reports one pass/fail line per
// property.

namespace capbound::verify {

using Logger = std::function<void(const std::string&)>;

std::vector<std::string> suite_names();  // excludes "all"

// Returns the number of failed properties; logs one line per property.
int run_suite(const std::string& name, uint64_t seed, const Logger& log);

}  // namespace capbound::verify
