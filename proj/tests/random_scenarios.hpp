// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Random scenario text and whole-run property checks shared by the
// acceptance criteria.

#include <cstdint>
#include <optional>
#include <string>

#include "metamaint/scenario.hpp"

namespace metamaint::testing {

struct RandomScenarioOptions {
  std::uint32_t min_nodes = 1;
  std::uint32_t max_nodes = 3;
  int steps = 30;
};

// Scenario text exercising every command. Valid for the parser by
// construction; many transactions are meant to be rejected on chain.
std::string random_scenario(std::uint64_t seed, const RandomScenarioOptions& options = {});

// Re-applies every block from genesis and checks that balances plus open
// escrow equal the genesis supply after each one. Returns a description of
// the first violation.
std::optional<std::string> check_conservation(const LedgerState& state);

// Every downstream release must be preceded on chain by a CloneAuthorized
// event for (its owner, its pinned version) on its upstream. Returns a
// description of the first violation.
std::optional<std::string> check_gating(const LedgerState& state);

}  // namespace metamaint::testing
