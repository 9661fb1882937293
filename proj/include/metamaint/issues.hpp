// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Issue contracts: version-ranged reports against a release, with a bounty
// held in escrow until the issue is resolved.

#include <optional>
#include <utility>
#include <vector>

#include "metamaint/contracts.hpp"
#include "metamaint/state.hpp"

namespace metamaint {

namespace event {
inline constexpr std::string_view kIssueReported = "IssueReported";
inline constexpr std::string_view kBountyPaid = "BountyPaid";
}  // namespace event

CreationResult report_issue(WorldState& world, const ExecContext& ctx, const AccountId& sender,
                            std::uint64_t nonce, const IssueInit& init);

// Allowed for the target release's owner or the reporter.
ExecutionReceipt resolve_issue(WorldState& world, const ExecContext& ctx, const AccountId& sender,
                               const Address& issue, const ResolveArgs& args);

struct IssueFilter {
  std::optional<Address> release;
  std::optional<IssueStatus> status;
  std::optional<Version> version;
};

bool issue_matches(const IssueContractState& issue, const IssueFilter& filter);

// Ordered by creation height, then address.
std::vector<std::pair<Address, IssueContractState>> list_issues(const WorldState& world,
                                                                const IssueFilter& filter);

std::string_view status_name(IssueStatus s) noexcept;

}  // namespace metamaint
