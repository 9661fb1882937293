// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Member-voted changes to the ecosystem compatibility matrix. Members are
// accounts owning at least one release contract. A proposal is tallied at
// the end of the first block whose height reaches proposed_at + window:
// it applies iff yea > nay and at least kQuorum votes were cast.

#include <vector>

#include "metamaint/contracts.hpp"
#include "metamaint/state.hpp"

namespace metamaint {

inline constexpr std::uint64_t kQuorum = 2;

namespace event {
inline constexpr std::string_view kProposalCreated = "ProposalCreated";
inline constexpr std::string_view kVoteCast = "VoteCast";
inline constexpr std::string_view kProposalApplied = "ProposalApplied";
inline constexpr std::string_view kProposalRejected = "ProposalRejected";
}  // namespace event

bool is_member(const WorldState& world, const AccountId& account);

ExecutionReceipt propose_change(WorldState& world, const ExecContext& ctx, const AccountId& sender,
                                const ProposeArgs& args);

ExecutionReceipt cast_vote(WorldState& world, const ExecContext& ctx, const AccountId& sender,
                           const VoteArgs& args);

// Tallies one proposal. Applied changes land in the governance overrides.
ExecutionReceipt tally_and_apply(WorldState& world, std::uint64_t proposal_id);

// End-of-block step: tallies every proposal whose window has elapsed at
// `height`, in id order. Returns (proposal id, receipt) pairs.
std::vector<std::pair<std::uint64_t, ExecutionReceipt>> tally_due(WorldState& world,
                                                                  std::uint64_t height);

std::string_view status_name(ProposalStatus s) noexcept;

}  // namespace metamaint
