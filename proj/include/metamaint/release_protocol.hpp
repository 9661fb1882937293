// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Release and versioning contract handlers: publishing versions, recording
// clone notices after verification, and creating releases (downstream
// releases only with a prior authorization from the upstream's versioning
// contract).

#include "metamaint/contracts.hpp"
#include "metamaint/state.hpp"
#include "metamaint/version.hpp"

namespace metamaint {

namespace event {
inline constexpr std::string_view kReleaseCreated = "ReleaseCreated";
inline constexpr std::string_view kVersionAdded = "VersionAdded";
inline constexpr std::string_view kCloneAuthorized = "CloneAuthorized";
inline constexpr std::string_view kCloneRejected = "CloneRejected";
}  // namespace event

ExecutionReceipt handle_add_version(WorldState& world, const ExecContext& ctx,
                                    const AccountId& sender, const Address& versioning,
                                    const AddVersionArgs& args);

ExecutionReceipt handle_clone_notice(WorldState& world, const ExecContext& ctx,
                                     const AccountId& sender, const Address& versioning,
                                     const CloneNoticeArgs& args);

// Creates the release contract and its paired versioning contract.
CreationResult handle_create_release(WorldState& world, const ExecContext& ctx,
                                     const AccountId& sender, std::uint64_t nonce,
                                     const ReleaseInit& init);

// Decoded ReleaseCreated payload.
struct ReleaseCreatedEvent {
  Address release;
  Address versioning;
  std::string component_name;
  std::string version;
  std::optional<UpstreamRef> upstream;

  static ReleaseCreatedEvent decode(std::span<const std::uint8_t> payload);
};

}  // namespace metamaint
