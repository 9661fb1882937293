// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Contract runtime: address derivation, creation payloads, message payloads
// and deterministic dispatch to the native handlers of each contract kind.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "metamaint/codec.hpp"
#include "metamaint/state.hpp"
#include "metamaint/verification.hpp"

namespace metamaint {

struct Event {
  std::string name;
  Bytes payload;

  friend bool operator==(const Event&, const Event&) = default;
};

struct ExecutionReceipt {
  ErrorCode status = ErrorCode::Ok;
  // Extra status text, e.g. the violated rules of a RuleViolation.
  std::string detail;
  std::vector<Event> events;

  bool ok() const noexcept { return status == ErrorCode::Ok; }
  static ExecutionReceipt failure(ErrorCode code, std::string detail = {}) {
    return {code, std::move(detail), {}};
  }
  std::string status_text() const;

  friend bool operator==(const ExecutionReceipt&, const ExecutionReceipt&) = default;
};

// Everything a handler may read besides the world state.
struct ExecContext {
  std::uint64_t height = 0;
  std::uint64_t tx_index = 0;
  // Matrix from genesis configuration; governance overrides are layered on
  // top of it at lookup time.
  const CompatibilityMatrix* base_matrix = nullptr;
};

// ---- creation payloads ----------------------------------------------------

struct ReleaseInit {
  std::string component_name;
  std::string license;
  RuleSet rules;
  std::string initial_version;
  Digest content_digest;
  std::optional<UpstreamRef> upstream;
};

struct IssueInit {
  Address target_release;
  std::string affected_lo;
  std::string affected_hi;
  Digest description_digest;
  std::uint64_t bounty = 0;
};

struct ForwardingInit {
  Address destination;
  ForwardCondition condition;
};

struct ContractCreation {
  std::variant<ReleaseInit, IssueInit, ForwardingInit> init;

  ContractKind kind() const noexcept;
  Bytes encode() const;
  // Throws Error(SchemaError).
  static ContractCreation decode(std::span<const std::uint8_t> payload);
};

// ---- message payloads -----------------------------------------------------

namespace selector {
inline constexpr std::string_view kAddVersion = "AddVersion";
inline constexpr std::string_view kCloneNotice = "CloneNotice";
inline constexpr std::string_view kResolve = "Resolve";
inline constexpr std::string_view kPropose = "Propose";
inline constexpr std::string_view kVote = "Vote";
}  // namespace selector

struct ContractMessage {
  std::string selector;
  Bytes args;
  // Tokens the sender attaches. Only forwarding contracts accept them.
  std::uint64_t attached = 0;

  Bytes encode() const;
  static ContractMessage decode(std::span<const std::uint8_t> payload);
};

struct AddVersionArgs {
  std::string version;
  Digest content_digest;

  ContractMessage to_message() const;
  static AddVersionArgs decode(std::span<const std::uint8_t> args);
};

struct CloneNoticeArgs {
  std::string source_version;
  std::string declared_license;
  // Empty or 32 bytes.
  Bytes cloned_digest;

  ContractMessage to_message() const;
  static CloneNoticeArgs decode(std::span<const std::uint8_t> args);
};

struct ResolveArgs {
  AccountId resolver;

  ContractMessage to_message() const;
  static ResolveArgs decode(std::span<const std::uint8_t> args);
};

struct ProposeArgs {
  std::string upstream;
  std::string derivative;
  Verdict verdict = Verdict::Deny;
  std::uint64_t window = 1;

  ContractMessage to_message() const;
  static ProposeArgs decode(std::span<const std::uint8_t> args);
};

struct VoteArgs {
  std::uint64_t proposal_id = 0;
  bool yea = true;

  ContractMessage to_message() const;
  static VoteArgs decode(std::span<const std::uint8_t> args);
};

// ---- runtime --------------------------------------------------------------

// H(creator, creator nonce, kind).
Address contract_address(const AccountId& creator, std::uint64_t nonce, ContractKind kind);
// Well-known address of the ecosystem governance record.
const Address& governance_address();

// Forwarding contracts act for their owner: owner checks treat a forwarded
// sender as the forwarding contract's owner.
AccountId principal_of(const WorldState& world, const AccountId& sender);

struct CreationResult {
  std::optional<Address> address;
  ExecutionReceipt receipt;
};

// All-or-nothing: on failure `world` is left untouched.
CreationResult create_contract(WorldState& world, const ExecContext& ctx, const AccountId& sender,
                               std::uint64_t nonce, const ContractCreation& creation);

// All-or-nothing, except that clone notices which fail verification still
// append their verdict to the clone log.
ExecutionReceipt dispatch_message(WorldState& world, const ExecContext& ctx,
                                  const AccountId& sender, const Address& target,
                                  const ContractMessage& msg);

// Conditional re-dispatch through a forwarding contract. `depth` counts the
// forwarding hops already taken; a second hop fails with DepthExceeded.
ExecutionReceipt forward_if(WorldState& world, const ExecContext& ctx, const AccountId& sender,
                            const Address& forwarder, const ContractMessage& msg,
                            unsigned depth = 0);

// Read-only snapshot. Throws Error(UnknownContract).
const ContractBody& read_state(const WorldState& world, const Address& target);

// The matrix in force: base fixture plus applied governance changes.
CompatibilityMatrix effective_matrix(const WorldState& world, const CompatibilityMatrix& base);

}  // namespace metamaint
