// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Contract state records for every contract kind, and the world state they
// live in. Each record has a canonical encoding that feeds the state digest.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "metamaint/codec.hpp"
#include "metamaint/verification.hpp"
#include "metamaint/version.hpp"

namespace metamaint {

enum class ContractKind : std::uint8_t {
  Release = 0,
  Versioning = 1,
  Issue = 2,
  Forwarding = 3,
  Governance = 4,
};

std::string_view kind_name(ContractKind kind) noexcept;

struct VersionEntry {
  Version version;
  Digest content_digest;
  std::uint64_t added_at_height = 0;
};

struct UpstreamRef {
  Address release_addr;
  Version pinned_version;

  void encode(Encoder& enc) const;
  static UpstreamRef decode(Decoder& dec);
};

struct ReleaseContractState {
  AccountId owner;
  std::string component_name;
  LicenseId license;
  RuleSet rules;
  std::vector<VersionEntry> versions;
  std::optional<UpstreamRef> upstream;
  Address versioning_addr;
  // 0 for an original release, upstream depth + 1 for a clone.
  std::uint64_t depth = 0;

  const VersionEntry* find_version(const Version& v) const;
};

// Last entry's version; the list is strictly increasing.
const Version& latest_version(const ReleaseContractState& release);

struct CloneLogEntry {
  AccountId cloner;
  Version source_version;
  LicenseId declared_license;
  CloneVerdict verdict;
  std::uint64_t height = 0;
};

struct VersioningContractState {
  AccountId owner;
  Address release_addr;
  // (cloner, source version) -> height the authorization was granted at.
  std::map<std::pair<AccountId, Version>, std::uint64_t> authorizations;
  std::vector<CloneLogEntry> clone_log;
};

enum class IssueStatus : std::uint8_t { Open = 0, Resolved = 1 };

struct IssueContractState {
  AccountId reporter;
  Address target_release;
  Version affected_lo;
  Version affected_hi;
  Digest description_digest;
  std::uint64_t bounty = 0;
  IssueStatus status = IssueStatus::Open;
  std::optional<AccountId> resolver;
};

struct AllowListCondition {
  std::vector<AccountId> allowed;
};
struct MinAttachedTokensCondition {
  std::uint64_t minimum = 0;
};
using ForwardCondition = std::variant<AllowListCondition, MinAttachedTokensCondition>;

void encode_condition(Encoder& enc, const ForwardCondition& c);
ForwardCondition decode_condition(Decoder& dec);

struct ForwardingContractState {
  AccountId owner;
  Address destination;
  ForwardCondition condition;
};

enum class ProposalStatus : std::uint8_t { Voting = 0, Applied = 1, Rejected = 2 };

struct MatrixChange {
  LicenseId upstream;
  LicenseId derivative;
  Verdict verdict = Verdict::Deny;
};

struct Proposal {
  std::uint64_t id = 0;
  MatrixChange change;
  AccountId proposer;
  std::uint64_t proposed_at = 0;
  std::uint64_t window = 0;
  // true = yea
  std::map<AccountId, bool> votes;
  ProposalStatus status = ProposalStatus::Voting;

  std::uint64_t yea() const;
  std::uint64_t nay() const;
};

// Ecosystem-wide rules: proposals plus the matrix entries they applied.
struct GovernanceState {
  std::vector<Proposal> proposals;
  std::map<CompatibilityMatrix::Key, Verdict> matrix_overrides;
};

using ContractBody = std::variant<ReleaseContractState, VersioningContractState,
                                  IssueContractState, ForwardingContractState, GovernanceState>;

struct ContractRecord {
  std::uint64_t created_height = 0;
  std::uint64_t created_index = 0;
  ContractBody body;

  ContractKind kind() const noexcept { return static_cast<ContractKind>(body.index()); }
};

struct WorldState {
  std::map<Address, ContractRecord> contracts;
  std::map<AccountId, std::uint64_t> balances;

  const ContractRecord* find(const Address& addr) const;

  template <class T>
  const T* find_as(const Address& addr) const {
    auto* rec = find(addr);
    return rec ? std::get_if<T>(&rec->body) : nullptr;
  }
  template <class T>
  T* find_as(const Address& addr) {
    auto it = contracts.find(addr);
    return it == contracts.end() ? nullptr : std::get_if<T>(&it->second.body);
  }

  std::uint64_t balance_of(const AccountId& account) const;
  std::uint64_t total_balances() const;
  // Sum of bounties held by open issues.
  std::uint64_t total_escrow() const;
};

void encode_record(Encoder& enc, const ContractRecord& record);
// H(encoding of a single contract record).
Digest record_digest(const ContractRecord& record);

}  // namespace metamaint
