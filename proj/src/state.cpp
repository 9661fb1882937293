// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include "metamaint/state.hpp"

namespace metamaint {

namespace {

void encode_version(Encoder& enc, const Version& v) { enc.str(v.to_string()); }

void encode_verdict(Encoder& enc, const CloneVerdict& v) {
  enc.u64(static_cast<std::uint64_t>(v.code));
  enc.count(v.violations.size());
  for (auto kind : v.violations) enc.u64(static_cast<std::uint64_t>(kind));
}

void encode_body(Encoder& enc, const ReleaseContractState& s) {
  enc.id(s.owner).str(s.component_name).str(s.license.name);
  s.rules.encode(enc);
  enc.count(s.versions.size());
  for (const auto& e : s.versions) {
    encode_version(enc, e.version);
    enc.digest(e.content_digest).u64(e.added_at_height);
  }
  enc.count(s.upstream ? 1 : 0);
  if (s.upstream) s.upstream->encode(enc);
  enc.id(s.versioning_addr).u64(s.depth);
}

void encode_body(Encoder& enc, const VersioningContractState& s) {
  enc.id(s.owner).id(s.release_addr);
  enc.count(s.authorizations.size());
  for (const auto& [key, height] : s.authorizations) {
    enc.id(key.first);
    encode_version(enc, key.second);
    enc.u64(height);
  }
  enc.count(s.clone_log.size());
  for (const auto& e : s.clone_log) {
    enc.id(e.cloner);
    encode_version(enc, e.source_version);
    enc.str(e.declared_license.name);
    encode_verdict(enc, e.verdict);
    enc.u64(e.height);
  }
}

void encode_body(Encoder& enc, const IssueContractState& s) {
  enc.id(s.reporter).id(s.target_release);
  encode_version(enc, s.affected_lo);
  encode_version(enc, s.affected_hi);
  enc.digest(s.description_digest).u64(s.bounty).u64(static_cast<std::uint64_t>(s.status));
  enc.count(s.resolver ? 1 : 0);
  if (s.resolver) enc.id(*s.resolver);
}

void encode_body(Encoder& enc, const ForwardingContractState& s) {
  enc.id(s.owner).id(s.destination);
  encode_condition(enc, s.condition);
}

void encode_body(Encoder& enc, const GovernanceState& s) {
  enc.count(s.proposals.size());
  for (const auto& p : s.proposals) {
    enc.u64(p.id).str(p.change.upstream.name).str(p.change.derivative.name);
    enc.u64(static_cast<std::uint64_t>(p.change.verdict));
    enc.id(p.proposer).u64(p.proposed_at).u64(p.window);
    enc.count(p.votes.size());
    for (const auto& [voter, yea] : p.votes) enc.id(voter).boolean(yea);
    enc.u64(static_cast<std::uint64_t>(p.status));
  }
  enc.count(s.matrix_overrides.size());
  for (const auto& [key, verdict] : s.matrix_overrides) {
    enc.str(key.first.name).str(key.second.name).u64(static_cast<std::uint64_t>(verdict));
  }
}

}  // namespace

std::string_view kind_name(ContractKind kind) noexcept {
  switch (kind) {
    case ContractKind::Release: return "Release";
    case ContractKind::Versioning: return "Versioning";
    case ContractKind::Issue: return "Issue";
    case ContractKind::Forwarding: return "Forwarding";
    case ContractKind::Governance: return "Governance";
  }
  return "Unknown";
}

void UpstreamRef::encode(Encoder& enc) const {
  enc.id(release_addr);
  encode_version(enc, pinned_version);
}

UpstreamRef UpstreamRef::decode(Decoder& dec) {
  UpstreamRef r;
  r.release_addr = dec.id<AddressTag>();
  try {
    r.pinned_version = Version::parse(dec.str());
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaError, e.what());
  }
  return r;
}

const VersionEntry* ReleaseContractState::find_version(const Version& v) const {
  for (const auto& e : versions) {
    if (e.version == v) return &e;
  }
  return nullptr;
}

const Version& latest_version(const ReleaseContractState& release) {
  return release.versions.back().version;
}

void encode_condition(Encoder& enc, const ForwardCondition& c) {
  if (const auto* allow = std::get_if<AllowListCondition>(&c)) {
    enc.u64(0).count(allow->allowed.size());
    for (const auto& a : allow->allowed) enc.id(a);
  } else {
    enc.u64(1).u64(std::get<MinAttachedTokensCondition>(c).minimum);
  }
}

ForwardCondition decode_condition(Decoder& dec) {
  switch (dec.u64()) {
    case 0: {
      AllowListCondition allow;
      for (auto n = dec.count(); n > 0; --n) allow.allowed.push_back(dec.id<AccountTag>());
      return allow;
    }
    case 1:
      return MinAttachedTokensCondition{dec.u64()};
    default:
      throw Error(ErrorCode::SchemaError, "unknown forwarding condition");
  }
}

std::uint64_t Proposal::yea() const {
  std::uint64_t n = 0;
  for (const auto& [voter, v] : votes) n += v ? 1 : 0;
  return n;
}

std::uint64_t Proposal::nay() const { return votes.size() - yea(); }

const ContractRecord* WorldState::find(const Address& addr) const {
  auto it = contracts.find(addr);
  return it == contracts.end() ? nullptr : &it->second;
}

std::uint64_t WorldState::balance_of(const AccountId& account) const {
  auto it = balances.find(account);
  return it == balances.end() ? 0 : it->second;
}

std::uint64_t WorldState::total_balances() const {
  std::uint64_t sum = 0;
  for (const auto& [account, amount] : balances) sum += amount;
  return sum;
}

std::uint64_t WorldState::total_escrow() const {
  std::uint64_t sum = 0;
  for (const auto& [addr, rec] : contracts) {
    if (const auto* issue = std::get_if<IssueContractState>(&rec.body)) {
      if (issue->status == IssueStatus::Open) sum += issue->bounty;
    }
  }
  return sum;
}

void encode_record(Encoder& enc, const ContractRecord& record) {
  enc.u64(static_cast<std::uint64_t>(record.kind())).u64(record.created_height).u64(record.created_index);
  std::visit([&](const auto& body) { encode_body(enc, body); }, record.body);
}

Digest record_digest(const ContractRecord& record) {
  Encoder enc;
  encode_record(enc, record);
  return sha256(enc.data());
}

}  // namespace metamaint
