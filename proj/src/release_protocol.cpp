// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include "metamaint/release_protocol.hpp"

namespace metamaint {

namespace {

std::optional<Version> try_parse(std::string_view text) {
  try {
    return Version::parse(text);
  } catch (const Error&) {
    return std::nullopt;
  }
}

Event release_created(const Address& release, const ReleaseContractState& state) {
  Encoder enc;
  enc.id(release).id(state.versioning_addr).str(state.component_name);
  enc.str(state.versions.front().version.to_string());
  enc.count(state.upstream ? 1 : 0);
  if (state.upstream) state.upstream->encode(enc);
  return {std::string(event::kReleaseCreated), enc.take()};
}

}  // namespace

ReleaseCreatedEvent ReleaseCreatedEvent::decode(std::span<const std::uint8_t> payload) {
  Decoder dec(payload);
  ReleaseCreatedEvent e;
  e.release = dec.id<AddressTag>();
  e.versioning = dec.id<AddressTag>();
  e.component_name = dec.str();
  e.version = dec.str();
  if (dec.count() == 1) e.upstream = UpstreamRef::decode(dec);
  dec.expect_done();
  return e;
}

ExecutionReceipt handle_add_version(WorldState& world, const ExecContext& ctx,
                                    const AccountId& sender, const Address& versioning,
                                    const AddVersionArgs& args) {
  const auto* vc = world.find_as<VersioningContractState>(versioning);
  if (!vc) return ExecutionReceipt::failure(ErrorCode::UnknownContract);
  if (principal_of(world, sender) != vc->owner) return ExecutionReceipt::failure(ErrorCode::NotOwner);

  auto version = try_parse(args.version);
  if (!version) return ExecutionReceipt::failure(ErrorCode::SchemaError, "bad version");

  auto* release = world.find_as<ReleaseContractState>(vc->release_addr);
  if (!release) return ExecutionReceipt::failure(ErrorCode::UnknownRelease);

  switch (compare_versions(*version, latest_version(*release))) {
    case Ordering::Equal:
      return ExecutionReceipt::failure(ErrorCode::DuplicateVersion);
    case Ordering::Less:
      // Equal to an older entry is still a duplicate.
      if (release->find_version(*version)) return ExecutionReceipt::failure(ErrorCode::DuplicateVersion);
      return ExecutionReceipt::failure(ErrorCode::NonMonotonicVersion);
    case Ordering::Greater:
      break;
  }

  release->versions.push_back(VersionEntry{*version, args.content_digest, ctx.height});

  Encoder enc;
  enc.id(vc->release_addr).str(version->to_string());
  return {ErrorCode::Ok, {}, {Event{std::string(event::kVersionAdded), enc.take()}}};
}

ExecutionReceipt handle_clone_notice(WorldState& world, const ExecContext& ctx,
                                     const AccountId& sender, const Address& versioning,
                                     const CloneNoticeArgs& args) {
  auto* vc = world.find_as<VersioningContractState>(versioning);
  if (!vc) return ExecutionReceipt::failure(ErrorCode::UnknownContract);
  const auto* release = world.find_as<ReleaseContractState>(vc->release_addr);
  if (!release) return ExecutionReceipt::failure(ErrorCode::UnknownRelease);

  auto version = try_parse(args.source_version);
  if (!version) return ExecutionReceipt::failure(ErrorCode::SchemaError, "bad version");
  if (!args.cloned_digest.empty() && args.cloned_digest.size() != 32) {
    return ExecutionReceipt::failure(ErrorCode::SchemaError, "cloned digest must be 32 bytes");
  }

  const auto matrix = effective_matrix(world, *ctx.base_matrix);
  if (!matrix.knows(args.declared_license)) {
    return ExecutionReceipt::failure(ErrorCode::UnknownLicense, args.declared_license);
  }

  // A notice relayed by a forwarding contract is filed for its owner.
  const auto cloner = principal_of(world, sender);
  CloneNotice notice{cloner, *version, LicenseId{args.declared_license}, args.cloned_digest};
  auto verdict = verify_clone(matrix, *release, notice);

  vc->clone_log.push_back(CloneLogEntry{cloner, *version, notice.declared_license, verdict, ctx.height});

  Encoder enc;
  enc.id(vc->release_addr).id(cloner).str(version->to_string()).str(args.declared_license);
  if (!verdict.ok()) {
    enc.str(verdict.describe());
    ExecutionReceipt r{verdict.code, {}, {Event{std::string(event::kCloneRejected), enc.take()}}};
    for (auto v : verdict.violations) {
      if (!r.detail.empty()) r.detail += ",";
      r.detail += violation_name(v);
    }
    return r;
  }

  // Re-notifying an already authorized pair keeps the original grant height.
  vc->authorizations.emplace(std::make_pair(cloner, *version), ctx.height);
  return {ErrorCode::Ok, {}, {Event{std::string(event::kCloneAuthorized), enc.take()}}};
}

CreationResult handle_create_release(WorldState& world, const ExecContext& ctx,
                                     const AccountId& sender, std::uint64_t nonce,
                                     const ReleaseInit& init) {
  auto fail = [](ErrorCode code, std::string detail = {}) {
    return CreationResult{std::nullopt, ExecutionReceipt::failure(code, std::move(detail))};
  };

  if (init.component_name.empty()) return fail(ErrorCode::SchemaError, "empty component name");
  auto version = try_parse(init.initial_version);
  if (!version) return fail(ErrorCode::SchemaError, "bad version");
  try {
    init.rules.validate();
  } catch (const Error& e) {
    return fail(ErrorCode::SchemaError, e.what());
  }

  const auto matrix = effective_matrix(world, *ctx.base_matrix);
  if (!matrix.knows(init.license)) return fail(ErrorCode::UnknownLicense, init.license);
  if (init.rules.allowed_licenses) {
    for (const auto& l : *init.rules.allowed_licenses) {
      if (!matrix.knows(l.name)) return fail(ErrorCode::UnknownLicense, l.name);
    }
  }

  std::uint64_t depth = 0;
  if (init.upstream) {
    const auto* upstream = world.find_as<ReleaseContractState>(init.upstream->release_addr);
    if (!upstream) return fail(ErrorCode::UnknownUpstream);
    if (!upstream->find_version(init.upstream->pinned_version)) {
      return fail(ErrorCode::UnknownVersion);
    }
    const auto* upstream_vc = world.find_as<VersioningContractState>(upstream->versioning_addr);
    if (!upstream_vc ||
        !upstream_vc->authorizations.count({sender, init.upstream->pinned_version})) {
      return fail(ErrorCode::NoAuthorization);
    }
    depth = upstream->depth + 1;
  }

  const auto release_addr = contract_address(sender, nonce, ContractKind::Release);
  const auto versioning_addr = contract_address(sender, nonce, ContractKind::Versioning);
  if (world.find(release_addr) || world.find(versioning_addr)) {
    return fail(ErrorCode::SchemaError, "address already in use");
  }

  ReleaseContractState release;
  release.owner = sender;
  release.component_name = init.component_name;
  release.license = LicenseId{init.license};
  release.rules = init.rules;
  release.versions.push_back(VersionEntry{*version, init.content_digest, ctx.height});
  release.upstream = init.upstream;
  release.versioning_addr = versioning_addr;
  release.depth = depth;

  VersioningContractState vc;
  vc.owner = sender;
  vc.release_addr = release_addr;

  auto ev = release_created(release_addr, release);
  world.contracts.emplace(release_addr, ContractRecord{ctx.height, ctx.tx_index, std::move(release)});
  world.contracts.emplace(versioning_addr, ContractRecord{ctx.height, ctx.tx_index, std::move(vc)});
  return {release_addr, {ErrorCode::Ok, {}, {std::move(ev)}}};
}

}  // namespace metamaint
