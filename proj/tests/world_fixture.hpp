// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Drives contract handlers directly against a WorldState, without blocks.

#include <map>
#include <optional>
#include <string>

#include "metamaint/contracts.hpp"
#include "metamaint/governance.hpp"
#include "metamaint/issues.hpp"
#include "metamaint/ledger.hpp"
#include "metamaint/release_protocol.hpp"

namespace metamaint::testing {

inline AccountId account(std::string_view secret) { return AccountKey::from_secret(secret).account_id; }

struct Released {
  Address release;
  Address versioning;
};

class WorldFixture {
 public:
  WorldState world;
  CompatibilityMatrix matrix = CompatibilityMatrix::default_fixture();
  std::uint64_t height = 1;

  ExecContext ctx() { return ExecContext{height, index_++, &matrix}; }
  void next_block() {
    ++height;
    index_ = 0;
  }

  CreationResult create(const AccountId& sender, const ContractCreation& c) {
    return create_contract(world, ctx(), sender, nonces_[sender]++, c);
  }

  CreationResult try_release(const AccountId& owner, std::string component, std::string license,
                             std::string version, std::optional<UpstreamRef> upstream = std::nullopt,
                             RuleSet rules = {}) {
    ReleaseInit init{std::move(component), std::move(license), std::move(rules), version,
                     sha256(version), std::move(upstream)};
    return create(owner, ContractCreation{std::move(init)});
  }

  Released release(const AccountId& owner, std::string component, std::string license,
                   std::string version, std::optional<UpstreamRef> upstream = std::nullopt,
                   RuleSet rules = {}) {
    auto r = try_release(owner, std::move(component), std::move(license), std::move(version),
                         std::move(upstream), std::move(rules));
    if (!r.receipt.ok()) throw Error(r.receipt.status, "fixture release failed: " + r.receipt.status_text());
    return Released{*r.address, world.find_as<ReleaseContractState>(*r.address)->versioning_addr};
  }

  ExecutionReceipt send(const AccountId& sender, const Address& target, ContractMessage msg) {
    return dispatch_message(world, ctx(), sender, target, msg);
  }

  ExecutionReceipt clone_notice(const AccountId& cloner, const Released& up, std::string version,
                                std::string license, Bytes digest = {}) {
    return send(cloner, up.versioning,
                CloneNoticeArgs{std::move(version), std::move(license), std::move(digest)}.to_message());
  }

  ExecutionReceipt add_version(const AccountId& owner, const Released& r, std::string version) {
    const auto d = sha256(version);
    return send(owner, r.versioning, AddVersionArgs{std::move(version), d}.to_message());
  }

  // Clone notice followed by a pinned downstream release.
  Released derive(const AccountId& cloner, const Released& up, const std::string& pinned,
                  std::string component, std::string license = "MIT") {
    auto n = clone_notice(cloner, up, pinned, license);
    if (!n.ok()) throw Error(n.status, "fixture clone notice failed: " + n.status_text());
    return release(cloner, std::move(component), license, "1.0.0", UpstreamRef{up.release, Version::parse(pinned)});
  }

  std::uint64_t nonce_of(const AccountId& a) const {
    auto it = nonces_.find(a);
    return it == nonces_.end() ? 0 : it->second;
  }

 private:
  std::uint64_t index_ = 0;
  std::map<AccountId, std::uint64_t> nonces_;
};

inline bool has_event(const ExecutionReceipt& r, std::string_view name) {
  for (const auto& e : r.events) {
    if (e.name == name) return true;
  }
  return false;
}

}  // namespace metamaint::testing
