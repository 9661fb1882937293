// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Shared verification routines that gate clone-and-own authorizations:
// license compatibility lookup, owner-defined reuse rules and the combined
// clone check. All functions are pure over their arguments.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "metamaint/codec.hpp"
#include "metamaint/version.hpp"

namespace metamaint {

struct LicenseId {
  std::string name;

  auto operator<=>(const LicenseId&) const = default;
};

enum class Verdict : std::uint8_t { Allow = 0, Deny = 1 };

std::string_view verdict_name(Verdict v) noexcept;

// (upstream, derivative) -> Allow | Deny over a configured license set.
// Pairs without an entry resolve to Deny.
class CompatibilityMatrix {
 public:
  using Key = std::pair<LicenseId, LicenseId>;

  // The shipped fixture: permissive upstreams allow every derivative,
  // GPL-3.0 allows only GPL-3.0, Proprietary allows only itself.
  static CompatibilityMatrix default_fixture();
  static std::string_view default_fixture_text();

  // Format: one `upstream,derivative,allow|deny` entry per line, `#`
  // comments, blank lines ignored. Every license named is added to the
  // configured set. Throws Error(ParseError) with the line number.
  static CompatibilityMatrix parse(std::string_view text);
  static CompatibilityMatrix load(const std::filesystem::path& path);

  bool knows(std::string_view license) const;
  // Throws Error(UnknownLicense) unless configured.
  LicenseId license(std::string_view name) const;

  Verdict lookup(const LicenseId& upstream, const LicenseId& derivative) const;
  void set(const LicenseId& upstream, const LicenseId& derivative, Verdict verdict);
  void add_license(const LicenseId& license) { licenses_.insert(license); }

  const std::set<LicenseId>& licenses() const noexcept { return licenses_; }
  const std::map<Key, Verdict>& entries() const noexcept { return entries_; }

  std::string to_text() const;

  friend bool operator==(const CompatibilityMatrix&, const CompatibilityMatrix&) = default;

 private:
  std::set<LicenseId> licenses_;
  std::map<Key, Verdict> entries_;
};

// Throws Error(UnknownLicense) when either side is outside the configured set.
Verdict check_license(const CompatibilityMatrix& matrix, std::string_view upstream,
                      std::string_view derivative);

enum class RuleViolationKind : std::uint8_t {
  LicenseNotAllowed = 0,
  DepthExceeded = 1,
  SameOwner = 2,
};

std::string_view violation_name(RuleViolationKind v) noexcept;

struct RuleSet {
  std::optional<std::set<LicenseId>> allowed_licenses;
  std::optional<std::uint64_t> max_clone_depth;
  bool require_distinct_owner = false;

  // Throws Error(SchemaError) on an empty allow-list.
  void validate() const;
  void encode(Encoder& enc) const;
  static RuleSet decode(Decoder& dec);

  friend bool operator==(const RuleSet&, const RuleSet&) = default;
};

struct RuleContext {
  LicenseId declared_license;
  AccountId cloner;
  AccountId upstream_owner;
  std::uint64_t clone_depth = 0;
};

// Evaluates every predicate; an empty result means the rules are satisfied.
std::vector<RuleViolationKind> check_rules(const RuleSet& rules, const RuleContext& ctx);

struct ReleaseContractState;

struct CloneNotice {
  AccountId cloner;
  Version source_version;
  LicenseId declared_license;
  // Empty, or a 32-byte digest of the cloned content.
  Bytes cloned_digest;
};

struct CloneVerdict {
  ErrorCode code = ErrorCode::Ok;
  std::vector<RuleViolationKind> violations;

  bool ok() const noexcept { return code == ErrorCode::Ok; }
  // "Ok", "LicenseIncompatible", "RuleViolation[DepthExceeded,SameOwner]", ...
  std::string describe() const;
};

// Checks run in order: version exists, license compatible, rules hold,
// content digest matches. The first failing check decides the verdict.
// Throws Error(UnknownLicense) for an unconfigured declared license.
CloneVerdict verify_clone(const CompatibilityMatrix& matrix, const ReleaseContractState& upstream,
                          const CloneNotice& notice);

}  // namespace metamaint
