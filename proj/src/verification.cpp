// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include "metamaint/verification.hpp"

#include <fstream>
#include <sstream>

#include "metamaint/state.hpp"

namespace metamaint {

namespace {

constexpr std::string_view kDefaultFixture = R"(# Default license compatibility fixture.
# upstream,derivative,allow|deny
# Simplified for simulation; not legal advice. Pairs not listed are denied.
MIT,MIT,allow
MIT,BSD-3-Clause,allow
MIT,Apache-2.0,allow
MIT,GPL-3.0,allow
MIT,Proprietary,allow
BSD-3-Clause,MIT,allow
BSD-3-Clause,BSD-3-Clause,allow
BSD-3-Clause,Apache-2.0,allow
BSD-3-Clause,GPL-3.0,allow
BSD-3-Clause,Proprietary,allow
Apache-2.0,MIT,allow
Apache-2.0,BSD-3-Clause,allow
Apache-2.0,Apache-2.0,allow
Apache-2.0,GPL-3.0,allow
Apache-2.0,Proprietary,allow
GPL-3.0,GPL-3.0,allow
GPL-3.0,MIT,deny
GPL-3.0,BSD-3-Clause,deny
GPL-3.0,Apache-2.0,deny
GPL-3.0,Proprietary,deny
Proprietary,Proprietary,allow
Proprietary,MIT,deny
Proprietary,BSD-3-Clause,deny
Proprietary,Apache-2.0,deny
Proprietary,GPL-3.0,deny
)";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view verdict_name(Verdict v) noexcept {
  return v == Verdict::Allow ? "allow" : "deny";
}

std::string_view violation_name(RuleViolationKind v) noexcept {
  switch (v) {
    case RuleViolationKind::LicenseNotAllowed: return "LicenseNotAllowed";
    case RuleViolationKind::DepthExceeded: return "DepthExceeded";
    case RuleViolationKind::SameOwner: return "SameOwner";
  }
  return "Unknown";
}

std::string_view CompatibilityMatrix::default_fixture_text() { return kDefaultFixture; }

CompatibilityMatrix CompatibilityMatrix::default_fixture() { return parse(kDefaultFixture); }

CompatibilityMatrix CompatibilityMatrix::parse(std::string_view text) {
  CompatibilityMatrix m;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      auto comma = line.find(',', start);
      fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::ParseError, "matrix line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() != 3) fail("expected upstream,derivative,allow|deny");
    if (fields[0].empty() || fields[1].empty()) fail("empty license id");
    Verdict verdict;
    if (fields[2] == "allow") {
      verdict = Verdict::Allow;
    } else if (fields[2] == "deny") {
      verdict = Verdict::Deny;
    } else {
      fail("verdict must be allow or deny");
    }
    LicenseId up{std::string(fields[0])};
    LicenseId down{std::string(fields[1])};
    m.licenses_.insert(up);
    m.licenses_.insert(down);
    m.entries_[{up, down}] = verdict;
  }
  return m;
}

CompatibilityMatrix CompatibilityMatrix::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open matrix file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool CompatibilityMatrix::knows(std::string_view license) const {
  return licenses_.count(LicenseId{std::string(license)}) > 0;
}

LicenseId CompatibilityMatrix::license(std::string_view name) const {
  if (!knows(name)) throw Error(ErrorCode::UnknownLicense, "unknown license '" + std::string(name) + "'");
  return LicenseId{std::string(name)};
}

Verdict CompatibilityMatrix::lookup(const LicenseId& upstream, const LicenseId& derivative) const {
  auto it = entries_.find({upstream, derivative});
  return it == entries_.end() ? Verdict::Deny : it->second;
}

void CompatibilityMatrix::set(const LicenseId& upstream, const LicenseId& derivative, Verdict verdict) {
  licenses_.insert(upstream);
  licenses_.insert(derivative);
  entries_[{upstream, derivative}] = verdict;
}

std::string CompatibilityMatrix::to_text() const {
  std::string out;
  for (const auto& [key, verdict] : entries_) {
    out += key.first.name + "," + key.second.name + "," + std::string(verdict_name(verdict)) + "\n";
  }
  return out;
}

Verdict check_license(const CompatibilityMatrix& matrix, std::string_view upstream,
                      std::string_view derivative) {
  return matrix.lookup(matrix.license(upstream), matrix.license(derivative));
}

void RuleSet::validate() const {
  if (allowed_licenses && allowed_licenses->empty()) {
    throw Error(ErrorCode::SchemaError, "allowed_licenses must not be empty when present");
  }
}

void RuleSet::encode(Encoder& enc) const {
  enc.count(allowed_licenses ? 1 : 0);
  if (allowed_licenses) {
    enc.count(allowed_licenses->size());
    for (const auto& l : *allowed_licenses) enc.str(l.name);
  }
  enc.count(max_clone_depth ? 1 : 0);
  if (max_clone_depth) enc.u64(*max_clone_depth);
  enc.boolean(require_distinct_owner);
}

RuleSet RuleSet::decode(Decoder& dec) {
  RuleSet r;
  auto has_allowed = dec.count();
  if (has_allowed > 1) throw Error(ErrorCode::SchemaError, "bad optional");
  if (has_allowed) {
    std::set<LicenseId> allowed;
    for (auto n = dec.count(); n > 0; --n) allowed.insert(LicenseId{dec.str()});
    r.allowed_licenses = std::move(allowed);
  }
  auto has_depth = dec.count();
  if (has_depth > 1) throw Error(ErrorCode::SchemaError, "bad optional");
  if (has_depth) r.max_clone_depth = dec.u64();
  r.require_distinct_owner = dec.boolean();
  r.validate();
  return r;
}

std::vector<RuleViolationKind> check_rules(const RuleSet& rules, const RuleContext& ctx) {
  std::vector<RuleViolationKind> out;
  if (rules.allowed_licenses && !rules.allowed_licenses->count(ctx.declared_license)) {
    out.push_back(RuleViolationKind::LicenseNotAllowed);
  }
  if (rules.max_clone_depth && ctx.clone_depth > *rules.max_clone_depth) {
    out.push_back(RuleViolationKind::DepthExceeded);
  }
  if (rules.require_distinct_owner && ctx.cloner == ctx.upstream_owner) {
    out.push_back(RuleViolationKind::SameOwner);
  }
  return out;
}

std::string CloneVerdict::describe() const {
  std::string out(error_name(code));
  if (!violations.empty()) {
    out += "[";
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i) out += ",";
      out += violation_name(violations[i]);
    }
    out += "]";
  }
  return out;
}

CloneVerdict verify_clone(const CompatibilityMatrix& matrix, const ReleaseContractState& upstream,
                          const CloneNotice& notice) {
  const auto declared = matrix.license(notice.declared_license.name);

  const auto* entry = upstream.find_version(notice.source_version);
  if (!entry) return {ErrorCode::UnknownVersion, {}};

  if (matrix.lookup(upstream.license, declared) != Verdict::Allow) {
    return {ErrorCode::LicenseIncompatible, {}};
  }

  auto violations = check_rules(upstream.rules, RuleContext{declared, notice.cloner, upstream.owner,
                                                             upstream.depth + 1});
  if (!violations.empty()) return {ErrorCode::RuleViolation, std::move(violations)};

  if (!notice.cloned_digest.empty() &&
      (notice.cloned_digest.size() != entry->content_digest.bytes.size() ||
       !std::equal(notice.cloned_digest.begin(), notice.cloned_digest.end(),
                   entry->content_digest.bytes.begin()))) {
    return {ErrorCode::DigestMismatch, {}};
  }
  return {};
}

}  // namespace metamaint
