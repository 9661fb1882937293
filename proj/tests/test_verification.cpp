// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <fstream>

#include "metamaint/state.hpp"
#include "metamaint/verification.hpp"

using namespace metamaint;

namespace {

const std::vector<std::string> kLicenses{"MIT", "BSD-3-Clause", "Apache-2.0", "GPL-3.0", "Proprietary"};

// Hand-written expectation for the shipped fixture: permissive upstreams
// allow any derivative; copyleft and proprietary upstreams allow only
// themselves.
Verdict expected_verdict(const std::string& up, const std::string& down) {
  const bool permissive = up == "MIT" || up == "BSD-3-Clause" || up == "Apache-2.0";
  return permissive || up == down ? Verdict::Allow : Verdict::Deny;
}

ReleaseContractState upstream_release(std::string license, RuleSet rules = {}) {
  ReleaseContractState r;
  r.owner = AccountId{sha256("owner")};
  r.component_name = "lib";
  r.license = LicenseId{std::move(license)};
  r.rules = std::move(rules);
  r.versions.push_back(VersionEntry{Version::parse("1.0.0"), sha256("lib-1.0.0"), 1});
  return r;
}

Bytes bytes_of(const Digest& d) { return Bytes(d.bytes.begin(), d.bytes.end()); }

}  // namespace

TEST_CASE("default fixture covers 5 licenses exhaustively") {
  const auto m = CompatibilityMatrix::default_fixture();
  CHECK(m.licenses().size() == 5);
  CHECK(m.entries().size() == 25);
  int denies = 0;
  for (const auto& up : kLicenses) {
    for (const auto& down : kLicenses) {
      CAPTURE(up);
      CAPTURE(down);
      CHECK(check_license(m, up, down) == expected_verdict(up, down));
      denies += check_license(m, up, down) == Verdict::Deny;
    }
  }
  CHECK(denies == 8);
}

TEST_CASE("identity pairs are allowed in the default fixture") {
  const auto m = CompatibilityMatrix::default_fixture();
  for (const auto& l : kLicenses) CHECK(check_license(m, l, l) == Verdict::Allow);
}

TEST_CASE("shipped data file equals the built-in fixture") {
  const auto m = CompatibilityMatrix::load(METAMAINT_SOURCE_DIR "/data/default.matrix");
  CHECK(m == CompatibilityMatrix::default_fixture());
}

TEST_CASE("unlisted pairs are denied, unknown licenses are errors") {
  auto m = CompatibilityMatrix::parse("A,B,allow\nC,C,allow\n");
  CHECK(m.lookup(LicenseId{"A"}, LicenseId{"B"}) == Verdict::Allow);
  CHECK(m.lookup(LicenseId{"B"}, LicenseId{"A"}) == Verdict::Deny);
  CHECK(m.lookup(LicenseId{"A"}, LicenseId{"C"}) == Verdict::Deny);
  try {
    m.license("WTFPL");
    FAIL("expected UnknownLicense");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownLicense);
  }
}

TEST_CASE("fixture parse errors carry the line number") {
  for (const char* text : {"MIT,MIT,allow\nMIT,GPL\n", "MIT,MIT,allow\nMIT,GPL,maybe\n", "MIT,MIT,allow\n,MIT,deny\n"}) {
    try {
      CompatibilityMatrix::parse(text);
      FAIL("accepted " << text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
}

TEST_CASE("to_text round-trips") {
  auto m = CompatibilityMatrix::default_fixture();
  m.set(LicenseId{"GPL-3.0"}, LicenseId{"MIT"}, Verdict::Allow);
  CHECK(CompatibilityMatrix::parse(m.to_text()) == m);
}

TEST_CASE("check_rules reports every violated rule") {
  RuleSet rules;
  rules.allowed_licenses = std::set<LicenseId>{LicenseId{"MIT"}};
  rules.max_clone_depth = 1;
  rules.require_distinct_owner = true;
  const AccountId owner{sha256("o")};
  CHECK(check_rules(rules, RuleContext{LicenseId{"MIT"}, AccountId{sha256("c")}, owner, 1}).empty());
  const auto all = check_rules(rules, RuleContext{LicenseId{"GPL-3.0"}, owner, owner, 2});
  CHECK(all == std::vector<RuleViolationKind>{RuleViolationKind::LicenseNotAllowed,
                                              RuleViolationKind::DepthExceeded, RuleViolationKind::SameOwner});
  CHECK(check_rules(RuleSet{}, RuleContext{LicenseId{"X"}, owner, owner, 99}).empty());
}

TEST_CASE("rule sets round-trip through the codec and reject empty allow-lists") {
  RuleSet rules;
  rules.allowed_licenses = std::set<LicenseId>{LicenseId{"MIT"}, LicenseId{"GPL-3.0"}};
  rules.max_clone_depth = 3;
  Encoder enc;
  rules.encode(enc);
  Decoder dec(enc.data());
  CHECK(RuleSet::decode(dec) == rules);

  RuleSet empty;
  empty.allowed_licenses = std::set<LicenseId>{};
  CHECK_THROWS_AS(empty.validate(), Error);
}

TEST_CASE("verify_clone checks run in a fixed order") {
  const auto m = CompatibilityMatrix::default_fixture();
  const AccountId cloner{sha256("cloner")};
  const auto v1 = Version::parse("1.0.0");

  SUBCASE("pass with and without a digest") {
    const auto up = upstream_release("MIT");
    CHECK(verify_clone(m, up, CloneNotice{cloner, v1, LicenseId{"GPL-3.0"}, {}}).ok());
    CHECK(verify_clone(m, up, CloneNotice{cloner, v1, LicenseId{"MIT"}, bytes_of(sha256("lib-1.0.0"))}).ok());
  }
  SUBCASE("unknown declared license throws") {
    CHECK_THROWS_AS(verify_clone(m, upstream_release("MIT"), CloneNotice{cloner, v1, LicenseId{"Nope"}, {}}), Error);
  }
  SUBCASE("unknown version beats incompatibility") {
    const auto v = verify_clone(m, upstream_release("GPL-3.0"),
                                CloneNotice{cloner, Version::parse("9.9"), LicenseId{"MIT"}, {}});
    CHECK(v.code == ErrorCode::UnknownVersion);
  }
  SUBCASE("incompatibility beats rules") {
    RuleSet rules;
    rules.require_distinct_owner = true;
    auto up = upstream_release("GPL-3.0", rules);
    const auto v = verify_clone(m, up, CloneNotice{up.owner, v1, LicenseId{"MIT"}, {}});
    CHECK(v.code == ErrorCode::LicenseIncompatible);
  }
  SUBCASE("rule violations are listed") {
    RuleSet rules;
    rules.max_clone_depth = 0;
    const auto v = verify_clone(m, upstream_release("MIT", rules), CloneNotice{cloner, v1, LicenseId{"MIT"}, {}});
    CHECK(v.code == ErrorCode::RuleViolation);
    CHECK(v.describe() == "RuleViolation[DepthExceeded]");
  }
  SUBCASE("depth counts from the upstream's own depth") {
    RuleSet rules;
    rules.max_clone_depth = 2;
    auto up = upstream_release("MIT", rules);
    up.depth = 1;
    CHECK(verify_clone(m, up, CloneNotice{cloner, v1, LicenseId{"MIT"}, {}}).ok());
    up.depth = 2;
    CHECK(verify_clone(m, up, CloneNotice{cloner, v1, LicenseId{"MIT"}, {}}).code == ErrorCode::RuleViolation);
  }
  SUBCASE("digest mismatch comes last") {
    const auto v = verify_clone(m, upstream_release("MIT"),
                                CloneNotice{cloner, v1, LicenseId{"MIT"}, bytes_of(sha256("other"))});
    CHECK(v.code == ErrorCode::DigestMismatch);
    CHECK(v.describe() == "DigestMismatch");
  }
}
