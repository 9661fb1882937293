// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "metamaint/scenario.hpp"

using namespace metamaint;

namespace {

constexpr std::string_view kHeader = "validator v0 v0-secret\n";

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sequential_reuse_text() { return read(METAMAINT_SOURCE_DIR "/scenarios/sequential_reuse.scenario"); }

void expect_parse_error(const std::string& text, std::size_t line, std::string_view fragment) {
  try {
    parse_scenario(text);
    FAIL("accepted:\n" << text);
  } catch (const ScenarioParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() >= 1);
    CHECK_MESSAGE(e.reason().find(fragment) != std::string::npos, e.reason());
  }
}

std::filesystem::path scratch_dir(std::string_view name) {
  auto dir = std::filesystem::temp_directory_path() / ("metamaint-test-" + std::string(name));
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("a header with an empty body parses to zero commands") {
  const auto s = parse_scenario("nodes 2\ngossip_delay 3\nseed 9\nvalidator v0 s0\nbalance v0 10\n");
  CHECK(s.commands.empty());
  CHECK(s.header.nodes == 2);
  CHECK(s.header.gossip_delay == 3);
  CHECK(s.header.seed == 9);
  CHECK(s.header.validators.size() == 1);
  CHECK(s.header.balances.at(0).amount == 10);
}

TEST_CASE("the shipped sequential_reuse fixture has 11 commands") {
  const auto s = parse_scenario(sequential_reuse_text());
  CHECK(s.commands.size() == 11);
  int keys = 0, releases = 0, clones = 0, derives = 0, ticks = 0;
  for (const auto& c : s.commands) {
    keys += std::holds_alternative<KeyCmd>(c.body);
    releases += std::holds_alternative<ReleaseCmd>(c.body);
    clones += std::holds_alternative<CloneCmd>(c.body);
    derives += std::holds_alternative<DeriveCmd>(c.body);
    ticks += std::holds_alternative<TickCmd>(c.body);
  }
  CHECK(keys == 3);
  CHECK(releases == 1);
  CHECK(clones == 2);
  CHECK(derives == 2);
  CHECK(ticks == 3);
}

TEST_CASE("parse errors name the line") {
  const std::string h(kHeader);
  expect_parse_error(h + "KEY a s\nFROB a\n", 3, "unknown command");
  expect_parse_error(h + "KEY a s\nkey b s\n", 3, "after the first command");
  expect_parse_error(h + "RELEASE R0 nobody lib MIT 1.0\n", 2, "undeclared key");
  expect_parse_error(h + "KEY a s\nRELEASE R0 a lib MIT 1.x\n", 3, "version");
  expect_parse_error(h + "KEY a s\nRELEASE R0 a lib MIT\n", 3, "expects 5 arguments");
  expect_parse_error(h + "KEY a s\nRELEASE R0 a lib MIT 1.0\nRELEASE R0 a lib MIT 1.0\n", 4, "already bound");
  expect_parse_error(h + "KEY a s\nCLONE a R9 1.0 MIT\n", 3, "not a known release");
  expect_parse_error(h + "KEY a s\nRELEASE R0 a lib MIT 1.0 colour=red\n", 3, "unknown option");
  expect_parse_error(h + "KEY a s\nTICK 5 @1\n", 3, "out of range");
  expect_parse_error(h + "KEY a s\nTICK -5\n", 3, "unsigned integer");
  expect_parse_error(h + "KEY a s\nRELEASE GOV a lib MIT 1.0\n", 3, "reserved");
  expect_parse_error(h + "KEY a s\nRELEASE R0 a lib MIT 1.0\nFORWARD F a R0\n", 4, "exactly one");
  expect_parse_error(h + "KEY a s\nPROPOSE a MIT GPL-3.0 maybe 2\n", 3, "allow or deny");
  expect_parse_error(h + "KEY a s\nADDVER R0 a 1.0 via=F\n", 3, "not a known release");
  expect_parse_error("KEY a s\n", 1, "no validator");
  expect_parse_error(h + "balance ghost 5\n", 2, "undeclared key");
}

TEST_CASE("columns point at the offending token") {
  try {
    parse_scenario(std::string(kHeader) + "KEY a s\nRELEASE R0 a lib MIT 1.y\n");
    FAIL("accepted");
  } catch (const ScenarioParseError& e) {
    CHECK(e.column() == std::string("RELEASE R0 a lib MIT ").size() + 1);
  }
}

TEST_CASE("comments, blank lines and options") {
  const auto s = parse_scenario(std::string(kHeader) +
                                "\n# comment\nKEY a s  # trailing\n"
                                "RELEASE R0 a lib MIT 1.0 allow=MIT,GPL-3.0 maxdepth=2 distinct content=x\n"
                                "FORWARD F a R0 min=5\nADDVER R0 a 1.1 via=F attach=5 @0\n");
  REQUIRE(s.commands.size() == 4);
  const auto& rel = std::get<ReleaseCmd>(s.commands[1].body);
  CHECK(rel.rules.allowed_licenses->size() == 2);
  CHECK(*rel.rules.max_clone_depth == 2);
  CHECK(rel.rules.require_distinct_owner);
  CHECK(*rel.content == "x");
  CHECK(*s.commands[3].via == "F");
  CHECK(s.commands[3].attach == 5);
}

TEST_CASE("queries check their kind and arity") {
  CHECK(QuerySpec::parse("digest", {}).kind == QueryKind::Digest);
  CHECK(QuerySpec::parse("downstream", {"R0", "1.0"}).kind == QueryKind::Downstream);
  CHECK_THROWS_AS(QuerySpec::parse("downstream", {}), Error);
  CHECK_THROWS_AS(QuerySpec::parse("graph", {"x"}), Error);
  CHECK_THROWS_AS(QuerySpec::parse("everything", {}), Error);
}

TEST_CASE("sequential_reuse runs, writes its dumps and answers queries") {
  const auto text = sequential_reuse_text();
  const auto sim = Simulation::run(parse_scenario(text), std::nullopt, nullptr);
  const auto r0 = sim.resolve_address("R0");
  const auto r1 = sim.resolve_address("R1");
  const auto r2 = sim.resolve_address("R2");
  const auto [lo, hi] = std::minmax(r1, r2);
  CHECK(sim.query(QuerySpec::parse("downstream", {"R0"})) == lo.hex() + "\n" + hi.hex() + "\n");
  CHECK(sim.query(QuerySpec::parse("outdated", {})).empty());
  CHECK(sim.query(QuerySpec::parse("digest", {})).size() == 65);
  CHECK(sim.query(QuerySpec::parse("issues", {})).empty());
  CHECK_THROWS_AS(sim.query(QuerySpec::parse("downstream", {"nope"})), Error);
  CHECK(r0 == Address::from_hex(r0.hex()));

  const auto dir = scratch_dir("sequential reuse");
  sim.write_outputs(dir, text);
  for (const char* f : {"chain.dump", "receipts.log", "graph.dump", "issues.dump", "proposals.dump",
                        "symbols.dump", "state_digest", "scenario.txt", "matrix.txt", "run.meta"}) {
    CHECK_MESSAGE(std::filesystem::exists(dir / f), f);
  }
  const auto loaded = Simulation::load(dir);
  CHECK(loaded.query(QuerySpec::parse("chain", {})) == read(dir / "chain.dump"));

  std::ofstream(dir / "state_digest") << std::string(64, '0') << "\n";
  try {
    Simulation::load(dir);
    FAIL("accepted a stale digest");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingDump);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("license-violating clones are protocol outcomes, not failures") {
  const auto sim = Simulation::run(parse_scenario(std::string(kHeader) +
                                                  "KEY a a-secret\nKEY b b-secret\n"
                                                  "RELEASE R0 a lib GPL-3.0 1.0\nTICK 10\n"
                                                  "CLONE b R0 1.0 MIT\n"),
                                   std::nullopt, nullptr);
  const auto log = receipt_log(sim.state());
  CHECK(log.find("|CloneNotice|LicenseIncompatible|CloneRejected:") != std::string::npos);
}

TEST_CASE("a derive without a clone notice is recorded as unauthorized") {
  const auto sim = Simulation::run(parse_scenario(std::string(kHeader) +
                                                  "KEY a a-secret\nKEY b b-secret\n"
                                                  "RELEASE R0 a lib MIT 1.0\nTICK 10\n"
                                                  "DERIVE R1 b fork MIT 1.0 R0 1.0\n"),
                                   std::nullopt, nullptr);
  CHECK(receipt_log(sim.state()).find("|CreateRelease|NoAuthorization|-") != std::string::npos);
  CHECK_FALSE(sim.state().world().find(sim.resolve_address("R1")));
}

TEST_CASE("the seed changes delivery order but not the outcome of independent work") {
  const std::string text = "nodes 3\ngossip_delay 2\nvalidator v0 s0\nvalidator v1 s1\n"
                           "KEY a a-secret\nKEY b b-secret\nKEY c c-secret\n"
                           "RELEASE X a x MIT 1.0 @0\nRELEASE Y b y MIT 1.0 @1\nRELEASE Z c z MIT 1.0 @2\n";
  const auto s = parse_scenario(text);
  const auto a = Simulation::run(s, 1, nullptr);
  const auto b = Simulation::run(s, 1, nullptr);
  CHECK(chain_dump(a.state()) == chain_dump(b.state()));
  const auto c = Simulation::run(s, 2, nullptr);
  CHECK(c.state().world().contracts.size() == a.state().world().contracts.size());
}

TEST_CASE("METAMAINT_MATRIX selects the fixture") {
  const auto path = std::filesystem::temp_directory_path() / "metamaint-test-matrix.txt";
  std::ofstream(path) << "MIT,MIT,allow\n";
  ::setenv("METAMAINT_MATRIX", path.c_str(), 1);
  const auto m = matrix_from_environment();
  ::unsetenv("METAMAINT_MATRIX");
  CHECK(m->licenses().size() == 1);
  CHECK(matrix_from_environment()->licenses().size() == 5);
  std::filesystem::remove(path);
}
