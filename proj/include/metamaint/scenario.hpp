// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Scenario files, the multi-node run they drive, the dump files a run
// writes and the queries answered over a finished run.
//
// A scenario is a header of lowercase directives followed by one command
// per line:
//
//   nodes 3
//   gossip_delay 2
//   seed 7
//   validator val0 secret-of-val0
//   balance alice 100
//
//   KEY alice alice-secret
//   RELEASE R0 alice libfoo MIT 1.0.0 content=libfoo-1.0.0
//   TICK 20
//
// Commands act at the current logical tick, which only TICK advances. A
// trailing `@N` injects the transaction at node N (default 0). Symbols such
// as R0 bind to the addresses the transaction will create.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "metamaint/ledger.hpp"
#include "metamaint/verification.hpp"

namespace metamaint {

class ScenarioParseError : public Error {
 public:
  ScenarioParseError(std::size_t line, std::size_t column, const std::string& reason);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string reason_;
};

struct KeyDecl {
  std::string name;
  std::string secret;
  std::size_t line = 0;
};

struct BalanceDecl {
  std::string name;
  std::uint64_t amount = 0;
  std::size_t line = 0;
};

struct ScenarioHeader {
  std::uint32_t nodes = 1;
  std::uint64_t gossip_delay = 1;
  std::uint64_t seed = 0;
  std::vector<KeyDecl> validators;
  std::vector<BalanceDecl> balances;
};

struct RuleSpec {
  std::optional<std::vector<std::string>> allowed_licenses;
  std::optional<std::uint64_t> max_clone_depth;
  bool require_distinct_owner = false;
};

struct KeyCmd {
  std::string name;
  std::string secret;
};
struct ReleaseCmd {
  std::string symbol, key, component, license, version;
  std::optional<std::string> content;
  RuleSpec rules;
};
struct AddVerCmd {
  std::string release, key, version;
  std::optional<std::string> content;
};
struct CloneCmd {
  std::string key, release, version, license;
  std::optional<std::string> content;
};
struct DeriveCmd {
  std::string symbol, key, component, license, version, upstream, pinned;
  std::optional<std::string> content;
  RuleSpec rules;
};
struct IssueCmd {
  std::string symbol, key, release, lo, hi;
  std::uint64_t bounty = 0;
  std::optional<std::string> text;
};
struct ResolveCmd {
  std::string key, issue, resolver;
};
struct ProposeCmd {
  std::string key, upstream, derivative;
  Verdict verdict = Verdict::Deny;
  std::uint64_t window = 1;
};
struct VoteCmd {
  std::string key;
  std::uint64_t proposal_id = 0;
  bool yea = true;
};
struct ForwardCmd {
  std::string symbol, key, destination;
  // Key names, or a minimum attached-token amount.
  std::variant<std::vector<std::string>, std::uint64_t> condition;
};
struct TickCmd {
  std::uint64_t ticks = 0;
};

using CommandBody = std::variant<KeyCmd, ReleaseCmd, AddVerCmd, CloneCmd, DeriveCmd, IssueCmd,
                                 ResolveCmd, ProposeCmd, VoteCmd, ForwardCmd, TickCmd>;

struct Command {
  std::size_t line = 0;
  std::uint32_t node = 0;
  // Send through this forwarding contract instead of the direct target.
  std::optional<std::string> via;
  std::uint64_t attach = 0;
  CommandBody body;
};

struct ScenarioFile {
  ScenarioHeader header;
  std::vector<Command> commands;
};

// Validates the whole file before returning. Throws ScenarioParseError.
ScenarioFile parse_scenario(std::string_view text);

// METAMAINT_MATRIX names a fixture file when set; otherwise the built-in one.
std::shared_ptr<const CompatibilityMatrix> matrix_from_environment();

enum class QueryKind { Downstream, Outdated, Impact, Issues, Graph, Chain, Digest };

struct QuerySpec {
  QueryKind kind = QueryKind::Digest;
  std::vector<std::string> args;

  // Throws Error(UnknownQuery) for an unknown kind or wrong arity.
  static QuerySpec parse(std::string_view kind, std::vector<std::string> args);
};

struct SymbolBinding {
  enum class Kind { Account, Release, Issue, Forwarding } kind = Kind::Account;
  Digest id;
  // Releases only.
  std::optional<Address> versioning;
};

class Simulation {
 public:
  // Compiles the commands into signed transactions, runs the network and
  // checks that every node converged on the same chain. Throws Error.
  static Simulation run(const ScenarioFile& scenario, std::optional<std::uint64_t> seed_override,
                        std::shared_ptr<const CompatibilityMatrix> matrix);

  const LedgerState& state() const { return nodes_.front(); }
  const std::vector<LedgerState>& nodes() const noexcept { return nodes_; }
  const std::map<std::string, SymbolBinding>& symbols() const noexcept { return symbols_; }
  const CompatibilityMatrix& matrix() const { return *matrix_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t ticks() const noexcept { return ticks_; }

  // Resolves a symbol or a 64-hex-digit address.
  Address resolve_address(std::string_view name) const;

  // Writes chain.dump, receipts.log, graph.dump, issues.dump,
  // proposals.dump, symbols.dump and state_digest, plus the scenario text,
  // matrix and seed needed to reload the run.
  void write_outputs(const std::filesystem::path& out_dir, std::string_view scenario_text) const;

  std::string query(const QuerySpec& spec) const;

  // Replays the run stored in `out_dir` and checks it against the stored
  // digest. Throws Error(MissingDump) when files are absent or stale.
  static Simulation load(const std::filesystem::path& out_dir);

 private:
  std::vector<LedgerState> nodes_;
  std::map<std::string, SymbolBinding> symbols_;
  std::shared_ptr<const CompatibilityMatrix> matrix_;
  std::uint64_t seed_ = 0;
  std::uint64_t ticks_ = 0;
};

std::string issue_dump(const WorldState& world);
std::string proposal_dump(const WorldState& world);

}  // namespace metamaint
