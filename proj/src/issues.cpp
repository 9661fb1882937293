// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include "metamaint/issues.hpp"

#include <algorithm>
#include <tuple>

namespace metamaint {

std::string_view status_name(IssueStatus s) noexcept {
  return s == IssueStatus::Open ? "Open" : "Resolved";
}

CreationResult report_issue(WorldState& world, const ExecContext& ctx, const AccountId& sender,
                            std::uint64_t nonce, const IssueInit& init) {
  auto fail = [](ErrorCode code, std::string detail = {}) {
    return CreationResult{std::nullopt, ExecutionReceipt::failure(code, std::move(detail))};
  };

  if (!world.find_as<ReleaseContractState>(init.target_release)) return fail(ErrorCode::UnknownRelease);

  Version lo, hi;
  try {
    lo = Version::parse(init.affected_lo);
    hi = Version::parse(init.affected_hi);
  } catch (const Error& e) {
    return fail(ErrorCode::SchemaError, e.what());
  }
  if (compare_versions(lo, hi) == Ordering::Greater) return fail(ErrorCode::BadRange);
  if (world.balance_of(sender) < init.bounty) return fail(ErrorCode::InsufficientFunds);

  const auto addr = contract_address(sender, nonce, ContractKind::Issue);
  if (world.find(addr)) return fail(ErrorCode::SchemaError, "address already in use");

  IssueContractState issue;
  issue.reporter = sender;
  issue.target_release = init.target_release;
  issue.affected_lo = lo;
  issue.affected_hi = hi;
  issue.description_digest = init.description_digest;
  issue.bounty = init.bounty;

  if (init.bounty > 0) world.balances[sender] -= init.bounty;
  world.contracts.emplace(addr, ContractRecord{ctx.height, ctx.tx_index, std::move(issue)});

  Encoder enc;
  enc.id(addr).id(init.target_release).u64(init.bounty);
  return {addr, {ErrorCode::Ok, {}, {Event{std::string(event::kIssueReported), enc.take()}}}};
}

ExecutionReceipt resolve_issue(WorldState& world, const ExecContext&, const AccountId& sender,
                               const Address& issue_addr, const ResolveArgs& args) {
  auto* issue = world.find_as<IssueContractState>(issue_addr);
  if (!issue) return ExecutionReceipt::failure(ErrorCode::UnknownContract);
  if (issue->status == IssueStatus::Resolved) return ExecutionReceipt::failure(ErrorCode::AlreadyResolved);

  const auto who = principal_of(world, sender);
  const auto* target = world.find_as<ReleaseContractState>(issue->target_release);
  const bool is_owner = target && target->owner == who;
  if (!is_owner && who != issue->reporter) return ExecutionReceipt::failure(ErrorCode::NotAuthorized);

  const auto amount = issue->bounty;
  issue->status = IssueStatus::Resolved;
  issue->resolver = args.resolver;
  issue->bounty = 0;
  if (amount > 0) world.balances[args.resolver] += amount;

  Encoder enc;
  enc.id(issue_addr).id(args.resolver).u64(amount);
  return {ErrorCode::Ok, {}, {Event{std::string(event::kBountyPaid), enc.take()}}};
}

bool issue_matches(const IssueContractState& issue, const IssueFilter& filter) {
  if (filter.release && issue.target_release != *filter.release) return false;
  if (filter.status && issue.status != *filter.status) return false;
  if (filter.version) {
    if (compare_versions(issue.affected_lo, *filter.version) == Ordering::Greater) return false;
    if (compare_versions(*filter.version, issue.affected_hi) == Ordering::Greater) return false;
  }
  return true;
}

std::vector<std::pair<Address, IssueContractState>> list_issues(const WorldState& world,
                                                                const IssueFilter& filter) {
  std::vector<std::tuple<std::uint64_t, Address, const IssueContractState*>> hits;
  for (const auto& [addr, rec] : world.contracts) {
    const auto* issue = std::get_if<IssueContractState>(&rec.body);
    if (issue && issue_matches(*issue, filter)) hits.emplace_back(rec.created_height, addr, issue);
  }
  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  std::vector<std::pair<Address, IssueContractState>> out;
  out.reserve(hits.size());
  for (const auto& [height, addr, issue] : hits) out.emplace_back(addr, *issue);
  return out;
}

}  // namespace metamaint
