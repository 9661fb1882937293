// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include "metamaint/governance.hpp"

namespace metamaint {

namespace {

Event proposal_event(std::string_view name, const Proposal& p) {
  Encoder enc;
  enc.u64(p.id).str(p.change.upstream.name).str(p.change.derivative.name);
  enc.u64(static_cast<std::uint64_t>(p.change.verdict)).u64(p.yea()).u64(p.nay());
  return {std::string(name), enc.take()};
}

}  // namespace

std::string_view status_name(ProposalStatus s) noexcept {
  switch (s) {
    case ProposalStatus::Voting: return "Voting";
    case ProposalStatus::Applied: return "Applied";
    case ProposalStatus::Rejected: return "Rejected";
  }
  return "Unknown";
}

bool is_member(const WorldState& world, const AccountId& account) {
  for (const auto& [addr, rec] : world.contracts) {
    const auto* release = std::get_if<ReleaseContractState>(&rec.body);
    if (release && release->owner == account) return true;
  }
  return false;
}

ExecutionReceipt propose_change(WorldState& world, const ExecContext& ctx, const AccountId& sender,
                                const ProposeArgs& args) {
  const auto who = principal_of(world, sender);
  if (!is_member(world, who)) return ExecutionReceipt::failure(ErrorCode::NotMember);
  if (args.window == 0) return ExecutionReceipt::failure(ErrorCode::SchemaError, "window must be >= 1");
  if (!ctx.base_matrix->knows(args.upstream)) return ExecutionReceipt::failure(ErrorCode::UnknownLicense, args.upstream);
  if (!ctx.base_matrix->knows(args.derivative)) {
    return ExecutionReceipt::failure(ErrorCode::UnknownLicense, args.derivative);
  }

  auto [it, inserted] = world.contracts.try_emplace(governance_address(),
                                                     ContractRecord{ctx.height, ctx.tx_index, GovernanceState{}});
  auto& gov = std::get<GovernanceState>(it->second.body);

  Proposal p;
  p.id = gov.proposals.size();
  p.change = MatrixChange{LicenseId{args.upstream}, LicenseId{args.derivative}, args.verdict};
  p.proposer = who;
  p.proposed_at = ctx.height;
  p.window = args.window;
  gov.proposals.push_back(p);
  return {ErrorCode::Ok, {}, {proposal_event(event::kProposalCreated, p)}};
}

ExecutionReceipt cast_vote(WorldState& world, const ExecContext& ctx, const AccountId& sender,
                           const VoteArgs& args) {
  auto* gov = world.find_as<GovernanceState>(governance_address());
  if (!gov || args.proposal_id >= gov->proposals.size()) {
    return ExecutionReceipt::failure(ErrorCode::UnknownProposal);
  }
  const auto who = principal_of(world, sender);
  if (!is_member(world, who)) return ExecutionReceipt::failure(ErrorCode::NotMember);

  auto& p = gov->proposals[args.proposal_id];
  if (p.status != ProposalStatus::Voting || ctx.height >= p.proposed_at + p.window) {
    return ExecutionReceipt::failure(ErrorCode::WindowClosed);
  }
  p.votes[who] = args.yea;

  Encoder enc;
  enc.u64(p.id).id(who).boolean(args.yea);
  return {ErrorCode::Ok, {}, {Event{std::string(event::kVoteCast), enc.take()}}};
}

ExecutionReceipt tally_and_apply(WorldState& world, std::uint64_t proposal_id) {
  auto* gov = world.find_as<GovernanceState>(governance_address());
  if (!gov || proposal_id >= gov->proposals.size()) {
    return ExecutionReceipt::failure(ErrorCode::UnknownProposal);
  }
  auto& p = gov->proposals[proposal_id];
  if (p.status != ProposalStatus::Voting) return ExecutionReceipt::failure(ErrorCode::WindowClosed);

  const auto yea = p.yea();
  const auto nay = p.nay();
  if (yea > nay && yea + nay >= kQuorum) {
    p.status = ProposalStatus::Applied;
    gov->matrix_overrides[{p.change.upstream, p.change.derivative}] = p.change.verdict;
    return {ErrorCode::Ok, {}, {proposal_event(event::kProposalApplied, p)}};
  }
  p.status = ProposalStatus::Rejected;
  return {ErrorCode::Ok, {}, {proposal_event(event::kProposalRejected, p)}};
}

std::vector<std::pair<std::uint64_t, ExecutionReceipt>> tally_due(WorldState& world,
                                                                  std::uint64_t height) {
  std::vector<std::pair<std::uint64_t, ExecutionReceipt>> out;
  auto* gov = world.find_as<GovernanceState>(governance_address());
  if (!gov) return out;
  for (std::uint64_t id = 0; id < gov->proposals.size(); ++id) {
    const auto& p = gov->proposals[id];
    if (p.status == ProposalStatus::Voting && height >= p.proposed_at + p.window) {
      out.emplace_back(id, tally_and_apply(world, id));
      gov = world.find_as<GovernanceState>(governance_address());
    }
  }
  return out;
}

}  // namespace metamaint
