// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include "metamaint/contracts.hpp"

#include "metamaint/governance.hpp"
#include "metamaint/issues.hpp"
#include "metamaint/release_protocol.hpp"

namespace metamaint {

namespace {

inline constexpr std::string_view kForwarded = "Forwarded";
inline constexpr std::string_view kDropped = "Dropped";
inline constexpr std::string_view kForwardingCreated = "ForwardingCreated";

template <class Args>
std::optional<Args> decode_args(const ContractMessage& msg) {
  try {
    return Args::decode(msg.args);
  } catch (const Error&) {
    return std::nullopt;
  }
}

ContractMessage make_message(std::string_view sel, Encoder& enc) {
  return ContractMessage{std::string(sel), enc.take(), 0};
}

ExecutionReceipt dispatch_impl(WorldState& world, const ExecContext& ctx, const AccountId& sender,
                               const Address& target, const ContractMessage& msg, unsigned depth);

template <class Args, class Handler>
ExecutionReceipt with_args(const ContractMessage& msg, Handler&& handler) {
  auto args = decode_args<Args>(msg);
  if (!args) return ExecutionReceipt::failure(ErrorCode::SchemaError, "malformed arguments");
  return handler(*args);
}

ExecutionReceipt dispatch_governance(WorldState& world, const ExecContext& ctx,
                                     const AccountId& sender, const ContractMessage& msg) {
  if (msg.selector == selector::kPropose) {
    return with_args<ProposeArgs>(msg, [&](const auto& a) { return propose_change(world, ctx, sender, a); });
  }
  if (msg.selector == selector::kVote) {
    return with_args<VoteArgs>(msg, [&](const auto& a) { return cast_vote(world, ctx, sender, a); });
  }
  return ExecutionReceipt::failure(ErrorCode::UnknownSelector, msg.selector);
}

ExecutionReceipt dispatch_impl(WorldState& world, const ExecContext& ctx, const AccountId& sender,
                               const Address& target, const ContractMessage& msg, unsigned depth) {
  const auto* rec = world.find(target);
  if (!rec && target != governance_address()) return ExecutionReceipt::failure(ErrorCode::UnknownContract);

  if (rec && rec->kind() == ContractKind::Forwarding) {
    return forward_if(world, ctx, sender, target, msg, depth);
  }
  if (msg.attached > 0) {
    return ExecutionReceipt::failure(ErrorCode::SchemaError, "only forwarding contracts accept tokens");
  }
  if (!rec) return dispatch_governance(world, ctx, sender, msg);

  switch (rec->kind()) {
    case ContractKind::Versioning:
      if (msg.selector == selector::kAddVersion) {
        return with_args<AddVersionArgs>(
            msg, [&](const auto& a) { return handle_add_version(world, ctx, sender, target, a); });
      }
      if (msg.selector == selector::kCloneNotice) {
        return with_args<CloneNoticeArgs>(
            msg, [&](const auto& a) { return handle_clone_notice(world, ctx, sender, target, a); });
      }
      break;
    case ContractKind::Issue:
      if (msg.selector == selector::kResolve) {
        return with_args<ResolveArgs>(
            msg, [&](const auto& a) { return resolve_issue(world, ctx, sender, target, a); });
      }
      break;
    case ContractKind::Governance:
      return dispatch_governance(world, ctx, sender, msg);
    case ContractKind::Release:
    case ContractKind::Forwarding:
      break;
  }
  return ExecutionReceipt::failure(ErrorCode::UnknownSelector, msg.selector);
}

std::optional<UpstreamRef> decode_optional_upstream(Decoder& dec) {
  auto n = dec.count();
  if (n > 1) throw Error(ErrorCode::SchemaError, "bad optional");
  if (n == 0) return std::nullopt;
  return UpstreamRef::decode(dec);
}

}  // namespace

std::string ExecutionReceipt::status_text() const {
  std::string out(error_name(status));
  if (!detail.empty()) out += "(" + detail + ")";
  return out;
}

// ---- creation payloads ----------------------------------------------------

ContractKind ContractCreation::kind() const noexcept {
  switch (init.index()) {
    case 0: return ContractKind::Release;
    case 1: return ContractKind::Issue;
    default: return ContractKind::Forwarding;
  }
}

Bytes ContractCreation::encode() const {
  Encoder enc;
  enc.u64(static_cast<std::uint64_t>(kind()));
  if (const auto* r = std::get_if<ReleaseInit>(&init)) {
    enc.str(r->component_name).str(r->license);
    r->rules.encode(enc);
    enc.str(r->initial_version).digest(r->content_digest);
    enc.count(r->upstream ? 1 : 0);
    if (r->upstream) r->upstream->encode(enc);
  } else if (const auto* i = std::get_if<IssueInit>(&init)) {
    enc.id(i->target_release).str(i->affected_lo).str(i->affected_hi);
    enc.digest(i->description_digest).u64(i->bounty);
  } else {
    const auto& f = std::get<ForwardingInit>(init);
    enc.id(f.destination);
    encode_condition(enc, f.condition);
  }
  return enc.take();
}

ContractCreation ContractCreation::decode(std::span<const std::uint8_t> payload) {
  Decoder dec(payload);
  ContractCreation out;
  switch (static_cast<ContractKind>(dec.u64())) {
    case ContractKind::Release: {
      ReleaseInit r;
      r.component_name = dec.str();
      r.license = dec.str();
      r.rules = RuleSet::decode(dec);
      r.initial_version = dec.str();
      r.content_digest = dec.digest();
      r.upstream = decode_optional_upstream(dec);
      out.init = std::move(r);
      break;
    }
    case ContractKind::Issue: {
      IssueInit i;
      i.target_release = dec.id<AddressTag>();
      i.affected_lo = dec.str();
      i.affected_hi = dec.str();
      i.description_digest = dec.digest();
      i.bounty = dec.u64();
      out.init = std::move(i);
      break;
    }
    case ContractKind::Forwarding: {
      ForwardingInit f;
      f.destination = dec.id<AddressTag>();
      f.condition = decode_condition(dec);
      out.init = std::move(f);
      break;
    }
    default:
      // Versioning contracts only come into being with their release.
      throw Error(ErrorCode::SchemaError, "contract kind cannot be created directly");
  }
  dec.expect_done();
  return out;
}

// ---- message payloads -----------------------------------------------------

Bytes ContractMessage::encode() const {
  Encoder enc;
  enc.str(selector).bytes(args).u64(attached);
  return enc.take();
}

ContractMessage ContractMessage::decode(std::span<const std::uint8_t> payload) {
  Decoder dec(payload);
  ContractMessage m;
  m.selector = dec.str();
  m.args = dec.bytes();
  m.attached = dec.u64();
  dec.expect_done();
  return m;
}

ContractMessage AddVersionArgs::to_message() const {
  Encoder enc;
  enc.str(version).digest(content_digest);
  return make_message(selector::kAddVersion, enc);
}

AddVersionArgs AddVersionArgs::decode(std::span<const std::uint8_t> args) {
  Decoder dec(args);
  AddVersionArgs a;
  a.version = dec.str();
  a.content_digest = dec.digest();
  dec.expect_done();
  return a;
}

ContractMessage CloneNoticeArgs::to_message() const {
  Encoder enc;
  enc.str(source_version).str(declared_license).bytes(cloned_digest);
  return make_message(selector::kCloneNotice, enc);
}

CloneNoticeArgs CloneNoticeArgs::decode(std::span<const std::uint8_t> args) {
  Decoder dec(args);
  CloneNoticeArgs a;
  a.source_version = dec.str();
  a.declared_license = dec.str();
  a.cloned_digest = dec.bytes();
  dec.expect_done();
  return a;
}

ContractMessage ResolveArgs::to_message() const {
  Encoder enc;
  enc.id(resolver);
  return make_message(selector::kResolve, enc);
}

ResolveArgs ResolveArgs::decode(std::span<const std::uint8_t> args) {
  Decoder dec(args);
  ResolveArgs a{dec.id<AccountTag>()};
  dec.expect_done();
  return a;
}

ContractMessage ProposeArgs::to_message() const {
  Encoder enc;
  enc.str(upstream).str(derivative).u64(static_cast<std::uint64_t>(verdict)).u64(window);
  return make_message(selector::kPropose, enc);
}

ProposeArgs ProposeArgs::decode(std::span<const std::uint8_t> args) {
  Decoder dec(args);
  ProposeArgs a;
  a.upstream = dec.str();
  a.derivative = dec.str();
  auto v = dec.u64();
  if (v > 1) throw Error(ErrorCode::SchemaError, "bad verdict");
  a.verdict = static_cast<Verdict>(v);
  a.window = dec.u64();
  dec.expect_done();
  return a;
}

ContractMessage VoteArgs::to_message() const {
  Encoder enc;
  enc.u64(proposal_id).boolean(yea);
  return make_message(selector::kVote, enc);
}

VoteArgs VoteArgs::decode(std::span<const std::uint8_t> args) {
  Decoder dec(args);
  VoteArgs a;
  a.proposal_id = dec.u64();
  a.yea = dec.boolean();
  dec.expect_done();
  return a;
}

// ---- runtime --------------------------------------------------------------

Address contract_address(const AccountId& creator, std::uint64_t nonce, ContractKind kind) {
  Encoder enc;
  enc.id(creator).u64(nonce).u64(static_cast<std::uint64_t>(kind));
  return Address{sha256(enc.data())};
}

const Address& governance_address() {
  static const Address addr{sha256(std::string_view("metamaint/governance"))};
  return addr;
}

AccountId principal_of(const WorldState& world, const AccountId& sender) {
  if (const auto* fwd = world.find_as<ForwardingContractState>(Address{sender.digest})) {
    return fwd->owner;
  }
  return sender;
}

CreationResult create_contract(WorldState& world, const ExecContext& ctx, const AccountId& sender,
                               std::uint64_t nonce, const ContractCreation& creation) {
  if (const auto* r = std::get_if<ReleaseInit>(&creation.init)) {
    return handle_create_release(world, ctx, sender, nonce, *r);
  }
  if (const auto* i = std::get_if<IssueInit>(&creation.init)) {
    return report_issue(world, ctx, sender, nonce, *i);
  }

  const auto& f = std::get<ForwardingInit>(creation.init);
  if (!world.find(f.destination) && f.destination != governance_address()) {
    return {std::nullopt, ExecutionReceipt::failure(ErrorCode::UnknownDestination)};
  }
  const auto addr = contract_address(sender, nonce, ContractKind::Forwarding);
  if (world.find(addr)) {
    return {std::nullopt, ExecutionReceipt::failure(ErrorCode::SchemaError, "address already in use")};
  }
  world.contracts.emplace(addr, ContractRecord{ctx.height, ctx.tx_index,
                                               ForwardingContractState{sender, f.destination, f.condition}});
  Encoder enc;
  enc.id(addr).id(f.destination);
  return {addr, {ErrorCode::Ok, {}, {Event{std::string(kForwardingCreated), enc.take()}}}};
}

ExecutionReceipt dispatch_message(WorldState& world, const ExecContext& ctx,
                                  const AccountId& sender, const Address& target,
                                  const ContractMessage& msg) {
  return dispatch_impl(world, ctx, sender, target, msg, 0);
}

ExecutionReceipt forward_if(WorldState& world, const ExecContext& ctx, const AccountId& sender,
                            const Address& forwarder, const ContractMessage& msg, unsigned depth) {
  const auto* fwd = world.find_as<ForwardingContractState>(forwarder);
  if (!fwd) return ExecutionReceipt::failure(ErrorCode::UnknownContract);
  if (depth >= 1) return ExecutionReceipt::failure(ErrorCode::DepthExceeded);
  if (world.balance_of(sender) < msg.attached) return ExecutionReceipt::failure(ErrorCode::InsufficientFunds);

  bool pass = false;
  if (const auto* allow = std::get_if<AllowListCondition>(&fwd->condition)) {
    pass = std::find(allow->allowed.begin(), allow->allowed.end(), sender) != allow->allowed.end();
  } else {
    pass = msg.attached >= std::get<MinAttachedTokensCondition>(fwd->condition).minimum;
  }

  if (!pass) {
    Encoder enc;
    enc.id(forwarder).id(sender);
    return {ErrorCode::Ok, {}, {Event{std::string(kDropped), enc.take()}}};
  }

  // The destination sees the message without tokens and with the forwarder
  // as sender. Attached tokens pay the forwarding contract's owner, but only
  // when the forwarded call succeeds. Whatever the destination commits on
  // failure (a rejected clone notice is still logged) stays, exactly as with
  // direct dispatch.
  ContractMessage inner = msg;
  inner.attached = 0;
  const auto destination = fwd->destination;
  const auto owner = fwd->owner;
  auto receipt = dispatch_impl(world, ctx, AccountId{forwarder.digest}, destination, inner, depth + 1);
  if (!receipt.ok()) return receipt;

  if (msg.attached > 0) {
    world.balances[sender] -= msg.attached;
    world.balances[owner] += msg.attached;
  }
  Encoder enc;
  enc.id(forwarder).id(destination).u64(msg.attached);
  receipt.events.insert(receipt.events.begin(), Event{std::string(kForwarded), enc.take()});
  return receipt;
}

const ContractBody& read_state(const WorldState& world, const Address& target) {
  const auto* rec = world.find(target);
  if (!rec) throw Error(ErrorCode::UnknownContract, "no contract at " + target.hex());
  return rec->body;
}

CompatibilityMatrix effective_matrix(const WorldState& world, const CompatibilityMatrix& base) {
  CompatibilityMatrix m = base;
  if (const auto* gov = world.find_as<GovernanceState>(governance_address())) {
    for (const auto& [key, verdict] : gov->matrix_overrides) m.set(key.first, key.second, verdict);
  }
  return m;
}

}  // namespace metamaint
