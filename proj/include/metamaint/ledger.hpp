// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Simulated public chain: accounts, MAC-signed transactions, round-robin
// proof-of-authority blocks and a fixed-delay gossip network whose nodes all
// execute the same contract state machines.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metamaint/codec.hpp"
#include "metamaint/contracts.hpp"
#include "metamaint/state.hpp"

namespace metamaint {

inline constexpr std::uint64_t kBlockInterval = 10;

struct AccountKey {
  Bytes secret;
  AccountId account_id;

  static AccountKey from_secret(std::string_view secret);
};

// Stand-in for public-key infrastructure: verifiers look up the secret of
// the claimed sender to recompute the MAC.
class Keyring {
 public:
  void add(const AccountKey& key) { secrets_[key.account_id] = key.secret; }
  const Bytes* find(const AccountId& id) const;

 private:
  std::map<AccountId, Bytes> secrets_;
};

struct UnsignedTransaction {
  AccountId sender;
  std::uint64_t nonce = 0;
  // nullopt is CREATE.
  std::optional<Address> target;
  Bytes payload;

  Bytes encode() const;
};

struct Transaction {
  UnsignedTransaction body;
  Digest signature;

  Bytes encode() const;
  Digest hash() const { return sha256(encode()); }
};

struct Block {
  std::uint64_t height = 0;
  Digest parent_hash;
  AccountId proposer;
  std::vector<Transaction> transactions;
  Digest block_hash;

  Digest compute_hash() const;
};

struct GenesisConfig {
  std::vector<AccountId> validators;
  std::map<AccountId, std::uint64_t> balances;
  std::shared_ptr<const Keyring> keyring;
  std::shared_ptr<const CompatibilityMatrix> matrix;
};

struct ReceiptRecord {
  std::uint64_t height = 0;
  // Block position; tallies at the end of a block use the block's tx count.
  std::uint64_t tx_index = 0;
  // Target contract; for creations the created address when one was made.
  std::optional<Address> target;
  std::string selector;
  ExecutionReceipt receipt;
};

class LedgerState {
 public:
  // Throws Error(ConfigError) on an empty validator set or missing keyring.
  static LedgerState genesis(GenesisConfig config);

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const Block& tip() const { return blocks_.back(); }
  const WorldState& world() const noexcept { return world_; }
  const std::map<AccountId, std::uint64_t>& nonces() const noexcept { return nonces_; }
  const std::vector<ReceiptRecord>& receipts() const noexcept { return receipts_; }
  const GenesisConfig& config() const noexcept { return *config_; }

  std::uint64_t next_nonce(const AccountId& account) const;
  std::uint64_t genesis_supply() const noexcept { return supply_; }
  const AccountId& scheduled_proposer(std::uint64_t height) const;

 private:
  friend LedgerState apply_block(const LedgerState& state, const Block& block);

  std::shared_ptr<const GenesisConfig> config_;
  std::vector<Block> blocks_;
  WorldState world_;
  std::map<AccountId, std::uint64_t> nonces_;
  std::vector<ReceiptRecord> receipts_;
  std::uint64_t supply_ = 0;
};

// Throws Error(SenderMismatch).
Transaction sign_transaction(const AccountKey& key, UnsignedTransaction unsigned_tx);

// Ok, InvalidSignature or BadNonce.
ErrorCode verify_transaction(const LedgerState& state, const Transaction& tx);

// Fills a block with the mempool transactions that verify in order against
// the running nonces; the rest are left out. Throws Error(NotProposer).
Block propose_block(const LedgerState& state, std::span<const Transaction> mempool,
                    std::uint64_t height, const AccountId& caller);

// Throws Error(BadParent | BadProposer | InvalidTxInBlock).
LedgerState apply_block(const LedgerState& state, const Block& block);

// H(contracts sorted by address, balances sorted by account, nonces sorted
// by account).
Digest state_digest(const LedgerState& state);
Digest state_digest(const WorldState& world, const std::map<AccountId, std::uint64_t>& nonces);

// ---- network --------------------------------------------------------------

struct NodeConfig {
  std::uint32_t node_id = 0;
  std::vector<AccountId> validators;
  std::uint64_t gossip_delay = 0;
  std::map<AccountId, std::uint64_t> genesis_balances;
};

struct Injection {
  std::uint64_t tick = 0;
  std::uint32_t node = 0;
  Transaction tx;
};

// Shared by every node of a run: stand-in PKI and the license fixture.
struct NetworkEnvironment {
  std::shared_ptr<const Keyring> keyring;
  std::shared_ptr<const CompatibilityMatrix> matrix;
};

// Full-mesh network. Validator i is hosted on node i mod |nodes|; at every
// block interval the node hosting the validator scheduled for tip + 1
// proposes. Transactions and blocks reach the other nodes after
// gossip_delay ticks; the seed orders same-tick deliveries. No block is
// proposed so late that it cannot reach every node by `ticks`.
// Throws Error(ScenarioOutOfRange) for injections past `ticks` or to an
// unknown node, Error(ConfigError) for inconsistent node configs.
std::vector<LedgerState> run_network(std::span<const NodeConfig> nodes,
                                     std::span<const Injection> scenario, std::uint64_t ticks,
                                     std::uint64_t seed, const NetworkEnvironment& env);

// Ticks a run needs after its last injection for every transaction to be
// included and every block to reach every node.
std::uint64_t settle_ticks(std::size_t node_count, std::uint64_t gossip_delay);

std::string chain_dump(const LedgerState& state);
std::string receipt_log(const LedgerState& state);

}  // namespace metamaint
