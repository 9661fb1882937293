// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include "metamaint/ledger.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <variant>

#include "metamaint/governance.hpp"

namespace metamaint {

namespace {

constexpr std::string_view kTallySelector = "Tally";

void encode_transactions(Encoder& enc, const std::vector<Transaction>& txs) {
  enc.count(txs.size());
  for (const auto& tx : txs) enc.raw(tx.encode());
}

Digest mac(const Bytes& secret, const Bytes& message) {
  Bytes buf;
  buf.reserve(secret.size() + message.size());
  buf.insert(buf.end(), secret.begin(), secret.end());
  buf.insert(buf.end(), message.begin(), message.end());
  return sha256(buf);
}

std::string creation_selector(const std::optional<ContractCreation>& creation) {
  if (!creation) return "Create";
  return "Create" + std::string(kind_name(creation->kind()));
}

}  // namespace

AccountKey AccountKey::from_secret(std::string_view secret) {
  AccountKey key;
  key.secret.assign(secret.begin(), secret.end());
  key.account_id = AccountId{sha256(key.secret)};
  return key;
}

const Bytes* Keyring::find(const AccountId& id) const {
  auto it = secrets_.find(id);
  return it == secrets_.end() ? nullptr : &it->second;
}

Bytes UnsignedTransaction::encode() const {
  Encoder enc;
  enc.id(sender).u64(nonce);
  if (target) {
    enc.u64(1).id(*target);
  } else {
    enc.u64(0);
  }
  enc.bytes(payload);
  return enc.take();
}

Bytes Transaction::encode() const {
  Encoder enc;
  enc.raw(body.encode()).digest(signature);
  return enc.take();
}

Digest Block::compute_hash() const {
  Encoder enc;
  enc.u64(height).digest(parent_hash).id(proposer);
  encode_transactions(enc, transactions);
  return sha256(enc.data());
}

LedgerState LedgerState::genesis(GenesisConfig config) {
  if (config.validators.empty()) throw Error(ErrorCode::ConfigError, "validator set is empty");
  if (!config.keyring) throw Error(ErrorCode::ConfigError, "keyring missing");
  if (!config.matrix) config.matrix = std::make_shared<CompatibilityMatrix>(CompatibilityMatrix::default_fixture());

  LedgerState s;
  s.world_.balances = config.balances;
  for (const auto& [account, amount] : config.balances) s.supply_ += amount;

  Block g;
  g.height = 0;
  g.proposer = config.validators.front();
  g.block_hash = g.compute_hash();
  s.blocks_.push_back(std::move(g));
  s.config_ = std::make_shared<const GenesisConfig>(std::move(config));
  return s;
}

std::uint64_t LedgerState::next_nonce(const AccountId& account) const {
  auto it = nonces_.find(account);
  return it == nonces_.end() ? 0 : it->second;
}

const AccountId& LedgerState::scheduled_proposer(std::uint64_t height) const {
  const auto& v = config_->validators;
  return v[height % v.size()];
}

Transaction sign_transaction(const AccountKey& key, UnsignedTransaction unsigned_tx) {
  if (unsigned_tx.sender != key.account_id) {
    throw Error(ErrorCode::SenderMismatch, "transaction sender does not match signing key");
  }
  Transaction tx;
  tx.signature = mac(key.secret, unsigned_tx.encode());
  tx.body = std::move(unsigned_tx);
  return tx;
}

ErrorCode verify_transaction(const LedgerState& state, const Transaction& tx) {
  const auto* secret = state.config().keyring->find(tx.body.sender);
  if (!secret || mac(*secret, tx.body.encode()) != tx.signature) return ErrorCode::InvalidSignature;
  if (tx.body.nonce != state.next_nonce(tx.body.sender)) return ErrorCode::BadNonce;
  return ErrorCode::Ok;
}

Block propose_block(const LedgerState& state, std::span<const Transaction> mempool,
                    std::uint64_t height, const AccountId& caller) {
  if (state.scheduled_proposer(height) != caller) {
    throw Error(ErrorCode::NotProposer, "account is not scheduled for height " + std::to_string(height));
  }
  const auto* keyring = state.config().keyring.get();
  std::map<AccountId, std::uint64_t> nonces;
  auto expected = [&](const AccountId& a) {
    auto it = nonces.find(a);
    return it != nonces.end() ? it->second : state.next_nonce(a);
  };

  Block block;
  block.height = height;
  block.parent_hash = state.tip().block_hash;
  block.proposer = caller;

  // Later passes pick up transactions whose predecessor (same sender)
  // appeared further down the mempool.
  std::vector<bool> taken(mempool.size(), false);
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < mempool.size(); ++i) {
      if (taken[i]) continue;
      const auto& tx = mempool[i];
      const auto* secret = keyring->find(tx.body.sender);
      if (!secret || mac(*secret, tx.body.encode()) != tx.signature) continue;
      if (tx.body.nonce != expected(tx.body.sender)) continue;
      nonces[tx.body.sender] = tx.body.nonce + 1;
      block.transactions.push_back(tx);
      taken[i] = true;
      progress = true;
    }
  }
  block.block_hash = block.compute_hash();
  return block;
}

LedgerState apply_block(const LedgerState& state, const Block& block) {
  const auto& tip = state.tip();
  if (block.height != tip.height + 1 || block.parent_hash != tip.block_hash ||
      block.block_hash != block.compute_hash()) {
    throw Error(ErrorCode::BadParent, "block " + std::to_string(block.height) + " does not extend the tip");
  }
  if (block.proposer != state.scheduled_proposer(block.height)) {
    throw Error(ErrorCode::BadProposer, "block " + std::to_string(block.height) + " has the wrong proposer");
  }

  LedgerState next = state;
  next.blocks_.push_back(block);
  const auto* matrix = state.config_->matrix.get();

  for (std::size_t i = 0; i < block.transactions.size(); ++i) {
    const auto& tx = block.transactions[i];
    if (auto code = verify_transaction(next, tx); code != ErrorCode::Ok) {
      throw Error(ErrorCode::InvalidTxInBlock,
                  "transaction " + std::to_string(i) + ": " + std::string(error_name(code)));
    }
    next.nonces_[tx.body.sender] = tx.body.nonce + 1;

    ExecContext ctx{block.height, i, matrix};
    ReceiptRecord rec{block.height, i, tx.body.target, {}, {}};
    if (!tx.body.target) {
      std::optional<ContractCreation> creation;
      try {
        creation = ContractCreation::decode(tx.body.payload);
      } catch (const Error& e) {
        rec.receipt = ExecutionReceipt::failure(ErrorCode::SchemaError, e.what());
      }
      rec.selector = creation_selector(creation);
      if (creation) {
        auto result = create_contract(next.world_, ctx, tx.body.sender, tx.body.nonce, *creation);
        rec.target = result.address;
        rec.receipt = std::move(result.receipt);
      }
    } else {
      try {
        auto msg = ContractMessage::decode(tx.body.payload);
        rec.selector = msg.selector;
        rec.receipt = dispatch_message(next.world_, ctx, tx.body.sender, *tx.body.target, msg);
      } catch (const Error& e) {
        rec.selector = "?";
        rec.receipt = ExecutionReceipt::failure(ErrorCode::SchemaError, e.what());
      }
    }
    next.receipts_.push_back(std::move(rec));
  }

  for (auto& [id, receipt] : tally_due(next.world_, block.height)) {
    next.receipts_.push_back(ReceiptRecord{block.height, block.transactions.size(), governance_address(),
                                           std::string(kTallySelector), std::move(receipt)});
  }
  return next;
}

Digest state_digest(const WorldState& world, const std::map<AccountId, std::uint64_t>& nonces) {
  Encoder enc;
  enc.count(world.contracts.size());
  for (const auto& [addr, rec] : world.contracts) {
    enc.id(addr);
    encode_record(enc, rec);
  }
  enc.count(world.balances.size());
  for (const auto& [account, amount] : world.balances) enc.id(account).u64(amount);
  enc.count(nonces.size());
  for (const auto& [account, nonce] : nonces) enc.id(account).u64(nonce);
  return sha256(enc.data());
}

Digest state_digest(const LedgerState& state) { return state_digest(state.world(), state.nonces()); }

// ---- network --------------------------------------------------------------

namespace {

struct Delivery {
  std::uint32_t node = 0;
  std::variant<Transaction, Block> item;
};

struct Node {
  LedgerState state;
  std::vector<Transaction> mempool;
  std::set<Digest> seen;
  std::map<std::uint64_t, Block> pending_blocks;
};

class Network {
 public:
  Network(std::span<const NodeConfig> configs, std::uint64_t ticks, std::uint64_t seed,
          const NetworkEnvironment& env)
      : ticks_(ticks), rng_(seed) {
    const auto& first = configs.front();
    delay_ = first.gossip_delay;
    validators_ = first.validators;
    GenesisConfig genesis{first.validators, first.genesis_balances, env.keyring, env.matrix};
    auto g = LedgerState::genesis(std::move(genesis));
    for (std::size_t i = 0; i < configs.size(); ++i) nodes_.push_back(Node{g, {}, {}, {}});
  }

  void inject(const Injection& inj, std::uint64_t now) {
    receive_tx(inj.node, inj.tx);
    for (std::uint32_t n = 0; n < nodes_.size(); ++n) {
      if (n != inj.node) schedule(now + delay_, Delivery{n, inj.tx});
    }
  }

  void deliver_due(std::uint64_t now) {
    // With zero delay deliveries may schedule more work for this tick.
    while (true) {
      auto it = queue_.find(now);
      if (it == queue_.end() || it->second.empty()) break;
      auto due = std::move(it->second);
      queue_.erase(it);
      shuffle(due);
      for (auto& d : due) {
        if (auto* tx = std::get_if<Transaction>(&d.item)) {
          receive_tx(d.node, *tx);
        } else {
          receive_block(d.node, std::get<Block>(d.item));
        }
      }
    }
  }

  void propose_if_scheduled(std::uint64_t now) {
    if (now == 0 || now % kBlockInterval != 0 || now + delay_ > ticks_) return;
    for (std::uint32_t n = 0; n < nodes_.size(); ++n) {
      auto& node = nodes_[n];
      const auto height = node.state.tip().height + 1;
      const auto slot = height % validators_.size();
      if (slot % nodes_.size() != n) continue;
      auto block = propose_block(node.state, node.mempool, height, validators_[slot]);
      commit(n, block);
      for (std::uint32_t m = 0; m < nodes_.size(); ++m) {
        if (m != n) schedule(now + delay_, Delivery{m, block});
      }
    }
  }

  std::vector<LedgerState> finish() {
    std::vector<LedgerState> out;
    for (auto& n : nodes_) out.push_back(std::move(n.state));
    return out;
  }

 private:
  void schedule(std::uint64_t at, Delivery d) { queue_[at].push_back(std::move(d)); }

  void shuffle(std::vector<Delivery>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(rng_() % i);
      std::swap(v[i - 1], v[j]);
    }
  }

  void receive_tx(std::uint32_t n, const Transaction& tx) {
    auto& node = nodes_[n];
    if (!node.seen.insert(tx.hash()).second) return;
    if (tx.body.nonce < node.state.next_nonce(tx.body.sender)) return;
    node.mempool.push_back(tx);
  }

  void receive_block(std::uint32_t n, const Block& block) {
    auto& node = nodes_[n];
    if (block.height <= node.state.tip().height) return;
    node.pending_blocks.emplace(block.height, block);
    while (true) {
      auto it = node.pending_blocks.find(node.state.tip().height + 1);
      if (it == node.pending_blocks.end()) break;
      auto b = std::move(it->second);
      node.pending_blocks.erase(it);
      commit(n, b);
    }
  }

  void commit(std::uint32_t n, const Block& block) {
    auto& node = nodes_[n];
    node.state = apply_block(node.state, block);
    std::erase_if(node.mempool, [&](const Transaction& tx) {
      return tx.body.nonce < node.state.next_nonce(tx.body.sender);
    });
  }

  std::uint64_t ticks_;
  std::uint64_t delay_ = 0;
  std::vector<AccountId> validators_;
  std::mt19937_64 rng_;
  std::vector<Node> nodes_;
  std::map<std::uint64_t, std::vector<Delivery>> queue_;
};

}  // namespace

std::vector<LedgerState> run_network(std::span<const NodeConfig> nodes,
                                     std::span<const Injection> scenario, std::uint64_t ticks,
                                     std::uint64_t seed, const NetworkEnvironment& env) {
  if (nodes.empty()) throw Error(ErrorCode::ConfigError, "no nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& c = nodes[i];
    if (c.node_id != i) throw Error(ErrorCode::ConfigError, "node ids must be 0..n-1 in order");
    if (c.validators.empty()) throw Error(ErrorCode::ConfigError, "validator set is empty");
    if (c.validators != nodes[0].validators || c.gossip_delay != nodes[0].gossip_delay ||
        c.genesis_balances != nodes[0].genesis_balances) {
      throw Error(ErrorCode::ConfigError, "node configs disagree on genesis");
    }
  }
  std::map<std::uint64_t, std::vector<const Injection*>> by_tick;
  for (const auto& inj : scenario) {
    if (inj.tick > ticks) {
      throw Error(ErrorCode::ScenarioOutOfRange, "injection at tick " + std::to_string(inj.tick) +
                                                     " beyond horizon " + std::to_string(ticks));
    }
    if (inj.node >= nodes.size()) {
      throw Error(ErrorCode::ScenarioOutOfRange, "injection to unknown node " + std::to_string(inj.node));
    }
    by_tick[inj.tick].push_back(&inj);
  }

  Network net(nodes, ticks, seed, env);
  for (std::uint64_t t = 0; t <= ticks; ++t) {
    if (auto it = by_tick.find(t); it != by_tick.end()) {
      for (const auto* inj : it->second) net.inject(*inj, t);
    }
    net.deliver_due(t);
    net.propose_if_scheduled(t);
    // A zero-delay network hands the fresh block over within the same tick.
    net.deliver_due(t);
  }
  return net.finish();
}

std::uint64_t settle_ticks(std::size_t node_count, std::uint64_t gossip_delay) {
  const auto round = (gossip_delay + kBlockInterval - 1) / kBlockInterval;
  const auto per_height = kBlockInterval * (1 + round);
  return 2 * gossip_delay + (2 + node_count) * per_height;
}

std::string chain_dump(const LedgerState& state) {
  std::string out;
  for (const auto& b : state.blocks()) {
    out += std::to_string(b.height) + "|" + b.parent_hash.hex() + "|" + b.proposer.hex() + "|" +
           b.block_hash.hex() + "|" + std::to_string(b.transactions.size()) + "\n";
  }
  return out;
}

std::string receipt_log(const LedgerState& state) {
  std::string out;
  for (const auto& r : state.receipts()) {
    out += std::to_string(r.height) + "|" + std::to_string(r.tx_index) + "|" +
           (r.target ? r.target->hex() : std::string("-")) + "|" + r.selector + "|" +
           r.receipt.status_text() + "|";
    if (r.receipt.events.empty()) out += "-";
    for (std::size_t i = 0; i < r.receipt.events.size(); ++i) {
      if (i) out += ",";
      out += r.receipt.events[i].name + ":" + to_hex(r.receipt.events[i].payload);
    }
    out += "\n";
  }
  return out;
}

}  // namespace metamaint
