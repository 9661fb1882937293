// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include "random_scenarios.hpp"

#include <map>
#include <random>
#include <sstream>
#include <tuple>
#include <vector>

#include "metamaint/release_protocol.hpp"

namespace metamaint::testing {

namespace {

const std::vector<std::string> kLicenses{"MIT", "BSD-3-Clause", "Apache-2.0", "GPL-3.0", "Proprietary"};

class Generator {
 public:
  Generator(std::uint64_t seed, const RandomScenarioOptions& o) : rng_(seed), opts_(o) {}

  std::string build() {
    const auto nodes = pick(opts_.min_nodes, opts_.max_nodes);
    const auto validators = pick(1, 3);
    out_ << "nodes " << nodes << "\n";
    out_ << "gossip_delay " << pick(0, 4) << "\n";
    out_ << "seed " << pick(0, 1000) << "\n";
    for (std::uint64_t v = 0; v < validators; ++v) out_ << "validator val" << v << " val" << v << "-secret\n";
    const auto key_count = pick(3, 6);
    for (std::uint64_t k = 0; k < key_count; ++k) keys_.push_back("k" + std::to_string(k));
    for (const auto& k : keys_) {
      if (chance(0.8)) out_ << "balance " << k << " " << pick(0, 200) << "\n";
    }
    nodes_ = nodes;
    for (const auto& k : keys_) line("KEY " + k + " " + k + "-secret");

    for (int i = 0; i < opts_.steps; ++i) step();
    return out_.str();
  }

 private:
  std::uint64_t pick(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& any(const std::vector<T>& v) {
    return v[pick(0, v.size() - 1)];
  }

  void line(const std::string& text) {
    out_ << text;
    if (nodes_ > 1 && chance(0.5)) out_ << " @" << pick(0, nodes_ - 1);
    out_ << "\n";
  }

  std::string routing() {
    std::string s;
    if (!forwarders_.empty() && chance(0.2)) {
      s += " via=" + any(forwarders_);
      if (chance(0.5)) s += " attach=" + std::to_string(pick(0, 20));
    }
    return s;
  }

  std::string rules() {
    std::string s;
    if (chance(0.2)) {
      std::string allow;
      for (const auto& l : kLicenses) {
        if (chance(0.5)) allow += (allow.empty() ? "" : ",") + l;
      }
      if (!allow.empty()) s += " allow=" + allow;
    }
    if (chance(0.2)) s += " maxdepth=" + std::to_string(pick(0, 3));
    if (chance(0.1)) s += " distinct";
    return s;
  }

  struct Rel {
    std::string symbol, owner;
    std::vector<std::string> versions;
  };

  std::string version_of(const Rel& r) {
    if (chance(0.1)) return "9.9.9";
    return any(r.versions);
  }

  void release() {
    const auto sym = "R" + std::to_string(next_symbol_++);
    const auto& owner = any(keys_);
    line("RELEASE " + sym + " " + owner + " comp" + sym + " " + any(kLicenses) + " 1.0.0" + rules());
    releases_.push_back(Rel{sym, owner, {"1.0.0"}});
  }

  void derive(bool with_notice) {
    auto& up = releases_[pick(0, releases_.size() - 1)];
    const auto& who = chance(0.85) ? any(keys_) : up.owner;
    const auto pinned = version_of(up);
    const auto& license = chance(0.7) ? kLicenses[pick(0, 2)] : any(kLicenses);
    if (with_notice) {
      std::string content;
      if (chance(0.2)) content = " content=" + (chance(0.5) ? std::string("junk") : "comp" + up.symbol + "@" + pinned);
      line("CLONE " + who + " " + up.symbol + " " + pinned + " " + license + content + routing());
      if (chance(0.3)) line("TICK " + std::to_string(pick(0, 15)));
    }
    const auto sym = "R" + std::to_string(next_symbol_++);
    const auto up_symbol = up.symbol;
    line("DERIVE " + sym + " " + who + " comp" + sym + " " + license + " 1.0.0 " + up_symbol + " " + pinned + rules());
    releases_.push_back(Rel{sym, who, {"1.0.0"}});
  }

  void add_version() {
    auto& r = releases_[pick(0, releases_.size() - 1)];
    const auto& who = chance(0.85) ? r.owner : any(keys_);
    std::string v;
    if (chance(0.85)) {
      v = "1." + std::to_string(r.versions.size()) + ".0";
      r.versions.push_back(v);
    } else {
      v = any(r.versions);
    }
    line("ADDVER " + r.symbol + " " + who + " " + v + routing());
  }

  void issue() {
    const auto& r = any(releases_);
    const auto sym = "I" + std::to_string(next_symbol_++);
    auto lo = pick(0, 3), hi = pick(0, 3);
    if (chance(0.9) && lo > hi) std::swap(lo, hi);
    line("ISSUE " + sym + " " + any(keys_) + " " + r.symbol + " 1." + std::to_string(lo) + " 1." +
         std::to_string(hi) + " " + std::to_string(pick(0, 60)));
    issues_.push_back(sym);
  }

  void step() {
    if (releases_.empty()) return release();
    const auto roll = pick(0, 99);
    if (roll < 15) return release();
    if (roll < 40) return derive(true);
    if (roll < 45) return derive(false);
    if (roll < 57) return add_version();
    if (roll < 64) return line("CLONE " + any(keys_) + " " + any(releases_).symbol + " " +
                               version_of(any(releases_)) + " " + any(kLicenses) + routing());
    if (roll < 70) return issue();
    if (roll < 75 && !issues_.empty()) {
      return line("RESOLVE " + any(keys_) + " " + any(issues_) + " " + any(keys_) + routing());
    }
    if (roll < 79) {
      line("PROPOSE " + any(keys_) + " " + any(kLicenses) + " " + any(kLicenses) + (chance(0.5) ? " allow " : " deny ") +
           std::to_string(pick(1, 4)) + routing());
      ++proposals_;
      return;
    }
    if (roll < 85 && proposals_ > 0) {
      return line("VOTE " + any(keys_) + " " + std::to_string(pick(0, proposals_)) + (chance(0.7) ? " yea" : " nay") +
                  routing());
    }
    if (roll < 89) {
      const auto sym = "F" + std::to_string(next_symbol_++);
      std::string dest = chance(0.2) ? "GOV" : (chance(0.2) && !issues_.empty() ? any(issues_) : any(releases_).symbol);
      std::string cond;
      if (chance(0.5)) {
        cond = " min=" + std::to_string(pick(0, 10));
      } else {
        cond = " allow=" + any(keys_);
        if (chance(0.5)) cond += "," + any(keys_);
      }
      line("FORWARD " + sym + " " + any(keys_) + " " + dest + cond);
      forwarders_.push_back(sym);
      return;
    }
    line("TICK " + std::to_string(pick(1, 30)));
  }

  std::mt19937_64 rng_;
  RandomScenarioOptions opts_;
  std::ostringstream out_;
  std::uint64_t nodes_ = 1;
  int next_symbol_ = 0;
  std::vector<std::string> keys_;
  std::vector<Rel> releases_;
  std::vector<std::string> issues_;
  std::vector<std::string> forwarders_;
  std::uint64_t proposals_ = 0;
};

}  // namespace

std::string random_scenario(std::uint64_t seed, const RandomScenarioOptions& options) {
  return Generator(seed, options).build();
}

std::optional<std::string> check_conservation(const LedgerState& state) {
  auto replay = LedgerState::genesis(state.config());
  const auto supply = replay.genesis_supply();
  auto check = [&](const LedgerState& s) -> std::optional<std::string> {
    const auto total = s.world().total_balances() + s.world().total_escrow();
    if (total != supply) {
      return "height " + std::to_string(s.tip().height) + ": " + std::to_string(total) + " != genesis supply " +
             std::to_string(supply);
    }
    return std::nullopt;
  };
  if (auto e = check(replay)) return e;
  for (std::size_t h = 1; h < state.blocks().size(); ++h) {
    replay = apply_block(replay, state.blocks()[h]);
    if (auto e = check(replay)) return e;
  }
  if (state_digest(replay) != state_digest(state)) return std::string("replayed chain ends in a different state");
  return std::nullopt;
}

std::optional<std::string> check_gating(const LedgerState& state) {
  // (upstream release, cloner, version) -> earliest (height, index) authorized
  std::map<std::tuple<Address, AccountId, std::string>, std::pair<std::uint64_t, std::uint64_t>> granted;
  for (const auto& rec : state.receipts()) {
    for (const auto& ev : rec.receipt.events) {
      if (ev.name == event::kCloneAuthorized) {
        if (!rec.receipt.ok()) return std::string("CloneAuthorized on a failed receipt");
        Decoder dec(ev.payload);
        const auto release = dec.id<AddressTag>();
        const auto cloner = dec.id<AccountTag>();
        const auto version = Version::parse(dec.str()).to_string();
        granted.try_emplace({release, cloner, version}, rec.height, rec.tx_index);
      }
      if (ev.name == event::kReleaseCreated) {
        const auto created = ReleaseCreatedEvent::decode(ev.payload);
        if (!created.upstream) continue;
        const auto* rel = state.world().find_as<ReleaseContractState>(created.release);
        if (!rel) return "created release " + created.release.hex() + " missing from state";
        const auto key = std::make_tuple(created.upstream->release_addr, rel->owner,
                                         created.upstream->pinned_version.to_string());
        auto it = granted.find(key);
        if (it == granted.end() || it->second >= std::make_pair(rec.height, rec.tx_index)) {
          return "release " + created.release.hex() + " created without a prior authorization";
        }
      }
    }
  }
  // Every downstream in the final state must have been announced.
  for (const auto& [addr, rec] : state.world().contracts) {
    const auto* r = std::get_if<ReleaseContractState>(&rec.body);
    if (!r || !r->upstream) continue;
    if (!granted.count({r->upstream->release_addr, r->owner, r->upstream->pinned_version.to_string()})) {
      return "downstream " + addr.hex() + " has no authorization";
    }
  }
  return std::nullopt;
}

}  // namespace metamaint::testing
