// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include "metamaint/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "metamaint/governance.hpp"
#include "metamaint/issues.hpp"
#include "metamaint/provenance.hpp"

namespace metamaint {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kGovernanceSymbol = "GOV";

struct Token {
  std::string_view text;
  std::size_t column = 0;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back(Token{line.substr(start, i - start), start + 1});
  }
  return out;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    out.emplace_back(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

enum class SymKind { Release, Issue, Forwarding };

// Parses one line's tokens into a command, checking names against what
// earlier lines declared.
class LineParser {
 public:
  LineParser(std::size_t line, std::vector<Token> tokens) : line_(line), tokens_(std::move(tokens)) {}

  [[noreturn]] void fail(const Token& at, const std::string& why) const {
    throw ScenarioParseError(line_, at.column, why);
  }
  [[noreturn]] void fail(const std::string& why) const { throw ScenarioParseError(line_, 1, why); }

  // Splits tokens after the command word into positionals, options and the
  // node marker.
  void split(std::size_t arity, std::initializer_list<std::string_view> options,
             std::initializer_list<std::string_view> flags = {}) {
    for (std::size_t i = 1; i < tokens_.size(); ++i) {
      const auto& t = tokens_[i];
      if (t.text.front() == '@') {
        if (node_) fail(t, "node given twice");
        node_ = t;
        continue;
      }
      auto eq = t.text.find('=');
      if (eq != std::string_view::npos && positional_.size() >= arity) {
        auto key = t.text.substr(0, eq);
        if (std::find(options.begin(), options.end(), key) == options.end()) {
          fail(t, "unknown option '" + std::string(key) + "'");
        }
        if (options_.count(std::string(key))) fail(t, "option '" + std::string(key) + "' given twice");
        options_.emplace(std::string(key), Token{t.text.substr(eq + 1), t.column + eq + 1});
        continue;
      }
      if (positional_.size() < arity) {
        positional_.push_back(t);
        continue;
      }
      if (std::find(flags.begin(), flags.end(), t.text) != flags.end()) {
        flags_.insert(std::string(t.text));
        continue;
      }
      fail(t, "unexpected argument '" + std::string(t.text) + "'");
    }
    if (positional_.size() < arity) {
      fail(tokens_.front(), std::string(tokens_.front().text) + " expects " + std::to_string(arity) +
                                " arguments, got " + std::to_string(positional_.size()));
    }
  }

  std::string pos(std::size_t i) const { return std::string(positional_[i].text); }
  const Token& pos_token(std::size_t i) const { return positional_[i]; }

  std::optional<std::string> option(std::string_view key) const {
    auto it = options_.find(std::string(key));
    if (it == options_.end()) return std::nullopt;
    if (it->second.text.empty()) fail(it->second, "empty value for '" + std::string(key) + "'");
    return std::string(it->second.text);
  }
  const Token* option_token(std::string_view key) const {
    auto it = options_.find(std::string(key));
    return it == options_.end() ? nullptr : &it->second;
  }
  bool flag(std::string_view f) const { return flags_.count(std::string(f)) > 0; }

  std::uint64_t number(const Token& t) const {
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || end != t.text.data() + t.text.size()) {
      fail(t, "expected an unsigned integer, got '" + std::string(t.text) + "'");
    }
    return v;
  }

  std::string version(const Token& t) const {
    try {
      Version::parse(t.text);
    } catch (const Error& e) {
      fail(t, e.what());
    }
    return std::string(t.text);
  }

  std::uint32_t node(std::uint32_t node_count) const {
    if (!node_) return 0;
    Token digits{node_->text.substr(1), node_->column + 1};
    auto n = number(digits);
    if (n >= node_count) fail(*node_, "node " + std::to_string(n) + " out of range");
    return static_cast<std::uint32_t>(n);
  }

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
  std::vector<Token> tokens_;
  std::vector<Token> positional_;
  std::map<std::string, Token> options_;
  std::set<std::string> flags_;
  std::optional<Token> node_;
};

class ScenarioParser {
 public:
  ScenarioFile parse(std::string_view text) {
    std::size_t line_no = 0;
    while (!text.empty()) {
      auto nl = text.find('\n');
      auto line = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      ++line_no;
      auto tokens = tokenize(line);
      if (tokens.empty()) continue;
      parse_line(line_no, std::move(tokens));
    }
    if (out_.header.validators.empty()) throw ScenarioParseError(line_no, 1, "no validator declared");
    for (const auto& b : out_.header.balances) {
      if (!keys_.count(b.name)) throw ScenarioParseError(b.line, 1, "balance for undeclared key '" + b.name + "'");
    }
    return std::move(out_);
  }

 private:
  void parse_line(std::size_t line_no, std::vector<Token> tokens) {
    const auto word = tokens.front().text;
    const bool is_command = std::all_of(word.begin(), word.end(),
                                        [](char c) { return (c >= 'A' && c <= 'Z'); });
    LineParser p(line_no, std::move(tokens));
    if (is_command) {
      body_started_ = true;
      parse_command(p, word);
    } else {
      if (body_started_) p.fail("header directive '" + std::string(word) + "' after the first command");
      parse_header(p, word);
    }
  }

  void parse_header(LineParser& p, std::string_view word) {
    auto& h = out_.header;
    if (word == "nodes") {
      p.split(1, {});
      auto n = p.number(p.pos_token(0));
      if (n == 0 || n > 64) p.fail(p.pos_token(0), "nodes must be between 1 and 64");
      h.nodes = static_cast<std::uint32_t>(n);
    } else if (word == "gossip_delay") {
      p.split(1, {});
      h.gossip_delay = p.number(p.pos_token(0));
    } else if (word == "seed") {
      p.split(1, {});
      h.seed = p.number(p.pos_token(0));
    } else if (word == "validator") {
      p.split(2, {});
      declare_key(p, 0);
      h.validators.push_back(KeyDecl{p.pos(0), p.pos(1), p.line()});
    } else if (word == "balance") {
      p.split(2, {});
      h.balances.push_back(BalanceDecl{p.pos(0), p.number(p.pos_token(1)), p.line()});
    } else {
      p.fail("unknown header directive '" + std::string(word) + "'");
    }
  }

  void declare_key(const LineParser& p, std::size_t i) {
    auto name = p.pos(i);
    if (!keys_.insert(name).second) p.fail(p.pos_token(i), "key '" + name + "' already declared");
  }
  void need_key(const LineParser& p, std::size_t i) const {
    if (!keys_.count(p.pos(i))) p.fail(p.pos_token(i), "undeclared key '" + p.pos(i) + "'");
  }
  void declare_symbol(const LineParser& p, std::size_t i, SymKind kind) {
    auto name = p.pos(i);
    if (name == kGovernanceSymbol) p.fail(p.pos_token(i), "symbol GOV is reserved");
    if (!symbols_.emplace(name, kind).second) p.fail(p.pos_token(i), "symbol '" + name + "' already bound");
  }
  void need_symbol(const LineParser& p, const Token& t, SymKind kind, std::string_view what) const {
    auto it = symbols_.find(std::string(t.text));
    if (it == symbols_.end() || it->second != kind) {
      p.fail(t, "'" + std::string(t.text) + "' is not a known " + std::string(what));
    }
  }

  RuleSpec rules(const LineParser& p) const {
    RuleSpec r;
    if (auto allow = p.option("allow")) r.allowed_licenses = split_list(*allow);
    if (const auto* depth = p.option_token("maxdepth")) r.max_clone_depth = p.number(*depth);
    r.require_distinct_owner = p.flag("distinct");
    return r;
  }

  void message_options(const LineParser& p, Command& cmd) const {
    if (const auto* via = p.option_token("via")) {
      need_symbol(p, *via, SymKind::Forwarding, "forwarding contract");
      cmd.via = std::string(via->text);
    }
    if (const auto* attach = p.option_token("attach")) cmd.attach = p.number(*attach);
  }

  void parse_command(LineParser& p, std::string_view word) {
    Command cmd;
    cmd.line = p.line();

    if (word == "KEY") {
      p.split(2, {});
      declare_key(p, 0);
      cmd.body = KeyCmd{p.pos(0), p.pos(1)};
    } else if (word == "RELEASE") {
      p.split(5, {"content", "allow", "maxdepth"}, {"distinct"});
      need_key(p, 1);
      ReleaseCmd c{p.pos(0), p.pos(1), p.pos(2), p.pos(3), p.version(p.pos_token(4)), p.option("content"), rules(p)};
      declare_symbol(p, 0, SymKind::Release);
      cmd.body = std::move(c);
    } else if (word == "ADDVER") {
      p.split(3, {"content", "via", "attach"});
      need_symbol(p, p.pos_token(0), SymKind::Release, "release");
      need_key(p, 1);
      message_options(p, cmd);
      cmd.body = AddVerCmd{p.pos(0), p.pos(1), p.version(p.pos_token(2)), p.option("content")};
    } else if (word == "CLONE") {
      p.split(4, {"content", "via", "attach"});
      need_key(p, 0);
      need_symbol(p, p.pos_token(1), SymKind::Release, "release");
      message_options(p, cmd);
      cmd.body = CloneCmd{p.pos(0), p.pos(1), p.version(p.pos_token(2)), p.pos(3), p.option("content")};
    } else if (word == "DERIVE") {
      p.split(7, {"content", "allow", "maxdepth"}, {"distinct"});
      need_key(p, 1);
      need_symbol(p, p.pos_token(5), SymKind::Release, "release");
      DeriveCmd c{p.pos(0), p.pos(1), p.pos(2), p.pos(3), p.version(p.pos_token(4)), p.pos(5),
                  p.version(p.pos_token(6)), p.option("content"), rules(p)};
      declare_symbol(p, 0, SymKind::Release);
      cmd.body = std::move(c);
    } else if (word == "ISSUE") {
      p.split(6, {"text"});
      need_key(p, 1);
      need_symbol(p, p.pos_token(2), SymKind::Release, "release");
      IssueCmd c{p.pos(0), p.pos(1), p.pos(2), p.version(p.pos_token(3)), p.version(p.pos_token(4)),
                 p.number(p.pos_token(5)), p.option("text")};
      declare_symbol(p, 0, SymKind::Issue);
      cmd.body = std::move(c);
    } else if (word == "RESOLVE") {
      p.split(3, {"via", "attach"});
      need_key(p, 0);
      need_symbol(p, p.pos_token(1), SymKind::Issue, "issue");
      need_key(p, 2);
      message_options(p, cmd);
      cmd.body = ResolveCmd{p.pos(0), p.pos(1), p.pos(2)};
    } else if (word == "PROPOSE") {
      p.split(5, {"via", "attach"});
      need_key(p, 0);
      ProposeCmd c{p.pos(0), p.pos(1), p.pos(2)};
      if (p.pos(3) == "allow") {
        c.verdict = Verdict::Allow;
      } else if (p.pos(3) == "deny") {
        c.verdict = Verdict::Deny;
      } else {
        p.fail(p.pos_token(3), "verdict must be allow or deny");
      }
      c.window = p.number(p.pos_token(4));
      if (c.window == 0) p.fail(p.pos_token(4), "window must be at least 1 block");
      message_options(p, cmd);
      cmd.body = std::move(c);
    } else if (word == "VOTE") {
      p.split(3, {"via", "attach"});
      need_key(p, 0);
      VoteCmd c{p.pos(0), p.number(p.pos_token(1))};
      if (p.pos(2) == "yea") {
        c.yea = true;
      } else if (p.pos(2) == "nay") {
        c.yea = false;
      } else {
        p.fail(p.pos_token(2), "vote must be yea or nay");
      }
      message_options(p, cmd);
      cmd.body = std::move(c);
    } else if (word == "FORWARD") {
      p.split(3, {"allow", "min"});
      need_key(p, 1);
      const auto& dest = p.pos_token(2);
      if (dest.text != kGovernanceSymbol && !symbols_.count(std::string(dest.text))) {
        p.fail(dest, "unknown destination '" + std::string(dest.text) + "'");
      }
      ForwardCmd c{p.pos(0), p.pos(1), p.pos(2), std::uint64_t{0}};
      const auto* allow = p.option_token("allow");
      const auto* min = p.option_token("min");
      if ((allow != nullptr) == (min != nullptr)) p.fail("FORWARD needs exactly one of allow= or min=");
      if (allow) {
        auto names = split_list(allow->text);
        for (const auto& n : names) {
          if (!keys_.count(n)) p.fail(*allow, "undeclared key '" + n + "' in allow list");
        }
        c.condition = std::move(names);
      } else {
        c.condition = p.number(*min);
      }
      declare_symbol(p, 0, SymKind::Forwarding);
      cmd.body = std::move(c);
    } else if (word == "TICK") {
      p.split(1, {});
      cmd.body = TickCmd{p.number(p.pos_token(0))};
    } else {
      p.fail("unknown command '" + std::string(word) + "'");
    }
    cmd.node = p.node(out_.header.nodes);
    out_.commands.push_back(std::move(cmd));
  }

  ScenarioFile out_;
  bool body_started_ = false;
  std::set<std::string> keys_;
  std::map<std::string, SymKind> symbols_;
};

// Turns commands into signed transactions injected at their logical tick.
class Compiler {
 public:
  explicit Compiler(const ScenarioFile& scenario) : scenario_(scenario) {
    for (const auto& v : scenario.header.validators) add_key(v.name, v.secret);
    for (const auto& c : scenario.commands) {
      if (const auto* k = std::get_if<KeyCmd>(&c.body)) add_key(k->name, k->secret);
    }
  }

  void compile() {
    for (const auto& cmd : scenario_.commands) {
      cmd_ = &cmd;
      std::visit([this](const auto& body) { step(body); }, cmd.body);
    }
  }

  std::shared_ptr<Keyring> keyring() const {
    auto ring = std::make_shared<Keyring>();
    for (const auto& [name, key] : keys_) ring->add(key);
    return ring;
  }
  const std::map<std::string, AccountKey>& keys() const { return keys_; }
  const std::vector<Injection>& injections() const { return injections_; }
  const std::map<std::string, SymbolBinding>& symbols() const { return symbols_; }
  std::uint64_t horizon() const { return tick_; }

 private:
  void add_key(const std::string& name, const std::string& secret) {
    auto key = AccountKey::from_secret(secret);
    keys_.emplace(name, key);
    symbols_[name] = SymbolBinding{SymbolBinding::Kind::Account, key.account_id.digest, std::nullopt};
  }

  const AccountKey& key(const std::string& name) const { return keys_.at(name); }
  Address addr(const std::string& symbol) const { return Address{symbols_.at(symbol).id}; }
  Address versioning(const std::string& release) const { return *symbols_.at(release).versioning; }

  std::uint64_t take_nonce(const AccountKey& k) { return nonces_[k.account_id]++; }

  void inject(const AccountKey& k, std::uint64_t nonce, std::optional<Address> target, Bytes payload) {
    auto tx = sign_transaction(k, UnsignedTransaction{k.account_id, nonce, target, std::move(payload)});
    injections_.push_back(Injection{tick_, cmd_->node, std::move(tx)});
  }

  void send(const std::string& key_name, const Address& direct, ContractMessage msg) {
    const auto& k = key(key_name);
    msg.attached = cmd_->attach;
    const auto target = cmd_->via ? addr(*cmd_->via) : direct;
    inject(k, take_nonce(k), target, msg.encode());
  }

  void create(const std::string& key_name, const ContractCreation& creation,
              const std::string& symbol, SymbolBinding::Kind kind) {
    const auto& k = key(key_name);
    const auto nonce = take_nonce(k);
    SymbolBinding b{kind, contract_address(k.account_id, nonce, creation.kind()).digest, std::nullopt};
    if (kind == SymbolBinding::Kind::Release) {
      b.versioning = contract_address(k.account_id, nonce, ContractKind::Versioning);
    }
    symbols_[symbol] = b;
    inject(k, nonce, std::nullopt, creation.encode());
  }

  static RuleSet rules(const RuleSpec& spec) {
    RuleSet r;
    if (spec.allowed_licenses) {
      std::set<LicenseId> allowed;
      for (const auto& l : *spec.allowed_licenses) allowed.insert(LicenseId{l});
      r.allowed_licenses = std::move(allowed);
    }
    r.max_clone_depth = spec.max_clone_depth;
    r.require_distinct_owner = spec.require_distinct_owner;
    return r;
  }

  Digest content_digest(const std::optional<std::string>& content, const std::string& component,
                        const std::string& version) {
    return sha256(content ? *content : component + "@" + version);
  }

  void step(const KeyCmd&) {}
  void step(const TickCmd& c) { tick_ += c.ticks; }

  void step(const ReleaseCmd& c) {
    components_[c.symbol] = c.component;
    ReleaseInit init{c.component, c.license, rules(c.rules), c.version,
                     content_digest(c.content, c.component, c.version), std::nullopt};
    create(c.key, ContractCreation{std::move(init)}, c.symbol, SymbolBinding::Kind::Release);
  }

  void step(const DeriveCmd& c) {
    components_[c.symbol] = c.component;
    ReleaseInit init{c.component, c.license, rules(c.rules), c.version,
                     content_digest(c.content, c.component, c.version),
                     UpstreamRef{addr(c.upstream), Version::parse(c.pinned)}};
    create(c.key, ContractCreation{std::move(init)}, c.symbol, SymbolBinding::Kind::Release);
  }

  void step(const AddVerCmd& c) {
    AddVersionArgs args{c.version, content_digest(c.content, components_.at(c.release), c.version)};
    send(c.key, versioning(c.release), args.to_message());
  }

  void step(const CloneCmd& c) {
    CloneNoticeArgs args{c.version, c.license, {}};
    if (c.content) {
      auto d = sha256(*c.content);
      args.cloned_digest.assign(d.bytes.begin(), d.bytes.end());
    }
    send(c.key, versioning(c.release), args.to_message());
  }

  void step(const IssueCmd& c) {
    IssueInit init{addr(c.release), c.lo, c.hi, sha256(c.text ? *c.text : "issue:" + c.symbol), c.bounty};
    create(c.key, ContractCreation{std::move(init)}, c.symbol, SymbolBinding::Kind::Issue);
  }

  void step(const ResolveCmd& c) {
    send(c.key, addr(c.issue), ResolveArgs{key(c.resolver).account_id}.to_message());
  }

  void step(const ProposeCmd& c) {
    send(c.key, governance_address(), ProposeArgs{c.upstream, c.derivative, c.verdict, c.window}.to_message());
  }

  void step(const VoteCmd& c) {
    send(c.key, governance_address(), VoteArgs{c.proposal_id, c.yea}.to_message());
  }

  void step(const ForwardCmd& c) {
    Address dest = governance_address();
    if (c.destination != kGovernanceSymbol) {
      const auto& b = symbols_.at(c.destination);
      dest = b.versioning ? *b.versioning : Address{b.id};
    }
    ForwardCondition cond = MinAttachedTokensCondition{0};
    if (const auto* names = std::get_if<std::vector<std::string>>(&c.condition)) {
      AllowListCondition allow;
      for (const auto& n : *names) allow.allowed.push_back(key(n).account_id);
      cond = std::move(allow);
    } else {
      cond = MinAttachedTokensCondition{std::get<std::uint64_t>(c.condition)};
    }
    create(c.key, ContractCreation{ForwardingInit{dest, std::move(cond)}}, c.symbol,
           SymbolBinding::Kind::Forwarding);
  }

  const ScenarioFile& scenario_;
  const Command* cmd_ = nullptr;
  std::uint64_t tick_ = 0;
  std::map<std::string, AccountKey> keys_;
  std::map<AccountId, std::uint64_t> nonces_;
  std::map<std::string, SymbolBinding> symbols_;
  std::map<std::string, std::string> components_;
  std::vector<Injection> injections_;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingDump, "missing " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string_view binding_kind(SymbolBinding::Kind k) {
  switch (k) {
    case SymbolBinding::Kind::Account: return "account";
    case SymbolBinding::Kind::Release: return "release";
    case SymbolBinding::Kind::Issue: return "issue";
    case SymbolBinding::Kind::Forwarding: return "forwarding";
  }
  return "unknown";
}

std::string address_lines(const std::set<Address>& addrs) {
  std::string out;
  for (const auto& a : addrs) out += a.hex() + "\n";
  return out;
}

std::string issue_line(const Address& addr, const IssueContractState& i) {
  return addr.hex() + "|" + i.target_release.hex() + "|" + i.affected_lo.to_string() + "|" +
         i.affected_hi.to_string() + "|" + std::string(status_name(i.status)) + "|" +
         std::to_string(i.bounty) + "|" + i.reporter.hex() + "|" + (i.resolver ? i.resolver->hex() : "-") + "\n";
}

}  // namespace

ScenarioParseError::ScenarioParseError(std::size_t line, std::size_t column, const std::string& reason)
    : Error(ErrorCode::ParseError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + reason),
      line_(line),
      column_(column),
      reason_(reason) {}

ScenarioFile parse_scenario(std::string_view text) { return ScenarioParser{}.parse(text); }

std::shared_ptr<const CompatibilityMatrix> matrix_from_environment() {
  if (const char* path = std::getenv("METAMAINT_MATRIX"); path && *path) {
    return std::make_shared<const CompatibilityMatrix>(CompatibilityMatrix::load(path));
  }
  return std::make_shared<const CompatibilityMatrix>(CompatibilityMatrix::default_fixture());
}

QuerySpec QuerySpec::parse(std::string_view kind, std::vector<std::string> args) {
  struct Shape {
    std::string_view name;
    QueryKind kind;
    std::size_t min_args, max_args;
  };
  static constexpr Shape kShapes[] = {
      {"downstream", QueryKind::Downstream, 1, 2}, {"outdated", QueryKind::Outdated, 0, 0},
      {"impact", QueryKind::Impact, 1, 1},         {"issues", QueryKind::Issues, 0, 3},
      {"graph", QueryKind::Graph, 0, 0},           {"chain", QueryKind::Chain, 0, 0},
      {"digest", QueryKind::Digest, 0, 0},
  };
  for (const auto& s : kShapes) {
    if (s.name != kind) continue;
    if (args.size() < s.min_args || args.size() > s.max_args) {
      throw Error(ErrorCode::UnknownQuery, "query '" + std::string(kind) + "' takes " +
                                               std::to_string(s.min_args) + ".." +
                                               std::to_string(s.max_args) + " arguments");
    }
    return QuerySpec{s.kind, std::move(args)};
  }
  throw Error(ErrorCode::UnknownQuery, "unknown query '" + std::string(kind) + "'");
}

Simulation Simulation::run(const ScenarioFile& scenario, std::optional<std::uint64_t> seed_override,
                           std::shared_ptr<const CompatibilityMatrix> matrix) {
  Compiler compiler(scenario);
  compiler.compile();

  const auto& h = scenario.header;
  std::vector<AccountId> validators;
  for (const auto& v : h.validators) validators.push_back(compiler.keys().at(v.name).account_id);
  std::map<AccountId, std::uint64_t> balances;
  for (const auto& b : h.balances) balances[compiler.keys().at(b.name).account_id] += b.amount;

  std::vector<NodeConfig> configs;
  for (std::uint32_t i = 0; i < h.nodes; ++i) configs.push_back(NodeConfig{i, validators, h.gossip_delay, balances});

  Simulation sim;
  sim.matrix_ = matrix ? std::move(matrix) : matrix_from_environment();
  sim.seed_ = seed_override.value_or(h.seed);
  sim.ticks_ = compiler.horizon() + settle_ticks(h.nodes, h.gossip_delay);
  sim.symbols_ = compiler.symbols();
  NetworkEnvironment env{compiler.keyring(), sim.matrix_};
  sim.nodes_ = run_network(configs, compiler.injections(), sim.ticks_, sim.seed_, env);

  const auto reference = chain_dump(sim.nodes_.front());
  const auto digest = state_digest(sim.nodes_.front());
  for (std::size_t i = 1; i < sim.nodes_.size(); ++i) {
    if (chain_dump(sim.nodes_[i]) != reference || state_digest(sim.nodes_[i]) != digest) {
      throw Error(ErrorCode::ConfigError, "node " + std::to_string(i) + " did not converge");
    }
  }
  std::set<Digest> included;
  for (const auto& b : sim.state().blocks()) {
    for (const auto& tx : b.transactions) included.insert(tx.hash());
  }
  for (const auto& inj : compiler.injections()) {
    if (!included.count(inj.tx.hash())) {
      throw Error(ErrorCode::ConfigError, "a scenario transaction never reached the chain");
    }
  }
  return sim;
}

Address Simulation::resolve_address(std::string_view name) const {
  if (name == kGovernanceSymbol) return governance_address();
  if (auto it = symbols_.find(std::string(name)); it != symbols_.end()) return Address{it->second.id};
  try {
    return Address::from_hex(name);
  } catch (const Error&) {
    throw Error(ErrorCode::UnknownContract, "unknown symbol or address '" + std::string(name) + "'");
  }
}

std::string issue_dump(const WorldState& world) {
  std::string out;
  for (const auto& [addr, issue] : list_issues(world, {})) out += issue_line(addr, issue);
  return out;
}

std::string proposal_dump(const WorldState& world) {
  std::string out;
  const auto* gov = world.find_as<GovernanceState>(governance_address());
  if (!gov) return out;
  for (const auto& p : gov->proposals) {
    out += std::to_string(p.id) + "|" + p.change.upstream.name + "|" + p.change.derivative.name + "|" +
           std::string(verdict_name(p.change.verdict)) + "|" + std::to_string(p.yea()) + "|" +
           std::to_string(p.nay()) + "|" + std::string(status_name(p.status)) + "\n";
  }
  return out;
}

void Simulation::write_outputs(const fs::path& out_dir, std::string_view scenario_text) const {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());

  const auto& s = state();
  write_file(out_dir / "chain.dump", chain_dump(s));
  write_file(out_dir / "receipts.log", receipt_log(s));
  write_file(out_dir / "graph.dump", graph_dump(build_graph(s.world())));
  write_file(out_dir / "issues.dump", issue_dump(s.world()));
  write_file(out_dir / "proposals.dump", proposal_dump(s.world()));

  std::string symbols;
  for (const auto& [name, b] : symbols_) {
    symbols += name + "|" + std::string(binding_kind(b.kind)) + "|" + b.id.hex();
    if (b.versioning) symbols += "|" + b.versioning->hex();
    symbols += "\n";
  }
  write_file(out_dir / "symbols.dump", symbols);
  write_file(out_dir / "state_digest", state_digest(s).hex() + "\n");

  write_file(out_dir / "scenario.txt", scenario_text);
  write_file(out_dir / "matrix.txt", matrix_->to_text());
  write_file(out_dir / "run.meta", "seed " + std::to_string(seed_) + "\n");
}

Simulation Simulation::load(const fs::path& out_dir) {
  const auto scenario_text = read_file(out_dir / "scenario.txt");
  const auto meta = read_file(out_dir / "run.meta");
  const auto matrix_text = read_file(out_dir / "matrix.txt");
  const auto stored_digest = read_file(out_dir / "state_digest");

  std::uint64_t seed = 0;
  if (meta.rfind("seed ", 0) != 0) throw Error(ErrorCode::MissingDump, "malformed run.meta");
  auto digits = std::string_view(meta).substr(5);
  while (!digits.empty() && digits.back() == '\n') digits.remove_suffix(1);
  auto [end, err] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
  if (err != std::errc{} || end != digits.data() + digits.size()) {
    throw Error(ErrorCode::MissingDump, "malformed run.meta");
  }

  auto matrix = std::make_shared<const CompatibilityMatrix>(CompatibilityMatrix::parse(matrix_text));
  auto sim = run(parse_scenario(scenario_text), seed, std::move(matrix));
  if (state_digest(sim.state()).hex() + "\n" != stored_digest) {
    throw Error(ErrorCode::MissingDump, "dumps in " + out_dir.string() + " do not match their scenario");
  }
  return sim;
}

std::string Simulation::query(const QuerySpec& spec) const {
  const auto& world = state().world();
  switch (spec.kind) {
    case QueryKind::Downstream: {
      std::optional<Version> version;
      if (spec.args.size() > 1) version = Version::parse(spec.args[1]);
      return address_lines(downstream_of(build_graph(world), resolve_address(spec.args[0]), version));
    }
    case QueryKind::Outdated: {
      std::string out;
      for (const auto& o : outdated_clones(build_graph(world), world)) {
        out += o.clone.hex() + "|" + o.pinned.to_string() + "|" + o.upstream_latest.to_string() + "\n";
      }
      return out;
    }
    case QueryKind::Impact:
      return address_lines(impact_set(build_graph(world), world, resolve_address(spec.args[0])));
    case QueryKind::Issues: {
      IssueFilter filter;
      for (const auto& arg : spec.args) {
        auto eq = arg.find('=');
        auto key = arg.substr(0, eq);
        auto value = eq == std::string::npos ? std::string{} : arg.substr(eq + 1);
        if (key == "release") {
          filter.release = resolve_address(value);
        } else if (key == "status" && (value == "open" || value == "Open")) {
          filter.status = IssueStatus::Open;
        } else if (key == "status" && (value == "resolved" || value == "Resolved")) {
          filter.status = IssueStatus::Resolved;
        } else if (key == "version") {
          filter.version = Version::parse(value);
        } else {
          throw Error(ErrorCode::UnknownQuery, "bad issues filter '" + arg + "'");
        }
      }
      std::string out;
      for (const auto& [addr, issue] : list_issues(world, filter)) out += issue_line(addr, issue);
      return out;
    }
    case QueryKind::Graph:
      return graph_dump(build_graph(world));
    case QueryKind::Chain:
      return chain_dump(state());
    case QueryKind::Digest:
      return state_digest(state()).hex() + "\n";
  }
  throw Error(ErrorCode::UnknownQuery, "unhandled query");
}

}  // namespace metamaint
