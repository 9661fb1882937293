// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Canonical binary encoding and the 256-bit digest used for every hash on
// the chain.
//
// Encoding rules: fields in declared order; integers as big-endian 8 bytes;
// strings and byte strings as a 4-byte big-endian length followed by the
// bytes; lists and maps as a 4-byte big-endian count followed by elements
// (maps sorted by key); 32-byte digests as their raw bytes. Enumerations and
// booleans are integers. Optionals are lists of zero or one element.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metamaint/error.hpp"

namespace metamaint {

using Bytes = std::vector<std::uint8_t>;

struct Digest {
  std::array<std::uint8_t, 32> bytes{};

  auto operator<=>(const Digest&) const = default;

  std::string hex() const;
  bool is_zero() const noexcept;
  // Throws Error(ParseError) unless given exactly 64 hex digits.
  static Digest from_hex(std::string_view hex);
};

Digest sha256(std::span<const std::uint8_t> data);
Digest sha256(std::string_view text);

std::string to_hex(std::span<const std::uint8_t> data);

// Strongly typed 32-byte identifiers. Accounts and contract addresses share
// a representation but must not be mixed up by accident.
template <class Tag>
struct Id {
  Digest digest;

  auto operator<=>(const Id&) const = default;
  std::string hex() const { return digest.hex(); }
  static Id from_hex(std::string_view hex) { return Id{Digest::from_hex(hex)}; }
};

struct AccountTag {};
struct AddressTag {};
using AccountId = Id<AccountTag>;
using Address = Id<AddressTag>;

class Encoder {
 public:
  Encoder& u64(std::uint64_t value);
  Encoder& boolean(bool value) { return u64(value ? 1 : 0); }
  Encoder& count(std::size_t n);
  Encoder& str(std::string_view text);
  Encoder& bytes(std::span<const std::uint8_t> data);
  Encoder& digest(const Digest& d);
  template <class Tag>
  Encoder& id(const Id<Tag>& value) {
    return digest(value.digest);
  }
  // Appends already-encoded bytes verbatim.
  Encoder& raw(std::span<const std::uint8_t> data);

  const Bytes& data() const noexcept { return out_; }
  Bytes take() noexcept { return std::move(out_); }

 private:
  Bytes out_;
};

// Reads the encoding back. Any truncation or malformed value throws
// Error(SchemaError).
class Decoder {
 public:
  explicit Decoder(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint64_t u64();
  bool boolean();
  std::size_t count();
  std::string str();
  Bytes bytes();
  Digest digest();
  template <class Tag>
  Id<Tag> id() {
    return Id<Tag>{digest()};
  }

  bool done() const noexcept { return pos_ == in_.size(); }
  void expect_done() const;

 private:
  void need(std::size_t n) const;

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace metamaint
