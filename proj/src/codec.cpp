// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include "metamaint/codec.hpp"

#include <openssl/evp.h>

#include <limits>
#include <memory>

namespace metamaint {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)>;

}  // namespace

std::string to_hex(std::span<const std::uint8_t> data) {
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0x0f]);
  }
  return out;
}

std::string Digest::hex() const { return to_hex(bytes); }

bool Digest::is_zero() const noexcept {
  for (auto b : bytes) {
    if (b != 0) return false;
  }
  return true;
}

Digest Digest::from_hex(std::string_view hex) {
  if (hex.size() != 64) {
    throw Error(ErrorCode::ParseError, "digest must be 64 hex digits");
  }
  Digest d;
  for (std::size_t i = 0; i < 32; ++i) {
    int hi = hex_value(hex[2 * i]);
    int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::ParseError, "invalid hex digit in digest");
    }
    d.bytes[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return d;
}

Digest sha256(std::span<const std::uint8_t> data) {
  MdCtxPtr ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  Digest out;
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), out.bytes.data(), &len) != 1 || len != 32) {
    throw std::runtime_error("sha256 failed");
  }
  return out;
}

Digest sha256(std::string_view text) {
  return sha256(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

Encoder& Encoder::u64(std::uint64_t value) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<std::uint8_t>(value >> shift));
  }
  return *this;
}

Encoder& Encoder::count(std::size_t n) {
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::SchemaError, "length exceeds 32-bit prefix");
  }
  for (int shift = 24; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<std::uint8_t>(n >> shift));
  }
  return *this;
}

Encoder& Encoder::str(std::string_view text) {
  count(text.size());
  out_.insert(out_.end(), text.begin(), text.end());
  return *this;
}

Encoder& Encoder::bytes(std::span<const std::uint8_t> data) {
  count(data.size());
  return raw(data);
}

Encoder& Encoder::digest(const Digest& d) { return raw(d.bytes); }

Encoder& Encoder::raw(std::span<const std::uint8_t> data) {
  out_.insert(out_.end(), data.begin(), data.end());
  return *this;
}

void Decoder::need(std::size_t n) const {
  if (in_.size() - pos_ < n) {
    throw Error(ErrorCode::SchemaError, "truncated encoding");
  }
}

std::uint64_t Decoder::u64() {
  need(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = v << 8 | in_[pos_++];
  return v;
}

bool Decoder::boolean() {
  auto v = u64();
  if (v > 1) throw Error(ErrorCode::SchemaError, "boolean out of range");
  return v == 1;
}

std::size_t Decoder::count() {
  need(4);
  std::size_t v = 0;
  for (int i = 0; i < 4; ++i) v = v << 8 | in_[pos_++];
  return v;
}

std::string Decoder::str() {
  auto n = count();
  need(n);
  std::string out(reinterpret_cast<const char*>(in_.data() + pos_), n);
  pos_ += n;
  return out;
}

Bytes Decoder::bytes() {
  auto n = count();
  need(n);
  Bytes out(in_.begin() + static_cast<std::ptrdiff_t>(pos_),
            in_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
  pos_ += n;
  return out;
}

Digest Decoder::digest() {
  need(32);
  Digest d;
  for (auto& b : d.bytes) b = in_[pos_++];
  return d;
}

void Decoder::expect_done() const {
  if (!done()) throw Error(ErrorCode::SchemaError, "trailing bytes after encoding");
}

}  // namespace metamaint
